#pragma once

#include <stdexcept>

namespace ridgedeconv {

/// Malformed, empty or inconsistent input. The CLI maps it to exit code 2.
class InputError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// A mathematical precondition of an estimator is violated (integrability,
/// vanishing characteristic function, degenerate denominator). Exit code 1.
class GuardError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

} // namespace ridgedeconv
