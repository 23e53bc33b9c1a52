#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ridgedeconv/rng.hpp"

namespace ridgedeconv {

//! Density of the measurement error delta, described by its exact
//! characteristic function. Values are immutable; convolutions share their
//! operands.
class ErrorModel
{
public:
  enum class Kind
  {
    Laplace,
    Gaussian,
    Uniform,
    SelfConvolvedUniform,
    Convolution
  };

  //! Laplace density exp(-|x|/b) / (2b).
  static ErrorModel laplace(double scale);
  static ErrorModel gaussian(double sigma);
  //! Uniform density on [-halfwidth, halfwidth].
  static ErrorModel uniform(double halfwidth);
  //! `order`-fold convolution of the uniform density on [-halfwidth, halfwidth].
  static ErrorModel self_convolved_uniform(double halfwidth, int order);
  //! Density of the sum of independent draws from `a` and `b`.
  static ErrorModel convolution(const ErrorModel& a, const ErrorModel& b);

  Kind kind() const { return kind_; }
  //! b, sigma or lambda depending on kind; unused for convolutions.
  double parameter() const { return param_; }
  //! mu for self-convolved uniforms, 1 otherwise.
  int order() const { return order_; }
  const ErrorModel& left() const;
  const ErrorModel& right() const;

  std::complex<double> char_fn(double t) const;
  //! log |char_fn(t)|; -inf at exact zeros.
  double log_abs_char_fn(double t) const;
  //! Nonincreasing upper bound of |char_fn| on [|t|, inf).
  double envelope(double t) const;
  bool has_real_zeros() const;
  bool is_symmetric() const { return true; }

  //! Density value, or nullopt for convolutions (they are kept symbolic).
  std::optional<double> density(double x) const;
  double variance() const;

  double draw(Rng& rng) const;

  std::string describe() const;

  friend bool operator==(const ErrorModel& a, const ErrorModel& b);

private:
  ErrorModel(Kind kind, double param, int order) : kind_(kind), param_(param), order_(order) {}

  Kind kind_;
  double param_ = 0.0;
  int order_ = 1;
  std::shared_ptr<const ErrorModel> a_;
  std::shared_ptr<const ErrorModel> b_;
};

//! sin(u)/u with the removable singularity filled in.
double sinc(double u);

std::complex<double> char_fn(const ErrorModel& model, double t);

// Smoothness classes. Constants are chosen so the defining two-sided bounds
// hold on the scanned range, widened by a 10% margin.

//! C1 (1+t^2)^-nu <= |f^ft(t)|^2 <= C2 (1+t^2)^-nu for all t.
struct OrdinarySmooth
{
  double nu;
  double C1, C2;
};

//! exp(-c1 |t|^gamma) <= |f^ft(t)| <= exp(-c2 |t|^gamma).
struct Supersmooth
{
  double gamma;
  double c1, c2;
};

//! C1 |sin(lambda t)|^mu |t|^-nu <= |f^ft(t)| <= C2 |sin(lambda t)|^mu |t|^-nu
//! for |t| > T, and f^ft has no zero on [-T, T].
struct OscillatoryOrdinary
{
  double nu;
  int mu;
  double lambda;
  double C1, C2, T;
};

//! As OscillatoryOrdinary with |t|^-nu replaced by exp(-d |t|^gamma).
struct OscillatorySupersmooth
{
  double d, gamma;
  int mu;
  double lambda;
  double C1, C2, T;
};

struct UnknownClass
{
  std::string reason;
};

using SmoothnessClass = std::variant<OrdinarySmooth, Supersmooth, OscillatoryOrdinary,
                                     OscillatorySupersmooth, UnknownClass>;

SmoothnessClass smoothness_class(const ErrorModel& model);
std::string class_name(const SmoothnessClass& cls);

//! n i.i.d. draws from the error density; deterministic given seed.
std::vector<double> sample_error(const ErrorModel& model, std::size_t n, std::uint64_t seed);

} // namespace ridgedeconv
