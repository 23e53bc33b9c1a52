#include "ridgedeconv/error_models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "ridgedeconv/errors.hpp"

namespace ridgedeconv {

namespace {

constexpr double kScanMax = 1.0e4;
constexpr std::size_t kScanPoints = 20000;
constexpr double kMargin = 1.1;

void require_positive(double v, const char* what)
{
  if (!(v > 0.0) || !std::isfinite(v))
    throw InputError(std::string(what) + " must be positive and finite");
}

// Leaves of a convolution tree.
void collect_factors(const ErrorModel& m, std::vector<const ErrorModel*>& out)
{
  if (m.kind() == ErrorModel::Kind::Convolution) {
    collect_factors(m.left(), out);
    collect_factors(m.right(), out);
  } else {
    out.push_back(&m);
  }
}

std::vector<double> log_scan(double lo, double hi)
{
  std::vector<double> ts(kScanPoints);
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < kScanPoints; ++i)
    ts[i] = std::exp(a + (b - a) * static_cast<double>(i) / (kScanPoints - 1));
  return ts;
}

double irwin_hall_density(double s, int mu)
{
  if (s < 0.0 || s > mu)
    return 0.0;
  double sum = 0.0;
  double binom = 1.0;
  double fact = 1.0;
  for (int k = 2; k < mu; ++k)
    fact *= k;
  for (int k = 0; k <= static_cast<int>(std::floor(s)) && k <= mu; ++k) {
    sum += ((k % 2) ? -1.0 : 1.0) * binom * std::pow(s - k, mu - 1);
    binom = binom * (mu - k) / (k + 1);
  }
  return sum / fact;
}

} // namespace

double sinc(double u)
{
  if (std::abs(u) < 1e-4) {
    const double u2 = u * u;
    return 1.0 - u2 / 6.0 + u2 * u2 / 120.0;
  }
  return std::sin(u) / u;
}

ErrorModel ErrorModel::laplace(double scale)
{
  require_positive(scale, "laplace scale");
  return ErrorModel(Kind::Laplace, scale, 1);
}

ErrorModel ErrorModel::gaussian(double sigma)
{
  require_positive(sigma, "gaussian sigma");
  return ErrorModel(Kind::Gaussian, sigma, 1);
}

ErrorModel ErrorModel::uniform(double halfwidth)
{
  require_positive(halfwidth, "uniform halfwidth");
  return ErrorModel(Kind::Uniform, halfwidth, 1);
}

ErrorModel ErrorModel::self_convolved_uniform(double halfwidth, int order)
{
  require_positive(halfwidth, "uniform halfwidth");
  if (order < 1)
    throw InputError("self-convolved uniform order must be a positive integer");
  return ErrorModel(Kind::SelfConvolvedUniform, halfwidth, order);
}

ErrorModel ErrorModel::convolution(const ErrorModel& a, const ErrorModel& b)
{
  ErrorModel m(Kind::Convolution, 0.0, 1);
  m.a_ = std::make_shared<const ErrorModel>(a);
  m.b_ = std::make_shared<const ErrorModel>(b);
  return m;
}

const ErrorModel& ErrorModel::left() const
{
  if (!a_)
    throw std::logic_error("left() on a non-convolution error model");
  return *a_;
}

const ErrorModel& ErrorModel::right() const
{
  if (!b_)
    throw std::logic_error("right() on a non-convolution error model");
  return *b_;
}

std::complex<double> ErrorModel::char_fn(double t) const
{
  switch (kind_) {
  case Kind::Laplace: {
    const double bt = param_ * t;
    return 1.0 / (1.0 + bt * bt);
  }
  case Kind::Gaussian: {
    const double st = param_ * t;
    return std::exp(-0.5 * st * st);
  }
  case Kind::Uniform:
    return sinc(param_ * t);
  case Kind::SelfConvolvedUniform:
    return std::pow(sinc(param_ * t), order_);
  case Kind::Convolution:
    return a_->char_fn(t) * b_->char_fn(t);
  }
  return 0.0;
}

double ErrorModel::log_abs_char_fn(double t) const
{
  switch (kind_) {
  case Kind::Laplace:
    return -std::log1p(param_ * param_ * t * t);
  case Kind::Gaussian:
    return -0.5 * param_ * param_ * t * t;
  case Kind::Uniform:
  case Kind::SelfConvolvedUniform: {
    const double u = param_ * t;
    const double one = std::abs(u) < 1e-4 ? std::log(sinc(u))
                                          : std::log(std::abs(std::sin(u))) - std::log(std::abs(u));
    return order_ * one;
  }
  case Kind::Convolution:
    return a_->log_abs_char_fn(t) + b_->log_abs_char_fn(t);
  }
  return 0.0;
}

double ErrorModel::envelope(double t) const
{
  switch (kind_) {
  case Kind::Laplace:
  case Kind::Gaussian:
    return std::abs(char_fn(t));
  case Kind::Uniform:
  case Kind::SelfConvolvedUniform:
    return std::pow(std::min(1.0, 1.0 / std::abs(param_ * t)), order_);
  case Kind::Convolution:
    return a_->envelope(t) * b_->envelope(t);
  }
  return 1.0;
}

bool ErrorModel::has_real_zeros() const
{
  switch (kind_) {
  case Kind::Uniform:
  case Kind::SelfConvolvedUniform:
    return true;
  case Kind::Convolution:
    return a_->has_real_zeros() || b_->has_real_zeros();
  default:
    return false;
  }
}

std::optional<double> ErrorModel::density(double x) const
{
  switch (kind_) {
  case Kind::Laplace:
    return std::exp(-std::abs(x) / param_) / (2.0 * param_);
  case Kind::Gaussian:
    return std::exp(-0.5 * x * x / (param_ * param_)) / (param_ * std::sqrt(2.0 * std::numbers::pi));
  case Kind::Uniform:
    return std::abs(x) <= param_ ? 1.0 / (2.0 * param_) : 0.0;
  case Kind::SelfConvolvedUniform: {
    // Sum of mu U(-l, l) is 2l * IrwinHall(mu) - mu*l.
    const double s = (x + order_ * param_) / (2.0 * param_);
    return irwin_hall_density(s, order_) / (2.0 * param_);
  }
  case Kind::Convolution:
    return std::nullopt;
  }
  return std::nullopt;
}

double ErrorModel::variance() const
{
  switch (kind_) {
  case Kind::Laplace:
    return 2.0 * param_ * param_;
  case Kind::Gaussian:
    return param_ * param_;
  case Kind::Uniform:
    return param_ * param_ / 3.0;
  case Kind::SelfConvolvedUniform:
    return order_ * param_ * param_ / 3.0;
  case Kind::Convolution:
    return a_->variance() + b_->variance();
  }
  return 0.0;
}

double ErrorModel::draw(Rng& rng) const
{
  switch (kind_) {
  case Kind::Laplace: {
    const double e1 = -std::log1p(-rng.uniform());
    const double e2 = -std::log1p(-rng.uniform());
    return param_ * (e1 - e2);
  }
  case Kind::Gaussian:
    return std::normal_distribution<double>(0.0, param_)(rng);
  case Kind::Uniform:
    return param_ * (2.0 * rng.uniform() - 1.0);
  case Kind::SelfConvolvedUniform: {
    double s = 0.0;
    for (int k = 0; k < order_; ++k)
      s += param_ * (2.0 * rng.uniform() - 1.0);
    return s;
  }
  case Kind::Convolution: {
    const double x = a_->draw(rng);
    return x + b_->draw(rng);
  }
  }
  return 0.0;
}

std::string ErrorModel::describe() const
{
  std::ostringstream os;
  switch (kind_) {
  case Kind::Laplace:
    os << "laplace(b=" << param_ << ")";
    break;
  case Kind::Gaussian:
    os << "gaussian(sigma=" << param_ << ")";
    break;
  case Kind::Uniform:
    os << "uniform(lambda=" << param_ << ")";
    break;
  case Kind::SelfConvolvedUniform:
    os << "self_conv_uniform(lambda=" << param_ << ", mu=" << order_ << ")";
    break;
  case Kind::Convolution:
    os << "convolution(" << a_->describe() << ", " << b_->describe() << ")";
    break;
  }
  return os.str();
}

bool operator==(const ErrorModel& a, const ErrorModel& b)
{
  if (a.kind_ != b.kind_)
    return false;
  if (a.kind_ == ErrorModel::Kind::Convolution)
    return *a.a_ == *b.a_ && *a.b_ == *b.b_;
  return a.param_ == b.param_ && a.order_ == b.order_;
}

std::complex<double> char_fn(const ErrorModel& model, double t)
{
  return model.char_fn(t);
}

SmoothnessClass smoothness_class(const ErrorModel& model)
{
  std::vector<const ErrorModel*> factors;
  collect_factors(model, factors);

  int laplace_count = 0;
  double gauss_var = 0.0;
  int uniform_order = 0;
  std::optional<double> lambda;
  for (const ErrorModel* f : factors) {
    switch (f->kind()) {
    case ErrorModel::Kind::Laplace:
      ++laplace_count;
      break;
    case ErrorModel::Kind::Gaussian:
      gauss_var += f->parameter() * f->parameter();
      break;
    case ErrorModel::Kind::Uniform:
    case ErrorModel::Kind::SelfConvolvedUniform:
      if (lambda && *lambda != f->parameter())
        return UnknownClass{"uniform factors with different halfwidths"};
      lambda = f->parameter();
      uniform_order += f->order();
      break;
    case ErrorModel::Kind::Convolution:
      break;
    }
  }

  if (uniform_order == 0 && gauss_var == 0.0) {
    const double nu = 2.0 * laplace_count;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    auto visit = [&](double t) {
      const double r = std::exp(2.0 * model.log_abs_char_fn(t) + nu * std::log1p(t * t));
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    };
    visit(0.0);
    for (double t : log_scan(1e-3, kScanMax))
      visit(t);
    return OrdinarySmooth{nu, lo / kMargin, hi * kMargin};
  }

  if (uniform_order == 0) {
    const double gamma = 2.0;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (double t : log_scan(1e-3, kScanMax)) {
      const double c = -model.log_abs_char_fn(t) / std::pow(t, gamma);
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    return Supersmooth{gamma, hi * kMargin, lo / kMargin};
  }

  const double lam = *lambda;
  const double T = std::numbers::pi / (2.0 * lam);
  const int mu = uniform_order;
  const double nu = uniform_order + 2.0 * laplace_count;
  const double d = 0.5 * gauss_var;
  const bool super = gauss_var > 0.0;
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (double t : log_scan(T * (1.0 + 1e-9), kScanMax)) {
    const double s = std::abs(std::sin(lam * t));
    if (s == 0.0)
      continue;
    const double tail = super ? d * t * t : nu * std::log(t);
    const double r = std::exp(model.log_abs_char_fn(t) - mu * std::log(s) + tail);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  if (super)
    return OscillatorySupersmooth{d, 2.0, mu, lam, lo / kMargin, hi * kMargin, T};
  return OscillatoryOrdinary{nu, mu, lam, lo / kMargin, hi * kMargin, T};
}

std::string class_name(const SmoothnessClass& cls)
{
  struct Namer
  {
    std::string operator()(const OrdinarySmooth&) const { return "ordinary_smooth"; }
    std::string operator()(const Supersmooth&) const { return "supersmooth"; }
    std::string operator()(const OscillatoryOrdinary&) const { return "oscillatory_ordinary"; }
    std::string operator()(const OscillatorySupersmooth&) const { return "oscillatory_supersmooth"; }
    std::string operator()(const UnknownClass&) const { return "unknown"; }
  };
  return std::visit(Namer{}, cls);
}

std::vector<double> sample_error(const ErrorModel& model, std::size_t n, std::uint64_t seed)
{
  std::vector<double> out;
  out.reserve(n);
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(model.draw(rng));
  return out;
}

} // namespace ridgedeconv
