#include "ridgedeconv/ridge_density.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ridgedeconv/errors.hpp"

namespace ridgedeconv {

RidgeConfig RidgeConfig::with_xi(double r, double rho, double xi)
{
  RidgeConfig c{r, rho, xi, std::nullopt};
  c.validate();
  return c;
}

RidgeConfig RidgeConfig::with_zeta(double r, double rho, double zeta)
{
  RidgeConfig c{r, rho, std::nullopt, zeta};
  c.validate();
  return c;
}

void RidgeConfig::validate() const
{
  if (!(r >= 0.0) || !std::isfinite(r))
    throw InputError("ridge: r must be >= 0");
  if (!(rho >= 0.0) || !std::isfinite(rho))
    throw InputError("ridge: rho must be >= 0");
  if (xi.has_value() == zeta.has_value())
    throw InputError("ridge: exactly one of xi and zeta must be set");
  const double scale = xi ? *xi : *zeta;
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw InputError(xi ? "ridge: xi must be positive" : "ridge: zeta must be positive");
}

double ridge_value(const RidgeConfig& config, double t, std::optional<std::size_t> n)
{
  const double shape = std::pow(std::abs(t), config.rho);
  if (config.xi)
    return *config.xi * shape;
  if (!n || *n == 0)
    throw InputError("ridge: zeta-form ridge needs the sample size n");
  return std::pow(static_cast<double>(*n), -*config.zeta) * shape;
}

double ridge_weight(double abs_ft, double ridge, double r)
{
  const double denom = std::max(abs_ft, ridge);
  if (!(denom > 0.0))
    throw std::logic_error("ridge_weight: |f^ft| and h both vanish");
  if (r == 2.0) {
    const double q = abs_ft / denom;
    return q * q / (denom * denom);
  }
  return std::pow(abs_ft, r) / std::pow(denom, r + 2.0);
}

std::complex<double> ridge_multiplier(const ErrorModel& model, const RidgeConfig& config, double t,
                                      std::optional<std::size_t> n)
{
  const std::complex<double> f = model.char_fn(t);
  return model.char_fn(-t) * ridge_weight(std::abs(f), ridge_value(config, t, n), config.r);
}

FreqTable ridge_multiplier_table(const ErrorModel& model, const RidgeConfig& config,
                                 std::optional<std::size_t> n, const FreqGrid& grid)
{
  config.validate();
  FreqTable table(grid);
  const std::size_t mid = grid.zero_index();
  for (std::size_t k = mid; k < grid.size(); ++k) {
    const double t = grid.t(k);
    const std::complex<double> f = model.char_fn(t);
    const std::complex<double> m = std::conj(f) * ridge_weight(std::abs(f), ridge_value(config, t, n), config.r);
    table[k] = m;
    table[grid.mirror(k)] = std::conj(m);
  }
  return table;
}

void check_integrability(const ErrorModel& model, double r)
{
  const SmoothnessClass cls = smoothness_class(model);
  std::optional<double> nu;
  if (const auto* os = std::get_if<OrdinarySmooth>(&cls))
    nu = os->nu;
  else if (const auto* oo = std::get_if<OscillatoryOrdinary>(&cls))
    nu = oo->nu;

  std::ostringstream msg;
  if (nu) {
    if (!((r + 1.0) * *nu > 1.0)) {
      msg << "integrability guard: need (r+1)*nu > 1 for " << class_name(cls) << " errors (nu=" << *nu
          << "), i.e. r > " << std::max(0.0, 1.0 / *nu - 1.0) << "; got r=" << r;
      throw GuardError(msg.str());
    }
  } else if (std::holds_alternative<UnknownClass>(cls)) {
    if (r < 1.0) {
      msg << "integrability guard: smoothness class unknown, need r >= 1; got r=" << r;
      throw GuardError(msg.str());
    }
  } else if (r < 0.0) {
    throw GuardError("integrability guard: need r >= 0");
  }
}

double suggest_t_max(const ErrorModel& model, const RidgeConfig& config, std::optional<std::size_t> n,
                     double rel_tol, double t_floor, double t_cap)
{
  config.validate();
  const bool zeros = model.has_real_zeros();
  auto bound = [&](double t) {
    const double h = ridge_value(config, t, n);
    if (!zeros) {
      const double a = std::abs(model.char_fn(t));
      return a * ridge_weight(a, h, config.r);
    }
    if (h <= 0.0)
      return 1.0;
    const double env = model.envelope(t);
    return std::pow(std::min(env, h), config.r + 1.0) / std::pow(h, config.r + 2.0);
  };

  std::vector<double> ts;
  for (int i = 0; i <= 1000; ++i)
    ts.push_back(0.01 * i);
  for (int i = 1; i <= 4000; ++i)
    ts.push_back(10.0 * std::pow(1e4, i / 4000.0));
  std::vector<double> cum(ts.size(), 0.0);
  double prev = bound(ts[0]);
  for (std::size_t i = 1; i < ts.size(); ++i) {
    const double cur = bound(ts[i]);
    cum[i] = cum[i - 1] + 0.5 * (prev + cur) * (ts[i] - ts[i - 1]);
    prev = cur;
  }
  const double total = cum.back();
  double t_max = t_cap;
  for (std::size_t i = 1; i < ts.size(); ++i) {
    const double tail = total - cum[i];
    if (tail <= rel_tol * cum[i]) {
      t_max = ts[i];
      break;
    }
  }
  return std::clamp(t_max, t_floor, t_cap);
}

void clip_and_renormalize(const SpatialGrid& xs, std::vector<double>& values)
{
  for (double& v : values)
    v = std::max(v, 0.0);
  const double mass = trapezoid(xs, values);
  if (!(mass > 0.0))
    throw GuardError("clip-and-renormalize: estimate has no positive mass on the grid");
  for (double& v : values)
    v /= mass;
}

DensityEstimate estimate_density_from_ecf(const FreqTable& ecf_table, std::size_t n, const ErrorModel& model,
                                          const RidgeConfig& config, const SpatialGrid& xs,
                                          const EstimateOptions& options)
{
  FreqTable g = ridge_multiplier_table(model, config, n, ecf_table.grid);
  for (std::size_t k = 0; k < g.size(); ++k)
    g[k] *= ecf_table[k];
  DensityEstimate est{xs, inverse_fourier_real(g, xs), EstimateMeta{n, config, model}};
  if (options.clip_renormalize)
    clip_and_renormalize(xs, est.values);
  return est;
}

DensityEstimate estimate_density(std::span<const double> w, const ErrorModel& model, const RidgeConfig& config,
                                 const FreqGrid& tgrid, const SpatialGrid& xs, const EstimateOptions& options)
{
  if (w.empty())
    throw InputError("no data");
  config.validate();
  check_integrability(model, config.r);
  return estimate_density_from_ecf(ecf(w, tgrid), w.size(), model, config, xs, options);
}

double kernel_ft(KernelKind kind, double s)
{
  if (std::abs(s) > 1.0)
    return 0.0;
  if (kind == KernelKind::Sinc)
    return 1.0;
  const double u = 1.0 - s * s;
  return u * u * u;
}

FreqTable kernel_deconv_table(const FreqTable& ecf_table, const ErrorModel& model, const KernelConfig& kernel)
{
  const double h = kernel.bandwidth;
  if (!(h > 0.0) || !std::isfinite(h))
    throw InputError("kernel estimator: bandwidth must be positive");
  const FreqGrid& grid = ecf_table.grid;
  const double band = 1.0 / h;
  if (band > grid.t_max() * (1.0 + 1e-12))
    throw InputError("kernel estimator: frequency grid does not reach 1/h");

  // Zero scan on [0, 1/h]: exact zeros, sign changes between grid points, and
  // the band edge itself. Symmetric models have real transforms.
  const std::size_t mid = grid.zero_index();
  double prev = model.char_fn(0.0).real();
  auto fail = [] {
    throw GuardError("kernel method inapplicable: zero in f_delta^ft inside the kernel support");
  };
  for (std::size_t k = mid; k < grid.size() && grid.t(k) <= band; ++k) {
    const double v = model.char_fn(grid.t(k)).real();
    if (std::abs(v) < 1e-12 || (v > 0.0) != (prev > 0.0))
      fail();
    prev = v;
  }
  const double edge = model.char_fn(band).real();
  if (std::abs(edge) < 1e-12 || (edge > 0.0) != (prev > 0.0))
    fail();

  FreqTable table(grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double t = grid.t(k);
    const double kf = kernel_ft(kernel.kind, h * t);
    table[k] = kf == 0.0 ? std::complex<double>(0.0) : kf * ecf_table[k] / model.char_fn(t);
  }
  return table;
}

DensityEstimate kernel_deconv_estimate(std::span<const double> w, const ErrorModel& model,
                                       const KernelConfig& kernel, const FreqGrid& tgrid, const SpatialGrid& xs)
{
  if (w.empty())
    throw InputError("no data");
  const FreqTable table = kernel_deconv_table(ecf(w, tgrid), model, kernel);
  return DensityEstimate{xs, inverse_fourier_real(table, xs), EstimateMeta{w.size(), kernel, model}};
}

std::complex<double> equivalent_kernel_ft(const ErrorModel& model, double h, double r, double t)
{
  if (!(h > 0.0))
    throw InputError("equivalent kernel: h must be positive");
  const std::complex<double> f = model.char_fn(t);
  const double a = std::abs(f);
  if (a <= h)
    return std::pow(h, -(r + 2.0)) * model.char_fn(-t) * std::pow(a, r);
  return 1.0 / f;
}

} // namespace ridgedeconv
