#include "ridgedeconv/risk_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ridgedeconv/errors.hpp"

namespace ridgedeconv {

namespace {

struct Membership
{
  const ErrorModel& model;
  const RidgeConfig& config;
  std::size_t n;

  // Negative inside G.
  double margin(double t) const { return std::abs(model.char_fn(t)) - ridge_value(config, t, n); }
  bool inside(double t) const { return margin(t) < 0.0; }

  double crossing(double a, double b) const
  {
    const bool a_in = inside(a);
    for (int it = 0; it < 80; ++it) {
      const double c = 0.5 * (a + b);
      if (inside(c) == a_in)
        a = c;
      else
        b = c;
    }
    return 0.5 * (a + b);
  }
};

// Trapezoid of g over {t : inside(t) == want} within the band. `g` receives
// the point and, for split cells, the fraction of the cell from its left end.
template <typename Integrand>
double restricted_integral(const Membership& mem, const FreqGrid& grid, bool want, Integrand&& g)
{
  const std::size_t count = grid.size();
  std::vector<char> in(count);
  for (std::size_t k = 0; k < count; ++k)
    in[k] = mem.inside(grid.t(k));

  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < count; ++k) {
    const double a = grid.t(k), b = grid.t(k + 1);
    const bool ia = in[k] != 0, ib = in[k + 1] != 0;
    if (ia == want && ib == want) {
      sum += 0.5 * (g(a, k, 0.0) + g(b, k, 1.0)) * (b - a);
    } else if (ia != ib) {
      const double c = mem.crossing(a, b);
      const double frac = (c - a) / (b - a);
      if (ia == want)
        sum += 0.5 * (g(a, k, 0.0) + g(c, k, frac)) * (c - a);
      else
        sum += 0.5 * (g(c, k, frac) + g(b, k, 1.0)) * (b - c);
    }
  }
  return sum;
}

} // namespace

std::vector<bool> ridge_active_set(const ErrorModel& model, const RidgeConfig& config, std::size_t n,
                                   const FreqGrid& grid)
{
  config.validate();
  std::vector<bool> out(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double t = grid.t(k);
    const double a = std::abs(model.char_fn(t));
    const double h = ridge_value(config, t, n);
    out[k] = a * a < h * h;
  }
  return out;
}

VarianceTerms variance_terms(const ErrorModel& model, const RidgeConfig& config, std::size_t n,
                             const FreqGrid& grid)
{
  config.validate();
  if (n == 0)
    throw InputError("variance terms need n >= 1");
  const Membership mem{model, config, n};
  const double r = config.r;
  auto v_integrand = [&](double t, std::size_t, double) {
    const double a = std::abs(model.char_fn(t));
    const double h = ridge_value(config, t, n);
    if (!(h > 0.0))
      throw GuardError("variance terms: ridge vanishes inside the integration domain");
    return std::pow(a, 2.0 + 2.0 * r) * std::pow(h, -(4.0 + 2.0 * r));
  };
  auto v2_integrand = [&](double t, std::size_t, double) {
    const double a = std::abs(model.char_fn(t));
    return 1.0 / (a * a);
  };

  const double scale = 1.0 / (2.0 * std::numbers::pi * static_cast<double>(n));
  VarianceTerms out;
  if (config.rho > 0.0) {
    out.V = std::numeric_limits<double>::infinity();
  } else {
    double s = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k)
      s += grid.weight(k) * v_integrand(grid.t(k), k, 0.0);
    out.V = scale * s;
  }
  out.V1 = scale * restricted_integral(mem, grid, true, v_integrand);
  out.V2 = scale * restricted_integral(mem, grid, false, v2_integrand);
  return out;
}

double bias_term(const TransformFn& fx_ft, const ErrorModel& model, const RidgeConfig& config, std::size_t n,
                 const FreqGrid& grid)
{
  config.validate();
  const Membership mem{model, config, n};
  const double s = restricted_integral(mem, grid, true, [&](double t, std::size_t, double) { return std::norm(fx_ft(t)); });
  return s / (2.0 * std::numbers::pi);
}

double bias_term(const FreqTable& fx_ft, const ErrorModel& model, const RidgeConfig& config, std::size_t n)
{
  config.validate();
  const Membership mem{model, config, n};
  const double s = restricted_integral(mem, fx_ft.grid, true, [&](double, std::size_t k, double frac) {
    if (frac == 0.0)
      return std::norm(fx_ft[k]);
    if (frac == 1.0)
      return std::norm(fx_ft[k + 1]);
    return (1.0 - frac) * std::norm(fx_ft[k]) + frac * std::norm(fx_ft[k + 1]);
  });
  return s / (2.0 * std::numbers::pi);
}

double active_set_measure(const ErrorModel& model, const RidgeConfig& config, std::size_t n,
                          const FreqGrid& grid)
{
  config.validate();
  const Membership mem{model, config, n};
  return restricted_integral(mem, grid, true, [](double, std::size_t, double) { return 1.0; });
}

std::vector<Interval> active_components(const ErrorModel& model, const RidgeConfig& config, std::size_t n,
                                        const FreqGrid& grid)
{
  config.validate();
  const Membership mem{model, config, n};
  std::vector<Interval> out;
  const std::size_t mid = grid.zero_index();
  bool prev_in = mem.inside(0.0);
  // Left end of the component being traced; meaningful while prev_in.
  double open = 0.0;
  for (std::size_t k = mid + 1; k < grid.size(); ++k) {
    const double t = grid.t(k);
    const bool cur_in = mem.inside(t);
    if (cur_in != prev_in) {
      const double c = mem.crossing(grid.t(k - 1), t);
      if (cur_in)
        open = c;
      else
        out.push_back({open, c});
    }
    prev_in = cur_in;
  }
  if (prev_in)
    out.push_back({open, grid.t(grid.size() - 1)});
  return out;
}

RiskReport mise_bound(double V, double V1, double V2, double B)
{
  RiskReport rep;
  rep.V = V;
  rep.V1 = V1;
  rep.V2 = V2;
  rep.B = B;
  rep.bound = std::min(V, V1 + V2) + B;
  return rep;
}

RiskReport risk_report(const TransformFn& fx_ft, const ErrorModel& model, const RidgeConfig& config,
                       std::size_t n, const FreqGrid& grid)
{
  const VarianceTerms v = variance_terms(model, config, n, grid);
  RiskReport rep = mise_bound(v.V, v.V1, v.V2, bias_term(fx_ft, model, config, n, grid));
  rep.G_measure = active_set_measure(model, config, n, grid);
  rep.n = n;
  rep.config = config;
  rep.model = model;
  return rep;
}

} // namespace ridgedeconv
