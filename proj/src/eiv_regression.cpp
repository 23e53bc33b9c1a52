#include "ridgedeconv/eiv_regression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ridgedeconv/errors.hpp"

namespace ridgedeconv {

namespace {

void check_pairs(std::span<const double> a, std::span<const double> y, const char* what)
{
  if (a.size() != y.size()) {
    std::ostringstream msg;
    msg << "regression: " << what << " and Y lengths differ (" << a.size() << " vs " << y.size() << ")";
    throw InputError(msg.str());
  }
  if (a.size() < 2)
    throw InputError("regression needs n >= 2");
}

} // namespace

FreqTable regression_numerator_table(std::span<const double> w, std::span<const double> y,
                                     const ErrorModel& model, const RidgeConfig& cfg, const FreqGrid& tgrid)
{
  check_pairs(w, y, "W");
  FreqTable t = ridge_multiplier_table(model, cfg, w.size(), tgrid);
  const FreqTable v = weighted_ecf(w, y, tgrid);
  for (std::size_t k = 0; k < t.size(); ++k)
    t[k] *= v[k];
  return t;
}

RegressionEstimate estimate_regression(std::span<const double> w, std::span<const double> y,
                                       const ErrorModel& model, const RidgeConfig& cfg_num,
                                       const RidgeConfig& cfg_den, const FreqGrid& tgrid, const SpatialGrid& xs,
                                       const RegressionOptions& options)
{
  check_pairs(w, y, "W");
  cfg_num.validate();
  cfg_den.validate();
  check_integrability(model, cfg_num.r);
  check_integrability(model, cfg_den.r);
  if (!(options.floor_fraction >= 0.0))
    throw InputError("regression: floor fraction must be >= 0");

  const FreqTable num = regression_numerator_table(w, y, model, cfg_num, tgrid);
  FreqTable den = ridge_multiplier_table(model, cfg_den, w.size(), tgrid);
  const FreqTable e = ecf(w, tgrid);
  for (std::size_t k = 0; k < den.size(); ++k)
    den[k] *= e[k];

  RegressionEstimate out{xs, {}, {}, 0, RegressionMeta{w.size(), cfg_num, cfg_den, model}, {}};
  const std::size_t nx = xs.size();
  std::vector<std::complex<double>> top(nx), bottom(nx);
  if (options.ratio == RatioForm::RealParts) {
    const std::vector<double> a = inverse_fourier_real(num, xs);
    const std::vector<double> b = inverse_fourier_real(den, xs);
    for (std::size_t i = 0; i < nx; ++i) {
      top[i] = a[i];
      bottom[i] = b[i];
    }
  } else {
    top = inverse_fourier_complex(num, xs);
    bottom = inverse_fourier_complex(den, xs);
  }

  double sup = 0.0;
  for (const auto& b : bottom)
    sup = std::max(sup, std::abs(b));
  const double floor = options.floor_fraction * sup;

  out.values.resize(nx);
  out.flagged.resize(nx);
  for (std::size_t i = 0; i < nx; ++i) {
    const double mag = std::abs(bottom[i]);
    if (!(mag >= floor) || mag == 0.0) {
      out.flagged[i] = true;
      out.values[i] = std::numeric_limits<double>::quiet_NaN();
      ++out.denominator_floor_hits;
      continue;
    }
    out.values[i] = options.ratio == RatioForm::RealParts ? top[i].real() / bottom[i].real()
                                                          : (top[i] / bottom[i]).real();
  }
  if (out.denominator_floor_hits == nx)
    throw GuardError("regression: denominator degenerate everywhere");
  return out;
}

FreqTable berkson_table(std::span<const double> x, std::span<const double> y, const ErrorModel& model,
                        const RidgeConfig& cfg, const FreqGrid& tgrid)
{
  check_pairs(x, y, "X");
  cfg.validate();
  FreqTable t = spacing_weighted_ecf(x, y, tgrid);
  for (std::size_t k = 0; k < t.size(); ++k) {
    const double tk = tgrid.t(k);
    const std::complex<double> f = model.char_fn(tk);
    t[k] *= f * ridge_weight(std::abs(f), ridge_value(cfg, tk, x.size()), cfg.r);
  }
  return t;
}

RegressionEstimate estimate_berkson(std::span<const double> x, std::span<const double> y,
                                    const ErrorModel& model, const RidgeConfig& cfg, const FreqGrid& tgrid,
                                    const SpatialGrid& xs)
{
  check_pairs(x, y, "X");
  cfg.validate();
  check_integrability(model, cfg.r);
  RegressionEstimate out{xs, {}, std::vector<bool>(xs.size(), false), 0,
                         RegressionMeta{x.size(), cfg, std::nullopt, model}, {}};

  const std::vector<double> d = nearest_neighbor_spacings(x);
  const auto zeros = static_cast<std::size_t>(std::count(d.begin(), d.end(), 0.0));
  if (2 * zeros > d.size()) {
    std::ostringstream msg;
    msg << "duplicate-heavy design: " << zeros << " of " << d.size() << " nearest-neighbour spacings are zero";
    out.warnings.push_back(msg.str());
  }
  out.values = inverse_fourier_real(berkson_table(x, y, model, cfg, tgrid), xs);
  return out;
}

} // namespace ridgedeconv
