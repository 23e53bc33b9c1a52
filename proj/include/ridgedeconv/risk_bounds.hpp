#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "ridgedeconv/error_models.hpp"
#include "ridgedeconv/ridge_density.hpp"
#include "ridgedeconv/spectral.hpp"

namespace ridgedeconv {

// Numerical evaluation of the MISE decomposition of the ridge estimator:
//   MISE <= V + B  and  MISE <= V1 + V2 + B,
// with G = {t : |f^ft(t)| < h(t)} the ridge-dominated frequencies,
//   V  = (2 pi n)^-1 int     |f^ft|^(2+2r) h^-(4+2r)
//   V1 = (2 pi n)^-1 int_G   |f^ft|^(2+2r) h^-(4+2r)
//   V2 = (2 pi n)^-1 int_G^c |f^ft|^-2
//   B  = (2 pi)^-1   int_G   |f_X^ft|^2   (for one given target f_X).
// Integrals run over the band of the frequency grid. Cells where membership
// changes are split at the crossing, located by bisection.

struct VarianceTerms
{
  //! +inf when rho > 0: the integrand diverges at t = 0.
  double V = 0.0;
  double V1 = 0.0;
  double V2 = 0.0;
};

struct Interval
{
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
};

struct RiskReport
{
  double V = 0.0, V1 = 0.0, V2 = 0.0, B = 0.0;
  double bound = 0.0;
  double G_measure = 0.0;
  std::size_t n = 0;
  std::optional<RidgeConfig> config;
  std::optional<ErrorModel> model;
};

//! Indicator of G on the grid points.
std::vector<bool> ridge_active_set(const ErrorModel& model, const RidgeConfig& config, std::size_t n,
                                   const FreqGrid& grid);

VarianceTerms variance_terms(const ErrorModel& model, const RidgeConfig& config, std::size_t n,
                             const FreqGrid& grid);

using TransformFn = std::function<std::complex<double>(double)>;

double bias_term(const TransformFn& fx_ft, const ErrorModel& model, const RidgeConfig& config, std::size_t n,
                 const FreqGrid& grid);
//! Table form; |f_X^ft|^2 is interpolated linearly inside split cells.
double bias_term(const FreqTable& fx_ft, const ErrorModel& model, const RidgeConfig& config, std::size_t n);

//! Lebesgue measure of G within the band.
double active_set_measure(const ErrorModel& model, const RidgeConfig& config, std::size_t n,
                          const FreqGrid& grid);

//! Maximal intervals of G with t >= 0 inside the band, endpoints refined by
//! bisection. A component reaching t_max is reported with hi = t_max.
std::vector<Interval> active_components(const ErrorModel& model, const RidgeConfig& config, std::size_t n,
                                        const FreqGrid& grid);

//! bound = min(V, V1 + V2) + B.
RiskReport mise_bound(double V, double V1, double V2, double B);

RiskReport risk_report(const TransformFn& fx_ft, const ErrorModel& model, const RidgeConfig& config,
                       std::size_t n, const FreqGrid& grid);

} // namespace ridgedeconv
