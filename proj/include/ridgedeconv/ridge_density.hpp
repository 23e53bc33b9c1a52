#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ridgedeconv/error_models.hpp"
#include "ridgedeconv/spectral.hpp"

namespace ridgedeconv {

//! Ridge h(t) = xi |t|^rho, or n^-zeta |t|^rho, together with the shape
//! exponent r of the multiplier.
struct RidgeConfig
{
  double r = 2.0;
  double rho = 0.0;
  std::optional<double> xi;
  std::optional<double> zeta;

  static RidgeConfig with_xi(double r, double rho, double xi);
  static RidgeConfig with_zeta(double r, double rho, double zeta);

  //! Throws InputError unless r >= 0, rho >= 0 and exactly one positive
  //! scale (xi or zeta) is set.
  void validate() const;

  friend bool operator==(const RidgeConfig&, const RidgeConfig&) = default;
};

enum class KernelKind
{
  Sinc,     // K^ft = 1 on [-1, 1]
  PolyCube  // K^ft = (1 - t^2)^3 on [-1, 1]
};

struct KernelConfig
{
  KernelKind kind = KernelKind::PolyCube;
  double bandwidth = 0.5;
};

struct EstimateMeta
{
  std::size_t n = 0;
  std::variant<RidgeConfig, KernelConfig, std::monostate> config;
  ErrorModel model;
};

struct DensityEstimate
{
  SpatialGrid xs;
  std::vector<double> values;
  EstimateMeta meta;
};

struct EstimateOptions
{
  //! Replace the raw real part by max(f, 0) renormalised to unit mass on xs.
  bool clip_renormalize = false;
};

double ridge_value(const RidgeConfig& config, double t, std::optional<std::size_t> n = std::nullopt);

//! |f|^r / max(|f|, h)^(r+2); the real factor shared by the estimator, the
//! cross-validation criterion and the risk terms.
double ridge_weight(double abs_ft, double ridge, double r);

//! f^ft(-t) |f^ft(t)|^r / max(|f^ft(t)|, h(t))^(r+2).
std::complex<double> ridge_multiplier(const ErrorModel& model, const RidgeConfig& config, double t,
                                      std::optional<std::size_t> n = std::nullopt);

FreqTable ridge_multiplier_table(const ErrorModel& model, const RidgeConfig& config,
                                 std::optional<std::size_t> n, const FreqGrid& grid);

//! Smallest admissible r for the model's class: (r+1) nu > 1 for the
//! ordinary-smooth families, r >= 0 for supersmooth ones, r >= 1 when the
//! class is unknown. Throws GuardError naming the bound.
void check_integrability(const ErrorModel& model, double r);

//! Truncation frequency beyond which the analytic envelope of the
//! multiplier carries less than `rel_tol` of its mass, clamped to [t_floor, t_cap].
double suggest_t_max(const ErrorModel& model, const RidgeConfig& config, std::optional<std::size_t> n,
                     double rel_tol = 1e-6, double t_floor = 8.0, double t_cap = 200.0);

//! Ridge deconvolution estimate Re f~_X on xs.
DensityEstimate estimate_density(std::span<const double> w, const ErrorModel& model,
                                 const RidgeConfig& config, const FreqGrid& tgrid, const SpatialGrid& xs,
                                 const EstimateOptions& options = {});

//! Same, reusing a precomputed empirical characteristic function of n points.
DensityEstimate estimate_density_from_ecf(const FreqTable& ecf_table, std::size_t n, const ErrorModel& model,
                                          const RidgeConfig& config, const SpatialGrid& xs,
                                          const EstimateOptions& options = {});

double kernel_ft(KernelKind kind, double s);

//! Frequency-domain table K^ft(h t) ecf(t) / f^ft(t) of the classical
//! deconvolution kernel estimator. Throws GuardError if f^ft vanishes on
//! |t| <= 1/h and InputError if the grid does not reach 1/h.
FreqTable kernel_deconv_table(const FreqTable& ecf_table, const ErrorModel& model, const KernelConfig& kernel);

DensityEstimate kernel_deconv_estimate(std::span<const double> w, const ErrorModel& model,
                                       const KernelConfig& kernel, const FreqGrid& tgrid, const SpatialGrid& xs);

//! Transform of the equivalent kernel L for a constant ridge h.
std::complex<double> equivalent_kernel_ft(const ErrorModel& model, double h, double r, double t);

void clip_and_renormalize(const SpatialGrid& xs, std::vector<double>& values);

} // namespace ridgedeconv
