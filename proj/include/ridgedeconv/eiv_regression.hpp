#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ridgedeconv/error_models.hpp"
#include "ridgedeconv/ridge_density.hpp"
#include "ridgedeconv/spectral.hpp"

namespace ridgedeconv {

enum class RatioForm
{
  //! Re(numerator) / Re(denominator), each inverted separately.
  RealParts,
  //! Re(numerator / denominator) with both kept complex.
  ComplexRatio
};

struct RegressionOptions
{
  RatioForm ratio = RatioForm::RealParts;
  //! Points with |denominator| < floor_fraction * sup |denominator| are flagged.
  double floor_fraction = 1e-3;
};

struct RegressionMeta
{
  std::size_t n = 0;
  RidgeConfig numerator;
  //! Absent for the Berkson estimator, which has no denominator.
  std::optional<RidgeConfig> denominator;
  ErrorModel model;
};

struct RegressionEstimate
{
  SpatialGrid xs;
  //! NaN at flagged points.
  std::vector<double> values;
  std::vector<bool> flagged;
  std::size_t denominator_floor_hits = 0;
  RegressionMeta meta;
  std::vector<std::string> warnings;
};

//! Ratio of two ridge inversions: the numerator carries
//! n^-1 sum Y_j exp(itW_j), the denominator the empirical characteristic
//! function of W, each with its own ridge. Throws GuardError when every
//! point is flagged.
RegressionEstimate estimate_regression(std::span<const double> w, std::span<const double> y,
                                       const ErrorModel& model, const RidgeConfig& cfg_num,
                                       const RidgeConfig& cfg_den, const FreqGrid& tgrid, const SpatialGrid& xs,
                                       const RegressionOptions& options = {});

//! Real part of (1/2pi) int f^ft(t) |f^ft|^r w^(t) / max(|f^ft|, h)^(r+2) e^{-itx} dt
//! with w^(t) = sum_j D_j Y_j exp(itX_j).
RegressionEstimate estimate_berkson(std::span<const double> x, std::span<const double> y,
                                    const ErrorModel& model, const RidgeConfig& cfg, const FreqGrid& tgrid,
                                    const SpatialGrid& xs);

//! Numerator table m(t) v^(t) before inversion; linear in y.
FreqTable regression_numerator_table(std::span<const double> w, std::span<const double> y,
                                     const ErrorModel& model, const RidgeConfig& cfg, const FreqGrid& tgrid);

//! Berkson table before inversion; linear in y.
FreqTable berkson_table(std::span<const double> x, std::span<const double> y, const ErrorModel& model,
                        const RidgeConfig& cfg, const FreqGrid& tgrid);

} // namespace ridgedeconv
