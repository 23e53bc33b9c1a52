#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ridgedeconv/error_models.hpp"
#include "ridgedeconv/ridge_density.hpp"
#include "ridgedeconv/spectral.hpp"

namespace ridgedeconv {

// ---- Theoretical (rho, zeta) selectors ------------------------------------

enum class Regime
{
  OscDominant,   // 2b + 2v + 1 < 4 mu b
  Boundary,      // equality
  TailDominant,  // 2b + 2v + 1 > 4 mu b
  NonOsc
};

std::string regime_name(Regime regime);

struct SelectorResult
{
  double rho = 0.0;
  double zeta = 0.0;
  Regime regime = Regime::NonOsc;
  //! Open interval rho was drawn from; absent when rho is pinned.
  std::optional<std::pair<double, double>> rho_interval;
  //! r forced by the regime (supersmooth errors use r = 0).
  std::optional<double> forced_r;
};

//! Constant ridge (rho = 0) for non-oscillatory errors: zeta = nu/(2 beta +
//! 2 nu + 1) for ordinary-smooth, the fixed 1/8 in (0, 1/4) for supersmooth.
SelectorResult zeta_nonoscillatory(const SmoothnessClass& cls, double beta);

//! Polynomial ridge for errors whose transform has zeros of order mu.
//! Open intervals are resolved to their midpoint, clamped to rho >= 0.
//! beta must be finite.
SelectorResult rho_zeta_oscillatory(int mu, double nu, double beta);

//! MISE exponent e in O(n^e) implied by the selector (NaN for logarithmic
//! rates). Infinite beta gives the limiting exponent.
double theoretical_exponent(const SmoothnessClass& cls, double beta);

// ---- Cross-validation ------------------------------------------------------

struct CvPoint
{
  double scale = 0.0;  // xi, or the bandwidth h for kernel estimators
  double J = 0.0;
  double I_hat = 0.0;
  double cv = 0.0;
};

struct CvTrace
{
  std::vector<double> scales;
  std::vector<double> J;
  std::vector<double> I_hat;
  std::vector<double> cv;
  std::size_t argmin = 0;
};

struct Selection
{
  double value = 0.0;
  CvTrace trace;
  //! The minimiser sits on the first or last grid point; widen the grid.
  bool boundary_hit = false;
};

//! Holds the empirical characteristic function and |f^ft| on the grid so that
//! many smoothing parameters can be scored for one sample.
class CvEvaluator
{
public:
  CvEvaluator(std::span<const double> w, const ErrorModel& model, const FreqGrid& grid);

  //! J(xi) - 2 Re I^(xi) for the ridge h(t) = xi |t|^rho.
  CvPoint ridge(double r, double rho, double xi) const;
  //! Same criterion for the kernel estimator with bandwidth h.
  CvPoint kernel(KernelKind kind, double h) const;

  const FreqTable& ecf_table() const { return ecf_; }
  std::size_t n() const { return n_; }
  const ErrorModel& model() const { return model_; }

  //! Frequency table of the ridge estimator before inversion.
  FreqTable ridge_estimate_table(double r, double rho, double xi) const;

private:
  template <typename Weight>
  CvPoint evaluate(double scale, Weight&& weight) const;

  std::size_t n_;
  ErrorModel model_;
  FreqTable ecf_;
  std::vector<std::complex<double>> ft_;
  std::vector<double> abs_ft_;
};

//! Pair-sum unbiased CV criterion (J, Re I^, CV) at one xi.
CvPoint cv_criterion(std::span<const double> w, const ErrorModel& model, double r, double rho, double xi,
                     const FreqGrid& tgrid);

//! r >= max(2, 2/nu) for ordinary-smooth families, r >= 0 for supersmooth.
void check_cv_integrability(const ErrorModel& model, double r);

Selection select_xi(std::span<const double> w, const ErrorModel& model, double r, double rho,
                    std::span<const double> xi_grid, const FreqGrid& tgrid);
Selection select_xi(const CvEvaluator& eval, double r, double rho, std::span<const double> xi_grid);

Selection select_bandwidth(const CvEvaluator& eval, KernelKind kind, std::span<const double> h_grid);

//! `count` log-spaced points from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, std::size_t count);

//! Smoothness index of the reference target class used to place the CV grid:
//! two integrable derivatives.
inline constexpr double kReferenceBeta = 2.0;

//! Lower end of the default CV grid: the theoretical ridge level n^-zeta for
//! the model's class at kReferenceBeta (1/8 for supersmooth classes, 1/2
//! when the class is unknown). Smoother targets call for larger ridges, so
//! the grid only rules out levels below every rate-optimal choice.
double xi_grid_floor(const ErrorModel& model, std::size_t n);

//! 40 log-spaced points on [xi_grid_floor(model, n), 10].
std::vector<double> default_xi_grid(const ErrorModel& model, std::size_t n);

//! 40 log-spaced points on [1e-4, 10], independent of the data.
std::vector<double> wide_xi_grid();

} // namespace ridgedeconv
