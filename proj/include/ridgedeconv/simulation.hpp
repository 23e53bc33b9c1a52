#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ridgedeconv/error_models.hpp"
#include "ridgedeconv/ridge_density.hpp"
#include "ridgedeconv/rng.hpp"
#include "ridgedeconv/smoothing.hpp"
#include "ridgedeconv/spectral.hpp"

namespace ridgedeconv {

// ---- Targets ----------------------------------------------------------------

class TargetDensity
{
public:
  enum class Kind
  {
    NormalMixture,   // (N(2,1) + N(-2,1)) / 2
    TwofoldLaplace,  // sum of two standard Laplace variables
    ShiftedChiSq     // (x+4)^2 exp(-(x+4)/2) / 16 on x > -4
  };

  static TargetDensity normal_mixture() { return TargetDensity(Kind::NormalMixture); }
  static TargetDensity twofold_laplace() { return TargetDensity(Kind::TwofoldLaplace); }
  static TargetDensity shifted_chi_sq() { return TargetDensity(Kind::ShiftedChiSq); }
  //! "normal_mixture", "twofold_laplace" or "shifted_chi_sq"; InputError otherwise.
  static TargetDensity from_name(const std::string& name);

  Kind kind() const { return kind_; }
  std::string name() const;

  double density(double x) const;
  double cdf(double x) const;
  std::complex<double> char_fn(double t) const;
  double mean() const;
  double variance() const;

  //! Largest Sobolev index with int |f^ft|^2 (1+t^2)^beta < inf, less 0.1;
  //! +inf for the normal mixture.
  double effective_beta() const;

  //! Evaluation grid holding all but a negligible fraction of the mass.
  SpatialGrid default_grid() const;

  double draw(Rng& rng) const;

  friend bool operator==(const TargetDensity&, const TargetDensity&) = default;

private:
  explicit TargetDensity(Kind kind) : kind_(kind) {}
  Kind kind_;
};

std::vector<double> sample_target(const TargetDensity& target, std::size_t n, std::uint64_t seed);

// ---- Integrated squared error -------------------------------------------------

//! Trapezoid of (f^ - f_X)^2 over the estimate's grid. Throws InputError when
//! the truth has more than `max_outside` mass off the grid.
double ise(const DensityEstimate& estimate, const TargetDensity& truth, double max_outside = 1e-4);
double ise(const SpatialGrid& xs, std::span<const double> values, const TargetDensity& truth,
           double max_outside = 1e-4);

//! (2pi)^-1 int |G_H(t) - f_X^ft(t)|^2 dt for the estimate with transform
//! table G (Hermitian part taken), including the truth's mass beyond the band.
double ise_spectral(const FreqTable& estimate_ft, const TargetDensity& truth);

//! (2pi)^-1 int_{|t| > t_max} |f_X^ft(t)|^2 dt.
double spectral_tail(const TargetDensity& truth, double t_max);

// ---- Estimation methods ---------------------------------------------------------

struct RidgeMethod
{
  double r = 2.0;
  double rho = 0.0;
  //! Fixed xi, fixed zeta, or neither (cross-validate xi over xi_grid).
  std::optional<double> xi;
  std::optional<double> zeta;
  //! Empty means default_xi_grid(error, n).
  std::vector<double> xi_grid;
};

struct KernelMethod
{
  KernelKind kind = KernelKind::PolyCube;
  std::optional<double> bandwidth;
  std::vector<double> h_grid = log_grid(0.2, 2.0, 40);
};

//! ecf(t) / f^ft(t) on the band: no ridge protection.
struct NaiveInversion
{
};

using EstimationMethod = std::variant<RidgeMethod, KernelMethod, NaiveInversion>;

struct StudyConfig
{
  TargetDensity target = TargetDensity::normal_mixture();
  ErrorModel error = ErrorModel::laplace(1.0);
  std::size_t n = 400;
  std::size_t reps = 100;
  EstimationMethod method = RidgeMethod{};
  //! Defaults to the target's grid.
  std::optional<SpatialGrid> xs;
  //! Defaults to a method-dependent truncation (see resolve_t_max).
  std::optional<double> t_max;
  std::size_t min_intervals = 4096;
  std::uint64_t seed = 1;
  //! Also record, per replicate, the smallest spectral ISE over the CV grid.
  bool oracle = false;
};

//! CV grid of a ridge method, resolving the empty default.
std::vector<double> study_xi_grid(const StudyConfig& config, const RidgeMethod& method);

//! Ridge: suggest_t_max at the smallest scale in use. Kernel: 1/h for the
//! smallest bandwidth. Naive: the ridge default for r = 2, rho = 0
//! at the floor of the default grid.
double resolve_t_max(const StudyConfig& config);
FreqGrid study_freq_grid(const StudyConfig& config);
SpatialGrid study_spatial_grid(const StudyConfig& config);

//! Observations W = X + delta of replicate k: X from sub-stream 0 and delta
//! from sub-stream 1 of derive_seed(seed, k).
std::vector<double> replicate_sample(const StudyConfig& config, std::size_t k);

struct ReplicateResult
{
  double ise = 0.0;
  //! CV-selected (or fixed) smoothing parameter; NaN when there is none.
  double selected = 0.0;
  bool boundary_hit = false;
  //! ISE of the selection, and the best on the grid, both spectral (oracle runs only).
  double spectral_ise = 0.0;
  double oracle_min_ise = 0.0;
  std::vector<double> values;
};

ReplicateResult run_replicate(const StudyConfig& config, std::size_t k, bool keep_values = false);

struct ISEReport
{
  static constexpr std::array<std::size_t, 5> kRanks{1, 25, 50, 75, 100};

  std::vector<double> ise;
  //! Replicate indices by descending ISE (ties by index).
  std::vector<std::size_t> order;
  double aise = 0.0;
  //! Monte Carlo standard error of aise.
  double se = 0.0;
  //! Replicate index at each rank of kRanks, scaled to the replicate count.
  std::array<std::size_t, 5> rank_index{};
  std::vector<double> selected;
  std::size_t boundary_hits = 0;
  std::vector<double> spectral_ise;
  std::vector<double> oracle_min_ise;

  SpatialGrid xs{0.0, 1.0, 2};
  std::vector<double> truth;
  std::array<std::vector<double>, 5> curves;

  StudyConfig config;
};

ISEReport mc_study(const StudyConfig& config);

// ---- Rate studies -----------------------------------------------------------------

struct RateStudy
{
  std::vector<std::size_t> n_list;
  std::vector<double> aise;
  std::vector<double> se;
  double slope = 0.0;
  double intercept = 0.0;
  //! Delta-method standard error of the slope from the per-n Monte Carlo errors.
  double slope_se = 0.0;
  double theoretical = 0.0;
  double beta = 0.0;
};

//! Runs mc_study at each n (seed derived from the base seed and n) and fits
//! log AISE = a + slope log n by least squares. Needs >= 3 sizes spanning a decade.
RateStudy rate_study(const StudyConfig& base, std::span<const std::size_t> n_list);

//! Least-squares slope and intercept of y on x.
std::pair<double, double> fit_line(std::span<const double> x, std::span<const double> y);

// ---- Baselines ------------------------------------------------------------------------

FreqTable naive_inversion_table(const FreqTable& ecf_table, const ErrorModel& model);

//! Nadaraya-Watson regression with a Gaussian kernel, ignoring measurement error.
std::vector<double> nadaraya_watson(std::span<const double> w, std::span<const double> y, double h,
                                    std::span<const double> xs);

//! Leave-one-out least-squares choice of the Nadaraya-Watson bandwidth.
double nadaraya_watson_loo_bandwidth(std::span<const double> w, std::span<const double> y,
                                     std::span<const double> h_grid);

} // namespace ridgedeconv
