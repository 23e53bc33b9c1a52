#include "ridgedeconv/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "ridgedeconv/errors.hpp"

namespace ridgedeconv {

namespace {

double std_normal_cdf(double z)
{
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double std_normal_pdf(double z)
{
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

double exp1(Rng& rng)
{
  return -std::log1p(-rng.uniform());
}

} // namespace

// ---- Targets ----------------------------------------------------------------

TargetDensity TargetDensity::from_name(const std::string& name)
{
  if (name == "normal_mixture")
    return normal_mixture();
  if (name == "twofold_laplace")
    return twofold_laplace();
  if (name == "shifted_chi_sq")
    return shifted_chi_sq();
  throw InputError("unknown target '" + name + "' (expected normal_mixture, twofold_laplace or shifted_chi_sq)");
}

std::string TargetDensity::name() const
{
  switch (kind_) {
  case Kind::NormalMixture:
    return "normal_mixture";
  case Kind::TwofoldLaplace:
    return "twofold_laplace";
  case Kind::ShiftedChiSq:
    return "shifted_chi_sq";
  }
  return "?";
}

double TargetDensity::density(double x) const
{
  switch (kind_) {
  case Kind::NormalMixture:
    return 0.5 * (std_normal_pdf(x - 2.0) + std_normal_pdf(x + 2.0));
  case Kind::TwofoldLaplace:
    return 0.25 * (1.0 + std::abs(x)) * std::exp(-std::abs(x));
  case Kind::ShiftedChiSq: {
    const double u = x + 4.0;
    return u > 0.0 ? u * u * std::exp(-0.5 * u) / 16.0 : 0.0;
  }
  }
  return 0.0;
}

double TargetDensity::cdf(double x) const
{
  switch (kind_) {
  case Kind::NormalMixture:
    return 0.5 * (std_normal_cdf(x - 2.0) + std_normal_cdf(x + 2.0));
  case Kind::TwofoldLaplace: {
    const double upper = 0.25 * (2.0 + std::abs(x)) * std::exp(-std::abs(x));
    return x >= 0.0 ? 1.0 - upper : upper;
  }
  case Kind::ShiftedChiSq: {
    const double v = 0.5 * (x + 4.0);
    if (v <= 0.0)
      return 0.0;
    return -std::expm1(-v) - std::exp(-v) * (v + 0.5 * v * v);
  }
  }
  return 0.0;
}

std::complex<double> TargetDensity::char_fn(double t) const
{
  switch (kind_) {
  case Kind::NormalMixture:
    return std::cos(2.0 * t) * std::exp(-0.5 * t * t);
  case Kind::TwofoldLaplace: {
    const double a = 1.0 / (1.0 + t * t);
    return a * a;
  }
  case Kind::ShiftedChiSq: {
    const std::complex<double> base(1.0, -2.0 * t);
    return std::polar(1.0, -4.0 * t) / (base * base * base);
  }
  }
  return 0.0;
}

double TargetDensity::mean() const
{
  return kind_ == Kind::ShiftedChiSq ? 2.0 : 0.0;
}

double TargetDensity::variance() const
{
  switch (kind_) {
  case Kind::NormalMixture:
    return 5.0;
  case Kind::TwofoldLaplace:
    return 4.0;
  case Kind::ShiftedChiSq:
    return 12.0;
  }
  return 0.0;
}

double TargetDensity::effective_beta() const
{
  switch (kind_) {
  case Kind::NormalMixture:
    return std::numeric_limits<double>::infinity();
  case Kind::TwofoldLaplace:  // |f^ft|^2 ~ t^-8
    return 3.5 - 0.1;
  case Kind::ShiftedChiSq:    // |f^ft|^2 ~ t^-6
    return 2.5 - 0.1;
  }
  return 0.0;
}

SpatialGrid TargetDensity::default_grid() const
{
  // Spacing ~0.0195 throughout; the heavier tails need wider ranges to keep
  // the off-grid mass below 1e-4.
  switch (kind_) {
  case Kind::NormalMixture:
    return SpatialGrid(-10.0, 10.0, 1024);
  case Kind::TwofoldLaplace:
    return SpatialGrid(-12.0, 12.0, 1229);
  case Kind::ShiftedChiSq:
    return SpatialGrid(-10.0, 30.0, 2048);
  }
  return SpatialGrid(-10.0, 10.0, 1024);
}

double TargetDensity::draw(Rng& rng) const
{
  switch (kind_) {
  case Kind::NormalMixture: {
    const double centre = rng.uniform() < 0.5 ? 2.0 : -2.0;
    return centre + std::normal_distribution<double>(0.0, 1.0)(rng);
  }
  case Kind::TwofoldLaplace:
    return (exp1(rng) - exp1(rng)) + (exp1(rng) - exp1(rng));
  case Kind::ShiftedChiSq:  // Gamma(3, scale 2) - 4
    return 2.0 * (exp1(rng) + exp1(rng) + exp1(rng)) - 4.0;
  }
  return 0.0;
}

std::vector<double> sample_target(const TargetDensity& target, std::size_t n, std::uint64_t seed)
{
  if (n == 0)
    throw InputError("sample_target: n must be >= 1");
  Rng rng(seed);
  std::vector<double> out(n);
  for (double& v : out)
    v = target.draw(rng);
  return out;
}

// ---- Integrated squared error -------------------------------------------------

double ise(const SpatialGrid& xs, std::span<const double> values, const TargetDensity& truth, double max_outside)
{
  if (values.size() != xs.size())
    throw InputError("ise: value count does not match the grid");
  const double outside = truth.cdf(xs.x_min()) + (1.0 - truth.cdf(xs.x_max()));
  if (outside > max_outside) {
    std::ostringstream msg;
    msg << "ise: grid [" << xs.x_min() << ", " << xs.x_max() << "] misses " << outside << " of the mass of "
        << truth.name() << " (limit " << max_outside << ")";
    throw InputError(msg.str());
  }
  std::vector<double> sq(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double d = values[i] - truth.density(xs.x(i));
    sq[i] = d * d;
  }
  return trapezoid(xs, sq);
}

double ise(const DensityEstimate& estimate, const TargetDensity& truth, double max_outside)
{
  return ise(estimate.xs, estimate.values, truth, max_outside);
}

double spectral_tail(const TargetDensity& truth, double t_max)
{
  // Transforms decay at least like t^-3, so three decades hold the tail.
  constexpr int kPoints = 4000;
  const double a = std::log(t_max), b = std::log(t_max * 1e3);
  double sum = 0.0;
  double prev_t = t_max, prev_v = std::norm(truth.char_fn(t_max));
  for (int i = 1; i < kPoints; ++i) {
    const double t = std::exp(a + (b - a) * i / (kPoints - 1));
    const double v = std::norm(truth.char_fn(t));
    sum += 0.5 * (prev_v + v) * (t - prev_t);
    prev_t = t;
    prev_v = v;
  }
  return 2.0 * sum / (2.0 * std::numbers::pi);
}

double ise_spectral(const FreqTable& estimate_ft, const TargetDensity& truth)
{
  const FreqGrid& g = estimate_ft.grid;
  double sum = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const std::complex<double> h = 0.5 * (estimate_ft[k] + std::conj(estimate_ft[g.mirror(k)]));
    sum += g.weight(k) * std::norm(h - truth.char_fn(g.t(k)));
  }
  return sum / (2.0 * std::numbers::pi) + spectral_tail(truth, g.t_max());
}

// ---- Studies ----------------------------------------------------------------------

std::vector<double> study_xi_grid(const StudyConfig& config, const RidgeMethod& method)
{
  return method.xi_grid.empty() ? default_xi_grid(config.error, config.n) : method.xi_grid;
}

double resolve_t_max(const StudyConfig& config)
{
  if (config.t_max)
    return *config.t_max;
  return std::visit(
    [&](const auto& m) -> double {
      using M = std::decay_t<decltype(m)>;
      if constexpr (std::is_same_v<M, RidgeMethod>) {
        RidgeConfig cfg;
        if (m.zeta)
          cfg = RidgeConfig::with_zeta(m.r, m.rho, *m.zeta);
        else if (m.xi)
          cfg = RidgeConfig::with_xi(m.r, m.rho, *m.xi);
        else {
          const std::vector<double> grid = study_xi_grid(config, m);
          cfg = RidgeConfig::with_xi(m.r, m.rho, *std::min_element(grid.begin(), grid.end()));
        }
        return suggest_t_max(config.error, cfg, config.n);
      } else if constexpr (std::is_same_v<M, KernelMethod>) {
        double h = 0.0;
        if (m.bandwidth)
          h = *m.bandwidth;
        else if (!m.h_grid.empty())
          h = *std::min_element(m.h_grid.begin(), m.h_grid.end());
        if (!(h > 0.0))
          throw InputError("kernel method: bandwidth must be positive");
        return 1.0 / h;
      } else {
        const double floor = xi_grid_floor(config.error, config.n);
        return suggest_t_max(config.error, RidgeConfig::with_xi(2.0, 0.0, floor), config.n);
      }
    },
    config.method);
}

SpatialGrid study_spatial_grid(const StudyConfig& config)
{
  return config.xs ? *config.xs : config.target.default_grid();
}

FreqGrid study_freq_grid(const StudyConfig& config)
{
  return FreqGrid::for_spatial(resolve_t_max(config), study_spatial_grid(config), config.min_intervals);
}

std::vector<double> replicate_sample(const StudyConfig& config, std::size_t k)
{
  const std::uint64_t rep_seed = derive_seed(config.seed, k);
  std::vector<double> w = sample_target(config.target, config.n, derive_seed(rep_seed, 0));
  Rng noise(derive_seed(rep_seed, 1));
  for (double& v : w)
    v += config.error.draw(noise);
  return w;
}

FreqTable naive_inversion_table(const FreqTable& ecf_table, const ErrorModel& model)
{
  FreqTable out(ecf_table.grid);
  for (std::size_t k = 0; k < out.size(); ++k) {
    const std::complex<double> f = model.char_fn(ecf_table.grid.t(k));
    if (std::abs(f) == 0.0)
      throw GuardError("naive inversion: f_delta^ft vanishes on the frequency grid");
    out[k] = ecf_table[k] / f;
  }
  return out;
}

ReplicateResult run_replicate(const StudyConfig& config, std::size_t k, bool keep_values)
{
  const std::vector<double> w = replicate_sample(config, k);
  const FreqGrid tgrid = study_freq_grid(config);
  const SpatialGrid xs = study_spatial_grid(config);

  ReplicateResult res;
  res.selected = std::numeric_limits<double>::quiet_NaN();
  res.oracle_min_ise = std::numeric_limits<double>::quiet_NaN();

  const FreqTable table = std::visit(
    [&](const auto& m) -> FreqTable {
      using M = std::decay_t<decltype(m)>;
      if constexpr (std::is_same_v<M, RidgeMethod>) {
        check_integrability(config.error, m.r);
        if (m.xi || m.zeta) {
          const RidgeConfig cfg = m.xi ? RidgeConfig::with_xi(m.r, m.rho, *m.xi)
                                       : RidgeConfig::with_zeta(m.r, m.rho, *m.zeta);
          res.selected = m.xi ? *m.xi : std::pow(static_cast<double>(config.n), -*m.zeta);
          FreqTable t = ridge_multiplier_table(config.error, cfg, config.n, tgrid);
          const FreqTable e = ecf(w, tgrid);
          for (std::size_t i = 0; i < t.size(); ++i)
            t[i] *= e[i];
          return t;
        }
        check_cv_integrability(config.error, m.r);
        const CvEvaluator eval(w, config.error, tgrid);
        const std::vector<double> xi_grid = study_xi_grid(config, m);
        const Selection sel = select_xi(eval, m.r, m.rho, xi_grid);
        res.selected = sel.value;
        res.boundary_hit = sel.boundary_hit;
        if (config.oracle) {
          double best = std::numeric_limits<double>::infinity();
          for (double xi : xi_grid)
            best = std::min(best, ise_spectral(eval.ridge_estimate_table(m.r, m.rho, xi), config.target));
          res.oracle_min_ise = best;
        }
        return eval.ridge_estimate_table(m.r, m.rho, sel.value);
      } else if constexpr (std::is_same_v<M, KernelMethod>) {
        const CvEvaluator eval(w, config.error, tgrid);
        double h = 0.0;
        if (m.bandwidth) {
          h = *m.bandwidth;
        } else {
          const Selection sel = select_bandwidth(eval, m.kind, m.h_grid);
          h = sel.value;
          res.boundary_hit = sel.boundary_hit;
        }
        res.selected = h;
        return kernel_deconv_table(eval.ecf_table(), config.error, KernelConfig{m.kind, h});
      } else {
        return naive_inversion_table(ecf(w, tgrid), config.error);
      }
    },
    config.method);

  res.spectral_ise = ise_spectral(table, config.target);
  std::vector<double> values = inverse_fourier_real(table, xs);
  res.ise = ise(xs, values, config.target);
  if (keep_values)
    res.values = std::move(values);
  return res;
}

ISEReport mc_study(const StudyConfig& config)
{
  if (config.reps == 0)
    throw InputError("mc_study: reps must be >= 1");
  if (config.n == 0)
    throw InputError("mc_study: n must be >= 1");

  std::vector<ReplicateResult> results(config.reps);
  std::exception_ptr failure;
  const auto reps = static_cast<std::ptrdiff_t>(config.reps);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t k = 0; k < reps; ++k) {
    try {
      results[static_cast<std::size_t>(k)] = run_replicate(config, static_cast<std::size_t>(k));
    } catch (...) {
#pragma omp critical(ridgedeconv_mc_failure)
      if (!failure)
        failure = std::current_exception();
    }
  }
  if (failure)
    std::rethrow_exception(failure);

  ISEReport rep;
  rep.config = config;
  for (const ReplicateResult& r : results) {
    rep.ise.push_back(r.ise);
    rep.selected.push_back(r.selected);
    rep.spectral_ise.push_back(r.spectral_ise);
    rep.oracle_min_ise.push_back(r.oracle_min_ise);
    rep.boundary_hits += r.boundary_hit ? 1 : 0;
  }

  const std::size_t m = rep.ise.size();
  rep.order.resize(m);
  std::iota(rep.order.begin(), rep.order.end(), std::size_t{0});
  std::stable_sort(rep.order.begin(), rep.order.end(),
                   [&](std::size_t a, std::size_t b) { return rep.ise[a] > rep.ise[b]; });

  double sum = 0.0;
  for (double v : rep.ise)
    sum += v;
  rep.aise = sum / static_cast<double>(m);
  if (m > 1) {
    double ss = 0.0;
    for (double v : rep.ise)
      ss += (v - rep.aise) * (v - rep.aise);
    rep.se = std::sqrt(ss / static_cast<double>(m - 1) / static_cast<double>(m));
  }

  for (std::size_t j = 0; j < ISEReport::kRanks.size(); ++j) {
    const double pos = static_cast<double>(ISEReport::kRanks[j] - 1) * static_cast<double>(m - 1) / 99.0;
    rep.rank_index[j] = rep.order[static_cast<std::size_t>(std::lround(pos))];
  }

  rep.xs = study_spatial_grid(config);
  rep.truth.resize(rep.xs.size());
  for (std::size_t i = 0; i < rep.xs.size(); ++i)
    rep.truth[i] = config.target.density(rep.xs.x(i));
  for (std::size_t j = 0; j < rep.curves.size(); ++j)
    rep.curves[j] = run_replicate(config, rep.rank_index[j], true).values;
  return rep;
}

std::pair<double, double> fit_line(std::span<const double> x, std::span<const double> y)
{
  if (x.size() != y.size() || x.size() < 2)
    throw InputError("fit_line: need two or more (x, y) pairs");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0))
    throw InputError("fit_line: x values are all equal");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

RateStudy rate_study(const StudyConfig& base, std::span<const std::size_t> n_list)
{
  if (n_list.size() < 3)
    throw InputError("rate study: need at least 3 sample sizes");
  const auto [lo, hi] = std::minmax_element(n_list.begin(), n_list.end());
  if (*lo == 0 || static_cast<double>(*hi) < 10.0 * static_cast<double>(*lo))
    throw InputError("rate study: sample sizes must span at least one decade");

  RateStudy out;
  out.n_list.assign(n_list.begin(), n_list.end());
  std::vector<double> lx, ly;
  for (std::size_t n : n_list) {
    StudyConfig cfg = base;
    cfg.n = n;
    cfg.seed = derive_seed(base.seed, n);
    const ISEReport rep = mc_study(cfg);
    out.aise.push_back(rep.aise);
    out.se.push_back(rep.se);
    lx.push_back(std::log(static_cast<double>(n)));
    ly.push_back(std::log(rep.aise));
  }
  std::tie(out.slope, out.intercept) = fit_line(lx, ly);

  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / static_cast<double>(lx.size());
  double sxx = 0.0;
  for (double v : lx)
    sxx += (v - mx) * (v - mx);
  double var = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double c = (lx[i] - mx) / sxx;
    const double rel = out.se[i] / out.aise[i];
    var += c * c * rel * rel;
  }
  out.slope_se = std::sqrt(var);
  out.beta = base.target.effective_beta();
  out.theoretical = theoretical_exponent(smoothness_class(base.error), out.beta);
  return out;
}

// ---- Baselines ------------------------------------------------------------------------

std::vector<double> nadaraya_watson(std::span<const double> w, std::span<const double> y, double h,
                                    std::span<const double> xs)
{
  if (w.size() != y.size() || w.empty())
    throw InputError("nadaraya_watson: need equal, nonempty W and Y");
  if (!(h > 0.0))
    throw InputError("nadaraya_watson: bandwidth must be positive");
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
      const double u = (xs[i] - w[j]) / h;
      const double k = std::exp(-0.5 * u * u);
      num += k * y[j];
      den += k;
    }
    out[i] = den > 0.0 ? num / den : std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

double nadaraya_watson_loo_bandwidth(std::span<const double> w, std::span<const double> y,
                                     std::span<const double> h_grid)
{
  if (w.size() != y.size() || w.size() < 2)
    throw InputError("nadaraya_watson: need n >= 2 paired values");
  if (h_grid.empty())
    throw InputError("nadaraya_watson: bandwidth grid is empty");
  double best_h = h_grid.front();
  double best = std::numeric_limits<double>::infinity();
  for (double h : h_grid) {
    double score = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      double num = 0.0, den = 0.0;
      for (std::size_t j = 0; j < w.size(); ++j) {
        if (j == i)
          continue;
        const double u = (w[i] - w[j]) / h;
        const double k = std::exp(-0.5 * u * u);
        num += k * y[j];
        den += k;
      }
      if (den <= 0.0) {
        score = std::numeric_limits<double>::infinity();
        break;
      }
      const double r = y[i] - num / den;
      score += r * r;
    }
    if (score < best) {
      best = score;
      best_h = h;
    }
  }
  return best_h;
}

} // namespace ridgedeconv
