#include <gtest/gtest.h>

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "ridgedeconv/errors.hpp"
#include "ridgedeconv/simulation.hpp"

using namespace ridgedeconv;
using std::numbers::pi;

namespace {

std::vector<TargetDensity> targets()
{
  return {TargetDensity::normal_mixture(), TargetDensity::twofold_laplace(), TargetDensity::shifted_chi_sq()};
}

StudyConfig small_study(std::size_t reps)
{
  StudyConfig sc;
  sc.n = 200;
  sc.reps = reps;
  sc.seed = 3;
  return sc;
}

} // namespace

TEST(Targets, ClosedFormMoments)
{
  EXPECT_DOUBLE_EQ(TargetDensity::normal_mixture().mean(), 0.0);
  EXPECT_DOUBLE_EQ(TargetDensity::normal_mixture().variance(), 5.0);
  EXPECT_DOUBLE_EQ(TargetDensity::twofold_laplace().variance(), 4.0);
  // Gamma(3, 2) shifted by -4.
  EXPECT_DOUBLE_EQ(TargetDensity::shifted_chi_sq().mean(), 2.0);
  EXPECT_DOUBLE_EQ(TargetDensity::shifted_chi_sq().variance(), 12.0);
  EXPECT_THROW(TargetDensity::from_name("cauchy"), InputError);
  EXPECT_EQ(TargetDensity::from_name("twofold_laplace"), TargetDensity::twofold_laplace());
}

TEST(Targets, SampleMoments)
{
  for (const auto& t : targets()) {
    const auto x = sample_target(t, 1000000, 11);
    double s = 0.0, s2 = 0.0;
    for (double v : x) {
      s += v;
      s2 += v * v;
    }
    const double mean = s / x.size();
    const double var = s2 / x.size() - mean * mean;
    EXPECT_NEAR(mean, t.mean(), 5.0 * std::sqrt(t.variance() / x.size())) << t.name();
    EXPECT_NEAR(var, t.variance(), 0.02 * t.variance()) << t.name();
  }
}

TEST(Targets, KolmogorovSmirnov)
{
  for (const auto& t : targets()) {
    auto x = sample_target(t, 100000, 12);
    std::sort(x.begin(), x.end());
    double d = 0.0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double c = t.cdf(x[i]);
      d = std::max({d, std::abs(c - i / n), std::abs(c - (i + 1) / n)});
    }
    EXPECT_LT(d, 0.01) << t.name();
  }
}

TEST(Targets, DensityIntegratesAndMatchesTransform)
{
  for (const auto& t : targets()) {
    const SpatialGrid xs = t.default_grid();
    double mass = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
      mass += t.density(xs.x(i)) * xs.spacing() * ((i == 0 || i + 1 == xs.size()) ? 0.5 : 1.0);
    EXPECT_NEAR(mass, 1.0, 1e-4) << t.name();

    for (double u : {0.0, 0.3, 1.0, 2.5}) {
      std::complex<double> num = 0.0;
      const double dx = 1e-3;
      for (double x = -40.0; x <= 40.0; x += dx)
        num += t.density(x) * std::polar(1.0, u * x) * dx;
      EXPECT_LT(std::abs(num - t.char_fn(u)), 1e-4) << t.name() << " t=" << u;
    }
  }
}

TEST(Targets, CdfMatchesDensity)
{
  for (const auto& t : targets()) {
    const double h = 1e-5;
    for (double x : {-3.0, -0.5, 0.0, 1.2, 4.0})
      EXPECT_NEAR((t.cdf(x + h) - t.cdf(x - h)) / (2 * h), t.density(x), 1e-6) << t.name() << " x=" << x;
  }
}

TEST(Ise, KnownValues)
{
  const auto t = TargetDensity::normal_mixture();
  const SpatialGrid xs(-12, 12, 24001);
  std::vector<double> truth(xs.size()), zero(xs.size(), 0.0), shifted(xs.size());
  const double eps = 1e-2;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    truth[i] = t.density(xs.x(i));
    shifted[i] = t.density(xs.x(i) - eps);
  }
  EXPECT_EQ(ise(xs, truth, t), 0.0);
  // int f^2 = (1 + e^-4) / (4 sqrt(pi)).
  EXPECT_NEAR(ise(xs, zero, t), (1.0 + std::exp(-4.0)) / (4.0 * std::sqrt(pi)), 1e-10);
  // ISE of a shift is 2 (int f^2 - autocorrelation at eps), about eps^2 int f'^2.
  double fp2 = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs.x(i);
    const double d = -0.5 * ((x - 2) * std::exp(-0.5 * (x - 2) * (x - 2)) + (x + 2) * std::exp(-0.5 * (x + 2) * (x + 2))) /
                     std::sqrt(2 * pi);
    fp2 += d * d * xs.spacing();
  }
  EXPECT_NEAR(ise(xs, shifted, t), eps * eps * fp2, 1e-3 * eps * eps * fp2);
}

TEST(Ise, RejectsShortGrid)
{
  const auto t = TargetDensity::normal_mixture();
  const SpatialGrid xs(-1, 1, 11);
  EXPECT_THROW(ise(xs, std::vector<double>(11, 0.0), t), InputError);
  EXPECT_THROW(ise(xs, std::vector<double>(10, 0.0), t), InputError);
}

TEST(Ise, SpectralOfTruthIsTail)
{
  const auto t = TargetDensity::normal_mixture();
  const FreqGrid g(3.0, 2048);
  FreqTable table(g);
  for (std::size_t k = 0; k < g.size(); ++k)
    table[k] = t.char_fn(g.t(k));
  const double tail = spectral_tail(t, 3.0);
  EXPECT_NEAR(ise_spectral(table, t), tail, 1e-12);
  // |f^ft|^2 = cos^2(2t) exp(-t^2).
  double num = 0.0;
  for (double u = 3.0; u < 12.0; u += 1e-5)
    num += std::pow(std::cos(2 * u), 2) * std::exp(-u * u) * 1e-5;
  EXPECT_NEAR(tail, num / pi, 1e-8);
}

TEST(McStudy, DeterministicAcrossThreadCounts)
{
  const StudyConfig sc = small_study(8);
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const ISEReport a = mc_study(sc);
  omp_set_num_threads(4);
  const ISEReport b = mc_study(sc);
  omp_set_num_threads(saved);
  EXPECT_EQ(a.ise, b.ise);
  EXPECT_EQ(a.selected, b.selected);
  EXPECT_EQ(a.curves, b.curves);
  EXPECT_EQ(a.aise, b.aise);
}

TEST(McStudy, RankingInvariants)
{
  const ISEReport r = mc_study(small_study(12));
  ASSERT_EQ(r.ise.size(), 12u);
  for (std::size_t i = 1; i < r.order.size(); ++i)
    EXPECT_GE(r.ise[r.order[i - 1]], r.ise[r.order[i]]);
  EXPECT_EQ(r.rank_index.front(), r.order.front());
  EXPECT_EQ(r.rank_index.back(), r.order.back());
  const double worst = *std::max_element(r.ise.begin(), r.ise.end());
  const double best = *std::min_element(r.ise.begin(), r.ise.end());
  EXPECT_EQ(r.ise[r.rank_index.front()], worst);
  EXPECT_EQ(r.ise[r.rank_index.back()], best);
  for (std::size_t j = 0; j < r.curves.size(); ++j) {
    const auto rep = run_replicate(r.config, r.rank_index[j], true);
    EXPECT_EQ(rep.values, r.curves[j]);
    EXPECT_EQ(ise(r.xs, r.curves[j], r.config.target), r.ise[r.rank_index[j]]);
  }
  double sum = 0.0;
  for (double v : r.ise)
    sum += v;
  EXPECT_DOUBLE_EQ(r.aise, sum / 12.0);
  EXPECT_GT(r.se, 0.0);
}

TEST(McStudy, SingleReplicate)
{
  const ISEReport r = mc_study(small_study(1));
  ASSERT_EQ(r.ise.size(), 1u);
  EXPECT_EQ(r.aise, r.ise[0]);
  EXPECT_EQ(r.se, 0.0);
  for (std::size_t j : r.rank_index)
    EXPECT_EQ(j, 0u);
  EXPECT_THROW(mc_study(small_study(0)), InputError);
}

TEST(McStudy, ReplicatesUseDistinctStreams)
{
  const StudyConfig sc = small_study(2);
  EXPECT_NE(replicate_sample(sc, 0), replicate_sample(sc, 1));
  EXPECT_EQ(replicate_sample(sc, 1), replicate_sample(sc, 1));
}

TEST(RateStudy, NeedsThreeSizesOverADecade)
{
  const StudyConfig sc = small_study(2);
  const std::vector<std::size_t> two{100, 1000};
  const std::vector<std::size_t> narrow{100, 200, 400};
  EXPECT_THROW(rate_study(sc, two), InputError);
  EXPECT_THROW(rate_study(sc, narrow), InputError);
}

TEST(RateStudy, FitLineExact)
{
  const std::vector<double> x{1, 2, 3, 4}, y{3, 5, 7, 9};
  const auto [slope, intercept] = fit_line(x, y);
  EXPECT_DOUBLE_EQ(slope, 2.0);
  EXPECT_DOUBLE_EQ(intercept, 1.0);
  EXPECT_THROW(fit_line(std::vector<double>{1, 1}, std::vector<double>{1, 2}), InputError);
}

TEST(RateStudy, AiseDecreasesWithN)
{
  struct Setting
  {
    TargetDensity target;
    ErrorModel error;
    double rho;
  };
  const Setting settings[] = {{TargetDensity::normal_mixture(), ErrorModel::laplace(1.0), 0.0},
                              {TargetDensity::normal_mixture(), ErrorModel::uniform(1.0), 2.0},
                              {TargetDensity::twofold_laplace(), ErrorModel::laplace(1.0), 0.0},
                              {TargetDensity::shifted_chi_sq(), ErrorModel::laplace(1.0), 0.0}};
  const std::vector<std::size_t> ns{100, 400, 1600};
  for (const auto& s : settings) {
    StudyConfig sc;
    sc.target = s.target;
    sc.error = s.error;
    sc.reps = 30;
    sc.seed = 5;
    RidgeMethod m;
    m.rho = s.rho;
    sc.method = m;
    const RateStudy r = rate_study(sc, ns);
    EXPECT_GT(r.aise[0], r.aise[1]) << s.target.name() << " " << s.error.describe();
    EXPECT_GT(r.aise[1], r.aise[2]) << s.target.name() << " " << s.error.describe();
    EXPECT_LT(r.slope, 0.0);
  }
}

TEST(Baselines, RidgeBeatsNaiveInversion)
{
  StudyConfig sc;
  sc.n = 400;
  sc.reps = 20;
  sc.seed = 9;
  const double ridge = mc_study(sc).aise;
  sc.method = NaiveInversion{};
  const double naive = mc_study(sc).aise;
  EXPECT_LT(ridge, naive) << "ridge " << ridge << " naive " << naive;
}

TEST(Baselines, NadarayaWatsonConstantAndLoo)
{
  const std::vector<double> w{-1.0, -0.2, 0.4, 1.1, 2.0};
  const std::vector<double> y(5, 3.0);
  const std::vector<double> xs{-0.5, 0.0, 1.5};
  for (double v : nadaraya_watson(w, y, 0.5, xs))
    EXPECT_NEAR(v, 3.0, 1e-14);
  const std::vector<double> hs{0.1, 0.5, 1.0};
  const double h = nadaraya_watson_loo_bandwidth(w, y, hs);
  EXPECT_TRUE(h == 0.1 || h == 0.5 || h == 1.0);
  EXPECT_THROW(nadaraya_watson(w, y, 0.0, xs), InputError);
}
