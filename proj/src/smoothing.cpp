#include "ridgedeconv/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "ridgedeconv/errors.hpp"

namespace ridgedeconv {

std::string regime_name(Regime regime)
{
  switch (regime) {
  case Regime::OscDominant:
    return "osc_dominant";
  case Regime::Boundary:
    return "boundary";
  case Regime::TailDominant:
    return "tail_dominant";
  case Regime::NonOsc:
    return "non_oscillatory";
  }
  return "?";
}

SelectorResult zeta_nonoscillatory(const SmoothnessClass& cls, double beta)
{
  if (!(beta > 0.5))
    throw InputError("selector: beta must exceed 1/2");
  SelectorResult out;
  out.regime = Regime::NonOsc;
  out.rho = 0.0;
  if (const auto* os = std::get_if<OrdinarySmooth>(&cls)) {
    out.zeta = os->nu / (2.0 * beta + 2.0 * os->nu + 1.0);
    return out;
  }
  if (std::holds_alternative<Supersmooth>(cls)) {
    out.zeta = 0.125;
    out.forced_r = 0.0;
    return out;
  }
  throw InputError("zeta_nonoscillatory: class " + class_name(cls) + " is not non-oscillatory");
}

SelectorResult rho_zeta_oscillatory(int mu, double nu, double beta)
{
  if (mu < 1)
    throw InputError("selector: mu must be >= 1");
  if (!(nu > 0.0))
    throw InputError("selector: nu must be positive");
  if (!(beta > 0.5))
    throw InputError("selector: beta must exceed 1/2");
  if (std::isinf(beta))
    throw InputError("selector: beta must be finite");

  const double lhs = 2.0 * beta + 2.0 * nu + 1.0;
  const double rhs = 4.0 * mu * beta;
  const double pivot = (mu + nu) / (2.0 * mu - 1.0);
  const double tail = 2.0 * mu * beta - nu;

  SelectorResult out;
  if (std::abs(lhs - rhs) <= 1e-12 * std::max(lhs, rhs)) {
    out.regime = Regime::Boundary;
    out.rho = pivot;
    out.zeta = 0.5;
    return out;
  }
  const double lo = lhs < rhs ? pivot : tail;
  const double hi = lhs < rhs ? tail : pivot;
  if (!(lo < hi))
    throw std::logic_error("rho_zeta_oscillatory: empty rho interval");
  out.rho_interval = std::make_pair(lo, hi);
  out.rho = std::max(0.0, 0.5 * (lo + hi));
  if (lhs < rhs) {
    out.regime = Regime::OscDominant;
    out.zeta = 0.5;
  } else {
    out.regime = Regime::TailDominant;
    out.zeta = (nu + out.rho) / lhs;
  }
  return out;
}

double theoretical_exponent(const SmoothnessClass& cls, double beta)
{
  // Limits as beta grows: the oscillatory-dominant regime always wins.
  if (std::isinf(beta) && beta > 0.0) {
    if (std::holds_alternative<OrdinarySmooth>(cls))
      return -1.0;
    if (const auto* oo = std::get_if<OscillatoryOrdinary>(&cls))
      return -1.0 / (2.0 * oo->mu);
    return std::numeric_limits<double>::quiet_NaN();
  }
  if (const auto* os = std::get_if<OrdinarySmooth>(&cls))
    return -2.0 * beta / (2.0 * beta + 2.0 * os->nu + 1.0);
  if (const auto* oo = std::get_if<OscillatoryOrdinary>(&cls)) {
    const SelectorResult sel = rho_zeta_oscillatory(oo->mu, oo->nu, beta);
    if (sel.regime == Regime::TailDominant)
      return -2.0 * beta / (2.0 * beta + 2.0 * oo->nu + 1.0);
    return -1.0 / (2.0 * oo->mu);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

CvEvaluator::CvEvaluator(std::span<const double> w, const ErrorModel& model, const FreqGrid& grid)
  : n_(w.size()), model_(model), ecf_(grid)
{
  if (w.size() < 2)
    throw InputError("cross-validation needs n >= 2 (n < 2)");
  ecf_ = ecf(w, grid);
  ft_.resize(grid.size());
  abs_ft_.resize(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    ft_[k] = model.char_fn(grid.t(k));
    abs_ft_[k] = std::abs(ft_[k]);
  }
}

template <typename Weight>
CvPoint CvEvaluator::evaluate(double scale, Weight&& weight) const
{
  const FreqGrid& g = ecf_.grid;
  const double n = static_cast<double>(n_);
  std::vector<double> wts(g.size());
  for (std::size_t k = 0; k < g.size(); ++k)
    wts[k] = weight(k);

  double j_sum = 0.0, i_sum = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const std::size_t km = g.mirror(k);
    // m(t) ecf(t), symmetrised to the transform of the real part.
    const std::complex<double> gk = std::conj(ft_[k]) * wts[k] * ecf_[k];
    const std::complex<double> gm = std::conj(ft_[km]) * wts[km] * ecf_[km];
    j_sum += g.weight(k) * std::norm(0.5 * (gk + std::conj(gm)));
    // sum_{j != k} exp(it(W_j - W_k)) = n^2 |ecf|^2 - n.
    i_sum += g.weight(k) * wts[k] * (n * n * std::norm(ecf_[k]) - n);
  }
  CvPoint p;
  p.scale = scale;
  p.J = j_sum / (2.0 * std::numbers::pi);
  p.I_hat = i_sum / (2.0 * std::numbers::pi * n * (n - 1.0));
  p.cv = p.J - 2.0 * p.I_hat;
  return p;
}

CvPoint CvEvaluator::ridge(double r, double rho, double xi) const
{
  if (!(xi > 0.0))
    throw InputError("cross-validation: xi must be positive");
  const FreqGrid& g = ecf_.grid;
  return evaluate(xi, [&](std::size_t k) {
    const double h = xi * std::pow(std::abs(g.t(k)), rho);
    return ridge_weight(abs_ft_[k], h, r);
  });
}

CvPoint CvEvaluator::kernel(KernelKind kind, double h) const
{
  if (!(h > 0.0))
    throw InputError("cross-validation: bandwidth must be positive");
  const FreqGrid& g = ecf_.grid;
  if (1.0 / h > g.t_max() * (1.0 + 1e-12))
    throw InputError("kernel cross-validation: frequency grid does not reach 1/h");
  return evaluate(h, [&](std::size_t k) {
    const double kf = kernel_ft(kind, h * g.t(k));
    if (kf == 0.0)
      return 0.0;
    if (abs_ft_[k] < 1e-12)
      throw GuardError("kernel method inapplicable: zero in f_delta^ft inside the kernel support");
    return kf / (abs_ft_[k] * abs_ft_[k]);
  });
}

FreqTable CvEvaluator::ridge_estimate_table(double r, double rho, double xi) const
{
  const FreqTable m = ridge_multiplier_table(model_, RidgeConfig::with_xi(r, rho, xi), n_, ecf_.grid);
  FreqTable out(ecf_.grid);
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = m[k] * ecf_[k];
  return out;
}

void check_cv_integrability(const ErrorModel& model, double r)
{
  const SmoothnessClass cls = smoothness_class(model);
  std::optional<double> nu;
  if (const auto* os = std::get_if<OrdinarySmooth>(&cls))
    nu = os->nu;
  else if (const auto* oo = std::get_if<OscillatoryOrdinary>(&cls))
    nu = oo->nu;
  double need = 0.0;
  if (nu)
    need = std::max(2.0, 2.0 / *nu);
  else if (std::holds_alternative<UnknownClass>(cls))
    need = 2.0;
  if (r < need) {
    std::ostringstream msg;
    msg << "cross-validation guard: need r >= " << need << " for " << class_name(cls) << " errors; got r=" << r;
    throw GuardError(msg.str());
  }
}

CvPoint cv_criterion(std::span<const double> w, const ErrorModel& model, double r, double rho, double xi,
                     const FreqGrid& tgrid)
{
  check_cv_integrability(model, r);
  return CvEvaluator(w, model, tgrid).ridge(r, rho, xi);
}

namespace {

void check_grid(std::span<const double> grid, const char* what)
{
  if (grid.empty())
    throw InputError(std::string(what) + " grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || !std::isfinite(grid[i]))
      throw InputError(std::string(what) + " grid values must be positive");
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw InputError(std::string(what) + " grid must be strictly increasing");
  }
}

template <typename Score>
Selection select_on_grid(std::span<const double> grid, Score&& score)
{
  Selection sel;
  CvTrace& tr = sel.trace;
  for (double s : grid) {
    const CvPoint p = score(s);
    tr.scales.push_back(s);
    tr.J.push_back(p.J);
    tr.I_hat.push_back(p.I_hat);
    tr.cv.push_back(p.cv);
  }
  // Strict comparison: ties go to the smaller parameter.
  for (std::size_t i = 1; i < tr.cv.size(); ++i)
    if (tr.cv[i] < tr.cv[tr.argmin])
      tr.argmin = i;
  sel.value = tr.scales[tr.argmin];
  sel.boundary_hit = grid.size() > 1 && (tr.argmin == 0 || tr.argmin + 1 == grid.size());
  return sel;
}

} // namespace

Selection select_xi(const CvEvaluator& eval, double r, double rho, std::span<const double> xi_grid)
{
  check_grid(xi_grid, "xi");
  return select_on_grid(xi_grid, [&](double xi) { return eval.ridge(r, rho, xi); });
}

Selection select_xi(std::span<const double> w, const ErrorModel& model, double r, double rho,
                    std::span<const double> xi_grid, const FreqGrid& tgrid)
{
  check_grid(xi_grid, "xi");
  check_cv_integrability(model, r);
  return select_xi(CvEvaluator(w, model, tgrid), r, rho, xi_grid);
}

Selection select_bandwidth(const CvEvaluator& eval, KernelKind kind, std::span<const double> h_grid)
{
  check_grid(h_grid, "bandwidth");
  return select_on_grid(h_grid, [&](double h) { return eval.kernel(kind, h); });
}

std::vector<double> log_grid(double lo, double hi, std::size_t count)
{
  if (!(lo > 0.0) || !(hi >= lo) || count == 0)
    throw InputError("log_grid: need 0 < lo <= hi and count >= 1");
  if (count == 1)
    return {lo};
  std::vector<double> g(count);
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < count; ++i)
    g[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

double xi_grid_floor(const ErrorModel& model, std::size_t n)
{
  if (n == 0)
    throw InputError("xi grid: n must be >= 1");
  const SmoothnessClass cls = smoothness_class(model);
  double zeta = 0.5;
  if (std::holds_alternative<OrdinarySmooth>(cls) || std::holds_alternative<Supersmooth>(cls))
    zeta = zeta_nonoscillatory(cls, kReferenceBeta).zeta;
  else if (const auto* oo = std::get_if<OscillatoryOrdinary>(&cls))
    zeta = rho_zeta_oscillatory(oo->mu, oo->nu, kReferenceBeta).zeta;
  else if (std::holds_alternative<OscillatorySupersmooth>(cls))
    zeta = 0.125;
  return std::pow(static_cast<double>(n), -zeta);
}

std::vector<double> default_xi_grid(const ErrorModel& model, std::size_t n)
{
  return log_grid(std::min(xi_grid_floor(model, n), 10.0), 10.0, 40);
}

std::vector<double> wide_xi_grid()
{
  return log_grid(1e-4, 10.0, 40);
}

} // namespace ridgedeconv
