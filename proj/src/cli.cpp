#include "ridgedeconv/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <omp.h>

#include "ridgedeconv/eiv_regression.hpp"
#include "ridgedeconv/errors.hpp"
#include "ridgedeconv/io.hpp"
#include "ridgedeconv/ridge_density.hpp"
#include "ridgedeconv/risk_bounds.hpp"
#include "ridgedeconv/simulation.hpp"
#include "ridgedeconv/smoothing.hpp"

namespace ridgedeconv {

namespace fs = std::filesystem;

namespace {

struct Flags
{
  std::string config;
  std::string input;
  std::string output = ".";
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
};

// ---- Config access ----------------------------------------------------------------

const Json* find(const Json& j, const char* key)
{
  return j.contains(key) ? &j.at(key) : nullptr;
}

double get_number(const Json& j, const char* key, double fallback, const std::string& where)
{
  const Json* v = find(j, key);
  if (!v)
    return fallback;
  if (!v->is_number())
    throw InputError(where + ": '" + key + "' must be a number");
  return v->get<double>();
}

std::optional<double> get_opt_number(const Json& j, const char* key, const std::string& where)
{
  if (!find(j, key))
    return std::nullopt;
  return get_number(j, key, 0.0, where);
}

std::size_t get_count(const Json& j, const char* key, std::size_t fallback, const std::string& where)
{
  const Json* v = find(j, key);
  if (!v)
    return fallback;
  if (!v->is_number_integer() || v->get<long long>() < 0)
    throw InputError(where + ": '" + key + "' must be a nonnegative integer");
  return v->get<std::size_t>();
}

std::string get_string(const Json& j, const char* key, const std::string& fallback, const std::string& where)
{
  const Json* v = find(j, key);
  if (!v)
    return fallback;
  if (!v->is_string())
    throw InputError(where + ": '" + key + "' must be a string");
  return v->get<std::string>();
}

bool get_bool(const Json& j, const char* key, bool fallback, const std::string& where)
{
  const Json* v = find(j, key);
  if (!v)
    return fallback;
  if (!v->is_boolean())
    throw InputError(where + ": '" + key + "' must be true or false");
  return v->get<bool>();
}

ErrorModel require_model(const Json& j)
{
  const Json* m = find(j, "model");
  if (!m)
    throw InputError("config: missing 'model'");
  return model_from_json(*m);
}

struct RidgeSpec
{
  double r = 2.0;
  double rho = 0.0;
  std::optional<double> xi;
  std::optional<double> zeta;

  bool fixed() const { return xi || zeta; }
  RidgeConfig config() const
  {
    return xi ? RidgeConfig::with_xi(r, rho, *xi) : RidgeConfig::with_zeta(r, rho, *zeta);
  }
};

RidgeSpec parse_ridge(const Json* j, const std::string& where)
{
  RidgeSpec s;
  if (!j)
    return s;
  check_keys(*j, {"r", "rho", "xi", "zeta"}, where);
  s.r = get_number(*j, "r", 2.0, where);
  s.rho = get_number(*j, "rho", 0.0, where);
  s.xi = get_opt_number(*j, "xi", where);
  s.zeta = get_opt_number(*j, "zeta", where);
  if (s.xi && s.zeta)
    throw InputError(where + ": give at most one of 'xi' and 'zeta'");
  if (s.fixed())
    s.config();
  else
    RidgeConfig::with_xi(s.r, s.rho, 1.0);
  return s;
}

SpatialGrid parse_spatial(const Json* j, const SpatialGrid& fallback)
{
  if (!j)
    return fallback;
  const std::string where = "grid";
  check_keys(*j, {"x_min", "x_max", "n_x"}, where);
  const double lo = get_number(*j, "x_min", fallback.x_min(), where);
  const double hi = get_number(*j, "x_max", fallback.x_max(), where);
  const std::size_t n = get_count(*j, "n_x", fallback.size(), where);
  return SpatialGrid(lo, hi, n);
}

std::vector<double> parse_scale_grid(const Json* j, std::vector<double> fallback, const std::string& where)
{
  if (!j)
    return fallback;
  if (j->is_array()) {
    std::vector<double> g;
    for (const Json& v : *j) {
      if (!v.is_number())
        throw InputError(where + ": entries must be numbers");
      g.push_back(v.get<double>());
    }
    if (g.empty())
      throw InputError(where + ": grid is empty");
    return g;
  }
  check_keys(*j, {"lo", "hi", "count"}, where);
  if (!find(*j, "lo") || !find(*j, "hi") || !find(*j, "count"))
    throw InputError(where + ": expected an array or {lo, hi, count}");
  return log_grid(get_number(*j, "lo", 0.0, where), get_number(*j, "hi", 0.0, where),
                  get_count(*j, "count", 0, where));
}

FreqGrid make_freq_grid(const Json& cfg, double t_max_default, const SpatialGrid& xs)
{
  const double t_max = get_number(cfg, "t_max", t_max_default, "config");
  const std::size_t n_t = get_count(cfg, "n_t", 4096, "config");
  if (!(t_max > 0.0))
    throw InputError("config: 't_max' must be positive");
  return FreqGrid::for_spatial(t_max, xs, n_t);
}

Json load_config(const Flags& flags)
{
  if (flags.config.empty())
    throw InputError("--config is required");
  try {
    return Json::parse(read_file(flags.config));
  } catch (const Json::parse_error& e) {
    throw InputError("config " + flags.config + ": " + e.what());
  }
}

void write_output(const Flags& flags, const std::string& name, const std::string& content)
{
  const fs::path dir(flags.output);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    throw InputError("cannot create output directory " + dir.string());
  write_file_atomic(dir / name, content);
}

std::uint64_t resolve_seed(const Flags& flags, const Json& cfg)
{
  if (flags.seed)
    return *flags.seed;
  const Json* s = find(cfg, "seed");
  if (!s)
    return 1;
  if (!s->is_number_unsigned())
    throw InputError("config: 'seed' must be a nonnegative integer");
  return s->get<std::uint64_t>();
}

// Configured xi grid, or the default for the model and sample size.
std::vector<double> xi_grid_for(const Json& cfg, const ErrorModel& model, std::size_t n)
{
  return parse_scale_grid(find(cfg, "xi_grid"), n > 0 ? default_xi_grid(model, n) : std::vector<double>{}, "xi_grid");
}

// Smallest scale in use sets the truncation for cross-validated runs.
RidgeConfig truncation_config(const RidgeSpec& spec, const std::vector<double>& xi_grid)
{
  if (spec.fixed())
    return spec.config();
  if (xi_grid.empty())
    throw InputError("xi_grid is empty");
  return RidgeConfig::with_xi(spec.r, spec.rho, *std::min_element(xi_grid.begin(), xi_grid.end()));
}

// ---- Subcommands -----------------------------------------------------------------------

int cmd_estimate(const Flags& flags, std::ostream& err)
{
  const Json cfg = load_config(flags);
  check_keys(cfg, {"model", "ridge", "grid", "t_max", "n_t", "xi_grid", "clip"}, "estimate config");
  const ErrorModel model = require_model(cfg);
  const RidgeSpec spec = parse_ridge(find(cfg, "ridge"), "ridge");
  const SpatialGrid xs = parse_spatial(find(cfg, "grid"), SpatialGrid(-10.0, 10.0, 1024));
  xi_grid_for(cfg, model, 0);  // validate before reading the input
  const bool clip = get_bool(cfg, "clip", false, "estimate config");

  if (flags.input.empty())
    throw InputError("--input is required");
  const std::vector<double> w = parse_single_column(read_file(flags.input));
  const std::vector<double> xi_grid = xi_grid_for(cfg, model, w.size());
  check_integrability(model, spec.r);

  const FreqGrid tgrid = make_freq_grid(cfg, suggest_t_max(model, truncation_config(spec, xi_grid), w.size()), xs);
  Json meta;
  RidgeConfig used;
  std::optional<DensityEstimate> est;
  if (spec.fixed()) {
    used = spec.config();
    est.emplace(estimate_density(w, model, used, tgrid, xs, EstimateOptions{clip}));
  } else {
    check_cv_integrability(model, spec.r);
    const CvEvaluator eval(w, model, tgrid);
    const Selection sel = select_xi(eval, spec.r, spec.rho, xi_grid);
    if (sel.boundary_hit)
      err << "warning: cross-validation minimum at the edge of the xi grid (xi=" << sel.value << ")\n";
    used = RidgeConfig::with_xi(spec.r, spec.rho, sel.value);
    est.emplace(estimate_density_from_ecf(eval.ecf_table(), w.size(), model, used, xs, EstimateOptions{clip}));
    meta["selection"] = to_json(sel);
  }
  meta["n"] = w.size();
  meta["model"] = model_to_json(model);
  meta["ridge"] = to_json(used);
  meta["t_max"] = tgrid.t_max();
  meta["n_t"] = tgrid.intervals();
  meta["clip"] = clip;
  write_output(flags, "estimate.csv", density_csv(*est));
  write_output(flags, "estimate.json", dump(meta));
  return 0;
}

int cmd_cv(const Flags& flags, std::ostream& err)
{
  const Json cfg = load_config(flags);
  check_keys(cfg, {"model", "ridge", "grid", "t_max", "n_t", "xi_grid"}, "cv config");
  const ErrorModel model = require_model(cfg);
  const RidgeSpec spec = parse_ridge(find(cfg, "ridge"), "ridge");
  if (spec.fixed())
    throw InputError("cv config: ridge must not fix 'xi' or 'zeta'");
  const SpatialGrid xs = parse_spatial(find(cfg, "grid"), SpatialGrid(-10.0, 10.0, 1024));
  xi_grid_for(cfg, model, 0);  // validate before reading the input

  if (flags.input.empty())
    throw InputError("--input is required");
  const std::vector<double> w = parse_single_column(read_file(flags.input));
  if (w.size() < 2)
    throw InputError("cross-validation needs n >= 2 (n < 2)");
  const std::vector<double> xi_grid = xi_grid_for(cfg, model, w.size());
  check_cv_integrability(model, spec.r);

  const FreqGrid tgrid = make_freq_grid(cfg, suggest_t_max(model, truncation_config(spec, xi_grid), w.size()), xs);
  const Selection sel = select_xi(CvEvaluator(w, model, tgrid), spec.r, spec.rho, xi_grid);

  Json meta = to_json(sel);
  if (sel.boundary_hit) {
    const std::string warning = "cross-validation minimum at the edge of the xi grid";
    err << "warning: " << warning << " (xi=" << sel.value << ")\n";
    meta["warning"] = warning;
  }
  meta["n"] = w.size();
  meta["model"] = model_to_json(model);
  meta["r"] = spec.r;
  meta["rho"] = spec.rho;
  meta["t_max"] = tgrid.t_max();
  meta["n_t"] = tgrid.intervals();
  write_output(flags, "cv_trace.csv", cv_trace_csv(sel.trace));
  write_output(flags, "cv.json", dump(meta));
  return 0;
}

int cmd_regress(const Flags& flags, std::ostream& err)
{
  const Json cfg = load_config(flags);
  check_keys(cfg,
             {"mode", "model", "ridge", "ridge_den", "grid", "t_max", "n_t", "xi_grid", "ratio", "floor_fraction"},
             "regress config");
  const std::string mode = get_string(cfg, "mode", "standard", "regress config");
  if (mode != "standard" && mode != "berkson")
    throw InputError("regress config: 'mode' must be standard or berkson");
  const ErrorModel model = require_model(cfg);
  const RidgeSpec num_spec = parse_ridge(find(cfg, "ridge"), "ridge");
  const SpatialGrid xs = parse_spatial(find(cfg, "grid"), SpatialGrid(-10.0, 10.0, 1024));
  xi_grid_for(cfg, model, 0);  // validate before reading the input

  if (flags.input.empty())
    throw InputError("--input is required");
  const CsvTable table = parse_csv(read_file(flags.input));
  if (table.rows.empty())
    throw InputError("no data");
  if (table.rows.front().size() != 2)
    throw InputError("regression input needs exactly two columns (W,Y or X,Y)");
  const std::vector<double> a = table.column(0);
  const std::vector<double> y = table.column(1);
  const std::vector<double> xi_grid = xi_grid_for(cfg, model, a.size());

  Json meta;
  std::optional<RegressionEstimate> est;
  if (mode == "berkson") {
    for (const char* key : {"ridge_den", "ratio", "floor_fraction"})
      if (find(cfg, key))
        throw InputError(std::string("regress config: '") + key + "' does not apply to berkson mode");
    if (!num_spec.fixed())
      throw InputError("berkson mode needs a fixed 'xi' or 'zeta' in 'ridge'");
    const RidgeConfig rc = num_spec.config();
    const FreqGrid tgrid = make_freq_grid(cfg, suggest_t_max(model, rc, a.size()), xs);
    est.emplace(estimate_berkson(a, y, model, rc, tgrid, xs));
    meta["ridge"] = to_json(rc);
    meta["t_max"] = tgrid.t_max();
  } else {
    const RidgeSpec den_spec = parse_ridge(find(cfg, "ridge_den"), "ridge_den");
    RegressionOptions opts;
    const std::string ratio = get_string(cfg, "ratio", "real_parts", "regress config");
    if (ratio == "complex")
      opts.ratio = RatioForm::ComplexRatio;
    else if (ratio != "real_parts")
      throw InputError("regress config: 'ratio' must be real_parts or complex");
    opts.floor_fraction = get_number(cfg, "floor_fraction", opts.floor_fraction, "regress config");

    const double t_max = std::max(suggest_t_max(model, truncation_config(den_spec, xi_grid), a.size()),
                                  suggest_t_max(model, truncation_config(num_spec, xi_grid), a.size()));
    const FreqGrid tgrid = make_freq_grid(cfg, t_max, xs);
    RidgeConfig den;
    if (den_spec.fixed()) {
      den = den_spec.config();
    } else {
      // Denominator smoothing from density cross-validation on W.
      check_cv_integrability(model, den_spec.r);
      const Selection sel = select_xi(CvEvaluator(a, model, tgrid), den_spec.r, den_spec.rho, xi_grid);
      if (sel.boundary_hit)
        err << "warning: cross-validation minimum at the edge of the xi grid (xi=" << sel.value << ")\n";
      den = RidgeConfig::with_xi(den_spec.r, den_spec.rho, sel.value);
      meta["selection"] = to_json(sel);
    }
    const RidgeConfig num = num_spec.fixed() ? num_spec.config() : RidgeConfig{num_spec.r, num_spec.rho, den.xi, den.zeta};
    est.emplace(estimate_regression(a, y, model, num, den, tgrid, xs, opts));
    meta["ridge"] = to_json(num);
    meta["ridge_den"] = to_json(den);
    meta["ratio"] = ratio;
    meta["t_max"] = tgrid.t_max();
  }
  for (const std::string& w : est->warnings)
    err << "warning: " << w << "\n";
  meta["mode"] = mode;
  meta["n"] = a.size();
  meta["model"] = model_to_json(model);
  meta["denominator_floor_hits"] = est->denominator_floor_hits;
  meta["warnings"] = est->warnings;
  write_output(flags, "regression.csv", regression_csv(*est));
  write_output(flags, "regression.json", dump(meta));
  return 0;
}

struct MethodSpec
{
  EstimationMethod method;
  bool auto_zeta = false;
  bool auto_rho = false;
};

MethodSpec parse_method(const Json* j)
{
  const std::string where = "method";
  MethodSpec out{RidgeMethod{}};
  if (!j)
    return out;
  if (!j->is_object())
    throw InputError(where + ": expected an object");
  const std::string kind = get_string(*j, "kind", "ridge", where);
  if (kind == "ridge") {
    check_keys(*j, {"kind", "r", "rho", "xi", "zeta", "xi_grid"}, where);
    RidgeMethod m;
    m.r = get_number(*j, "r", 2.0, where);
    if (const Json* rho = find(*j, "rho"); rho && rho->is_string()) {
      if (rho->get<std::string>() != "auto")
        throw InputError(where + ": 'rho' must be a number or \"auto\"");
      out.auto_rho = true;
    } else {
      m.rho = get_number(*j, "rho", 0.0, where);
    }
    if (const Json* z = find(*j, "zeta"); z && z->is_string()) {
      if (z->get<std::string>() != "auto")
        throw InputError(where + ": 'zeta' must be a number or \"auto\"");
      out.auto_zeta = true;
      m.zeta = 0.25;
    } else {
      m.zeta = get_opt_number(*j, "zeta", where);
    }
    m.xi = get_opt_number(*j, "xi", where);
    if (m.xi && m.zeta)
      throw InputError(where + ": give at most one of 'xi' and 'zeta'");
    m.xi_grid = parse_scale_grid(find(*j, "xi_grid"), {}, "method.xi_grid");
    out.method = m;
  } else if (kind == "kernel") {
    check_keys(*j, {"kind", "kernel", "bandwidth", "h_grid"}, where);
    KernelMethod m;
    const std::string k = get_string(*j, "kernel", "polycube", where);
    if (k == "sinc")
      m.kind = KernelKind::Sinc;
    else if (k != "polycube")
      throw InputError(where + ": 'kernel' must be sinc or polycube");
    m.bandwidth = get_opt_number(*j, "bandwidth", where);
    m.h_grid = parse_scale_grid(find(*j, "h_grid"), m.h_grid, "method.h_grid");
    out.method = m;
  } else if (kind == "naive") {
    check_keys(*j, {"kind"}, where);
    out.method = NaiveInversion{};
  } else {
    throw InputError(where + ": 'kind' must be ridge, kernel or naive");
  }
  return out;
}

StudyConfig parse_study(const Json& cfg, const Flags& flags, MethodSpec& spec)
{
  StudyConfig sc;
  sc.target = TargetDensity::from_name(get_string(cfg, "target", "normal_mixture", "config"));
  sc.error = require_model(cfg);
  sc.reps = get_count(cfg, "reps", 100, "config");
  spec = parse_method(find(cfg, "method"));
  sc.method = spec.method;
  if (const Json* g = find(cfg, "grid"))
    sc.xs = parse_spatial(g, sc.target.default_grid());
  sc.t_max = get_opt_number(cfg, "t_max", "config");
  sc.min_intervals = get_count(cfg, "n_t", 4096, "config");
  sc.seed = resolve_seed(flags, cfg);
  return sc;
}

int cmd_simulate(const Flags& flags, std::ostream&)
{
  const Json cfg = load_config(flags);
  check_keys(cfg, {"target", "model", "n", "reps", "method", "grid", "t_max", "n_t", "seed"}, "simulate config");
  MethodSpec spec;
  StudyConfig sc = parse_study(cfg, flags, spec);
  if (spec.auto_rho || spec.auto_zeta)
    throw InputError("simulate: \"auto\" smoothing is only available for rates");
  sc.n = get_count(cfg, "n", 400, "simulate config");
  const ISEReport rep = mc_study(sc);
  Json j = to_json(rep);
  j["t_max"] = resolve_t_max(sc);
  write_output(flags, "report.json", dump(j));
  write_output(flags, "figure.csv", figure_csv(rep));
  return 0;
}

int cmd_rates(const Flags& flags, std::ostream&)
{
  const Json cfg = load_config(flags);
  check_keys(cfg, {"target", "model", "n_list", "reps", "method", "grid", "t_max", "n_t", "seed"}, "rates config");
  MethodSpec spec;
  StudyConfig sc = parse_study(cfg, flags, spec);
  const Json* nl = find(cfg, "n_list");
  if (!nl || !nl->is_array())
    throw InputError("rates config: 'n_list' must be an array of sample sizes");
  std::vector<std::size_t> n_list;
  for (const Json& v : *nl) {
    if (!v.is_number_unsigned() || v.get<std::size_t>() == 0)
      throw InputError("rates config: 'n_list' entries must be positive integers");
    n_list.push_back(v.get<std::size_t>());
  }

  Json sel_json;
  if (spec.auto_rho || spec.auto_zeta) {
    auto& m = std::get<RidgeMethod>(sc.method);
    const double beta = sc.target.effective_beta();
    const SmoothnessClass cls = smoothness_class(sc.error);
    if (!std::isfinite(beta) && !std::holds_alternative<Supersmooth>(cls))
      throw InputError("rates: \"auto\" smoothing needs a target of finite smoothness");
    SelectorResult sel;
    if (const auto* oo = std::get_if<OscillatoryOrdinary>(&cls))
      sel = rho_zeta_oscillatory(oo->mu, oo->nu, beta);
    else
      sel = zeta_nonoscillatory(cls, beta);
    if (spec.auto_rho)
      m.rho = sel.rho;
    if (spec.auto_zeta) {
      m.zeta = sel.zeta;
      m.xi.reset();
    }
    if (sel.forced_r)
      m.r = *sel.forced_r;
    sel_json["regime"] = regime_name(sel.regime);
    sel_json["rho"] = m.rho;
    sel_json["zeta"] = sel.zeta;
    sel_json["r"] = m.r;
  }

  const RateStudy study = rate_study(sc, n_list);
  Json j = to_json(study);
  j["target"] = sc.target.name();
  j["model"] = model_to_json(sc.error);
  j["reps"] = sc.reps;
  j["seed"] = sc.seed;
  if (!sel_json.is_null())
    j["selector"] = sel_json;
  write_output(flags, "rates.json", dump(j));
  return 0;
}

int cmd_riskbound(const Flags& flags, std::ostream&)
{
  const Json cfg = load_config(flags);
  check_keys(cfg, {"model", "ridge", "n", "target", "t_max", "n_t"}, "riskbound config");
  const ErrorModel model = require_model(cfg);
  const RidgeSpec spec = parse_ridge(find(cfg, "ridge"), "ridge");
  if (!spec.fixed())
    throw InputError("riskbound config: ridge needs 'xi' or 'zeta'");
  const std::size_t n = get_count(cfg, "n", 0, "riskbound config");
  if (n == 0)
    throw InputError("riskbound config: 'n' must be a positive integer");
  const RidgeConfig rc = spec.config();
  const double t_max = get_number(cfg, "t_max", suggest_t_max(model, rc, n), "riskbound config");
  const std::size_t n_t = get_count(cfg, "n_t", 4096, "riskbound config");
  if (n_t < 8 || n_t % 2 != 0)
    throw InputError("riskbound config: 'n_t' must be even and >= 8");
  const FreqGrid grid(t_max, n_t);

  std::optional<TargetDensity> target;
  if (const Json* t = find(cfg, "target")) {
    if (!t->is_string())
      throw InputError("riskbound config: 'target' must be a string");
    target = TargetDensity::from_name(t->get<std::string>());
  }
  RiskReport rep;
  if (target) {
    const TargetDensity tg = *target;
    rep = risk_report([tg](double t) { return tg.char_fn(t); }, model, rc, n, grid);
  } else {
    rep = risk_report([](double) { return std::complex<double>(0.0); }, model, rc, n, grid);
  }
  Json j = to_json(rep);
  j["target"] = target ? Json(target->name()) : Json(nullptr);
  j["t_max"] = t_max;
  j["n_t"] = n_t;
  write_output(flags, "risk.json", dump(j));
  return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Ridge-parameter deconvolution density estimation", "ridgedeconv"};
  app.require_subcommand(1);
  Flags flags;
  std::uint64_t seed = 0;
  int threads = 0;

  struct Entry
  {
    const char* name;
    const char* help;
    int (*fn)(const Flags&, std::ostream&);
  };
  const Entry entries[] = {
    {"estimate", "Ridge density estimate from a sample of W", cmd_estimate},
    {"cv", "Cross-validation trace over a xi grid", cmd_cv},
    {"regress", "Errors-in-variables regression (standard or berkson)", cmd_regress},
    {"simulate", "Monte Carlo ISE study", cmd_simulate},
    {"rates", "Convergence-rate study over several sample sizes", cmd_rates},
    {"riskbound", "Variance and bias terms of the MISE bound", cmd_riskbound},
  };
  std::vector<CLI::App*> subs;
  for (const Entry& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    sub->add_option("--config", flags.config, "JSON config file");
    sub->add_option("--input", flags.input, "Input CSV");
    sub->add_option("--output", flags.output, "Output directory")->capture_default_str();
    sub->add_option("--seed", seed, "Random seed (overrides the config)");
    sub->add_option("--threads", threads, "OpenMP thread count");
    subs.push_back(sub);
  }

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  for (std::size_t i = 0; i < subs.size(); ++i) {
    CLI::App* sub = subs[i];
    if (!sub->parsed())
      continue;
    if (sub->count("--seed"))
      flags.seed = seed;
    if (sub->count("--threads")) {
      if (threads < 1) {
        err << "error: --threads must be >= 1\n";
        return 2;
      }
      flags.threads = threads;
      omp_set_num_threads(threads);
    }
    try {
      return entries[i].fn(flags, err);
    } catch (const InputError& ex) {
      err << "error: " << ex.what() << "\n";
      return 2;
    } catch (const Json::exception& ex) {
      err << "error: config: " << ex.what() << "\n";
      return 2;
    } catch (const GuardError& ex) {
      err << "error: " << ex.what() << "\n";
      return 1;
    } catch (const std::exception& ex) {
      err << "internal error: " << ex.what() << "\n";
      return 1;
    }
  }
  return 2;
}

int run_cli(int argc, char** argv)
{
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

} // namespace ridgedeconv
