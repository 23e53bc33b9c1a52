#include "ridgedeconv/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include "ridgedeconv/errors.hpp"

namespace ridgedeconv {

namespace fs = std::filesystem;

// ---- Numbers and files ----------------------------------------------------------

std::string format_double(double v)
{
  if (std::isnan(v))
    return "NA";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_file_atomic(const fs::path& path, std::string_view content)
{
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  fs::path tmp = dir / ("." + path.filename().string() + ".tmp" + std::to_string(::getpid()));
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os)
      throw InputError("cannot open " + tmp.string() + " for writing");
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    os.flush();
    if (!os) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw InputError("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw InputError("cannot move output into place at " + path.string());
  }
}

std::string read_file(const fs::path& path)
{
  std::ifstream is(path, std::ios::binary);
  if (!is)
    throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

// ---- CSV --------------------------------------------------------------------------

namespace {

std::string_view trim(std::string_view s)
{
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos)
    return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_number(std::string_view cell, double& out)
{
  cell = trim(cell);
  if (!cell.empty() && cell.front() == '+')
    cell.remove_prefix(1);
  if (cell.empty())
    return false;
  const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), out);
  return res.ec == std::errc() && res.ptr == cell.data() + cell.size() && std::isfinite(out);
}

std::vector<std::string_view> split_cells(std::string_view line)
{
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos)
      break;
    start = comma + 1;
  }
  return cells;
}

} // namespace

std::vector<double> CsvTable::column(std::size_t j) const
{
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows)
    out.push_back(row.at(j));
  return out;
}

CsvTable parse_csv(std::string_view text)
{
  CsvTable table;
  std::size_t width = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool first_content = true;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view line = trim(text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
    ++line_no;
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    if (line.empty())
      continue;

    const auto cells = split_cells(line);
    std::vector<double> row(cells.size());
    bool numeric = true;
    for (std::size_t j = 0; j < cells.size(); ++j)
      numeric = parse_number(cells[j], row[j]) && numeric;

    if (first_content) {
      first_content = false;
      width = cells.size();
      if (!numeric) {
        for (auto c : cells)
          table.header.emplace_back(c);
        continue;
      }
    }
    if (cells.size() != width) {
      std::ostringstream msg;
      msg << "line " << line_no << ": expected " << width << " columns, found " << cells.size();
      throw InputError(msg.str());
    }
    if (!numeric) {
      std::ostringstream msg;
      msg << "line " << line_no << ": cannot parse '" << line << "' as numbers";
      throw InputError(msg.str());
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::vector<double> parse_single_column(std::string_view text)
{
  const CsvTable t = parse_csv(text);
  if (!t.header.empty() && (t.header.size() != 1 || t.header.front() != "w"))
    throw InputError("line 1: expected a single column with optional header 'w'");
  if (!t.rows.empty() && t.rows.front().size() != 1)
    throw InputError("expected one value per line");
  if (t.rows.empty())
    throw InputError("no data");
  return t.column(0);
}

std::string density_csv(const DensityEstimate& est)
{
  std::string out = "x,fhat\n";
  for (std::size_t i = 0; i < est.xs.size(); ++i)
    out += format_double(est.xs.x(i)) + "," + format_double(est.values[i]) + "\n";
  return out;
}

std::string cv_trace_csv(const CvTrace& trace)
{
  std::string out = "xi,J,I_hat,cv\n";
  for (std::size_t i = 0; i < trace.scales.size(); ++i)
    out += format_double(trace.scales[i]) + "," + format_double(trace.J[i]) + "," + format_double(trace.I_hat[i]) +
           "," + format_double(trace.cv[i]) + "\n";
  return out;
}

std::string regression_csv(const RegressionEstimate& est)
{
  std::string out = "x,ghat,flagged\n";
  for (std::size_t i = 0; i < est.xs.size(); ++i) {
    const bool flagged = est.flagged.empty() ? false : est.flagged[i];
    out += format_double(est.xs.x(i)) + "," + (flagged ? std::string("NA") : format_double(est.values[i])) + "," +
           (flagged ? "1" : "0") + "\n";
  }
  return out;
}

std::string figure_csv(const ISEReport& report)
{
  std::string out = "x,truth,est_rank1,est_rank25,est_rank50,est_rank75,est_rank100\n";
  for (std::size_t i = 0; i < report.xs.size(); ++i) {
    out += format_double(report.xs.x(i)) + "," + format_double(report.truth[i]);
    for (const auto& curve : report.curves)
      out += "," + format_double(curve[i]);
    out += "\n";
  }
  return out;
}

// ---- JSON ----------------------------------------------------------------------------

void check_keys(const Json& obj, std::initializer_list<std::string_view> allowed, const std::string& where)
{
  if (!obj.is_object())
    throw InputError(where + ": expected a JSON object");
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (auto a : allowed)
      ok = ok || item.key() == a;
    if (!ok)
      throw InputError(where + ": unknown key '" + item.key() + "'");
  }
}

namespace {

double number_at(const Json& j, const char* key, const std::string& where)
{
  if (!j.contains(key))
    throw InputError(where + ": missing '" + key + "'");
  const Json& v = j.at(key);
  if (!v.is_number())
    throw InputError(where + ": '" + key + "' must be a number");
  return v.get<double>();
}

} // namespace

ErrorModel model_from_json(const Json& j)
{
  const std::string where = "error model";
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw InputError(where + ": expected an object with a string 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "laplace") {
    check_keys(j, {"kind", "scale"}, where);
    return ErrorModel::laplace(number_at(j, "scale", where));
  }
  if (kind == "gaussian") {
    check_keys(j, {"kind", "sigma"}, where);
    return ErrorModel::gaussian(number_at(j, "sigma", where));
  }
  if (kind == "uniform") {
    check_keys(j, {"kind", "lambda"}, where);
    return ErrorModel::uniform(number_at(j, "lambda", where));
  }
  if (kind == "self_conv_uniform") {
    check_keys(j, {"kind", "lambda", "mu"}, where);
    if (!j.contains("mu") || !j.at("mu").is_number_integer())
      throw InputError(where + ": 'mu' must be an integer");
    return ErrorModel::self_convolved_uniform(number_at(j, "lambda", where), j.at("mu").get<int>());
  }
  if (kind == "convolution") {
    check_keys(j, {"kind", "a", "b"}, where);
    if (!j.contains("a") || !j.contains("b"))
      throw InputError(where + ": convolution needs 'a' and 'b'");
    return ErrorModel::convolution(model_from_json(j.at("a")), model_from_json(j.at("b")));
  }
  throw InputError(where + ": unknown kind '" + kind + "'");
}

Json model_to_json(const ErrorModel& model)
{
  Json j;
  switch (model.kind()) {
  case ErrorModel::Kind::Laplace:
    j["kind"] = "laplace";
    j["scale"] = model.parameter();
    break;
  case ErrorModel::Kind::Gaussian:
    j["kind"] = "gaussian";
    j["sigma"] = model.parameter();
    break;
  case ErrorModel::Kind::Uniform:
    j["kind"] = "uniform";
    j["lambda"] = model.parameter();
    break;
  case ErrorModel::Kind::SelfConvolvedUniform:
    j["kind"] = "self_conv_uniform";
    j["lambda"] = model.parameter();
    j["mu"] = model.order();
    break;
  case ErrorModel::Kind::Convolution:
    j["kind"] = "convolution";
    j["a"] = model_to_json(model.left());
    j["b"] = model_to_json(model.right());
    break;
  }
  return j;
}

Json to_json(const RidgeConfig& cfg)
{
  Json j;
  j["r"] = cfg.r;
  j["rho"] = cfg.rho;
  if (cfg.xi)
    j["xi"] = *cfg.xi;
  if (cfg.zeta)
    j["zeta"] = *cfg.zeta;
  return j;
}

namespace {

// JSON has no infinity or NaN; both become null.
Json num(double v)
{
  return std::isfinite(v) ? Json(v) : Json(nullptr);
}

Json num_array(const std::vector<double>& v)
{
  Json a = Json::array();
  for (double x : v)
    a.push_back(num(x));
  return a;
}

} // namespace

Json to_json(const RiskReport& report)
{
  Json j;
  j["V"] = num(report.V);
  j["V1"] = num(report.V1);
  j["V2"] = num(report.V2);
  j["B"] = num(report.B);
  j["bound"] = num(report.bound);
  j["G_measure"] = num(report.G_measure);
  j["n"] = report.n;
  if (report.config)
    j["ridge"] = to_json(*report.config);
  if (report.model)
    j["model"] = model_to_json(*report.model);
  return j;
}

Json to_json(const ISEReport& report)
{
  Json j;
  const StudyConfig& c = report.config;
  j["target"] = c.target.name();
  j["model"] = model_to_json(c.error);
  j["n"] = c.n;
  j["reps"] = c.reps;
  j["seed"] = c.seed;
  j["aise"] = num(report.aise);
  j["se"] = num(report.se);
  Json ranks = Json::object();
  for (std::size_t r = 0; r < ISEReport::kRanks.size(); ++r)
    ranks[std::to_string(ISEReport::kRanks[r])] = report.rank_index[r];
  j["rank_replicates"] = ranks;
  j["boundary_hits"] = report.boundary_hits;
  j["ise"] = num_array(report.ise);
  j["order"] = report.order;
  j["selected"] = num_array(report.selected);
  return j;
}

Json to_json(const RateStudy& study)
{
  Json j;
  j["n"] = study.n_list;
  j["aise"] = num_array(study.aise);
  j["se"] = num_array(study.se);
  j["slope"] = num(study.slope);
  j["intercept"] = num(study.intercept);
  j["slope_se"] = num(study.slope_se);
  j["theoretical_slope"] = num(study.theoretical);
  j["beta"] = num(study.beta);
  return j;
}

Json to_json(const Selection& selection)
{
  Json j;
  j["selected"] = num(selection.value);
  j["argmin"] = selection.trace.argmin;
  j["boundary_hit"] = selection.boundary_hit;
  return j;
}

std::string dump(const Json& j)
{
  return j.dump(2) + "\n";
}

} // namespace ridgedeconv
