#pragma once

#include <cstddef>
#include <filesystem>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ridgedeconv/eiv_regression.hpp"
#include "ridgedeconv/error_models.hpp"
#include "ridgedeconv/ridge_density.hpp"
#include "ridgedeconv/risk_bounds.hpp"
#include "ridgedeconv/simulation.hpp"
#include "ridgedeconv/smoothing.hpp"

namespace ridgedeconv {

using Json = nlohmann::ordered_json;

// ---- Numbers and files ----------------------------------------------------------

//! Shortest decimal text that reads back to the same double.
std::string format_double(double v);

//! Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

// ---- CSV --------------------------------------------------------------------------

struct CsvTable
{
  std::vector<std::string> header;
  //! Row-major numeric cells.
  std::vector<std::vector<double>> rows;

  std::vector<double> column(std::size_t j) const;
};

//! Numeric CSV. The first line is taken as a header when any of its cells is
//! not a number. Every row must have the same number of cells. Errors carry
//! the 1-based line number.
CsvTable parse_csv(std::string_view text);

//! One value per line, with an optional header "w".
std::vector<double> parse_single_column(std::string_view text);

std::string density_csv(const DensityEstimate& est);
std::string cv_trace_csv(const CvTrace& trace);
//! Columns x, ghat, flagged; flagged values are written as NA.
std::string regression_csv(const RegressionEstimate& est);
//! Columns x, truth, est_rank1, est_rank25, est_rank50, est_rank75, est_rank100.
std::string figure_csv(const ISEReport& report);

// ---- JSON ----------------------------------------------------------------------------

//! Throws InputError naming the first key of `obj` outside `allowed`.
void check_keys(const Json& obj, std::initializer_list<std::string_view> allowed, const std::string& where);

//! {"kind": "laplace", "scale": b} | {"kind": "gaussian", "sigma": s} |
//! {"kind": "uniform", "lambda": l} | {"kind": "self_conv_uniform", "lambda": l, "mu": m} |
//! {"kind": "convolution", "a": model, "b": model}
ErrorModel model_from_json(const Json& j);
Json model_to_json(const ErrorModel& model);

Json to_json(const RidgeConfig& cfg);
Json to_json(const RiskReport& report);
Json to_json(const ISEReport& report);
Json to_json(const RateStudy& study);
Json to_json(const Selection& selection);

//! Pretty-printed with a trailing newline.
std::string dump(const Json& j);

} // namespace ridgedeconv
