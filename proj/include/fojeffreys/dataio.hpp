#pragma once

// Plain-text tabular files: comma separated, one header row, LF line endings,
// '.' decimal point regardless of the process locale.
//
//   FRF          frequency_hz,magnitude_db,phase_deg     (phase wrapped to (-360, 0])
//   time series  time_s,<name>[,<name>...]               (t_k = k h from t = 0)
//   fit report   key,value block, blank line, residual table
//   parameters   key,value block (a fit report is also a valid parameter file)

#include <Eigen/Core>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fojeffreys/frf.hpp"
#include "fojeffreys/identification.hpp"
#include "fojeffreys/jeffreys.hpp"
#include "fojeffreys/time_series.hpp"

namespace fojeffreys {

/// Shortest decimal representation that parses back to the same double.
std::string format_number(double value);

/// Whole-field parse; throws ParseError naming `line` on malformed text.
double parse_number(std::string_view text, std::size_t line);

// FRF ------------------------------------------------------------------------

inline constexpr std::string_view kFrfHeader = "frequency_hz,magnitude_db,phase_deg";

FrfDataset parse_frf(std::istream& in);
void format_frf(std::ostream& out, const FrfDataset& data);

FrfDataset read_frf(const std::filesystem::path& path);
void write_frf(const std::filesystem::path& path, const FrfDataset& data);
/// Validates the raw points (dataset invariants, >= 4 points) before writing anything.
void write_frf(const std::filesystem::path& path, const Eigen::VectorXd& frequency_hz,
               const Eigen::VectorXcd& gain);
/// Model sweep output; same format, but any sweep of >= 2 points is accepted.
void write_frf_sweep(const std::filesystem::path& path, const Eigen::VectorXd& frequency_hz,
                     const Eigen::VectorXcd& gain);

// Time series -----------------------------------------------------------------

/// Several signals on one time grid, one column each.
struct TimeSeriesTable {
  double step;
  std::vector<std::string> names;
  Eigen::MatrixXd values;  ///< samples x columns

  TimeSeries column(Eigen::Index c) const { return TimeSeries(step, values.col(c)); }
};

TimeSeriesTable parse_timeseries_table(std::istream& in);
void format_timeseries_table(std::ostream& out, const TimeSeriesTable& table);

TimeSeriesTable read_timeseries_table(const std::filesystem::path& path);
void write_timeseries_table(const std::filesystem::path& path, const TimeSeriesTable& table);

/// Single-column convenience wrappers.
TimeSeries read_timeseries(const std::filesystem::path& path);
void write_timeseries(const std::filesystem::path& path, const TimeSeries& series,
                      const std::string& name = "value");

// Parameters and fit reports ------------------------------------------------------

/// Reads mu, lambda1, lambda2, alpha (required) and beta, gamma (default
/// alpha and 1) from a key,value block. Unknown keys are ignored.
FoJeffreysParams parse_params(std::istream& in);
FoJeffreysParams read_params(const std::filesystem::path& path);
void write_params(const std::filesystem::path& path, const FoJeffreysParams& params);

struct FitReport {
  FoJeffreysParams params;
  ModelClass model_class;
  double objective;
  int iterations;
  bool converged;
  std::vector<ResidualRow> rows;
};

void format_fit_report(std::ostream& out, const FitResult& result, const FrfDataset& data);
FitReport parse_fit_report(std::istream& in);

void write_fit_report(const std::filesystem::path& path, const FitResult& result, const FrfDataset& data);
FitReport read_fit_report(const std::filesystem::path& path);

}  // namespace fojeffreys
