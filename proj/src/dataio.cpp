#include "fojeffreys/dataio.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <locale>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

#include "fojeffreys/errors.hpp"

namespace fojeffreys {

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

/// Line-oriented reader that tracks 1-based line numbers.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& line) {
    if (!std::getline(in_, line)) return false;
    ++number_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  }
  /// Next line that is neither blank nor a '#' comment.
  bool next_content(std::string& line) {
    while (next(line)) {
      const auto t = trim(line);
      if (!t.empty() && t.front() != '#') return true;
    }
    return false;
  }
  std::size_t number() const noexcept { return number_; }

 private:
  std::istream& in_;
  std::size_t number_ = 0;
};

std::ifstream open_for_reading(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return in;
}

template <typename Parse>
auto read_file(const std::filesystem::path& path, Parse&& parse) {
  auto in = open_for_reading(path);
  try {
    return parse(in);
  } catch (const ParseError& e) {
    throw e.with_context(path.string() + ": ");
  }
}

template <typename Format>
void write_file(const std::filesystem::path& path, Format&& format) {
  std::ostringstream buffer;
  buffer.imbue(std::locale::classic());
  format(buffer);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << buffer.str();
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

void expect_fields(const std::vector<std::string_view>& fields, std::size_t count, std::size_t line) {
  if (fields.size() != count) {
    throw ParseError("expected " + std::to_string(count) + " fields, found " + std::to_string(fields.size()), line);
  }
}

constexpr std::string_view kReportTableHeader =
    "frequency_hz,measured_db,measured_deg,model_db,model_deg,residual_db,residual_deg";

}  // namespace

std::string format_number(double value) {
  if (!std::isfinite(value)) throw InvalidArgumentError("cannot format a non-finite number");
  std::array<char, 64> buffer{};
  const auto [end, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  if (ec != std::errc()) throw InvalidArgumentError("number formatting failed");
  return std::string(buffer.data(), end);
}

double parse_number(std::string_view text, std::size_t line) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || end != text.data() + text.size() || !std::isfinite(value)) {
    throw ParseError("malformed number '" + std::string(text) + "'", line);
  }
  return value;
}

// FRF --------------------------------------------------------------------------

FrfDataset parse_frf(std::istream& in) {
  LineReader reader(in);
  std::string line;
  if (!reader.next_content(line)) throw ParseError("missing FRF header", reader.number() + 1);
  if (trim(line) != kFrfHeader) {
    throw ParseError("expected header '" + std::string(kFrfHeader) + "'", reader.number());
  }
  std::vector<double> frequency, magnitude, phase;
  while (reader.next_content(line)) {
    const auto fields = split(line);
    expect_fields(fields, 3, reader.number());
    frequency.push_back(parse_number(fields[0], reader.number()));
    magnitude.push_back(parse_number(fields[1], reader.number()));
    phase.push_back(parse_number(fields[2], reader.number()));
  }
  const auto n = static_cast<Eigen::Index>(frequency.size());
  Eigen::VectorXd f(n);
  Eigen::VectorXcd g(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto i = static_cast<std::size_t>(k);
    f[k] = frequency[i];
    g[k] = std::polar(std::pow(10.0, magnitude[i] / 20.0), phase[i] * std::numbers::pi / 180.0);
  }
  return FrfDataset(std::move(f), std::move(g));
}

namespace {

void format_frf_points(std::ostream& out, const Eigen::VectorXd& frequency_hz, const Eigen::VectorXcd& gain) {
  out << kFrfHeader << '\n';
  for (Eigen::Index k = 0; k < frequency_hz.size(); ++k) {
    const auto g = gain[k];
    out << format_number(frequency_hz[k]) << ',' << format_number(magnitude_db(g)) << ','
        << format_number(wrap_phase_nonpositive(phase_deg(g))) << '\n';
  }
}

}  // namespace

void format_frf(std::ostream& out, const FrfDataset& data) {
  format_frf_points(out, data.frequency_hz(), data.gain());
}

FrfDataset read_frf(const std::filesystem::path& path) {
  return read_file(path, [](std::istream& in) { return parse_frf(in); });
}

void write_frf(const std::filesystem::path& path, const FrfDataset& data) {
  write_file(path, [&](std::ostream& out) { format_frf(out, data); });
}

void write_frf(const std::filesystem::path& path, const Eigen::VectorXd& frequency_hz, const Eigen::VectorXcd& gain) {
  write_frf(path, FrfDataset(frequency_hz, gain));
}

void write_frf_sweep(const std::filesystem::path& path, const Eigen::VectorXd& frequency_hz,
                     const Eigen::VectorXcd& gain) {
  validate_frf_points(frequency_hz, gain, 2);
  write_file(path, [&](std::ostream& out) { format_frf_points(out, frequency_hz, gain); });
}

// Time series --------------------------------------------------------------------

TimeSeriesTable parse_timeseries_table(std::istream& in) {
  LineReader reader(in);
  std::string line;
  if (!reader.next_content(line)) throw ParseError("missing time-series header", reader.number() + 1);
  const auto header = split(line);
  if (header.size() < 2 || header[0] != "time_s") {
    throw ParseError("expected header 'time_s,<column>[,...]'", reader.number());
  }
  TimeSeriesTable table{0.0, {}, {}};
  for (std::size_t c = 1; c < header.size(); ++c) table.names.emplace_back(header[c]);

  std::vector<double> times;
  std::vector<std::size_t> line_numbers;
  std::vector<double> values;
  while (reader.next_content(line)) {
    const auto fields = split(line);
    expect_fields(fields, header.size(), reader.number());
    const double t = parse_number(fields[0], reader.number());
    if (t < 0.0) throw ParseError("negative time", reader.number());
    times.push_back(t);
    line_numbers.push_back(reader.number());
    for (std::size_t c = 1; c < fields.size(); ++c) values.push_back(parse_number(fields[c], reader.number()));
  }
  if (times.size() < 2) {
    throw ValidationError("time series needs at least 2 samples to define its step");
  }

  const auto n = times.size();
  const double step = (times.back() - times.front()) / static_cast<double>(n - 1);
  if (!(step > 0.0)) throw ValidationError("time series: times must increase");
  const double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t k = 0; k < n; ++k) {
    const double expected = static_cast<double>(k) * step;
    const double tolerance = 1e-9 * step + 8.0 * eps * std::abs(expected);
    if (std::abs(times[k] - expected) > tolerance) {
      throw ParseError("time stamps are not uniformly spaced from t = 0", line_numbers[k]);
    }
  }

  const auto columns = static_cast<Eigen::Index>(table.names.size());
  table.step = step;
  table.values = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      values.data(), static_cast<Eigen::Index>(n), columns);
  return table;
}

void format_timeseries_table(std::ostream& out, const TimeSeriesTable& table) {
  if (static_cast<Eigen::Index>(table.names.size()) != table.values.cols() || table.names.empty()) {
    throw InvalidArgumentError("time-series table: one name per column is required");
  }
  if (!(table.step > 0.0)) throw InvalidArgumentError("time-series table: step must be positive");
  out << "time_s";
  for (const auto& name : table.names) {
    if (name.find(',') != std::string::npos) throw InvalidArgumentError("column names may not contain ','");
    out << ',' << name;
  }
  out << '\n';
  for (Eigen::Index k = 0; k < table.values.rows(); ++k) {
    out << format_number(static_cast<double>(k) * table.step);
    for (Eigen::Index c = 0; c < table.values.cols(); ++c) out << ',' << format_number(table.values(k, c));
    out << '\n';
  }
}

TimeSeriesTable read_timeseries_table(const std::filesystem::path& path) {
  return read_file(path, [](std::istream& in) { return parse_timeseries_table(in); });
}

void write_timeseries_table(const std::filesystem::path& path, const TimeSeriesTable& table) {
  write_file(path, [&](std::ostream& out) { format_timeseries_table(out, table); });
}

TimeSeries read_timeseries(const std::filesystem::path& path) {
  const auto table = read_timeseries_table(path);
  if (table.values.cols() != 1) {
    throw ValidationError("'" + path.string() + "': expected a single value column");
  }
  return table.column(0);
}

void write_timeseries(const std::filesystem::path& path, const TimeSeries& series, const std::string& name) {
  write_timeseries_table(path, {series.step(), {name}, series.samples()});
}

// Parameters and fit reports ---------------------------------------------------------

namespace {

/// Reads key,value lines up to the first blank line or end of input.
std::map<std::string, std::pair<std::string, std::size_t>> parse_key_values(LineReader& reader) {
  std::map<std::string, std::pair<std::string, std::size_t>> entries;
  std::string line;
  bool started = false;
  while (reader.next(line)) {
    const auto t = trim(line);
    if (t.empty()) {
      if (started) break;
      continue;
    }
    if (t.front() == '#') continue;
    started = true;
    const auto fields = split(t);
    expect_fields(fields, 2, reader.number());
    entries[std::string(fields[0])] = {std::string(fields[1]), reader.number()};
  }
  return entries;
}

FoJeffreysParams params_from(const std::map<std::string, std::pair<std::string, std::size_t>>& kv,
                             std::size_t last_line) {
  auto get = [&](const std::string& key) -> std::optional<double> {
    const auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    return parse_number(it->second.first, it->second.second);
  };
  auto require = [&](const std::string& key) {
    const auto v = get(key);
    if (!v) throw ParseError("missing parameter '" + key + "'", last_line);
    return *v;
  };
  FoJeffreysParams p{};
  p.mu = require("mu");
  p.lambda1 = require("lambda1");
  p.lambda2 = require("lambda2");
  p.alpha = require("alpha");
  p.beta = get("beta").value_or(p.alpha);
  p.gamma = get("gamma").value_or(1.0);
  return p;
}

void format_params(std::ostream& out, const FoJeffreysParams& p) {
  out << "mu," << format_number(p.mu) << '\n'
      << "lambda1," << format_number(p.lambda1) << '\n'
      << "lambda2," << format_number(p.lambda2) << '\n'
      << "alpha," << format_number(p.alpha) << '\n'
      << "beta," << format_number(p.beta) << '\n'
      << "gamma," << format_number(p.gamma) << '\n';
}

}  // namespace

FoJeffreysParams parse_params(std::istream& in) {
  LineReader reader(in);
  const auto kv = parse_key_values(reader);
  return params_from(kv, reader.number());
}

FoJeffreysParams read_params(const std::filesystem::path& path) {
  return read_file(path, [](std::istream& in) { return parse_params(in); });
}

void write_params(const std::filesystem::path& path, const FoJeffreysParams& params) {
  write_file(path, [&](std::ostream& out) { format_params(out, params); });
}

void format_fit_report(std::ostream& out, const FitResult& result, const FrfDataset& data) {
  out << "# fractional-order Jeffreys fit report\n";
  out << "model_class," << to_string(result.model_class) << '\n';
  format_params(out, result.params);
  out << "objective," << format_number(result.objective) << '\n'
      << "iterations," << std::to_string(result.iterations) << '\n'
      << "converged," << (result.converged ? "true" : "false") << '\n'
      << '\n'
      << kReportTableHeader << '\n';
  for (const auto& row : residual_report(result, data)) {
    out << format_number(row.frequency_hz) << ',' << format_number(row.measured_db) << ','
        << format_number(row.measured_deg) << ',' << format_number(row.model_db) << ','
        << format_number(row.model_deg) << ',' << format_number(row.residual_db) << ','
        << format_number(row.residual_deg) << '\n';
  }
}

FitReport parse_fit_report(std::istream& in) {
  LineReader reader(in);
  const auto kv = parse_key_values(reader);
  FitReport report{};
  report.params = params_from(kv, reader.number());

  auto text = [&](const std::string& key) -> const std::pair<std::string, std::size_t>& {
    const auto it = kv.find(key);
    if (it == kv.end()) throw ParseError("missing report field '" + key + "'", reader.number());
    return it->second;
  };
  try {
    report.model_class = parse_model_class(text("model_class").first);
  } catch (const InvalidArgumentError& e) {
    throw ParseError(e.what(), text("model_class").second);
  }
  report.objective = parse_number(text("objective").first, text("objective").second);
  {
    const auto& [value, line] = text("iterations");
    const double iterations = parse_number(value, line);
    if (iterations < 0 || iterations != std::floor(iterations)) throw ParseError("iterations must be a count", line);
    report.iterations = static_cast<int>(iterations);
  }
  {
    const auto& [value, line] = text("converged");
    if (value != "true" && value != "false") throw ParseError("converged must be true or false", line);
    report.converged = value == "true";
  }

  std::string line;
  if (!reader.next_content(line) || trim(line) != kReportTableHeader) {
    throw ParseError("expected residual table header", reader.number());
  }
  while (reader.next_content(line)) {
    const auto fields = split(line);
    expect_fields(fields, 7, reader.number());
    std::array<double, 7> v{};
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = parse_number(fields[i], reader.number());
    report.rows.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6]});
  }
  return report;
}

void write_fit_report(const std::filesystem::path& path, const FitResult& result, const FrfDataset& data) {
  write_file(path, [&](std::ostream& out) { format_fit_report(out, result, data); });
}

FitReport read_fit_report(const std::filesystem::path& path) {
  return read_file(path, [](std::istream& in) { return parse_fit_report(in); });
}

}  // namespace fojeffreys
