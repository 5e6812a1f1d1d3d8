#include "skorokhod/io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

namespace skorokhod::io {

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view field, std::size_t line) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
    throw InputError("line " + std::to_string(line) + ": not a number: '" + std::string(field) + "'");
  }
  return v;
}

Breakpoints parse_csv(std::string_view text) {
  Breakpoints bp;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    if (!header_seen) {
      std::string compact;
      for (char c : line) {
        if (c != ' ' && c != '\t') compact.push_back(c);
      }
      if (compact != "t,value") throw InputError("expected CSV header 't,value', got '" + std::string(line) + "'");
      header_seen = true;
      continue;
    }
    const std::size_t comma = line.find(',');
    if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
      throw InputError("line " + std::to_string(line_no) + ": expected two comma-separated fields");
    }
    bp.knots.push_back(parse_number(line.substr(0, comma), line_no));
    bp.values.push_back(parse_number(line.substr(comma + 1), line_no));
  }
  if (!header_seen) throw InputError("empty breakpoint file");
  return bp;
}

Breakpoints parse_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("knots") || !j.contains("values")) {
    throw InputError("JSON breakpoints need \"knots\" and \"values\" arrays");
  }
  Breakpoints bp;
  try {
    bp.knots = j.at("knots").get<std::vector<double>>();
    bp.values = j.at("values").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("JSON breakpoints must be numeric arrays: ") + e.what());
  }
  return bp;
}

template <typename T>
T get_or(const nlohmann::json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InputError(std::string("scenario field '") + key + "' has the wrong type");
  }
}

}  // namespace

Breakpoints parse_breakpoints(std::string_view text) {
  const std::string_view body = trim(text);
  if (!body.empty() && body.front() == '{') return parse_json(body);
  return parse_csv(text);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path.string());
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  if (!out) throw IoError("error writing " + path.string());
}

Breakpoints read_breakpoints(const std::filesystem::path& path) { return parse_breakpoints(read_file(path)); }

Cumulative read_cumulative(const std::filesystem::path& path) {
  Breakpoints bp = read_breakpoints(path);
  return Cumulative::from_breakpoints(std::move(bp.knots), std::move(bp.values));
}

PiecewiseLinear read_function(const std::filesystem::path& path) {
  Breakpoints bp = read_breakpoints(path);
  return PiecewiseLinear(std::move(bp.knots), std::move(bp.values));
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

void write_breakpoints_csv(std::ostream& os, std::span<const double> knots, std::span<const double> values) {
  os << "t,value\n";
  for (std::size_t i = 0; i < knots.size(); ++i) os << format_double(knots[i]) << ',' << format_double(values[i]) << '\n';
}

void write_reflection_csv(std::ostream& os, const ReflectionResult& r, const SignedPath& x) {
  const std::vector<double> sigma = sigma_star_on_grid(r, x);
  os << "t,qstar,regulator,sigma_star\n";
  for (std::size_t i = 0; i < r.grid.size(); ++i) {
    os << format_double(r.grid[i]) << ',' << format_double(r.qstar[i]) << ',' << format_double(r.regulator[i]) << ','
       << format_double(sigma[i]) << '\n';
  }
}

void write_trace_csv(std::ostream& os, const IterationTrace& trace, std::string_view column) {
  os << "k,t," << column << '\n';
  for (std::size_t k = 0; k < trace.iterations(); ++k) {
    const std::string idx = std::to_string(k + 1);
    for (std::size_t i = 0; i < trace.grid.size(); ++i) {
      os << idx << ',' << format_double(trace.grid[i]) << ',' << format_double(trace.iterates[k][i]) << '\n';
    }
  }
}

nlohmann::ordered_json trace_summary(const IterationTrace& trace) {
  nlohmann::ordered_json j;
  j["spec"] = kSchemaVersion;
  j["iterations"] = trace.iterations();
  j["gaps"] = trace.gaps;
  j["converged"] = trace.converged;
  j["tolerance"] = trace.tolerance;
  j["gap_ratios"] = trace.gap_ratios();
  return j;
}

nlohmann::ordered_json to_json(const Scenario& sc) {
  nlohmann::ordered_json j;
  j["source_model"] = to_string(sc.source_model);
  j["arrival_rate"] = sc.arrival_rate;
  j["service_rate"] = sc.service_rate;
  j["horizon"] = sc.horizon;
  j["seed"] = sc.seed;
  j["grid_step"] = sc.grid_step;
  j["warmup_fraction"] = sc.warmup_fraction;
  j["mean_on"] = sc.mean_on;
  j["mean_off"] = sc.mean_off;
  j["residual_samples"] = sc.residual_samples;
  return j;
}

nlohmann::ordered_json to_json(const StationaryReport& report, const Scenario& sc) {
  nlohmann::ordered_json j;
  j["spec"] = kSchemaVersion;
  j["time_avg_q"] = report.time_avg_q;
  j["palm_avg_q"] = report.palm_avg_q;
  j["littles_ratio"] = report.littles_ratio;
  j["integral_rep_residual"] = report.integral_rep_residual;
  j["peak_q"] = report.peak_q;
  j["degenerate"] = report.degenerate;
  j["generator"] = report.generator;
  j["scenario"] = to_json(sc);
  return j;
}

nlohmann::ordered_json to_json(const std::vector<CheckResult>& checks) {
  nlohmann::ordered_json j;
  j["spec"] = kSchemaVersion;
  j["passed"] = all_passed(checks);
  auto& arr = j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    arr.push_back({{"name", c.name}, {"passed", c.passed}, {"worst", c.worst}, {"tolerance", c.tolerance}});
  }
  return j;
}

Scenario scenario_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("scenario must be a JSON object");
  Scenario sc;
  if (j.contains("source_model")) sc.source_model = parse_source_model(get_or<std::string>(j, "source_model", ""));
  sc.arrival_rate = get_or(j, "arrival_rate", sc.arrival_rate);
  sc.service_rate = get_or(j, "service_rate", sc.service_rate);
  sc.horizon = get_or(j, "horizon", sc.horizon);
  sc.seed = get_or(j, "seed", sc.seed);
  sc.grid_step = get_or(j, "grid_step", sc.grid_step);
  sc.warmup_fraction = get_or(j, "warmup_fraction", sc.warmup_fraction);
  sc.mean_on = get_or(j, "mean_on", sc.mean_on);
  sc.mean_off = get_or(j, "mean_off", sc.mean_off);
  sc.residual_samples = get_or(j, "residual_samples", sc.residual_samples);
  return sc;
}

}  // namespace skorokhod::io
