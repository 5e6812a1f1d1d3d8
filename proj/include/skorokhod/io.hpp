#pragma once

// File formats:
//   breakpoints   CSV with header `t,value`, or JSON {"knots":[...],"values":[...]}
//   reflection    CSV `t,qstar,regulator,sigma_star`
//   traces        CSV `k,t,<column>` (long form) and a JSON summary
//   reports       JSON carrying "spec":"skorokhod-kit/1"

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "skorokhod/integral_operator.hpp"
#include "skorokhod/measure.hpp"
#include "skorokhod/reflection.hpp"
#include "skorokhod/simulate.hpp"
#include "skorokhod/verify.hpp"

namespace skorokhod::io {

inline constexpr std::string_view kSchemaVersion = "skorokhod-kit/1";

/// Unreadable or unwritable files.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Breakpoints {
  std::vector<double> knots;
  std::vector<double> values;
};

/// Parses either form; the first non-blank character decides ('{' is JSON).
/// Throws InputError on malformed content.
Breakpoints parse_breakpoints(std::string_view text);
Breakpoints read_breakpoints(const std::filesystem::path& path);

Cumulative read_cumulative(const std::filesystem::path& path);
PiecewiseLinear read_function(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

/// Shortest round-trip decimal form.
std::string format_double(double v);

void write_breakpoints_csv(std::ostream& os, std::span<const double> knots, std::span<const double> values);
void write_reflection_csv(std::ostream& os, const ReflectionResult& r, const SignedPath& x);
void write_trace_csv(std::ostream& os, const IterationTrace& trace, std::string_view column);

nlohmann::ordered_json trace_summary(const IterationTrace& trace);
nlohmann::ordered_json to_json(const StationaryReport& report, const Scenario& sc);
nlohmann::ordered_json to_json(const std::vector<CheckResult>& checks);
nlohmann::ordered_json to_json(const Scenario& sc);

/// Missing keys keep the defaults of Scenario. Throws InputError on bad
/// types or values.
Scenario scenario_from_json(const nlohmann::json& j);

}  // namespace skorokhod::io
