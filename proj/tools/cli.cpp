#include "cli.hpp"

#include <filesystem>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "skorokhod/integral_operator.hpp"
#include "skorokhod/io.hpp"
#include "skorokhod/reflection.hpp"
#include "skorokhod/regulating.hpp"
#include "skorokhod/simulate.hpp"
#include "skorokhod/verify.hpp"

namespace skorokhod::cli {

namespace {

struct Settings {
  std::string arrivals;
  std::string services;
  std::string function;
  std::string config;
  std::string out;
  std::string summary;
  std::string dump;
  std::string format = "csv";
  double tol = 1e-9;
  std::size_t max_iter = 10000;
  std::size_t oversample = 1;
  std::uint64_t seed = 1;
  std::size_t instances = 20;
};

// Fills every setting whose flag was not given on the command line from the
// JSON config. Flags win.
void apply_config(CLI::App& cmd, Settings& s, const nlohmann::json& cfg) {
  auto take = [&](const char* flag, const char* key, auto& field) {
    const CLI::Option* opt = cmd.get_option_no_throw(flag);
    if (opt != nullptr && opt->count() == 0 && cfg.contains(key)) {
      try {
        cfg.at(key).get_to(field);
      } catch (const nlohmann::json::exception&) {
        throw InputError(std::string("config key '") + key + "' has the wrong type");
      }
    }
  };
  take("--arrivals", "arrivals", s.arrivals);
  take("--services", "services", s.services);
  take("--function", "function", s.function);
  take("--out", "out", s.out);
  take("--summary", "summary", s.summary);
  take("--format", "format", s.format);
  take("--tol", "tol", s.tol);
  take("--max-iter", "max_iter", s.max_iter);
  take("--oversample", "oversample", s.oversample);
  take("--seed", "seed", s.seed);
  take("--instances", "instances", s.instances);
}

SignedPath load_path(const Settings& s) {
  if (s.arrivals.empty() || s.services.empty()) throw InputError("--arrivals and --services are required");
  return SignedPath(io::read_cumulative(s.arrivals), io::read_cumulative(s.services));
}

Grid base_grid(const SignedPath& x, const Settings& s) { return x.grid().oversampled(s.oversample); }

// Output goes to --out when given, otherwise to the command's stdout stream.
void emit(const Settings& s, std::ostream& out, const std::string& text) {
  if (s.out.empty()) {
    out << text;
  } else {
    io::write_file(s.out, text);
  }
}

std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

int cmd_reflect(const Settings& s, std::ostream& out) {
  const SignedPath x = load_path(s);
  const ReflectionResult r = reflect(x, base_grid(x, s));
  if (s.format == "json") {
    nlohmann::ordered_json j;
    j["spec"] = io::kSchemaVersion;
    j["t"] = std::vector<double>(r.grid.points().begin(), r.grid.points().end());
    j["qstar"] = r.qstar;
    j["regulator"] = r.regulator;
    j["sigma_star"] = sigma_star_on_grid(r, x);
    emit(s, out, dump(j));
  } else {
    std::ostringstream os;
    io::write_reflection_csv(os, r, x);
    emit(s, out, os.str());
  }
  return kOk;
}

int cmd_theta(const Settings& s, std::ostream& out) {
  const SignedPath x = load_path(s);
  if (s.function.empty()) throw InputError("--function is required");
  const PiecewiseLinear q = io::read_function(s.function);
  const Grid grid = base_grid(x, s).merged(q.knots());
  const std::vector<double> values = theta(q, x, grid);
  if (s.format == "json") {
    nlohmann::ordered_json j;
    j["spec"] = io::kSchemaVersion;
    j["t"] = std::vector<double>(grid.points().begin(), grid.points().end());
    j["theta"] = values;
    emit(s, out, dump(j));
  } else {
    std::ostringstream os;
    os << "t,theta\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      os << io::format_double(grid[i]) << ',' << io::format_double(values[i]) << '\n';
    }
    emit(s, out, os.str());
  }
  return kOk;
}

int cmd_iterate(const Settings& s, std::ostream& out, bool regulating) {
  const SignedPath x = load_path(s);
  const Grid grid = reflect(x, base_grid(x, s)).grid;
  // --tol is relative: the stopping gap is tol * (1 + A(T)).
  const double tol = s.tol * (1.0 + x.arrivals().total());
  const IterationTrace trace = regulating ? iterate_phi(x, grid, tol, s.max_iter) : iterate_theta(x, grid, tol, s.max_iter);
  const auto summary = io::trace_summary(trace);
  // A CSV run with --out also leaves the JSON summary next to it.
  std::filesystem::path summary_path = s.summary;
  if (summary_path.empty() && s.format == "csv" && !s.out.empty()) {
    summary_path = std::filesystem::path(s.out).replace_extension(".json");
  }
  if (!summary_path.empty()) io::write_file(summary_path, dump(summary));
  if (s.format == "json") {
    emit(s, out, dump(summary));
  } else {
    std::ostringstream os;
    io::write_trace_csv(os, trace, regulating ? "B_k" : "Q_k");
    emit(s, out, os.str());
  }
  return trace.converged ? kOk : kCheckFailed;
}

int cmd_verify(const Settings& s, std::ostream& out) {
  std::vector<std::pair<std::string, SignedPath>> paths;
  if (!s.arrivals.empty() || !s.services.empty()) {
    paths.emplace_back("input", load_path(s));
  } else {
    paths.emplace_back("zero path", SignedPath(Cumulative::zero(1.0), Cumulative::zero(1.0)));
    for (std::size_t i = 0; i < s.instances; ++i) {
      paths.emplace_back("fuzz seed " + std::to_string(s.seed + i), fuzz_path(s.seed + i, 40));
    }
  }
  SuiteOptions opts;
  opts.tol_scale = s.tol;
  opts.max_iter = s.max_iter;
  opts.seed = s.seed;

  bool ok = true;
  nlohmann::ordered_json report;
  report["spec"] = io::kSchemaVersion;
  report["instances"] = nlohmann::ordered_json::array();
  std::ostringstream text;
  for (const auto& [label, x] : paths) {
    const std::vector<CheckResult> checks = run_lemma_suite(x, opts);
    ok = ok && all_passed(checks);
    auto j = io::to_json(checks);
    j["instance"] = label;
    report["instances"].push_back(j);
    text << "# " << label << '\n';
    for (const auto& c : checks) {
      text << (c.passed ? "PASS " : "FAIL ") << c.name << "  (worst " << io::format_double(c.worst) << ", tol "
           << io::format_double(c.tolerance) << ")\n";
    }
  }
  report["passed"] = ok;
  text << (ok ? "ALL CHECKS PASSED\n" : "SOME CHECKS FAILED\n");
  emit(s, out, s.format == "json" ? dump(report) : text.str());
  return ok ? kOk : kCheckFailed;
}

int cmd_simulate(const Settings& s, CLI::App& cmd, std::ostream& out) {
  Scenario sc;
  if (!s.config.empty()) {
    try {
      sc = io::scenario_from_json(nlohmann::json::parse(io::read_file(s.config)));
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError(std::string("malformed scenario JSON: ") + e.what());
    }
  }
  if (cmd.count("--seed")) sc.seed = s.seed;
  const SignedPath path = generate(sc);
  const StationaryReport rep = run_stationary(sc, path);
  if (!s.dump.empty()) {
    const ReflectionResult r = reflect(path);
    std::ostringstream os;
    io::write_reflection_csv(os, r, path);
    io::write_file(s.dump, os.str());
  }
  emit(s, out, dump(io::to_json(rep, sc)));
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"One-sided reflection, its integral representation, and fluid-queue experiments"};
  app.require_subcommand(1);
  Settings s;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", s.config, "JSON config; flags override its keys");
    cmd->add_option("--out", s.out, "Output file (default: stdout)");
    cmd->add_option("--format", s.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--tol", s.tol, "Relative tolerance (default 1e-9)");
    cmd->add_option("--max-iter", s.max_iter, "Iteration cap (default 10000)");
    cmd->add_option("--oversample", s.oversample, "Split every grid segment into this many parts")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", s.seed, "Random seed");
  };
  auto add_path = [&](CLI::App* cmd) {
    cmd->add_option("--arrivals", s.arrivals, "Arrival cumulative (CSV t,value or JSON)");
    cmd->add_option("--services", s.services, "Service cumulative (CSV t,value or JSON)");
  };

  CLI::App* reflect_cmd = app.add_subcommand("reflect", "Reflected content, regulator and last-emptiness times");
  CLI::App* theta_cmd = app.add_subcommand("theta", "Apply the integral operator once to a function");
  CLI::App* iterate_cmd = app.add_subcommand("iterate", "Monotone iteration Q_k from Q_1 = A");
  CLI::App* phi_cmd = app.add_subcommand("phi-iterate", "Regulating iteration B_k from B_1 = C");
  CLI::App* verify_cmd = app.add_subcommand("verify", "Run the lemma checks on an input or on random paths");
  CLI::App* simulate_cmd = app.add_subcommand("simulate", "Stationary fluid-queue experiment from a scenario");
  for (CLI::App* cmd : {reflect_cmd, theta_cmd, iterate_cmd, phi_cmd, verify_cmd, simulate_cmd}) add_common(cmd);
  for (CLI::App* cmd : {reflect_cmd, theta_cmd, iterate_cmd, phi_cmd, verify_cmd}) add_path(cmd);
  theta_cmd->add_option("--function", s.function, "Nonnegative function (CSV t,value or JSON)");
  for (CLI::App* cmd : {iterate_cmd, phi_cmd}) cmd->add_option("--summary", s.summary, "Also write the JSON summary here");
  verify_cmd->add_option("--instances", s.instances, "Random paths to check when no input is given");
  simulate_cmd->add_option("--dump", s.dump, "Write the reflected path as CSV");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseError;
  }

  CLI::App* cmd = app.get_subcommands().front();
  try {
    if (cmd != simulate_cmd && !s.config.empty()) {
      nlohmann::json cfg;
      try {
        cfg = nlohmann::json::parse(io::read_file(s.config));
      } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("malformed config JSON: ") + e.what());
      }
      apply_config(*cmd, s, cfg);
    }
    if (s.format != "csv" && s.format != "json") throw InputError("--format must be csv or json");
    if (s.oversample == 0) throw InputError("--oversample must be positive");
    if (!(s.tol > 0.0)) throw InputError("--tol must be positive");
    if (s.max_iter == 0) throw InputError("--max-iter must be positive");

    if (cmd == reflect_cmd) return cmd_reflect(s, out);
    if (cmd == theta_cmd) return cmd_theta(s, out);
    if (cmd == iterate_cmd) return cmd_iterate(s, out, false);
    if (cmd == phi_cmd) return cmd_iterate(s, out, true);
    if (cmd == verify_cmd) return cmd_verify(s, out);
    return cmd_simulate(s, *cmd, out);
  } catch (const io::IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  }
}

}  // namespace skorokhod::cli
