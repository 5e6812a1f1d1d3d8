#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "skorokhod/io.hpp"
#include "test_paths.hpp"

using namespace skorokhod;
using testing_support::linear_path;

TEST_CASE("CSV breakpoints") {
  const io::Breakpoints bp = io::parse_breakpoints("t,value\n0,0\n1, 2.5\n\n2,+3\n");
  CHECK(bp.knots == std::vector<double>{0, 1, 2});
  CHECK(bp.values == std::vector<double>{0, 2.5, 3});
  CHECK(io::parse_breakpoints("t,value\r\n0,0\r\n1,1\r\n").knots.size() == 2);
  CHECK_THROWS_AS(io::parse_breakpoints("time,value\n0,0\n"), InputError);
  CHECK_THROWS_AS(io::parse_breakpoints("t,value\n0,x\n"), InputError);
  CHECK_THROWS_AS(io::parse_breakpoints("t,value\n0,0,0\n"), InputError);
  CHECK_THROWS_AS(io::parse_breakpoints(""), InputError);
}

TEST_CASE("JSON breakpoints") {
  const io::Breakpoints bp = io::parse_breakpoints(R"( {"knots":[0,2],"values":[0,4]} )");
  CHECK(bp.knots == std::vector<double>{0, 2});
  CHECK(bp.values == std::vector<double>{0, 4});
  CHECK_THROWS_AS(io::parse_breakpoints(R"({"knots":[0,2]})"), InputError);
  CHECK_THROWS_AS(io::parse_breakpoints(R"({"knots":[0,"a"],"values":[0,1]})"), InputError);
  CHECK_THROWS_AS(io::parse_breakpoints(R"({"knots":)"), InputError);
}

TEST_CASE("doubles print in shortest round-trip form") {
  CHECK(io::format_double(0.1) == "0.1");
  CHECK(io::format_double(1.0) == "1");
  CHECK(io::format_double(1.0 / 3.0) == "0.3333333333333333");
  const double v = 0.1 + 0.2;
  CHECK(std::stod(io::format_double(v)) == v);
}

TEST_CASE("reflection CSV has the documented header") {
  const SignedPath x = linear_path(2.0, 1.0, 1.0);
  std::ostringstream os;
  io::write_reflection_csv(os, reflect(x), x);
  CHECK(os.str() == "t,qstar,regulator,sigma_star\n0,0,0,0\n1,1,0,0.5\n");
}

TEST_CASE("trace CSV and summary") {
  const IterationTrace tr = iterate_theta(linear_path(2.0, 1.0, 1.0), Grid({0.0, 1.0}), 1e-300, 2);
  std::ostringstream os;
  io::write_trace_csv(os, tr, "Q_k");
  CHECK(os.str() == "k,t,Q_k\n1,0,0\n1,1,2\n2,0,0\n2,1,1.3333333333333333\n");
  const auto j = io::trace_summary(tr);
  CHECK(j["spec"] == "skorokhod-kit/1");
  CHECK(j["iterations"] == 2);
  CHECK(j["converged"] == false);
  CHECK(j["gaps"].size() == 1);
}

TEST_CASE("scenario JSON fills defaults and rejects bad types") {
  const Scenario sc = io::scenario_from_json(nlohmann::json::parse(R"({"horizon": 10, "source_model": "constant_rate"})"));
  CHECK(sc.horizon == 10.0);
  CHECK(sc.source_model == SourceModel::constant_rate);
  CHECK(sc.arrival_rate == 0.5);
  CHECK_THROWS_AS(io::scenario_from_json(nlohmann::json::parse(R"({"horizon": "long"})")), InputError);
  CHECK_THROWS_AS(io::scenario_from_json(nlohmann::json::parse("[1]")), InputError);
  const auto round = io::scenario_from_json(io::to_json(sc));
  CHECK(round.horizon == sc.horizon);
  CHECK(round.source_model == sc.source_model);
}

TEST_CASE("file helpers report I/O failures") {
  CHECK_THROWS_AS(io::read_file("/nonexistent/dir/file.csv"), io::IoError);
  CHECK_THROWS_AS(io::write_file("/nonexistent/dir/file.csv", "x"), io::IoError);
  const auto path = std::filesystem::temp_directory_path() / "skorokhod_io_test.csv";
  io::write_file(path, "t,value\n0,0\n2,4\n");
  CHECK(io::read_cumulative(path).eval(1.0) == 2.0);
  std::filesystem::remove(path);
}
