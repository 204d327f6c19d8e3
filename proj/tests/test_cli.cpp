#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "swim3d/commands.hpp"
#include "swim3d/csv.hpp"

using namespace swim3d;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir()
{
  const fs::path dir = fs::temp_directory_path() / "swim3d_cli_tests";
  fs::create_directories(dir);
  return dir;
}

std::string write_config(const std::string & name, const std::string & text)
{
  const fs::path p = scratch_dir() / (name + ".json");
  std::ofstream(p) << text;
  return p.string();
}

std::string slurp(const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string & path)
{
  std::vector<std::string> out;
  std::istringstream in(slurp(path));
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> split(const std::string & line)
{
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

int run(std::vector<std::string> args)
{
  args.insert(args.begin(), "swim3d");
  std::vector<const char *> argv;
  for (const auto & a : args) argv.push_back(a.c_str());
  return cli::run(static_cast<int>(argv.size()), argv.data());
}

std::string prefix(const std::string & name) { return (scratch_dir() / name).string(); }

const char * kRetraced = R"({
  "drag": {"k": 1.0, "L": 1.0},
  "gait": {"period": 1.0,
           "theta1": {"offset": 0.3, "harmonics": [{"n": 1, "amplitude": 0.4, "phase": 1.5707963267948966}]},
           "phi1": {"offset": 0.5},
           "theta2": {"offset": -0.2, "harmonics": [{"n": 2, "amplitude": 0.2, "phase": -1.5707963267948966}]},
           "phi2": {"offset": 0.4}},
  "sim": {"steps_per_cycle": 2000, "cycles": 2, "record_stride": 100}
})";

}  // namespace

TEST_CASE("csv number formatting")
{
  CHECK(csv::number(0.1) == "0.10000000000000001");
  CHECK(csv::number(-2.0) == "-2");
  CHECK(csv::number(1.0 / 0.0) == "inf");
  std::ostringstream os;
  csv::write_row(os, {"a", "", "1"});
  CHECK(os.str() == "a,,1\n");
}

TEST_CASE("config diagnostics name the field")
{
  try {
    parse_config(R"({"drag": {"L": 1.0}})");
    FAIL("expected ConfigError");
  } catch (const ConfigError & e) {
    CHECK(std::string(e.what()).find("drag.k") != std::string::npos);
  }
  try {
    parse_config("{\n  \"drag\": {\"k\": 1,\n}");
    FAIL("expected ConfigError");
  } catch (const ConfigError & e) {
    CHECK(std::string(e.what()).find("line") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config(R"({"drag": {"k": -1, "L": 1}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"gait": {"period": 1, "theta1": {"harmonics": [{"n": 1}]}}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"slice": {"a": {"coord": "psi", "lo": 0, "hi": 1, "count": 3}}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"objective": {"target": "speed"}})"), ConfigError);

  const RunConfig cfg = parse_config(R"({"gait": {"period": 2.0}})");
  REQUIRE(cfg.sim);
  CHECK(cfg.sim->dt == doctest::Approx(0.002));
  CHECK_THROWS_AS(cfg.require_drag(), ConfigError);
}

TEST_CASE("missing drag.k exits with a config error")
{
  const std::string path = write_config("missing_k", R"({"drag": {"L": 1.0}, "gait": {"period": 1.0}})");
  CHECK(run({"simulate", "--config", path, "--out", prefix("missing_k")}) == cli::kConfigError);
  CHECK(run({"simulate", "--config", (scratch_dir() / "does_not_exist.json").string()}) == cli::kConfigError);
  CHECK(run({}) == cli::kConfigError);
}

TEST_CASE("simulate a zero-amplitude gait")
{
  const std::string path = write_config("still", R"({
    "drag": {"k": 1.0, "L": 1.0},
    "gait": {"period": 1.0, "theta1": {"offset": 0.5}, "phi2": {"offset": 0.3}},
    "sim": {"steps_per_cycle": 50}
  })");
  REQUIRE(run({"simulate", "--config", path, "--out", prefix("still")}) == cli::kSuccess);

  const auto rows = lines(prefix("still") + "_trajectory.csv");
  REQUIRE(rows.size() == 52);
  CHECK(rows[0] == "t,x,y,z,qw,qx,qy,qz,theta1,phi1,theta2,phi2,vx,vy,vz,wx,wy,wz");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto cells = split(rows[i]);
    REQUIRE(cells.size() == 18);
    CHECK(cells[1] == "0");
    CHECK(cells[4] == "1");
  }
  const auto summary = nlohmann::json::parse(slurp(prefix("still") + "_summary.json"));
  CHECK(summary["displacement_norm"].get<double>() == 0.0);
  CHECK(summary["steps"].get<int>() == 50);
}

TEST_CASE("simulate a retraced gait")
{
  const std::string path = write_config("retraced", kRetraced);
  REQUIRE(run({"simulate", "--config", path, "--out", prefix("retraced")}) == cli::kSuccess);
  const auto summary = nlohmann::json::parse(slurp(prefix("retraced") + "_summary.json"));
  CHECK(summary["displacement_norm"].get<double>() <= 1e-8);
  CHECK(summary["per_cycle_displacement"].size() == 2);
  CHECK(summary["final_pose"]["quaternion"].size() == 4);
  CHECK(lines(prefix("retraced") + "_trajectory.csv").size() == 1 + 41);
}

TEST_CASE("trajectory quaternions are continuous")
{
  const std::string path = write_config("spin", R"({
    "drag": {"k": 1.0, "L": 1.0},
    "gait": {"period": 1.0,
             "theta1": {"offset": 0.8, "harmonics": [{"amplitude": 0.6}]},
             "phi1": {"offset": 0.4, "harmonics": [{"amplitude": 0.3, "phase": 1.0}]},
             "theta2": {"offset": -0.5, "harmonics": [{"amplitude": 0.5, "phase": 1.5707963267948966}]},
             "phi2": {"offset": 0.6}},
    "sim": {"steps_per_cycle": 200, "cycles": 40, "record_stride": 10}
  })");
  REQUIRE(run({"simulate", "--config", path, "--out", prefix("spin")}) == cli::kSuccess);
  const auto rows = lines(prefix("spin") + "_trajectory.csv");
  std::array<double, 4> prev{1, 0, 0, 0};
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto c = split(rows[i]);
    const std::array<double, 4> q{std::stod(c[4]), std::stod(c[5]), std::stod(c[6]), std::stod(c[7])};
    CHECK(q[0] * prev[0] + q[1] * prev[1] + q[2] * prev[2] + q[3] * prev[3] >= 0.0);
    CHECK(std::abs(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3] - 1.0) < 1e-12);
    prev = q;
  }
}

TEST_CASE("simulate through a singular shape exits with code 3")
{
  const std::string path = write_config("singular", R"({
    "drag": {"k": 1.0, "L": 1.0},
    "gait": {"period": 1.0, "theta1": {"harmonics": [{"amplitude": 0.3}]}}
  })");
  CHECK(run({"simulate", "--config", path, "--out", prefix("singular")}) == cli::kSingular);
}

TEST_CASE("field command")
{
  const std::string path = write_config("field", R"({
    "drag": {"k": 1.0, "L": 1.0},
    "slice": {"a": {"coord": "theta1", "lo": -1, "hi": 1, "count": 3},
              "b": {"coord": "theta2", "lo": -1, "hi": 1, "count": 3},
              "fixed": {"phi1": 0.0, "phi2": 0.0}}
  })");
  REQUIRE(run({"field", "--config", path, "--out", prefix("field")}) == cli::kSuccess);
  const std::string first = slurp(prefix("field") + "_field.csv");
  const auto rows = lines(prefix("field") + "_field.csv");
  REQUIRE(rows.size() == 10);
  const auto header = split(rows[0]);
  CHECK(header.size() == 4 + 24 + 2);
  CHECK(header[0] == "theta1");
  CHECK(header[2] == "phi1");
  CHECK(header[4] == "A11");
  CHECK(header[27] == "A64");

  const auto centre = split(rows[5]);
  CHECK(centre[0] == "0");
  CHECK(centre[1] == "0");
  CHECK(centre.back() == "1");
  for (int i = 4; i < 28; ++i) CHECK(centre[i].empty());
  CHECK(split(rows[1]).back() == "0");

  REQUIRE(run({"field", "--config", path, "--out", prefix("field")}) == cli::kSuccess);
  CHECK(slurp(prefix("field") + "_field.csv") == first);
}

TEST_CASE("curvature command")
{
  const std::string base = R"({
    "drag": {"k": 1.0, "L": 1.0},
    "slice": {"a": {"coord": "theta1", "lo": -1, "hi": 1, "count": 3},
              "b": {"coord": "theta2", "lo": -1, "hi": 1, "count": 3},
              "fixed": {"phi1": 0.3, "phi2": 0.3}, "row": 1 SYNTH}
  })";
  auto with = [&](const std::string & synth) {
    std::string s = base;
    s.replace(s.find("SYNTH"), 5, synth);
    return s;
  };

  const std::string model = write_config("curv", with(""));
  REQUIRE(run({"curvature", "--config", model, "--out", prefix("curv")}) == cli::kSuccess);
  const std::string first = slurp(prefix("curv") + "_curvature.csv");
  const auto rows = lines(prefix("curv") + "_curvature.csv");
  REQUIRE(rows.size() == 10);
  CHECK(split(rows[0]).back() == "curl_row1");
  CHECK(split(rows[1]).back().empty());
  CHECK_FALSE(split(rows[5]).back().empty());
  REQUIRE(run({"curvature", "--config", model, "--out", prefix("curv")}) == cli::kSuccess);
  CHECK(slurp(prefix("curv") + "_curvature.csv") == first);

  const std::string flat = write_config("curv_const", with(R"(, "synthetic": "constant")"));
  REQUIRE(run({"curvature", "--config", flat, "--out", prefix("curv_const")}) == cli::kSuccess);
  CHECK(split(lines(prefix("curv_const") + "_curvature.csv")[5]).back() == "0");

  std::string small = with("");
  small.replace(small.find("\"count\": 3"), 10, "\"count\": 2");
  CHECK(run({"curvature", "--config", write_config("curv_small", small)}) == cli::kConfigError);
}

TEST_CASE("optimize command")
{
  const std::string body = R"({
    "drag": {"k": 1.0, "L": 1.0},
    "gait": {"period": 1.0,
             "theta1": {"harmonics": [{"amplitude": 0.1, "phase": 0.0}]},
             "theta2": {"harmonics": [{"amplitude": 0.1, "phase": 1.5707963267948966}]}},
    "sim": {"steps_per_cycle": 100},
    "objective": {"target": "x", "penalty": 10, "bounds": {"theta1": 1.0, "theta2": 1.0}},
    "optimizer": {"max_evaluations": EVALS, "initial_scale": 0.1, "seed": 3, "free": ["theta1", "theta2"]}
  })";
  auto with = [&](const std::string & evals) {
    std::string s = body;
    s.replace(s.find("EVALS"), 5, evals);
    return s;
  };

  const std::string zero = write_config("opt0", with("0"));
  REQUIRE(run({"optimize", "--config", zero, "--out", prefix("opt0")}) == cli::kSuccess);
  const auto z = nlohmann::json::parse(slurp(prefix("opt0") + "_best_gait.json"));
  CHECK(z["evaluations"].get<int>() == 1);
  CHECK(z["gait"]["theta1"]["harmonics"][0]["amplitude"].get<double>() == 0.1);
  CHECK(z["objective"].get<double>() == z["initial_objective"].get<double>());

  const std::string real = write_config("opt", with("120"));
  REQUIRE(run({"optimize", "--config", real, "--out", prefix("opt")}) == cli::kSuccess);
  const std::string trace = slurp(prefix("opt") + "_trace.csv");
  REQUIRE(run({"optimize", "--config", real, "--out", prefix("opt")}) == cli::kSuccess);
  CHECK(slurp(prefix("opt") + "_trace.csv") == trace);
  CHECK(lines(prefix("opt") + "_trace.csv")[0] == "evaluation,objective,incumbent");

  const auto best = nlohmann::json::parse(slurp(prefix("opt") + "_best_gait.json"));
  CHECK(best["objective"].get<double>() > best["initial_objective"].get<double>());

  // The best-gait JSON gait block is itself a valid gait section.
  nlohmann::json again = nlohmann::json::parse(with("120"));
  again["gait"] = best["gait"];
  CHECK_NOTHROW(parse_config(again.dump()));

  CHECK(run({"optimize", "--config", write_config("opt_bad", with("3"))}) == cli::kConfigError);
}

TEST_CASE("check command")
{
  std::ostringstream log;
  CHECK(cli::cmd_check(DragParams{1, 1}, log) == cli::kSuccess);
  CHECK(log.str().find("FAIL") == std::string::npos);
  CHECK(log.str().find("force_balance") != std::string::npos);
}
