#include "swim3d/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace swim3d {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string & field, const std::string & what)
{
  throw ConfigError(field + ": " + what);
}

const json & member(const json & obj, const std::string & key, const std::string & path)
{
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing required field");
  return *it;
}

void expect_object(const json & j, const std::string & path)
{
  if (!j.is_object()) fail(path, "expected an object");
}

double number_at(const json & j, const std::string & path)
{
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

double required_number(const json & obj, const std::string & key, const std::string & path)
{
  return number_at(member(obj, key, path), path + "." + key);
}

double optional_number(const json & obj, const std::string & key, const std::string & path, double fallback)
{
  const auto it = obj.find(key);
  return it == obj.end() ? fallback : number_at(*it, path + "." + key);
}

long integer_at(const json & j, const std::string & path)
{
  if (!j.is_number_integer() && !j.is_number_unsigned()) fail(path, "expected an integer");
  return j.get<long>();
}

long optional_integer(const json & obj, const std::string & key, const std::string & path, long fallback)
{
  const auto it = obj.find(key);
  return it == obj.end() ? fallback : integer_at(*it, path + "." + key);
}

std::string string_at(const json & j, const std::string & path)
{
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

ShapeCoord coord_at(const json & j, const std::string & path)
{
  const std::string name = string_at(j, path);
  try {
    return parse_coord(name);
  } catch (const std::invalid_argument & e) {
    fail(path, e.what());
  }
}

// Re-throws section validation failures as ConfigError with the section name.
template <class F>
void validated(const std::string & section, F && check)
{
  try {
    check();
  } catch (const std::invalid_argument & e) {
    fail(section, e.what());
  }
}

DragParams parse_drag(const json & j)
{
  expect_object(j, "drag");
  DragParams d{required_number(j, "k", "drag"), required_number(j, "L", "drag")};
  validated("drag", [&] { d.validate(); });
  return d;
}

Gait parse_gait(const json & j)
{
  expect_object(j, "gait");
  Gait g;
  g.period = required_number(j, "period", "gait");
  for (const ShapeCoord c : kShapeCoords) {
    const std::string name(coord_name(c));
    const std::string path = "gait." + name;
    const auto it = j.find(name);
    if (it == j.end()) continue;
    expect_object(*it, path);
    CoordinateSeries & series = g[c];
    series.offset = optional_number(*it, "offset", path, 0.0);
    const auto hs = it->find("harmonics");
    if (hs == it->end()) continue;
    if (!hs->is_array()) fail(path + ".harmonics", "expected an array");
    for (std::size_t i = 0; i < hs->size(); ++i) {
      const std::string hp = path + ".harmonics[" + std::to_string(i) + "]";
      const json & h = (*hs)[i];
      expect_object(h, hp);
      series.harmonics.push_back({static_cast<int>(optional_integer(h, "n", hp, 1)),
                                  required_number(h, "amplitude", hp), optional_number(h, "phase", hp, 0.0)});
    }
  }
  validated("gait", [&] { g.validate(); });
  return g;
}

SimConfig parse_sim(const json & j, const std::optional<Gait> & gait)
{
  expect_object(j, "sim");
  SimConfig s;
  const double period = gait ? gait->period : 1.0;
  if (j.contains("dt") && j.contains("steps_per_cycle")) fail("sim", "give either dt or steps_per_cycle, not both");
  if (j.contains("steps_per_cycle")) {
    const long steps = integer_at(j["steps_per_cycle"], "sim.steps_per_cycle");
    if (steps < 1) fail("sim.steps_per_cycle", "must be >= 1");
    s.dt = period / static_cast<double>(steps);
  } else {
    s.dt = optional_number(j, "dt", "sim", period / 1000.0);
  }
  s.cycles = static_cast<int>(optional_integer(j, "cycles", "sim", 1));
  s.record_stride = static_cast<int>(optional_integer(j, "record_stride", "sim", 1));
  validated("sim", [&] { s.validate(); });
  return s;
}

SliceAxis parse_axis(const json & j, const std::string & path)
{
  expect_object(j, path);
  SliceAxis a;
  a.coord = coord_at(member(j, "coord", path), path + ".coord");
  a.lo = required_number(j, "lo", path);
  a.hi = required_number(j, "hi", path);
  a.count = static_cast<int>(integer_at(member(j, "count", path), path + ".count"));
  return a;
}

FieldConfig parse_slice(const json & j)
{
  expect_object(j, "slice");
  FieldConfig f;
  f.spec.a = parse_axis(member(j, "a", "slice"), "slice.a");
  f.spec.b = parse_axis(member(j, "b", "slice"), "slice.b");
  if (const auto it = j.find("fixed"); it != j.end()) {
    expect_object(*it, "slice.fixed");
    for (const ShapeCoord c : kShapeCoords)
      set(f.spec.fixed, c, optional_number(*it, std::string(coord_name(c)), "slice.fixed", 0.0));
  }
  f.row = static_cast<int>(optional_integer(j, "row", "slice", 1));
  if (f.row < 1 || f.row > 6) fail("slice.row", "must be in 1..6");
  if (const auto it = j.find("synthetic"); it != j.end()) {
    const std::string kind = string_at(*it, "slice.synthetic");
    if (kind == "constant") f.synthetic = SyntheticField::Constant;
    else if (kind == "rotational") f.synthetic = SyntheticField::Rotational;
    else if (kind != "none") fail("slice.synthetic", "expected none, constant or rotational");
  }
  validated("slice", [&] { f.spec.validate(); });
  return f;
}

Objective parse_objective(const json & j)
{
  expect_object(j, "objective");
  Objective o;
  const std::string target = j.contains("target") ? string_at(j["target"], "objective.target") : "x";
  if (target == "x") o.target = Target::DisplacementX;
  else if (target == "norm") o.target = Target::DisplacementNorm;
  else if (target == "rotz") o.target = Target::RotationZ;
  else fail("objective.target", "expected x, norm or rotz");
  o.penalty_weight = optional_number(j, "penalty", "objective", 0.0);
  if (const auto it = j.find("bounds"); it != j.end()) {
    expect_object(*it, "objective.bounds");
    for (const ShapeCoord c : kShapeCoords)
      o.amplitude_bounds[static_cast<int>(c)] =
        optional_number(*it, std::string(coord_name(c)), "objective.bounds", o.amplitude_bounds[static_cast<int>(c)]);
  }
  validated("objective", [&] { o.validate(); });
  return o;
}

OptimizerConfig parse_optimizer(const json & j)
{
  expect_object(j, "optimizer");
  OptimizerConfig o;
  NelderMeadConfig & s = o.search;
  s.max_evaluations = static_cast<int>(optional_integer(j, "max_evaluations", "optimizer", s.max_evaluations));
  s.initial_scale = optional_number(j, "initial_scale", "optimizer", s.initial_scale);
  s.tolerance = optional_number(j, "tolerance", "optimizer", s.tolerance);
  s.max_restarts = static_cast<int>(optional_integer(j, "max_restarts", "optimizer", s.max_restarts));
  const long seed = optional_integer(j, "seed", "optimizer", 1);
  if (seed < 0) fail("optimizer.seed", "must be non-negative");
  s.seed = static_cast<std::uint64_t>(seed);
  if (s.max_evaluations < 0) fail("optimizer.max_evaluations", "must be >= 0");
  if (!(s.initial_scale > 0.0)) fail("optimizer.initial_scale", "must be positive");
  if (!(s.tolerance >= 0.0)) fail("optimizer.tolerance", "must be >= 0");
  if (s.max_restarts < 0) fail("optimizer.max_restarts", "must be >= 0");

  if (const auto it = j.find("free"); it != j.end()) {
    if (!it->is_array()) fail("optimizer.free", "expected an array of coordinate names");
    o.free_coords.clear();
    for (std::size_t i = 0; i < it->size(); ++i)
      o.free_coords.push_back(coord_at((*it)[i], "optimizer.free[" + std::to_string(i) + "]"));
  }
  if (const auto it = j.find("optimize_offsets"); it != j.end()) {
    if (!it->is_boolean()) fail("optimizer.optimize_offsets", "expected a boolean");
    o.optimize_offsets = it->get<bool>();
  }
  if (const auto it = j.find("mask"); it != j.end()) {
    if (!it->is_array()) fail("optimizer.mask", "expected an array of booleans");
    for (std::size_t i = 0; i < it->size(); ++i) {
      if (!(*it)[i].is_boolean()) fail("optimizer.mask[" + std::to_string(i) + "]", "expected a boolean");
      o.mask.push_back((*it)[i].get<bool>());
    }
  }
  return o;
}

template <class T>
const T & require(const std::optional<T> & v, const char * section)
{
  if (!v) throw ConfigError(std::string(section) + ": missing required section");
  return *v;
}

}  // namespace

const DragParams & RunConfig::require_drag() const { return require(drag, "drag"); }
const Gait & RunConfig::require_gait() const { return require(gait, "gait"); }
const SimConfig & RunConfig::require_sim() const { return require(sim, "sim"); }
const FieldConfig & RunConfig::require_slice() const { return require(slice, "slice"); }
const Objective & RunConfig::require_objective() const { return require(objective, "objective"); }
const OptimizerConfig & RunConfig::require_optimizer() const { return require(optimizer, "optimizer"); }

RunConfig parse_config(const std::string & text)
{
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error & e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  expect_object(doc, "config");

  RunConfig cfg;
  if (doc.contains("drag")) cfg.drag = parse_drag(doc["drag"]);
  if (doc.contains("gait")) cfg.gait = parse_gait(doc["gait"]);
  if (doc.contains("sim")) cfg.sim = parse_sim(doc["sim"], cfg.gait);
  else if (cfg.gait) cfg.sim = SimConfig{cfg.gait->period / 1000.0, 1, 1};
  if (doc.contains("slice")) cfg.slice = parse_slice(doc["slice"]);
  if (doc.contains("objective")) cfg.objective = parse_objective(doc["objective"]);
  if (doc.contains("optimizer")) cfg.optimizer = parse_optimizer(doc["optimizer"]);
  if (doc.contains("output")) {
    expect_object(doc["output"], "output");
    if (doc["output"].contains("prefix")) cfg.output_prefix = string_at(doc["output"]["prefix"], "output.prefix");
  }
  return cfg;
}

RunConfig load_config(const std::string & path)
{
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace swim3d
