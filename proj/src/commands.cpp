#include "swim3d/commands.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "swim3d/csv.hpp"
#include "swim3d/diagnostics.hpp"

namespace swim3d::cli {

namespace {

using nlohmann::json;

std::ofstream open_output(const std::string & path)
{
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("output: cannot write " + path);
  return out;
}

template <class F>
int guarded(std::ostream & log, F && body)
{
  try {
    return body();
  } catch (const ConfigError & e) {
    log << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const SingularConfiguration & e) {
    log << "error: " << e.what() << '\n';
    return kSingular;
  } catch (const NonFiniteState & e) {
    log << "error: " << e.what() << '\n';
    return kSingular;
  } catch (const std::invalid_argument & e) {
    log << "config error: " << e.what() << '\n';
    return kConfigError;
  }
}

json quaternion_json(const Eigen::Quaterniond & q) { return json::array({q.w(), q.x(), q.y(), q.z()}); }

json pose_json(const Pose & g)
{
  const Eigen::Quaterniond q = to_quaternion(g.rotation);
  const Eigen::Quaterniond qs = q.w() < 0 ? Eigen::Quaterniond(-q.w(), -q.x(), -q.y(), -q.z()) : q;
  return {{"position", {g.position.x(), g.position.y(), g.position.z()}}, {"quaternion", quaternion_json(qs)},
          {"distance", distance_from_identity(g)}};
}

json gait_json(const Gait & g)
{
  json out{{"period", g.period}};
  for (const ShapeCoord c : kShapeCoords) {
    json hs = json::array();
    for (const auto & h : g[c].harmonics) hs.push_back({{"n", h.n}, {"amplitude", h.amplitude}, {"phase", h.phase}});
    out[std::string(coord_name(c))] = {{"offset", g[c].offset}, {"harmonics", hs}};
  }
  return out;
}

std::vector<ShapeCoord> fixed_coords(const SliceSpec & spec)
{
  std::vector<ShapeCoord> out;
  for (const ShapeCoord c : kShapeCoords)
    if (c != spec.a.coord && c != spec.b.coord) out.push_back(c);
  return out;
}

std::vector<std::string> node_coordinates(const SliceSpec & spec, const Shape & s)
{
  std::vector<std::string> cells{csv::number(get(s, spec.a.coord)), csv::number(get(s, spec.b.coord))};
  for (const ShapeCoord c : fixed_coords(spec)) cells.push_back(csv::number(get(s, c)));
  return cells;
}

std::vector<std::string> coordinate_header(const SliceSpec & spec)
{
  std::vector<std::string> h{std::string(coord_name(spec.a.coord)), std::string(coord_name(spec.b.coord))};
  for (const ShapeCoord c : fixed_coords(spec)) h.emplace_back(coord_name(c));
  return h;
}

ConnectionSource connection_source(const RunConfig & cfg, const FieldConfig & fc)
{
  switch (fc.synthetic) {
    case SyntheticField::Constant:
      return [](const Shape & s) {
        LocalConnection c;
        c.matrix = Mat64::Constant(0.25);
        c.shape = s;
        return c;
      };
    case SyntheticField::Rotational: {
      const ShapeCoord a = fc.spec.a.coord, b = fc.spec.b.coord;
      return [a, b](const Shape & s) {
        LocalConnection c;
        c.matrix.col(static_cast<int>(a)).setConstant(-get(s, b));
        c.matrix.col(static_cast<int>(b)).setConstant(get(s, a));
        c.shape = s;
        return c;
      };
    }
    case SyntheticField::None: break;
  }
  return model_connection(cfg.require_drag());
}

}  // namespace

unsigned field_threads()
{
  if (const char * env = std::getenv("SWIM3D_THREADS")) {
    char * end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int cmd_simulate(const RunConfig & cfg, const std::string & prefix, std::ostream & log)
{
  return guarded(log, [&] {
    const DragParams & params = cfg.require_drag();
    const Gait & gait = cfg.require_gait();
    const SimConfig & sim = cfg.require_sim();
    const int per_period = sim.steps_per_period(gait.period);

    std::ofstream csv_out = open_output(prefix + "_trajectory.csv");
    csv::write_row(csv_out, {"t", "x", "y", "z", "qw", "qx", "qy", "qz", "theta1", "phi1", "theta2", "phi2", "vx",
                             "vy", "vz", "wx", "wy", "wz"});

    Eigen::Quaterniond previous(1, 0, 0, 0);
    std::vector<Pose> boundaries{Pose::identity()};
    long step = 0;
    auto sink = [&](const TrajectorySample & s) {
      const long index = step++;
      if (index > 0 && index % per_period == 0) boundaries.push_back(s.pose);
      const bool last = index == static_cast<long>(per_period) * sim.cycles;
      if (index % sim.record_stride != 0 && !last) return;

      Eigen::Quaterniond q = to_quaternion(s.pose.rotation);
      if (q.coeffs().dot(previous.coeffs()) < 0) q.coeffs() *= -1.0;
      previous = q;
      const Vec6 xi = s.twist.vector();
      csv::write_row(csv_out, {csv::number(s.t), csv::number(s.pose.position.x()), csv::number(s.pose.position.y()),
                               csv::number(s.pose.position.z()), csv::number(q.w()), csv::number(q.x()),
                               csv::number(q.y()), csv::number(q.z()), csv::number(s.shape.theta1),
                               csv::number(s.shape.phi1), csv::number(s.shape.theta2), csv::number(s.shape.phi2),
                               csv::number(xi[0]), csv::number(xi[1]), csv::number(xi[2]), csv::number(xi[3]),
                               csv::number(xi[4]), csv::number(xi[5])});
    };

    SimConfig every_step = sim;
    every_step.record_stride = 1;
    const auto t0 = std::chrono::steady_clock::now();
    const Pose final_pose = integrate_pose([&gait](double t) { return eval_gait(gait, t); }, gait.period,
                                           Pose::identity(), params, every_step, sink);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    json cycles = json::array();
    for (std::size_t k = 1; k < boundaries.size(); ++k) {
      json entry = pose_json(compose(inverse(boundaries[k - 1]), boundaries[k]));
      entry["cycle"] = k;
      cycles.push_back(entry);
    }
    const json summary{{"cycles", sim.cycles},
                       {"steps", static_cast<long>(per_period) * sim.cycles},
                       {"dt", gait.period / per_period},
                       {"per_cycle_displacement", cycles},
                       {"displacement_norm", cycles.empty() ? 0.0 : cycles[0]["distance"].get<double>()},
                       {"final_pose", pose_json(final_pose)},
                       {"wall_time_s", wall}};
    std::ofstream js = open_output(prefix + "_summary.json");
    js << summary.dump(2) << '\n';
    log << "simulate: " << step << " steps, displacement per cycle " << summary["displacement_norm"] << '\n';
    return static_cast<int>(kSuccess);
  });
}

int cmd_field(const RunConfig & cfg, const std::string & prefix, std::ostream & log)
{
  return guarded(log, [&] {
    const FieldConfig & fc = cfg.require_slice();
    const FieldSlice field = sample_field(fc.spec, connection_source(cfg, fc), field_threads());

    std::ofstream out = open_output(prefix + "_field.csv");
    std::vector<std::string> header = coordinate_header(fc.spec);
    for (int r = 1; r <= 6; ++r)
      for (int c = 1; c <= 4; ++c) header.push_back("A" + std::to_string(r) + std::to_string(c));
    header.push_back("condition");
    header.push_back("singular");
    csv::write_row(out, header);

    int singular = 0;
    for (const FieldNode & node : field.nodes) {
      std::vector<std::string> cells = node_coordinates(fc.spec, node.shape);
      for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 4; ++c) cells.push_back(node.singular ? "" : csv::number(node.connection(r, c)));
      cells.push_back(csv::number(node.condition));
      cells.push_back(node.singular ? "1" : "0");
      csv::write_row(out, cells);
      singular += node.singular;
    }
    log << "field: " << field.nodes.size() << " nodes, " << singular << " singular\n";
    return static_cast<int>(kSuccess);
  });
}

int cmd_curvature(const RunConfig & cfg, const std::string & prefix, std::ostream & log)
{
  return guarded(log, [&] {
    const FieldConfig & fc = cfg.require_slice();
    if (fc.spec.a.count < 3 || fc.spec.b.count < 3) throw ConfigError("slice: curvature needs counts >= 3");
    const FieldSlice field = sample_field(fc.spec, connection_source(cfg, fc), field_threads());
    const CurvatureGrid curl = curvature_slice(field, fc.row);

    std::ofstream out = open_output(prefix + "_curvature.csv");
    std::vector<std::string> header = coordinate_header(fc.spec);
    header.push_back("curl_row" + std::to_string(fc.row));
    csv::write_row(out, header);
    for (std::size_t i = 0; i < field.nodes.size(); ++i) {
      std::vector<std::string> cells = node_coordinates(fc.spec, field.nodes[i].shape);
      cells.push_back(curl.valid[i] ? csv::number(curl.values[i]) : "");
      csv::write_row(out, cells);
    }
    log << "curvature: row " << fc.row << ", " << field.nodes.size() << " nodes\n";
    return static_cast<int>(kSuccess);
  });
}

int cmd_optimize(const RunConfig & cfg, const std::string & prefix, std::ostream & log)
{
  return guarded(log, [&] {
    const GaitOptimization result = optimize_gait(cfg.require_gait(), cfg.require_objective(),
                                                  cfg.require_optimizer(), cfg.require_drag(), cfg.require_sim());

    std::ofstream trace = open_output(prefix + "_trace.csv");
    csv::write_row(trace, {"evaluation", "objective", "incumbent"});
    for (const TraceEntry & e : result.trace)
      csv::write_row(trace, {std::to_string(e.index), csv::number(e.value), csv::number(e.incumbent)});

    const json best{{"objective", result.objective},
                    {"initial_objective", result.initial_objective},
                    {"evaluations", result.evaluations},
                    {"gait", gait_json(result.best)}};
    std::ofstream js = open_output(prefix + "_best_gait.json");
    js << best.dump(2) << '\n';
    log << "optimize: objective " << result.initial_objective << " -> " << result.objective << " in "
        << result.evaluations << " evaluations\n";
    return static_cast<int>(kSuccess);
  });
}

int cmd_check(const DragParams & params, std::ostream & log)
{
  return guarded(log, [&] {
    const std::vector<CheckResult> results = run_checks(params);
    bool all = true;
    for (const CheckResult & r : results) {
      log << (r.pass ? "PASS " : "FAIL ") << r.name << "  measured=" << csv::number(r.measured)
          << "  limit=" << csv::number(r.limit) << "  (" << r.detail << ")\n";
      all = all && r.pass;
    }
    log << (all ? "all checks passed\n" : "some checks FAILED\n");
    return static_cast<int>(all ? kSuccess : kCheckFailed);
  });
}

int run(int argc, const char * const * argv)
{
  CLI::App app{"Kinematic three-link low-Reynolds-number swimmer on SE(3)"};
  app.require_subcommand(1);

  std::string config_path, out_prefix;
  auto add = [&](const char * name, const char * help, bool needs_config) {
    CLI::App * sub = app.add_subcommand(name, help);
    auto * opt = sub->add_option("--config", config_path, "JSON run configuration");
    if (needs_config) opt->required();
    sub->add_option("--out", out_prefix, "Output path prefix (overrides output.prefix)");
    return sub;
  };
  CLI::App * simulate = add("simulate", "Integrate a gait and write trajectory CSV + summary JSON", true);
  CLI::App * field = add("field", "Sample the local connection over a 2D shape slice", true);
  CLI::App * curvature = add("curvature", "Discrete curl of one connection row over a slice", true);
  CLI::App * optimize = add("optimize", "Nelder-Mead search over gait coefficients", true);
  CLI::App * check = add("check", "Run the model invariant suite", false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    return app.exit(e) == 0 ? static_cast<int>(kSuccess) : static_cast<int>(kConfigError);
  }

  RunConfig cfg;
  if (!config_path.empty()) {
    try {
      cfg = load_config(config_path);
    } catch (const ConfigError & e) {
      std::cerr << "config error: " << e.what() << '\n';
      return kConfigError;
    }
  }
  const std::string prefix = out_prefix.empty() ? cfg.output_prefix : out_prefix;

  if (*simulate) return cmd_simulate(cfg, prefix, std::cerr);
  if (*field) return cmd_field(cfg, prefix, std::cerr);
  if (*curvature) return cmd_curvature(cfg, prefix, std::cerr);
  if (*optimize) return cmd_optimize(cfg, prefix, std::cerr);
  if (*check) return cmd_check(cfg.drag.value_or(DragParams{}), std::cout);
  return kConfigError;
}

}  // namespace swim3d::cli
