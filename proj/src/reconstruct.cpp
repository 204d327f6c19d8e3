#include "swim3d/reconstruct.hpp"

#include <cmath>
#include <string>

namespace swim3d {

namespace {

constexpr int kDriftCheckInterval = 1000;
constexpr double kDriftTolerance = 1e-9;

// Right-trivialized dexp^{-1}_{-u}(v), truncated after the second commutator.
Vec6 dexpinv(const Vec6 & u, const Vec6 & v)
{
  const Vec6 uv = bracket(u, v);
  return v + 0.5 * uv + (1.0 / 12.0) * bracket(u, uv);
}

struct StageValue
{
  Shape shape;
  Vec6 twist;
};

StageValue evaluate(const ShapeTrajectory & shape_fn, const DragParams & params, double t)
{
  const auto [shape, sdot] = shape_fn(t);
  const LocalConnection conn = solve_connection(shape, params);
  if (conn.singular()) throw SingularConfiguration(SingularConfiguration(shape, conn.condition), t);
  const Vec6 xi = conn.matrix * sdot.vector();
  if (!xi.allFinite()) throw NonFiniteState("non-finite body twist at t = " + std::to_string(t), t);
  return {shape, xi};
}

}  // namespace

void SimConfig::validate() const
{
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("sim.dt must be positive");
  if (cycles < 1) throw std::invalid_argument("sim.cycles must be >= 1");
  if (record_stride < 1) throw std::invalid_argument("sim.record_stride must be >= 1");
}

int SimConfig::steps_per_period(double period) const
{
  return std::max(1, static_cast<int>(std::lround(period / dt)));
}

Pose step_pose(const Pose & g, const BodyTwist & xi0, double dt) { return compose(g, exp_se3(xi0, dt)); }

Pose integrate_pose(const ShapeTrajectory & shape_fn, double period, const Pose & g0,
                    const DragParams & params, const SimConfig & cfg, const SampleSink & sink)
{
  cfg.validate();
  const int per_period = cfg.steps_per_period(period);
  const long total = static_cast<long>(per_period) * cfg.cycles;
  const double h = period / per_period;

  Pose g = g0;
  StageValue start = evaluate(shape_fn, params, 0.0);
  if (sink) sink({0.0, g, start.shape, BodyTwist::from_vector(start.twist)});

  for (long n = 0; n < total; ++n) {
    // Times are recomputed from the step index to avoid accumulating rounding.
    const double t = period * static_cast<double>(n) / per_period;
    const double t_end = period * static_cast<double>(n + 1) / per_period;
    const StageValue mid = evaluate(shape_fn, params, t + 0.5 * h);
    const StageValue end = evaluate(shape_fn, params, t_end);

    const Vec6 k1 = start.twist;
    const Vec6 k2 = dexpinv(0.5 * h * k1, mid.twist);
    const Vec6 k3 = dexpinv(0.5 * h * k2, mid.twist);
    const Vec6 k4 = dexpinv(h * k3, end.twist);
    const Vec6 u = (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    g = step_pose(g, BodyTwist::from_vector(u), 1.0);
    start = end;

    const long done = n + 1;
    if (done % kDriftCheckInterval == 0 && orthonormality_error(g.rotation) > kDriftTolerance)
      throw NonFiniteState("rotation left SO(3) at t = " + std::to_string(t_end), t_end);
    if (!g.position.allFinite() || !g.rotation.allFinite())
      throw NonFiniteState("non-finite pose at t = " + std::to_string(t_end), t_end);

    if (sink && (done % cfg.record_stride == 0 || done == total))
      sink({t_end, g, end.shape, BodyTwist::from_vector(end.twist)});
  }
  return g;
}

std::vector<TrajectorySample> integrate(const ShapeTrajectory & shape_fn, double period, const Pose & g0,
                                        const DragParams & params, const SimConfig & cfg)
{
  std::vector<TrajectorySample> out;
  integrate_pose(shape_fn, period, g0, params, cfg,
                 [&out](const TrajectorySample & s) { out.push_back(s); });
  return out;
}

Pose cycle_displacement(const Gait & gait, const DragParams & params, const SimConfig & cfg)
{
  gait.validate();
  SimConfig one = cfg;
  one.cycles = 1;
  return integrate_pose([&gait](double t) { return eval_gait(gait, t); }, gait.period, Pose::identity(),
                        params, one);
}

}  // namespace swim3d
