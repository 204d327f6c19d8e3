#pragma once

#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "swim3d/gait.hpp"
#include "swim3d/liegroup.hpp"
#include "swim3d/model.hpp"

namespace swim3d {

struct TrajectorySample
{
  double t = 0.0;
  Pose pose;
  Shape shape;
  BodyTwist twist;
};

/**
 * @brief Fixed-step integration settings.
 *
 * dt is snapped to period / round(period / dt) so every cycle ends on a
 * step boundary. record_stride keeps every n-th step in the output.
 */
struct SimConfig
{
  double dt = 1e-3;
  int cycles = 1;
  int record_stride = 1;

  void validate() const;
  int steps_per_period(double period) const;
};

class NonFiniteState : public std::runtime_error
{
public:
  NonFiniteState(const std::string & what, double time)
    : std::runtime_error(what), time_(time)
  {}
  double time() const noexcept { return time_; }

private:
  double time_;
};

using ShapeTrajectory = std::function<std::pair<Shape, ShapeVelocity>(double)>;
using SampleSink = std::function<void(const TrajectorySample &)>;

/// g * exp(dt * xi0): body twist applied on the right.
Pose step_pose(const Pose & g, const BodyTwist & xi0, double dt);

/**
 * @brief RKMK4 integration of g' = g xi0(t), xi0 = A(r(t)) rdot(t).
 *
 * Runs cfg.cycles periods of length `period` from g0. Every
 * cfg.record_stride-th step (plus the first and last) is handed to `sink`
 * when one is given. Returns the final pose.
 *
 * Throws SingularConfiguration (with time) if the path crosses a singular
 * shape and NonFiniteState on a NaN/Inf twist or rotation drift.
 */
Pose integrate_pose(const ShapeTrajectory & shape_fn, double period, const Pose & g0,
                    const DragParams & params, const SimConfig & cfg, const SampleSink & sink = {});

std::vector<TrajectorySample> integrate(const ShapeTrajectory & shape_fn, double period, const Pose & g0,
                                        const DragParams & params, const SimConfig & cfg);

/// Net pose after one period of `gait`, starting from identity.
Pose cycle_displacement(const Gait & gait, const DragParams & params, const SimConfig & cfg);

}  // namespace swim3d
