#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "swim3d/gait.hpp"
#include "swim3d/model.hpp"

namespace swim3d {

struct CheckResult
{
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double limit = 0.0;
  std::string detail;
};

/// theta uniform in [-pi, pi], phi uniform in [-1.4, -0.1] U [0.1, 1.4].
Shape random_nonsingular_shape(std::mt19937_64 & rng);

/// Random unit shape velocity.
ShapeVelocity random_unit_rate(std::mt19937_64 & rng);

/**
 * Random gait whose series are all cosines, so r(T - t) = r(t): the path is
 * traced forward on [0, T/2] and backward on [T/2, T]. phi stays in
 * [0.1, 1.3] in magnitude, away from the aligned singularity.
 */
Gait random_retraced_gait(std::mt19937_64 & rng, double period = 1.0);

/**
 * @brief Invariant suite behind `swim3d check`.
 *
 * Force balance, finite-difference Jacobian consistency, scallop theorem,
 * planar closure, k-invariance and singular-shape detection, each with its
 * measured residual. Deterministic for a given seed.
 */
std::vector<CheckResult> run_checks(const DragParams & params = {}, std::uint64_t seed = 20261014);

}  // namespace swim3d
