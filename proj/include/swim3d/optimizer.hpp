#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "swim3d/gait.hpp"
#include "swim3d/reconstruct.hpp"

namespace swim3d {

struct NelderMeadConfig
{
  /// Total objective evaluations, simplex construction included. 0 evaluates the start point only.
  int max_evaluations = 2000;
  double initial_scale = 0.1;
  /// Converged when best - worst vertex value <= tolerance.
  double tolerance = 1e-12;
  std::uint64_t seed = 1;
  /// Fresh simplices around the incumbent after convergence, budget permitting.
  int max_restarts = 3;
};

struct TraceEntry
{
  int index = 0;
  double value = 0.0;
  double incumbent = 0.0;
};

struct NelderMeadResult
{
  std::vector<double> best;
  double value = -std::numeric_limits<double>::infinity();
  int evaluations = 0;
  std::vector<TraceEntry> trace;
};

using ScalarObjective = std::function<double(const std::vector<double> &)>;

/**
 * @brief Maximizes f with the Nelder-Mead simplex method.
 *
 * Coefficients: reflection 1, expansion 2, contraction 0.5, shrink 0.5.
 * Restart simplices use seed-driven random signs along each axis, so a run
 * is a deterministic function of (f, x0, cfg). NaN values rank below
 * everything else.
 */
NelderMeadResult maximize_nelder_mead(const ScalarObjective & f, const std::vector<double> & x0,
                                      const NelderMeadConfig & cfg);

enum class Target { DisplacementX, DisplacementNorm, RotationZ };

struct Objective
{
  Target target = Target::DisplacementX;
  double penalty_weight = 0.0;
  /// Bound on CoordinateSeries::amplitude_sum() per coordinate, radians.
  std::array<double, 4> amplitude_bounds = {M_PI, M_PI, M_PI, M_PI};

  void validate() const;
};

/// Value assigned (negated) when a candidate gait hits a singular shape.
inline constexpr double kSingularPenalty = 1e6;

double amplitude_penalty(const Gait & gait, const Objective & obj);

/// Target metric of cycle_displacement minus the amplitude penalty; singular runs score -kSingularPenalty.
double evaluate_objective(const Gait & gait, const Objective & obj, const DragParams & params,
                          const SimConfig & cfg);

struct OptimizerConfig
{
  NelderMeadConfig search;
  /// Coordinates whose harmonic coefficients are searched.
  std::vector<ShapeCoord> free_coords = {ShapeCoord::Theta1, ShapeCoord::Theta2};
  bool optimize_offsets = false;
  /// Optional explicit mask over Gait::flatten() after harmonic padding; overrides the above.
  std::vector<bool> mask;
};

struct GaitOptimization
{
  Gait best;
  double objective = 0.0;
  double initial_objective = 0.0;
  int evaluations = 0;
  std::vector<TraceEntry> trace;
};

/// Free coordinates without harmonics get a zero-amplitude first harmonic so the search can move them.
Gait pad_free_harmonics(const Gait & gait, const std::vector<ShapeCoord> & free_coords);

GaitOptimization optimize_gait(const Gait & initial, const Objective & obj, const OptimizerConfig & ocfg,
                               const DragParams & params, const SimConfig & scfg);

}  // namespace swim3d
