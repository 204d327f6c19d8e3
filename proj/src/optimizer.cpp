#include "swim3d/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <stdexcept>

namespace swim3d {

namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

struct Vertex
{
  std::vector<double> x;
  double f;
};

double rank_value(double f) { return std::isnan(f) ? -std::numeric_limits<double>::infinity() : f; }

// Blend origin + factor * (towards - origin).
std::vector<double> blend(const std::vector<double> & origin, const std::vector<double> & towards, double factor)
{
  std::vector<double> out(origin.size());
  for (std::size_t i = 0; i < origin.size(); ++i) out[i] = origin[i] + factor * (towards[i] - origin[i]);
  return out;
}

class Search
{
public:
  Search(const ScalarObjective & f, const NelderMeadConfig & cfg) : f_(f), cfg_(cfg) {}

  std::optional<double> eval(const std::vector<double> & x)
  {
    if (result_.evaluations >= cfg_.max_evaluations) return std::nullopt;
    const double v = rank_value(f_(x));
    ++result_.evaluations;
    if (result_.best.empty() || v > result_.value) {
      result_.value = v;
      result_.best = x;
    }
    result_.trace.push_back({result_.evaluations, v, result_.value});
    return v;
  }

  NelderMeadResult & result() { return result_; }

private:
  const ScalarObjective & f_;
  const NelderMeadConfig & cfg_;
  NelderMeadResult result_;
};

}  // namespace

NelderMeadResult maximize_nelder_mead(const ScalarObjective & f, const std::vector<double> & x0,
                                      const NelderMeadConfig & cfg)
{
  const std::size_t n = x0.size();
  Search search(f, cfg);

  if (cfg.max_evaluations == 0) {
    NelderMeadConfig single = cfg;
    single.max_evaluations = 1;
    Search once(f, single);
    once.eval(x0);
    return once.result();
  }
  if (n == 0) throw std::invalid_argument("nelder-mead needs at least one free parameter");
  if (cfg.max_evaluations < static_cast<int>(n) + 2)
    throw std::invalid_argument("optimizer.max_evaluations must be >= dimension + 2");
  if (!(cfg.initial_scale > 0.0)) throw std::invalid_argument("optimizer.initial_scale must be positive");

  std::mt19937_64 rng(cfg.seed);
  std::bernoulli_distribution coin(0.5);

  std::vector<double> start = x0;
  std::optional<double> start_value;

  for (int attempt = 0; attempt <= cfg.max_restarts; ++attempt) {
    std::vector<Vertex> simplex;
    simplex.reserve(n + 1);

    const auto v0 = start_value ? start_value : search.eval(start);
    if (!v0) break;
    simplex.push_back({start, *v0});
    bool exhausted = false;
    for (std::size_t i = 0; i < n && !exhausted; ++i) {
      std::vector<double> x = start;
      const double sign = attempt == 0 ? 1.0 : (coin(rng) ? 1.0 : -1.0);
      x[i] += sign * cfg.initial_scale;
      const auto v = search.eval(x);
      if (!v) exhausted = true;
      else simplex.push_back({x, *v});
    }
    if (exhausted) break;

    while (true) {
      std::stable_sort(simplex.begin(), simplex.end(), [](const Vertex & a, const Vertex & b) { return a.f > b.f; });
      const Vertex & best = simplex.front();
      const Vertex & worst = simplex.back();
      if (best.f - worst.f <= cfg.tolerance) break;

      std::vector<double> centroid(n, 0.0);
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[k].x[i] / static_cast<double>(n);

      const std::vector<double> xr = blend(centroid, worst.x, -kReflect);
      const auto fr = search.eval(xr);
      if (!fr) { exhausted = true; break; }

      const double f_second_worst = simplex[n - 1].f;
      bool do_shrink = false;
      if (*fr > best.f) {
        const std::vector<double> xe = blend(centroid, xr, kExpand);
        const auto fe = search.eval(xe);
        if (!fe) { exhausted = true; break; }
        simplex.back() = *fe > *fr ? Vertex{xe, *fe} : Vertex{xr, *fr};
      } else if (*fr > f_second_worst) {
        simplex.back() = {xr, *fr};
      } else if (*fr > worst.f) {
        const std::vector<double> xc = blend(centroid, xr, kContract);
        const auto fc = search.eval(xc);
        if (!fc) { exhausted = true; break; }
        if (*fc >= *fr) simplex.back() = {xc, *fc};
        else do_shrink = true;
      } else {
        const std::vector<double> xc = blend(centroid, worst.x, kContract);
        const auto fc = search.eval(xc);
        if (!fc) { exhausted = true; break; }
        if (*fc > worst.f) simplex.back() = {xc, *fc};
        else do_shrink = true;
      }

      if (do_shrink) {
        for (std::size_t k = 1; k <= n && !exhausted; ++k) {
          simplex[k].x = blend(simplex[0].x, simplex[k].x, kShrink);
          const auto v = search.eval(simplex[k].x);
          if (!v) exhausted = true;
          else simplex[k].f = *v;
        }
        if (exhausted) break;
      }
    }
    if (exhausted) break;

    start = search.result().best;
    start_value = search.result().value;
  }
  return search.result();
}

void Objective::validate() const
{
  if (!(penalty_weight >= 0.0)) throw std::invalid_argument("objective.penalty must be >= 0");
  for (const double b : amplitude_bounds)
    if (!(b > 0.0)) throw std::invalid_argument("objective amplitude bounds must be positive");
}

double amplitude_penalty(const Gait & gait, const Objective & obj)
{
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double excess = gait.coords[i].amplitude_sum() - obj.amplitude_bounds[i];
    if (excess > 0.0) sum += excess * excess;
  }
  return obj.penalty_weight * sum;
}

double evaluate_objective(const Gait & gait, const Objective & obj, const DragParams & params,
                          const SimConfig & cfg)
{
  const double penalty = amplitude_penalty(gait, obj);
  Pose g;
  try {
    g = cycle_displacement(gait, params, cfg);
  } catch (const SingularConfiguration &) {
    return -kSingularPenalty - penalty;
  } catch (const NonFiniteState &) {
    return -kSingularPenalty - penalty;
  }

  double metric = 0.0;
  switch (obj.target) {
    case Target::DisplacementX: metric = g.position.x(); break;
    case Target::DisplacementNorm: metric = g.position.norm(); break;
    case Target::RotationZ: metric = log_so3(g.rotation).z(); break;
  }
  return metric - penalty;
}

Gait pad_free_harmonics(const Gait & gait, const std::vector<ShapeCoord> & free_coords)
{
  Gait out = gait;
  for (const ShapeCoord c : free_coords)
    if (out[c].harmonics.empty()) out[c].harmonics.push_back({1, 0.0, 0.0});
  return out;
}

GaitOptimization optimize_gait(const Gait & initial, const Objective & obj, const OptimizerConfig & ocfg,
                               const DragParams & params, const SimConfig & scfg)
{
  initial.validate();
  obj.validate();
  params.validate();
  scfg.validate();

  const Gait base = ocfg.mask.empty() ? pad_free_harmonics(initial, ocfg.free_coords) : initial;
  const std::vector<double> full = base.flatten();

  std::vector<bool> mask = ocfg.mask;
  if (mask.empty()) {
    mask.assign(full.size(), false);
    for (const ShapeCoord c : ocfg.free_coords) {
      const std::size_t first = base.offset_index(c);
      if (ocfg.optimize_offsets) mask[first] = true;
      for (std::size_t j = 0; j < 2 * base[c].harmonics.size(); ++j) mask[first + 1 + j] = true;
    }
  }
  if (mask.size() != full.size()) throw std::invalid_argument("optimizer mask length does not match gait parameters");

  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (mask[i]) active.push_back(i);

  auto expand = [&](const std::vector<double> & x) {
    std::vector<double> p = full;
    for (std::size_t i = 0; i < active.size(); ++i) p[active[i]] = x[i];
    return base.with_parameters(p);
  };

  std::vector<double> x0(active.size());
  for (std::size_t i = 0; i < active.size(); ++i) x0[i] = full[active[i]];

  const ScalarObjective f = [&](const std::vector<double> & x) {
    return evaluate_objective(expand(x), obj, params, scfg);
  };
  NelderMeadResult nm = maximize_nelder_mead(f, x0, ocfg.search);

  GaitOptimization out;
  out.best = expand(nm.best);
  out.objective = nm.value;
  out.initial_objective = nm.trace.empty() ? nm.value : nm.trace.front().value;
  out.evaluations = nm.evaluations;
  out.trace = std::move(nm.trace);
  return out;
}

}  // namespace swim3d
