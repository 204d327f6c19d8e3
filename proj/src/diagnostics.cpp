#include "swim3d/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "swim3d/reconstruct.hpp"

namespace swim3d {

namespace {

std::string describe(const std::string & what, int samples)
{
  std::ostringstream os;
  os << what << " over " << samples << " samples";
  return os.str();
}

CheckResult finish(std::string name, double measured, double limit, std::string detail)
{
  return {std::move(name), measured <= limit, measured, limit, std::move(detail)};
}

CheckResult force_balance(const DragParams & params, std::mt19937_64 & rng)
{
  constexpr int kSamples = 1000;
  double worst = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    const Shape s = random_nonsingular_shape(rng);
    const ShapeVelocity sdot = random_unit_rate(rng);
    const BodyTwist xi = body_velocity(s, sdot, params);
    const double scale = params.k * params.L * params.L * sdot.vector().norm();
    worst = std::max(worst, net_wrench(s, sdot, xi, params).vector().norm() / scale);
  }
  return finish("force_balance", worst, 1e-9, describe("max |net wrench| / (k L^2 |rdot|)", kSamples));
}

// Body velocity of link i from central differences of its world pose.
Vec6 finite_difference_twist(const Shape & s, const ShapeVelocity & sdot, const BodyTwist & xi0, Link link,
                             const DragParams & params, double h)
{
  auto world = [&](double t) {
    const Shape st = Shape::from_vector(s.vector() + t * sdot.vector());
    return compose(exp_se3(xi0, t), link_pose(st, link, params.L));
  };
  const Pose g0inv = inverse(world(0.0));
  const Vec6 fwd = log_se3(compose(g0inv, world(h))).vector();
  const Vec6 bwd = log_se3(compose(g0inv, world(-h))).vector();
  return (fwd - bwd) / (2.0 * h);
}

CheckResult jacobian_oracle(const DragParams & params, std::mt19937_64 & rng)
{
  constexpr int kSamples = 200;
  std::normal_distribution<double> n01;
  double worst = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    const Shape s = random_nonsingular_shape(rng);
    const ShapeVelocity sdot = random_unit_rate(rng);
    BodyTwist xi0{Vec3(n01(rng), n01(rng), n01(rng)), Vec3(n01(rng), n01(rng), n01(rng))};
    for (const Link link : {Link::One, Link::Two}) {
      Eigen::Matrix<double, 8, 1> motion;
      motion.head<6>() = xi0.vector();
      motion.tail<2>() = link == Link::One ? sdot.vector().head<2>() : sdot.vector().tail<2>();
      const Vec6 analytic = link_jacobian(s, link, params.L) * motion;
      const Vec6 numeric = finite_difference_twist(s, sdot, xi0, link, params, 1e-6);
      worst = std::max(worst, (analytic - numeric).norm() / std::max(analytic.norm(), 1e-12));
    }
  }
  return finish("jacobian_fd", worst, 1e-5, describe("max relative |B xi - finite difference|", kSamples));
}

CheckResult scallop(const DragParams & params, std::mt19937_64 & rng)
{
  constexpr int kPaths = 20;
  double worst = 0.0;
  for (int i = 0; i < kPaths; ++i) {
    const Gait gait = random_retraced_gait(rng);
    SimConfig cfg;
    cfg.dt = gait.period / 2000.0;
    worst = std::max(worst, distance_from_identity(cycle_displacement(gait, params, cfg)));
  }
  return finish("scallop", worst, 1e-8, describe("max cycle displacement of retraced paths", kPaths));
}

CheckResult planar_closure(const DragParams & params, std::mt19937_64 & rng)
{
  constexpr int kSamples = 200;
  std::uniform_real_distribution<double> angle(-M_PI, M_PI);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  int used = 0;
  while (used < kSamples) {
    const Shape s{angle(rng), 0.0, angle(rng), 0.0};
    const LocalConnection conn = solve_connection(s, params);
    if (conn.singular() || conn.condition > 1e8) continue;
    const Vec4 rdot = Vec4(u(rng), 0.0, u(rng), 0.0).normalized();
    const Vec6 xi = conn.matrix * rdot;
    const double scale = std::max(1.0, xi.norm());
    worst = std::max({worst, std::abs(xi[2]) / scale, std::abs(xi[3]) / scale, std::abs(xi[4]) / scale});
    ++used;
  }
  return finish("planar_closure", worst, 1e-10, describe("max |(v_z, w_x, w_y)| for planar motion", kSamples));
}

CheckResult k_invariance(const DragParams & params, std::mt19937_64 & rng)
{
  constexpr int kSamples = 100;
  DragParams scaled = params;
  scaled.k *= 7.3;
  double worst = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    const Shape s = random_nonsingular_shape(rng);
    const Mat64 a = local_connection(s, params).matrix;
    const Mat64 b = local_connection(s, scaled).matrix;
    worst = std::max(worst, (a - b).cwiseAbs().maxCoeff() / std::max(1.0, a.cwiseAbs().maxCoeff()));
  }
  return finish("k_invariance", worst, 1e-12, describe("max entrywise difference, k vs 7.3k", kSamples));
}

CheckResult singular_detection(const DragParams & params)
{
  const LocalConnection conn = solve_connection(Shape{}, params);
  bool raised = false;
  try {
    local_connection(Shape{}, params);
  } catch (const SingularConfiguration &) {
    raised = true;
  }
  CheckResult r{"singular_detection", raised && conn.condition > kSingularConditionThreshold, conn.condition,
                kSingularConditionThreshold, "condition of omega1 at the aligned shape (must exceed limit)"};
  return r;
}

}  // namespace

Shape random_nonsingular_shape(std::mt19937_64 & rng)
{
  std::uniform_real_distribution<double> theta(-M_PI, M_PI);
  std::uniform_real_distribution<double> mag(0.1, 1.4);
  std::bernoulli_distribution sign(0.5);
  auto phi = [&] { return (sign(rng) ? 1.0 : -1.0) * mag(rng); };
  Shape s;
  s.theta1 = theta(rng);
  s.phi1 = phi();
  s.theta2 = theta(rng);
  s.phi2 = phi();
  return s;
}

ShapeVelocity random_unit_rate(std::mt19937_64 & rng)
{
  std::normal_distribution<double> n01;
  const Vec4 v(n01(rng), n01(rng), n01(rng), n01(rng));
  return ShapeVelocity::from_vector(v.normalized());
}

Gait random_retraced_gait(std::mt19937_64 & rng, double period)
{
  std::uniform_real_distribution<double> theta_offset(-1.0, 1.0);
  std::uniform_real_distribution<double> phi_offset(0.4, 1.0);
  std::uniform_real_distribution<double> amp(-0.1, 0.1);
  std::bernoulli_distribution sign(0.5);

  Gait g;
  g.period = period;
  for (const ShapeCoord c : kShapeCoords) {
    CoordinateSeries & series = g[c];
    const bool is_phi = c == ShapeCoord::Phi1 || c == ShapeCoord::Phi2;
    series.offset = is_phi ? (sign(rng) ? 1.0 : -1.0) * phi_offset(rng) : theta_offset(rng);
    for (int n = 1; n <= 3; ++n) series.harmonics.push_back({n, amp(rng), sign(rng) ? M_PI / 2 : -M_PI / 2});
  }
  return g;
}

std::vector<CheckResult> run_checks(const DragParams & params, std::uint64_t seed)
{
  params.validate();
  std::mt19937_64 rng(seed);
  std::vector<CheckResult> out;
  out.push_back(force_balance(params, rng));
  out.push_back(jacobian_oracle(params, rng));
  out.push_back(scallop(params, rng));
  out.push_back(planar_closure(params, rng));
  out.push_back(k_invariance(params, rng));
  out.push_back(singular_detection(params));
  return out;
}

}  // namespace swim3d
