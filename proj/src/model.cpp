#include "swim3d/model.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace swim3d {

namespace {

std::string describe_singularity(const Shape & s, double condition)
{
  std::ostringstream os;
  os << "singular configuration at shape (" << s.theta1 << ", " << s.phi1 << ", " << s.theta2
     << ", " << s.phi2 << "), condition " << condition;
  return os.str();
}

struct JointAngles
{
  double theta;
  double phi;
};

JointAngles joint_angles(const Shape & shape, Link link)
{
  return link == Link::One ? JointAngles{shape.theta1, shape.phi1}
                           : JointAngles{shape.theta2, shape.phi2};
}

// Relative body velocity of an outer link per unit (dtheta, dphi). Identical
// for both links because link 2 is a fixed rotation of link 1.
Mat62 joint_columns(double phi, double half_length)
{
  const Vec3 w_theta(std::sin(phi), 0.0, std::cos(phi));
  const Vec3 w_phi(0.0, -1.0, 0.0);
  const Vec3 ex = Vec3::UnitX();

  Mat62 cols;
  cols.col(0) << half_length * w_theta.cross(ex), w_theta;
  cols.col(1) << half_length * w_phi.cross(ex), w_phi;
  return cols;
}

}  // namespace

void DragParams::validate() const
{
  if (!(k > 0.0) || !std::isfinite(k)) throw std::invalid_argument("drag.k must be positive");
  if (!(L > 0.0) || !std::isfinite(L)) throw std::invalid_argument("drag.L must be positive");
}

SingularConfiguration::SingularConfiguration(const Shape & shape, double condition)
  : std::runtime_error(describe_singularity(shape, condition)), shape_(shape), condition_(condition)
{}

SingularConfiguration::SingularConfiguration(const SingularConfiguration & other, double time)
  : std::runtime_error(std::string(other.what()) + " at t = " + std::to_string(time)),
    shape_(other.shape_),
    condition_(other.condition_),
    has_time_(true),
    time_(time)
{}

Mat6 drag_matrix(const DragParams & params)
{
  const double k = params.k, L = params.L;
  Vec6 d;
  d << k * L, 2.0 * k * L, 2.0 * k * L, 0.0, 2.0 / 3.0 * k * L * L * L, 2.0 / 3.0 * k * L * L * L;
  return d.asDiagonal();
}

Pose link_pose(const Shape & shape, Link link, double half_length)
{
  const auto [theta, phi] = joint_angles(shape, link);
  const Rotation r1 = link_rotation(theta, phi);
  const Vec3 p1 = Vec3(half_length, 0.0, 0.0) + half_length * r1.col(0);
  if (link == Link::One) return {r1, p1};

  const Rotation half_turn = rot_z(M_PI);
  return {half_turn * r1, half_turn * p1};
}

Mat68 link_jacobian(const Shape & shape, Link link, double half_length)
{
  const Pose g = link_pose(shape, link, half_length);
  Mat68 b;
  b.leftCols<6>() = adjoint(inverse(g));
  b.rightCols<2>() = joint_columns(joint_angles(shape, link).phi, half_length);
  return b;
}

Mat6 force_transform(const Shape & shape, Link link, double half_length)
{
  const Pose g = link_pose(shape, link, half_length);
  Mat6 t = Mat6::Zero();
  t.topLeftCorner<3, 3>() = g.rotation;
  t.bottomLeftCorner<3, 3>() = hat3(g.position) * g.rotation;
  t.bottomRightCorner<3, 3>() = g.rotation;
  return t;
}

OmegaMatrices omega_matrices(const Shape & shape, const DragParams & params)
{
  const Mat6 A = drag_matrix(params);
  OmegaMatrices out;
  out.omega1 = A;

  for (const Link link : {Link::One, Link::Two}) {
    const Eigen::Matrix<double, 6, 8> tab =
      force_transform(shape, link, params.L) * A * link_jacobian(shape, link, params.L);
    out.omega1 += tab.leftCols<6>();
    const int col = link == Link::One ? 0 : 2;
#ifdef SWIM3D_MUTATE_OMEGA2_SIGN
    out.omega2.middleCols<2>(col) = tab.rightCols<2>();
#else
    out.omega2.middleCols<2>(col) = -tab.rightCols<2>();
#endif
  }
  return out;
}

double condition_number(const Mat6 & m)
{
  const Eigen::JacobiSVD<Mat6> svd(m);
  const Vec6 & sv = svd.singularValues();
  const double smin = sv[5];
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return sv[0] / smin;
}

LocalConnection solve_connection(const Shape & shape, const DragParams & params)
{
  const OmegaMatrices om = omega_matrices(shape, params);
  LocalConnection conn;
  conn.shape = shape;
  conn.condition = condition_number(om.omega1);
  conn.matrix = om.omega1.colPivHouseholderQr().solve(om.omega2);
  return conn;
}

LocalConnection local_connection(const Shape & shape, const DragParams & params)
{
  LocalConnection conn = solve_connection(shape, params);
  if (conn.singular()) throw SingularConfiguration(shape, conn.condition);
  return conn;
}

BodyTwist body_velocity(const Shape & shape, const ShapeVelocity & sdot, const DragParams & params)
{
  return BodyTwist::from_vector(local_connection(shape, params).matrix * sdot.vector());
}

Wrench net_wrench(const Shape & shape, const ShapeVelocity & sdot, const BodyTwist & xi0,
                  const DragParams & params)
{
  const Mat6 A = drag_matrix(params);
  const Vec6 x0 = xi0.vector();
  Vec6 total = A * x0;

  const Vec4 rdot = sdot.vector();
  for (const Link link : {Link::One, Link::Two}) {
    Eigen::Matrix<double, 8, 1> motion;
    motion.head<6>() = x0;
    motion.tail<2>() = link == Link::One ? rdot.head<2>() : rdot.tail<2>();
    const Vec6 link_twist = link_jacobian(shape, link, params.L) * motion;
    total += force_transform(shape, link, params.L) * (A * link_twist);
  }
  return Wrench::from_vector(total);
}

}  // namespace swim3d
