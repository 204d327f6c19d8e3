#include "swim3d/liegroup.hpp"

#include <cmath>

namespace swim3d {

namespace {

// Below this angle the closed forms lose precision; use Taylor series.
constexpr double kSmallAngle = 1e-5;

}  // namespace

Rotation rot_y(double angle)
{
  const double c = std::cos(angle), s = std::sin(angle);
  Rotation r;
  r << c, 0, -s,
       0, 1, 0,
       s, 0, c;
  return r;
}

Rotation rot_z(double angle)
{
  const double c = std::cos(angle), s = std::sin(angle);
  Rotation r;
  r << c, -s, 0,
       s, c, 0,
       0, 0, 1;
  return r;
}

Rotation link_rotation(double theta, double phi) { return rot_z(theta) * rot_y(phi); }

Mat3 hat3(const Vec3 & v)
{
  Mat3 m;
  m << 0, -v.z(), v.y(),
       v.z(), 0, -v.x(),
       -v.y(), v.x(), 0;
  return m;
}

Vec3 vee3(const Mat3 & m) { return {m(2, 1), m(0, 2), m(1, 0)}; }

Rotation exp_so3(const Vec3 & omega)
{
  const double th2 = omega.squaredNorm();
  const double th = std::sqrt(th2);
  const Mat3 W = hat3(omega);

  double a, b;
  if (th < kSmallAngle) {
    a = 1.0 - th2 / 6.0 + th2 * th2 / 120.0;
    b = 0.5 - th2 / 24.0 + th2 * th2 / 720.0;
  } else {
    a = std::sin(th) / th;
    b = (1.0 - std::cos(th)) / th2;
  }
  return Mat3::Identity() + a * W + b * W * W;
}

Vec3 log_so3(const Rotation & rotation)
{
  const Eigen::AngleAxisd aa(Eigen::Quaterniond(rotation).normalized());
  return aa.angle() * aa.axis();
}

double rotation_angle(const Rotation & rotation)
{
  const Eigen::Quaterniond q = Eigen::Quaterniond(rotation).normalized();
  return 2.0 * std::atan2(q.vec().norm(), std::abs(q.w()));
}

Pose exp_se3(const BodyTwist & xi, double dt)
{
  const Vec3 omega = dt * xi.angular;
  const Vec3 rho = dt * xi.linear;

  const double th2 = omega.squaredNorm();
  const double th = std::sqrt(th2);
  const Mat3 W = hat3(omega);

  // V = I + B W + C W^2 with B = (1 - cos)/th^2, C = (th - sin)/th^3.
  double b, c;
  if (th < kSmallAngle) {
    b = 0.5 - th2 / 24.0 + th2 * th2 / 720.0;
    c = 1.0 / 6.0 - th2 / 120.0 + th2 * th2 / 5040.0;
  } else {
    b = (1.0 - std::cos(th)) / th2;
    c = (th - std::sin(th)) / (th2 * th);
  }
  const Mat3 V = Mat3::Identity() + b * W + c * W * W;
  return {exp_so3(omega), V * rho};
}

BodyTwist log_se3(const Pose & g)
{
  const Vec3 omega = log_so3(g.rotation);
  const double th2 = omega.squaredNorm();
  const double th = std::sqrt(th2);
  const Mat3 W = hat3(omega);

  // V^{-1} = I - W/2 + D W^2, D = (1 - th sin / (2 (1 - cos))) / th^2.
  double d;
  if (th < kSmallAngle) {
    d = 1.0 / 12.0 + th2 / 720.0;
  } else {
    d = (1.0 - th * std::sin(th) / (2.0 * (1.0 - std::cos(th)))) / th2;
  }
  const Mat3 Vinv = Mat3::Identity() - 0.5 * W + d * W * W;
  return {Vinv * g.position, omega};
}

Pose compose(const Pose & g1, const Pose & g2)
{
  return {g1.rotation * g2.rotation, g1.rotation * g2.position + g1.position};
}

Pose inverse(const Pose & g)
{
  const Rotation rt = g.rotation.transpose();
  return {rt, -(rt * g.position)};
}

Mat6 adjoint(const Pose & g)
{
  Mat6 ad = Mat6::Zero();
  ad.topLeftCorner<3, 3>() = g.rotation;
  ad.topRightCorner<3, 3>() = hat3(g.position) * g.rotation;
  ad.bottomRightCorner<3, 3>() = g.rotation;
  return ad;
}

Vec6 bracket(const Vec6 & a, const Vec6 & b)
{
  const Vec3 va = a.head<3>(), wa = a.tail<3>();
  const Vec3 vb = b.head<3>(), wb = b.tail<3>();
  Vec6 out;
  out << wa.cross(vb) - wb.cross(va), wa.cross(wb);
  return out;
}

double distance_from_identity(const Pose & g)
{
  return g.position.norm() + rotation_angle(g.rotation);
}

double orthonormality_error(const Rotation & rotation)
{
  return (rotation.transpose() * rotation - Mat3::Identity()).norm();
}

Eigen::Quaterniond to_quaternion(const Rotation & rotation)
{
  Eigen::Quaterniond q(rotation);
  q.normalize();
  return q;
}

}  // namespace swim3d
