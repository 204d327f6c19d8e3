#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace swim3d {

using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat6 = Eigen::Matrix<double, 6, 6>;

/// Element of SO(3) stored as a 3x3 matrix.
using Rotation = Mat3;

/**
 * @brief Rigid pose in SE(3): rotation plus position.
 *
 * Acts on points as x -> rotation * x + position. For the base link the
 * position is its center of mass in the world frame.
 */
struct Pose
{
  Rotation rotation = Rotation::Identity();
  Vec3 position = Vec3::Zero();

  static Pose identity() { return {}; }
};

/**
 * @brief Body twist in se(3) coordinates, ordered (linear; angular).
 *
 * Always expressed in the frame of the body it belongs to.
 */
struct BodyTwist
{
  Vec3 linear = Vec3::Zero();
  Vec3 angular = Vec3::Zero();

  static BodyTwist from_vector(const Vec6 & v) { return {v.head<3>(), v.tail<3>()}; }
  Vec6 vector() const
  {
    Vec6 v;
    v << linear, angular;
    return v;
  }
  bool is_finite() const { return linear.allFinite() && angular.allFinite(); }
};

// Elementary rotations with the sign pattern used throughout the swimmer
// model. rot_y is the negative-sense rotation about y: rot_y(pi/2) e_x = e_z.
Rotation rot_y(double angle);
Rotation rot_z(double angle);

/// Orientation of an outer link relative to the base: rot_z(theta) * rot_y(phi).
Rotation link_rotation(double theta, double phi);

Mat3 hat3(const Vec3 & v);
Vec3 vee3(const Mat3 & m);

/// Rodrigues formula, exp(hat3(omega)).
Rotation exp_so3(const Vec3 & omega);

/// Rotation vector of R with angle in [0, pi].
Vec3 log_so3(const Rotation & rotation);

/// Rotation angle of R in [0, pi].
double rotation_angle(const Rotation & rotation);

/**
 * @brief Closed-form exponential of the twist scaled by dt.
 *
 * Returns exp(dt * xi) as the pose reached after flowing along the constant
 * body twist xi for time dt, starting from identity.
 */
Pose exp_se3(const BodyTwist & xi, double dt);

/// Lie algebra element u with exp_se3(u, 1) == g (principal branch).
BodyTwist log_se3(const Pose & g);

Pose compose(const Pose & g1, const Pose & g2);
Pose inverse(const Pose & g);

/// Twist-coordinate adjoint [R, hat3(p) R; 0, R].
Mat6 adjoint(const Pose & g);

/// Lie bracket of se(3) elements in (linear; angular) coordinates.
Vec6 bracket(const Vec6 & a, const Vec6 & b);

/// ||p|| + rotation angle of R.
double distance_from_identity(const Pose & g);

/// Frobenius norm of R^T R - I.
double orthonormality_error(const Rotation & rotation);

/// Hamilton quaternion (w, x, y, z), normalized.
Eigen::Quaterniond to_quaternion(const Rotation & rotation);

}  // namespace swim3d
