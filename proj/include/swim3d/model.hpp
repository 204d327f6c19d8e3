#pragma once

#include <stdexcept>
#include <string>

#include "swim3d/liegroup.hpp"

namespace swim3d {

using Vec4 = Eigen::Vector4d;
using Mat64 = Eigen::Matrix<double, 6, 4>;
using Mat68 = Eigen::Matrix<double, 6, 8>;
using Mat62 = Eigen::Matrix<double, 6, 2>;

/// Condition number of omega1 above which a shape is treated as singular.
inline constexpr double kSingularConditionThreshold = 1e12;

/// Resistive drag constants: k per unit length, L is half of a link length.
struct DragParams
{
  double k = 1.0;
  double L = 1.0;

  /// Throws std::invalid_argument unless k > 0 and L > 0.
  void validate() const;
};

/// Joint angles (theta1, phi1, theta2, phi2), radians.
struct Shape
{
  double theta1 = 0.0;
  double phi1 = 0.0;
  double theta2 = 0.0;
  double phi2 = 0.0;

  static Shape from_vector(const Vec4 & v) { return {v[0], v[1], v[2], v[3]}; }
  Vec4 vector() const { return {theta1, phi1, theta2, phi2}; }
};

struct ShapeVelocity
{
  double dtheta1 = 0.0;
  double dphi1 = 0.0;
  double dtheta2 = 0.0;
  double dphi2 = 0.0;

  static ShapeVelocity from_vector(const Vec4 & v) { return {v[0], v[1], v[2], v[3]}; }
  Vec4 vector() const { return {dtheta1, dphi1, dtheta2, dphi2}; }
};

struct Wrench
{
  Vec3 force = Vec3::Zero();
  Vec3 moment = Vec3::Zero();

  static Wrench from_vector(const Vec6 & v) { return {v.head<3>(), v.tail<3>()}; }
  Vec6 vector() const
  {
    Vec6 v;
    v << force, moment;
    return v;
  }
};

enum class Link { One = 1, Two = 2 };

/// Map from shape velocity to base body twist, with the conditioning of omega1.
struct LocalConnection
{
  Mat64 matrix = Mat64::Zero();
  Shape shape;
  double condition = 1.0;

  bool singular() const { return !(condition <= kSingularConditionThreshold); }
};

class SingularConfiguration : public std::runtime_error
{
public:
  SingularConfiguration(const Shape & shape, double condition);

  /// Copy of `other` annotated with the simulation time it was hit at.
  SingularConfiguration(const SingularConfiguration & other, double time);

  const Shape & shape() const noexcept { return shape_; }
  double condition() const noexcept { return condition_; }
  bool has_time() const noexcept { return has_time_; }
  double time() const noexcept { return time_; }

private:
  Shape shape_;
  double condition_;
  bool has_time_ = false;
  double time_ = 0.0;
};

/// diag(kL, 2kL, 2kL, 0, 2/3 kL^3, 2/3 kL^3); no drag resists roll about a link's own axis.
Mat6 drag_matrix(const DragParams & params);

/**
 * @brief Pose of outer link COM frame relative to the base-link frame.
 *
 * Link 1 hangs off the joint at (+L, 0, 0), link 2 off (-L, 0, 0). Link 2
 * is the image of link 1 under a half turn about the base z axis, so at the
 * zero shape it extends along -x with its own x axis pointing away from the
 * base. In both cases the COM sits L along the outer link x axis.
 */
Pose link_pose(const Shape & shape, Link link, double half_length);

/**
 * @brief Jacobian B: (xi0; dtheta_i; dphi_i) -> twist of link i in its frame.
 *
 * The first six columns are Ad(g_i^{-1}), the last two are the body velocity
 * of the link relative to the base per unit joint rate.
 */
Mat68 link_jacobian(const Shape & shape, Link link, double half_length);

/// T_i: link-frame wrench -> base-frame wrench. Equals Ad(g_i^{-1})^T.
Mat6 force_transform(const Shape & shape, Link link, double half_length);

struct OmegaMatrices
{
  Mat6 omega1;
  Mat64 omega2;
};

/**
 * Drag balance blocks so that zero net wrench reads omega1 * xi0 = omega2 * rdot.
 * omega2 already carries the sign moved across by the balance equation.
 */
OmegaMatrices omega_matrices(const Shape & shape, const DragParams & params);

/// Solves omega1 X = omega2 without a singularity check; see LocalConnection::singular().
LocalConnection solve_connection(const Shape & shape, const DragParams & params);

/// solve_connection that throws SingularConfiguration on a degenerate shape.
LocalConnection local_connection(const Shape & shape, const DragParams & params);

BodyTwist body_velocity(const Shape & shape, const ShapeVelocity & sdot, const DragParams & params);

/// Total drag wrench on the swimmer in the base frame for the given motion.
Wrench net_wrench(const Shape & shape, const ShapeVelocity & sdot, const BodyTwist & xi0,
                  const DragParams & params);

/// Condition number sigma_max / sigma_min, +inf when sigma_min is zero.
double condition_number(const Mat6 & m);

}  // namespace swim3d
