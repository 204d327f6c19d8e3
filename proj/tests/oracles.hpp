#pragma once

// Test-only reference computations. Nothing here calls the library's
// exp/log/adjoint/link_pose code paths, so they can serve as oracles for it.

#include <cmath>
#include <random>

#include <Eigen/Core>
#include <unsupported/Eigen/MatrixFunctions>

#include "swim3d/model.hpp"

namespace oracle {

using Mat4 = Eigen::Matrix4d;
using Vec6 = Eigen::Matrix<double, 6, 1>;

// Closed form of rot_z(theta) * rot_y(phi) for the sign pattern
// rot_y = [c 0 -s; 0 1 0; s 0 c], expanded by hand (and by sympy).
inline Eigen::Matrix3d composite(double theta, double phi)
{
  const double c = std::cos(theta), s = std::sin(theta), C = std::cos(phi), S = std::sin(phi);
  Eigen::Matrix3d r;
  r << c * C, -s, -c * S,
       s * C, c, -s * S,
       S, 0, C;
  return r;
}

inline Mat4 homogeneous(const Eigen::Matrix3d & r, const Eigen::Vector3d & p)
{
  Mat4 m = Mat4::Identity();
  m.topLeftCorner<3, 3>() = r;
  m.topRightCorner<3, 1>() = p;
  return m;
}

// Outer link COM frame in the base frame from plain geometry: joint at
// (+-L, 0, 0), COM a further L along the link axis; link 2 is link 1 mirrored
// by the half turn diag(-1, -1, 1).
inline Mat4 link_frame(const swim3d::Shape & s, swim3d::Link link, double L)
{
  const bool one = link == swim3d::Link::One;
  const double theta = one ? s.theta1 : s.theta2, phi = one ? s.phi1 : s.phi2;
  const Eigen::Matrix3d r = composite(theta, phi);
  const Eigen::Vector3d p = Eigen::Vector3d(L, 0, 0) + L * r.col(0);
  if (one) return homogeneous(r, p);
  const Eigen::Matrix3d half_turn = Eigen::Vector3d(-1, -1, 1).asDiagonal();
  return homogeneous(half_turn * r, half_turn * p);
}

inline Mat4 twist_matrix(const Vec6 & xi)
{
  Mat4 m = Mat4::Zero();
  m(0, 1) = -xi[5]; m(0, 2) = xi[4];
  m(1, 0) = xi[5];  m(1, 2) = -xi[3];
  m(2, 0) = -xi[4]; m(2, 1) = xi[3];
  m.topRightCorner<3, 1>() = xi.head<3>();
  return m;
}

inline Vec6 twist_coordinates(const Mat4 & m)
{
  Vec6 xi;
  xi << m(0, 3), m(1, 3), m(2, 3), m(2, 1), m(0, 2), m(1, 0);
  return xi;
}

// Pade-based matrix exponential, independent of the closed forms in liegroup.
inline Mat4 expm(const Vec6 & xi, double t)
{
  const Mat4 a = t * twist_matrix(xi);
  return a.exp();
}

// Body twist of link i for base twist xi0 and shape rate sdot, from central
// differences of its world pose with step h.
inline Vec6 link_twist_fd(const swim3d::Shape & s, const swim3d::ShapeVelocity & sdot, const Vec6 & xi0,
                          swim3d::Link link, double L, double h = 1e-6)
{
  auto world = [&](double t) {
    const swim3d::Shape st = swim3d::Shape::from_vector(s.vector() + t * sdot.vector());
    return Mat4(expm(xi0, t) * link_frame(st, link, L));
  };
  const Mat4 g0 = world(0.0);
  const Mat4 dg = (world(h) - world(-h)) / (2.0 * h);
  return twist_coordinates(g0.inverse() * dg);
}

inline swim3d::Shape random_shape(std::mt19937_64 & rng)
{
  std::uniform_real_distribution<double> theta(-M_PI, M_PI);
  std::uniform_real_distribution<double> mag(0.1, 1.4);
  std::bernoulli_distribution sign(0.5);
  auto phi = [&] { return (sign(rng) ? 1.0 : -1.0) * mag(rng); };
  swim3d::Shape s;
  s.theta1 = theta(rng);
  s.phi1 = phi();
  s.theta2 = theta(rng);
  s.phi2 = phi();
  return s;
}

inline swim3d::ShapeVelocity random_rate(std::mt19937_64 & rng)
{
  std::normal_distribution<double> n01;
  return swim3d::ShapeVelocity::from_vector(Eigen::Vector4d(n01(rng), n01(rng), n01(rng), n01(rng)).normalized());
}

inline Vec6 random_vec6(std::mt19937_64 & rng)
{
  std::normal_distribution<double> n01;
  Vec6 v;
  for (int i = 0; i < 6; ++i) v[i] = n01(rng);
  return v;
}

}  // namespace oracle
