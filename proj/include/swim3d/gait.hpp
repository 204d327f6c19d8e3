#pragma once

#include <array>
#include <string_view>
#include <utility>
#include <vector>

#include "swim3d/model.hpp"

namespace swim3d {

inline constexpr int kMaxHarmonics = 8;

enum class ShapeCoord { Theta1 = 0, Phi1 = 1, Theta2 = 2, Phi2 = 3 };

inline constexpr std::array<ShapeCoord, 4> kShapeCoords = {ShapeCoord::Theta1, ShapeCoord::Phi1,
                                                           ShapeCoord::Theta2, ShapeCoord::Phi2};

std::string_view coord_name(ShapeCoord c);

/// Parses "theta1" / "phi1" / "theta2" / "phi2"; throws std::invalid_argument otherwise.
ShapeCoord parse_coord(std::string_view name);

double get(const Shape & s, ShapeCoord c);
void set(Shape & s, ShapeCoord c, double value);

/// Term amplitude * sin(2 pi n t / T + phase).
struct Harmonic
{
  int n = 1;
  double amplitude = 0.0;
  double phase = 0.0;
};

struct CoordinateSeries
{
  double offset = 0.0;
  std::vector<Harmonic> harmonics;

  /// Sum of |amplitude|, the largest possible excursion from the offset.
  double amplitude_sum() const;
};

/**
 * @brief Periodic shape trajectory, one truncated Fourier series per joint angle.
 *
 * Evaluation wraps t into [0, period), so the trajectory is periodic up to
 * the rounding of that reduction.
 */
struct Gait
{
  double period = 1.0;
  std::array<CoordinateSeries, 4> coords;

  CoordinateSeries & operator[](ShapeCoord c) { return coords[static_cast<int>(c)]; }
  const CoordinateSeries & operator[](ShapeCoord c) const { return coords[static_cast<int>(c)]; }

  /// Throws std::invalid_argument on period <= 0, n < 1, too many harmonics or non-finite values.
  void validate() const;

  /// Offsets followed by (amplitude, phase) per harmonic, coordinate by coordinate.
  std::vector<double> flatten() const;

  /// Inverse of flatten() for a gait with the same harmonic layout.
  Gait with_parameters(const std::vector<double> & params) const;

  /// Index of the offset entry of coordinate c in flatten().
  std::size_t offset_index(ShapeCoord c) const;
};

std::pair<Shape, ShapeVelocity> eval_gait(const Gait & gait, double t);

/// Gait that runs the same shape path with time scaled: r_new(t) = r(factor * t).
Gait time_scaled(const Gait & gait, double factor);

}  // namespace swim3d
