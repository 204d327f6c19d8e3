#include "swim3d/gait.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace swim3d {

std::string_view coord_name(ShapeCoord c)
{
  switch (c) {
    case ShapeCoord::Theta1: return "theta1";
    case ShapeCoord::Phi1: return "phi1";
    case ShapeCoord::Theta2: return "theta2";
    case ShapeCoord::Phi2: return "phi2";
  }
  return "?";
}

ShapeCoord parse_coord(std::string_view name)
{
  for (const ShapeCoord c : kShapeCoords)
    if (coord_name(c) == name) return c;
  throw std::invalid_argument("unknown shape coordinate '" + std::string(name) + "'");
}

double get(const Shape & s, ShapeCoord c)
{
  switch (c) {
    case ShapeCoord::Theta1: return s.theta1;
    case ShapeCoord::Phi1: return s.phi1;
    case ShapeCoord::Theta2: return s.theta2;
    case ShapeCoord::Phi2: return s.phi2;
  }
  return 0.0;
}

void set(Shape & s, ShapeCoord c, double value)
{
  switch (c) {
    case ShapeCoord::Theta1: s.theta1 = value; break;
    case ShapeCoord::Phi1: s.phi1 = value; break;
    case ShapeCoord::Theta2: s.theta2 = value; break;
    case ShapeCoord::Phi2: s.phi2 = value; break;
  }
}

double CoordinateSeries::amplitude_sum() const
{
  double sum = 0.0;
  for (const auto & h : harmonics) sum += std::abs(h.amplitude);
  return sum;
}

void Gait::validate() const
{
  if (!(period > 0.0) || !std::isfinite(period)) throw std::invalid_argument("gait.period must be positive");
  for (const ShapeCoord c : kShapeCoords) {
    const auto & series = (*this)[c];
    const std::string name(coord_name(c));
    if (!std::isfinite(series.offset)) throw std::invalid_argument("gait." + name + ".offset is not finite");
    if (series.harmonics.size() > static_cast<std::size_t>(kMaxHarmonics))
      throw std::invalid_argument("gait." + name + " has more than 8 harmonics");
    for (const auto & h : series.harmonics) {
      if (h.n < 1) throw std::invalid_argument("gait." + name + ": harmonic index must be >= 1");
      if (!std::isfinite(h.amplitude) || !std::isfinite(h.phase))
        throw std::invalid_argument("gait." + name + ": non-finite harmonic coefficient");
    }
  }
}

std::vector<double> Gait::flatten() const
{
  std::vector<double> out;
  for (const auto & series : coords) {
    out.push_back(series.offset);
    for (const auto & h : series.harmonics) {
      out.push_back(h.amplitude);
      out.push_back(h.phase);
    }
  }
  return out;
}

Gait Gait::with_parameters(const std::vector<double> & params) const
{
  Gait g = *this;
  std::size_t i = 0;
  for (auto & series : g.coords) {
    series.offset = params.at(i++);
    for (auto & h : series.harmonics) {
      h.amplitude = params.at(i++);
      h.phase = params.at(i++);
    }
  }
  if (i != params.size()) throw std::invalid_argument("gait parameter vector has wrong length");
  return g;
}

std::size_t Gait::offset_index(ShapeCoord c) const
{
  std::size_t i = 0;
  for (const ShapeCoord k : kShapeCoords) {
    if (k == c) return i;
    i += 1 + 2 * (*this)[k].harmonics.size();
  }
  return i;
}

std::pair<Shape, ShapeVelocity> eval_gait(const Gait & gait, double t)
{
  double tau = std::fmod(t, gait.period);
  if (tau < 0.0) tau += gait.period;
  const double base = 2.0 * M_PI / gait.period;

  Vec4 q, dq;
  for (int i = 0; i < 4; ++i) {
    const auto & series = gait.coords[i];
    double value = series.offset, rate = 0.0;
    for (const auto & h : series.harmonics) {
      const double w = base * h.n;
      const double arg = w * tau + h.phase;
      value += h.amplitude * std::sin(arg);
      rate += h.amplitude * w * std::cos(arg);
    }
    q[i] = value;
    dq[i] = rate;
  }
  return {Shape::from_vector(q), ShapeVelocity::from_vector(dq)};
}

Gait time_scaled(const Gait & gait, double factor)
{
  Gait g = gait;
  g.period = gait.period / factor;
  return g;
}

}  // namespace swim3d
