#pragma once

#include <functional>
#include <vector>

#include "swim3d/gait.hpp"
#include "swim3d/model.hpp"

namespace swim3d {

/// One sampled shape coordinate: `count` equally spaced values over [lo, hi].
struct SliceAxis
{
  ShapeCoord coord = ShapeCoord::Theta1;
  double lo = -1.0;
  double hi = 1.0;
  int count = 2;

  double value(int i) const { return lo + (hi - lo) * i / (count - 1); }
  double spacing() const { return (hi - lo) / (count - 1); }
};

/**
 * @brief 2D slice of shape space.
 *
 * Active coordinates come from `a` and `b`; the other two are read from
 * `fixed` (its active-coordinate values are ignored).
 */
struct SliceSpec
{
  SliceAxis a{ShapeCoord::Theta1};
  SliceAxis b{ShapeCoord::Theta2};
  Shape fixed;

  void validate() const;
  Shape shape_at(int ia, int ib) const;
};

struct FieldNode
{
  Shape shape;
  Mat64 connection = Mat64::Zero();
  double condition = 1.0;
  bool singular = false;
};

/// Sampled connection; nodes are row-major with the `a` index outermost.
struct FieldSlice
{
  SliceSpec spec;
  std::vector<FieldNode> nodes;

  const FieldNode & at(int ia, int ib) const { return nodes[node_index(ia, ib)]; }
  std::size_t node_index(int ia, int ib) const
  {
    return static_cast<std::size_t>(ia) * spec.b.count + ib;
  }
};

/// Anything that yields a connection per shape; singularity via LocalConnection::singular().
using ConnectionSource = std::function<LocalConnection(const Shape &)>;

ConnectionSource model_connection(const DragParams & params);

/// Evaluates `source` at every node. threads == 0 uses hardware concurrency.
FieldSlice sample_field(const SliceSpec & spec, const ConnectionSource & source, unsigned threads = 1);
FieldSlice sample_field(const SliceSpec & spec, const DragParams & params, unsigned threads = 1);

/// Row-major grid of the discrete curl; `valid` is false on the border and next to singular nodes.
struct CurvatureGrid
{
  SliceSpec spec;
  int row = 1;
  std::vector<double> values;
  std::vector<bool> valid;

  double at(int ia, int ib) const { return values[static_cast<std::size_t>(ia) * spec.b.count + ib]; }
  bool valid_at(int ia, int ib) const { return valid[static_cast<std::size_t>(ia) * spec.b.count + ib]; }
};

/**
 * @brief Exterior derivative of one connection row on the slice.
 *
 * curl = dA_{row,b}/dr_a - dA_{row,a}/dr_b using central differences with
 * the grid spacing. Only the abelian part: the -[A_a, A_b] bracket term of
 * the full curvature is not included. `row` is 1-based (1..6).
 */
CurvatureGrid curvature_slice(const FieldSlice & field, int row);
CurvatureGrid curvature_slice(const SliceSpec & spec, const DragParams & params, int row, unsigned threads = 1);

/// Index block [ia0, ia1] x [ib0, ib1] of grid nodes, inclusive.
struct NodeRect
{
  int ia0, ia1, ib0, ib1;
};

/// Counter-clockwise (in the (a, b) plane) trapezoid line integral of A_row around the rectangle.
double boundary_integral(const FieldSlice & field, int row, const NodeRect & rect);

/// Trapezoid integral of the curl over the rectangle; throws if a node in it is invalid.
double area_integral(const CurvatureGrid & curvature, const NodeRect & rect);

}  // namespace swim3d
