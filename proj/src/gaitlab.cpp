#include "swim3d/gaitlab.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

namespace swim3d {

namespace {

int column_of(ShapeCoord c) { return static_cast<int>(c); }

double entry(const FieldNode & node, int row, ShapeCoord c) { return node.connection(row - 1, column_of(c)); }

void check_row(int row)
{
  if (row < 1 || row > 6) throw std::invalid_argument("connection row must be in 1..6");
}

}  // namespace

void SliceSpec::validate() const
{
  if (a.coord == b.coord) throw std::invalid_argument("slice axes must be distinct coordinates");
  for (const SliceAxis * axis : {&a, &b}) {
    const std::string name(coord_name(axis->coord));
    if (axis->count < 2) throw std::invalid_argument("slice axis " + name + " needs count >= 2");
    if (!std::isfinite(axis->lo) || !std::isfinite(axis->hi) || !(axis->hi > axis->lo))
      throw std::invalid_argument("slice axis " + name + " needs finite lo < hi");
  }
  for (const ShapeCoord c : kShapeCoords)
    if (!std::isfinite(get(fixed, c))) throw std::invalid_argument("slice fixed values must be finite");
}

Shape SliceSpec::shape_at(int ia, int ib) const
{
  Shape s = fixed;
  set(s, a.coord, a.value(ia));
  set(s, b.coord, b.value(ib));
  return s;
}

ConnectionSource model_connection(const DragParams & params)
{
  return [params](const Shape & s) { return solve_connection(s, params); };
}

FieldSlice sample_field(const SliceSpec & spec, const ConnectionSource & source, unsigned threads)
{
  spec.validate();
  FieldSlice field{spec, {}};
  const std::size_t total = static_cast<std::size_t>(spec.a.count) * spec.b.count;
  field.nodes.resize(total);

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      const int ia = static_cast<int>(idx / spec.b.count);
      const int ib = static_cast<int>(idx % spec.b.count);
      FieldNode & node = field.nodes[idx];
      node.shape = spec.shape_at(ia, ib);
      const LocalConnection conn = source(node.shape);
      node.condition = conn.condition;
      node.singular = conn.singular() || !conn.matrix.allFinite();
      node.connection = node.singular ? Mat64::Zero() : conn.matrix;
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));
  if (threads <= 1) {
    work(0, total);
    return field;
  }

  std::vector<std::thread> pool;
  const std::size_t chunk = (total + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t begin = t * chunk, end = std::min(total, begin + chunk);
    if (begin < end) pool.emplace_back(work, begin, end);
  }
  for (auto & th : pool) th.join();
  return field;
}

FieldSlice sample_field(const SliceSpec & spec, const DragParams & params, unsigned threads)
{
  params.validate();
  return sample_field(spec, model_connection(params), threads);
}

CurvatureGrid curvature_slice(const FieldSlice & field, int row)
{
  check_row(row);
  const SliceSpec & spec = field.spec;
  if (spec.a.count < 3 || spec.b.count < 3) throw std::invalid_argument("curvature needs a grid of at least 3x3");

  const std::size_t total = field.nodes.size();
  CurvatureGrid out{spec, row, std::vector<double>(total, 0.0), std::vector<bool>(total, false)};
  const double ha = spec.a.spacing(), hb = spec.b.spacing();

  for (int ia = 1; ia + 1 < spec.a.count; ++ia) {
    for (int ib = 1; ib + 1 < spec.b.count; ++ib) {
      const FieldNode & east = field.at(ia + 1, ib);
      const FieldNode & west = field.at(ia - 1, ib);
      const FieldNode & north = field.at(ia, ib + 1);
      const FieldNode & south = field.at(ia, ib - 1);
      if (east.singular || west.singular || north.singular || south.singular || field.at(ia, ib).singular)
        continue;

      const double d_ab = (entry(east, row, spec.b.coord) - entry(west, row, spec.b.coord)) / (2.0 * ha);
      const double d_ba = (entry(north, row, spec.a.coord) - entry(south, row, spec.a.coord)) / (2.0 * hb);
      const std::size_t idx = field.node_index(ia, ib);
      out.values[idx] = d_ab - d_ba;
      out.valid[idx] = true;
    }
  }
  return out;
}

CurvatureGrid curvature_slice(const SliceSpec & spec, const DragParams & params, int row, unsigned threads)
{
  return curvature_slice(sample_field(spec, params, threads), row);
}

double boundary_integral(const FieldSlice & field, int row, const NodeRect & rect)
{
  check_row(row);
  const SliceSpec & spec = field.spec;
  const double ha = spec.a.spacing(), hb = spec.b.spacing();
  const ShapeCoord ca = spec.a.coord, cb = spec.b.coord;

  auto value = [&](int ia, int ib, ShapeCoord c) {
    const FieldNode & n = field.at(ia, ib);
    if (n.singular) throw std::domain_error("line integral crosses a singular node");
    return entry(n, row, c);
  };

  double sum = 0.0;
  // Bottom edge (b = b0), a increasing; top edge (b = b1), a decreasing.
  for (int ia = rect.ia0; ia < rect.ia1; ++ia) {
    sum += 0.5 * ha * (value(ia, rect.ib0, ca) + value(ia + 1, rect.ib0, ca));
    sum -= 0.5 * ha * (value(ia, rect.ib1, ca) + value(ia + 1, rect.ib1, ca));
  }
  // Right edge (a = a1), b increasing; left edge (a = a0), b decreasing.
  for (int ib = rect.ib0; ib < rect.ib1; ++ib) {
    sum += 0.5 * hb * (value(rect.ia1, ib, cb) + value(rect.ia1, ib + 1, cb));
    sum -= 0.5 * hb * (value(rect.ia0, ib, cb) + value(rect.ia0, ib + 1, cb));
  }
  return sum;
}

double area_integral(const CurvatureGrid & curvature, const NodeRect & rect)
{
  const double ha = curvature.spec.a.spacing(), hb = curvature.spec.b.spacing();
  double sum = 0.0;
  for (int ia = rect.ia0; ia <= rect.ia1; ++ia) {
    const double wa = (ia == rect.ia0 || ia == rect.ia1) ? 0.5 : 1.0;
    for (int ib = rect.ib0; ib <= rect.ib1; ++ib) {
      if (!curvature.valid_at(ia, ib)) throw std::domain_error("area integral touches an undefined curvature node");
      const double wb = (ib == rect.ib0 || ib == rect.ib1) ? 0.5 : 1.0;
      sum += wa * wb * curvature.at(ia, ib);
    }
  }
  return sum * ha * hb;
}

}  // namespace swim3d
