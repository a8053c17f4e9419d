#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "kitefold/geometry.hpp"
#include "kitefold/circle_pack.hpp"
#include "kitefold/hinge_chain.hpp"

namespace fixtures {

using kitefold::Point;
using kitefold::Ring;

struct NamedPolygon {
  std::string name;
  std::vector<Ring> rings;
};

inline std::vector<Ring> triangle_345() { return {{{0, 0}, {4, 0}, {0, 3}}}; }
inline std::vector<Ring> square(double side) { return {{{0, 0}, {side, 0}, {side, side}, {0, side}}}; }
inline std::vector<Ring> l_polyomino() { return {{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}}; }
inline std::vector<Ring> concave_hexagon() { return {{{0, 0}, {4, 0}, {5, 2}, {3, 3}, {2, 1.5}, {0, 3}}}; }
inline std::vector<Ring> square_with_hole() {
  return {{{0, 0}, {4, 0}, {4, 4}, {0, 4}}, {{1.5, 1.5}, {2.5, 1.5}, {2.5, 2.5}, {1.5, 2.5}}};
}

inline std::vector<Ring> regular_polygon(int n) {
  Ring r;
  for (int i = 0; i < n; ++i) {
    const double a = 2 * std::numbers::pi * i / n;
    r.push_back({std::cos(a), std::sin(a)});
  }
  return {r};
}

// Vertices on an ellipse at unevenly spaced angles: convex, with no symmetry.
inline std::vector<Ring> irregular_convex(int n) {
  Ring r;
  for (int i = 0; i < n; ++i) {
    const double a = 2 * std::numbers::pi * (i + 0.3 * std::sin(1.7 * i + 0.4)) / n;
    r.push_back({1.3 * std::cos(a), 0.8 * std::sin(a)});
  }
  return {r};
}

inline std::vector<NamedPolygon> suite() {
  std::vector<NamedPolygon> out;
  for (int n = 5; n <= 12; ++n) out.push_back({"convex " + std::to_string(n) + "-gon", irregular_convex(n)});
  out.push_back({"L-polyomino", l_polyomino()});
  out.push_back({"concave hexagon", concave_hexagon()});
  out.push_back({"square with hole", square_with_hole()});
  return out;
}

// Circles given in input coordinates, placed into the polygon's working
// frame, with gaps extracted but nothing else done.
inline kitefold::Packing synthetic_packing(const std::vector<Ring>& rings, std::vector<kitefold::Circle> circles) {
  kitefold::Packing p;
  p.polygon = kitefold::validate_polygon(rings);
  const auto& n = p.polygon.normalization;
  for (std::size_t i = 0; i < circles.size(); ++i) {
    circles[i].center = n.to_working(circles[i].center);
    circles[i].radius /= n.scale;
    circles[i].id = static_cast<int>(i);
  }
  p.circles = std::move(circles);
  auto ext = kitefold::extract_gaps(p.polygon, p.circles);
  p.tangencies = std::move(ext.tangencies);
  p.gaps = std::move(ext.gaps);
  return p;
}

inline bool all_arcs(const kitefold::Gap& g) {
  for (const auto& s : g.sides()) {
    if (s.kind != kitefold::SideKind::Arc) return false;
  }
  return g.cycles.size() == 1;
}

// Four circles around a gap whose tangency circumcenter falls outside the
// tangency quadrilateral. A (radius 1) and C (radius 5) sit on the x-axis;
// B above and D below each touch both of them.
inline std::vector<kitefold::Circle> bad_gap_circles() {
  const double ra = 1, rc = 5, rb = 4, rd = 4.5, d = 6.25;
  auto apex = [&](double r, double side) {
    const double p = ra + r, q = rc + r;
    const double along = (p * p - q * q + d * d) / (2 * d);
    return Point{along, side * std::sqrt(p * p - along * along)};
  };
  return {{{0, 0}, ra}, {apex(rd, -1), rd}, {{d, 0}, rc}, {apex(rb, 1), rb}};
}

inline std::vector<Ring> bad_gap_frame() { return {{{-8, -12}, {13, -12}, {13, 11}, {-8, 11}}}; }

inline std::vector<std::vector<Point>> polygons_of(const kitefold::HingedChain& chain) {
  std::vector<std::vector<Point>> out;
  for (const auto& p : chain.pieces) out.push_back(p.polygon);
  return out;
}

// A symmetric piece hinged along its 0-2 diagonal.
inline kitefold::SmallPiece kite_piece(std::vector<Point> polygon, kitefold::PieceKind kind = kitefold::PieceKind::Kite) {
  kitefold::SmallPiece p;
  p.kind = kind;
  p.entry_slot = 0;
  p.exit_slot = 2;
  p.axis_start = polygon[0];
  p.axis_end = polygon[2];
  p.polygon = std::move(polygon);
  return p;
}

// Rhombi laid end to end along the x-axis, each with the given area.
inline kitefold::HingedChain rhombus_chain(const std::vector<double>& areas) {
  kitefold::HingedChain c;
  double x = 0.0;
  for (std::size_t i = 0; i < areas.size(); ++i) {
    const double len = areas[i];
    auto p = kite_piece({{x, 0}, {x + len / 2, 1}, {x + len, 0}, {x + len / 2, -1}}, kitefold::PieceKind::Kite);
    p.id = static_cast<int>(i);
    p.parent = static_cast<int>(i);
    c.pieces.push_back(p);
    if (i + 1 < areas.size()) c.joints.push_back({x + len, 0});
    c.fold_angles.push_back(0.0);
    c.total_area += len;
    x += len;
  }
  if (!c.fold_angles.empty()) c.fold_angles.pop_back();
  return c;
}

}  // namespace fixtures
