#include "kitefold/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kitefold/fold_engine.hpp"

namespace kitefold {

namespace {

bool is_convex(const std::vector<Point>& q, double eps) {
  const double sign = signed_area(q) < 0 ? -1.0 : 1.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const Point a = q[i];
    const Point b = q[(i + 1) % q.size()];
    const Point c = q[(i + 2) % q.size()];
    if (sign * cross(b - a, c - b) < -eps * distance(a, b) * distance(b, c)) return false;
  }
  return true;
}

/// Entry, wing, exit, wing of a four-sided piece hinged across its axis.
std::array<Point, 4> axis_order(const RefinedPiece& piece) {
  if (piece.polygon.size() != 4 || piece.entry_slot < 0 || piece.exit_slot != (piece.entry_slot + 2) % 4) {
    throw Error(ErrorCode::GeometryError, "piece " + std::to_string(piece.id) +
                                              " is not a quadrilateral hinged at opposite vertices");
  }
  const auto e = static_cast<std::size_t>(piece.entry_slot);
  return {piece.polygon[e], piece.polygon[(e + 1) % 4], piece.polygon[(e + 2) % 4], piece.polygon[(e + 3) % 4]};
}

RefinedPiece make_piece(const RefinedPiece& parent, std::array<Point, 4> q, const ToleranceConfig& tol) {
  RefinedPiece p;
  p.parent = parent.parent;
  p.polygon.assign(q.begin(), q.end());
  p.kind = is_convex(p.polygon, tol.eps_angle) ? PieceKind::Kite : PieceKind::Dart;
  p.entry_slot = 0;
  p.exit_slot = 2;
  p.axis_start = q[0];
  p.axis_end = q[2];
  return p;
}

std::vector<double> cumulative_cuts(const HingedChain& chain) {
  std::vector<double> out;
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < chain.pieces.size(); ++i) {
    s += chain.pieces[i].area();
    out.push_back(s);
  }
  return out;
}

HingedChain apply_cuts(const HingedChain& chain, const std::vector<double>& cuts, double merge,
                       const ToleranceConfig& tol) {
  HingedChain out;
  out.total_area = chain.total_area;
  out.open_point = chain.open_point;
  double start = 0.0;
  auto next = cuts.begin();
  for (const auto& piece : chain.pieces) {
    const double end = start + piece.area();
    RefinedPiece current = piece;
    double current_start = start;
    while (next != cuts.end() && *next < end - merge) {
      if (*next > start + merge) {
        PieceSplit split = split_piece_at_area(current, *next - current_start, tol);
        out.pieces.push_back(std::move(split.first));
        current = std::move(split.second);
        current_start = *next;
      }
      ++next;
    }
    while (next != cuts.end() && *next <= end + merge) ++next;
    out.pieces.push_back(std::move(current));
    start = end;
  }
  for (std::size_t i = 0; i < out.pieces.size(); ++i) {
    out.pieces[i].id = static_cast<int>(i);
    if (i + 1 < out.pieces.size()) out.joints.push_back(out.pieces[i].axis_end);
  }
  out.fold_angles = compute_fold_angles(out, tol);
  return out;
}

}  // namespace

PieceSplit split_piece_at_area(const RefinedPiece& piece, double a, const ToleranceConfig& tol) {
  const double area = piece.area();
  if (!(a > 0.0 && a < area)) {
    throw Error(ErrorCode::AreaOutOfRange, "cut area " + std::to_string(a) + " is outside (0, " +
                                               std::to_string(area) + ")");
  }
  const auto [v0, c, v2, c2] = axis_order(piece);
  const double wing = distance(c, c2);
  const Point p = v0 + (2.0 * a / wing) * normalized(v2 - v0);
  PieceSplit out;
  out.first = make_piece(piece, {v0, c, p, c2}, tol);
  out.second = make_piece(piece, {p, c, v2, c2}, tol);
  out.degenerate = std::abs(cross(c2 - c, p - c)) / wing <= tol.eps_dist;
  return out;
}

std::pair<HingedChain, HingedChain> common_refinement(const HingedChain& a, const HingedChain& b,
                                                      const ToleranceConfig& tol) {
  double area_a = 0.0;
  double area_b = 0.0;
  for (const auto& p : a.pieces) area_a += p.area();
  for (const auto& p : b.pieces) area_b += p.area();
  if (std::abs(area_a - area_b) > tol.verify_tol * area_a) {
    throw Error(ErrorCode::AreaMismatch, "chain areas " + std::to_string(area_a) + " and " + std::to_string(area_b) +
                                             " differ");
  }
  const double merge = tol.eps_area * area_a;
  std::vector<double> cuts = cumulative_cuts(a);
  const auto more = cumulative_cuts(b);
  cuts.insert(cuts.end(), more.begin(), more.end());
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> merged;
  for (double c : cuts) {
    if (merged.empty() || c - merged.back() > merge) merged.push_back(c);
  }
  return {apply_cuts(a, merged, merge, tol), apply_cuts(b, merged, merge, tol)};
}

std::array<std::vector<Point>, 2> split_along_axis(const RefinedPiece& piece) {
  const auto [v0, c, v2, c2] = axis_order(piece);
  return {std::vector<Point>{v0, c, v2}, std::vector<Point>{v0, v2, c2}};
}

namespace {

struct TriangleParts {
  Point apex;  // vertex opposite the longest side
  Point h1;
  Point h2;
  Point m1;
  Point m2;
  Point cut;
};

TriangleParts triangle_parts(const std::array<Point, 3>& input, const ToleranceConfig& tol) {
  std::array<Point, 3> t = input;
  const double area = signed_area(t);
  if (std::abs(area) <= tol.eps_area) throw Error(ErrorCode::DegenerateArea, "triangle has no area");
  if (area < 0) std::swap(t[1], t[2]);
  std::array<double, 3> side{};  // side i is opposite vertex i
  for (std::size_t i = 0; i < 3; ++i) side[i] = distance(t[(i + 1) % 3], t[(i + 2) % 3]);
  for (std::size_t i = 0; i < 3; ++i) {
    if (std::abs(side[i] - side[(i + 1) % 3]) <= tol.eps_dist) {
      throw Error(ErrorCode::NotScalene, "two sides have equal length");
    }
  }
  const auto o = static_cast<std::size_t>(std::max_element(side.begin(), side.end()) - side.begin());
  TriangleParts p;
  p.apex = t[o];
  p.h1 = t[(o + 1) % 3];
  p.h2 = t[(o + 2) % 3];
  p.m1 = midpoint(p.apex, p.h1);
  p.m2 = midpoint(p.apex, p.h2);
  const Point h = midpoint(p.h1, p.h2);
  const Point u = normalized(p.m2 - p.m1);
  p.cut = h - (2.0 * dot(h - midpoint(p.m1, p.m2), u)) * u;

  const Point hyp = p.h2 - p.h1;
  if (point_segment_distance(p.cut, p.h1, p.h2) > tol.eps_dist ||
      std::abs(dot(p.cut - p.apex, hyp)) > tol.eps_dist * norm(hyp)) {
    throw Error(ErrorCode::GeometryError, "cut point is off the hypotenuse foot");
  }
  if (std::abs(distance(p.m1, p.h1) - distance(p.m1, p.cut)) > tol.eps_dist ||
      std::abs(distance(p.m2, p.h2) - distance(p.m2, p.cut)) > tol.eps_dist) {
    throw Error(ErrorCode::GeometryError, "end pieces are not isosceles");
  }
  return p;
}

}  // namespace

Point three_piece_cut_point(const std::array<Point, 3>& triangle, const ToleranceConfig& tol) {
  return triangle_parts(triangle, tol).cut;
}

HingedChain three_piece_triangle(const std::array<Point, 3>& triangle, const ToleranceConfig& tol) {
  const TriangleParts t = triangle_parts(triangle, tol);
  HingedChain chain;

  SmallPiece first;
  first.kind = PieceKind::Triangle;
  first.polygon = {t.m1, t.h1, t.cut};
  first.entry_slot = -1;
  first.exit_slot = 0;
  first.axis_start = midpoint(t.h1, t.cut);
  first.axis_end = t.m1;

  SmallPiece middle;
  middle.kind = PieceKind::Kite;
  middle.polygon = {t.apex, t.m1, t.cut, t.m2};
  middle.entry_slot = 1;
  middle.exit_slot = 3;
  middle.axis_start = t.m1;
  middle.axis_end = t.m2;
  if (!is_kite({t.apex, t.m1, t.cut, t.m2}, false, tol.eps_dist)) {
    throw Error(ErrorCode::GeometryError, "middle piece is not a kite");
  }

  SmallPiece last;
  last.kind = PieceKind::Triangle;
  last.polygon = {t.m2, t.cut, t.h2};
  last.entry_slot = 0;
  last.exit_slot = -1;
  last.axis_start = t.m2;
  last.axis_end = midpoint(t.cut, t.h2);

  chain.pieces = {first, middle, last};
  for (std::size_t i = 0; i < 3; ++i) {
    chain.pieces[i].id = static_cast<int>(i);
    chain.total_area += chain.pieces[i].area();
  }
  chain.joints = {t.m1, t.m2};
  chain.open_point = first.axis_start;
  chain.fold_angles = compute_fold_angles(chain, tol);
  return chain;
}

}  // namespace kitefold
