#include "kitefold/kite_mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <random>
#include <string>

namespace kitefold {

double LargeKite::area() const { return signed_area(vertices); }

// ---------------------------------------------------------------------------
// Point registry
// ---------------------------------------------------------------------------

MeshPoints::MeshPoints(const Packing& packing)
    : packing_(&packing),
      vertex_ids_(static_cast<std::size_t>(packing.polygon.vertex_count), -1),
      center_ids_(packing.circles.size(), -1),
      tangency_ids_(packing.tangencies.size(), -1),
      boundary_(boundary_edges(packing.polygon)) {}

int MeshPoints::add(Point p, std::vector<int> edges) {
  points_.push_back(p);
  edges_.push_back(std::move(edges));
  return static_cast<int>(points_.size()) - 1;
}

int MeshPoints::vertex(int vertex_id) {
  int& slot = vertex_ids_[static_cast<std::size_t>(vertex_id)];
  if (slot < 0) {
    std::vector<int> incident;
    for (const auto& e : boundary_) {
      if (e.start_vertex == vertex_id || e.end_vertex == vertex_id) incident.push_back(e.id);
    }
    slot = add(packing_->corner_point({GapCorner::Kind::Vertex, vertex_id}), std::move(incident));
  }
  return slot;
}

int MeshPoints::center(int circle_id) {
  int& slot = center_ids_[static_cast<std::size_t>(circle_id)];
  if (slot < 0) slot = add(packing_->circles[static_cast<std::size_t>(circle_id)].center);
  return slot;
}

int MeshPoints::tangency(int tangency_id) {
  int& slot = tangency_ids_[static_cast<std::size_t>(tangency_id)];
  if (slot < 0) {
    const Tangency& t = packing_->tangencies[static_cast<std::size_t>(tangency_id)];
    std::vector<int> on;
    if (t.kind == TangencyKind::CircleBoundary) on.push_back(t.other);
    slot = add(t.location, std::move(on));
  }
  return slot;
}

namespace {

int corner_id(MeshPoints& pts, const GapCorner& c) {
  return c.kind == GapCorner::Kind::Tangency ? pts.tangency(c.id) : pts.vertex(c.id);
}

/// Builds a kite from ids with the axis between positions 0 and 2, then
/// puts it in canonical order.
LargeKite make_kite(const MeshPoints& pts, std::array<int, 4> ids, int gap_id, int source, bool source_is_vertex) {
  std::array<Point, 4> v{};
  for (int i = 0; i < 4; ++i) v[static_cast<std::size_t>(i)] = pts.at(ids[static_cast<std::size_t>(i)]);
  if (signed_area(v) < 0) {
    std::swap(ids[1], ids[3]);
    std::swap(v[1], v[3]);
  }
  if (ids[2] < ids[0]) {
    std::rotate(ids.begin(), ids.begin() + 2, ids.end());
    std::rotate(v.begin(), v.begin() + 2, v.end());
  }
  LargeKite k;
  k.point_ids = ids;
  k.vertices = v;
  for (std::size_t i = 0; i < 4; ++i) k.edge_midpoints[i] = midpoint(v[i], v[(i + 1) % 4]);
  k.gap_id = gap_id;
  k.source = source;
  k.source_is_vertex = source_is_vertex;
  return k;
}

/// Minimum signed distance from p to the sides of a counterclockwise
/// convex polygon; positive when p is strictly inside.
double inside_margin(std::span<const Point> poly, Point p) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point a = poly[i];
    const Point b = poly[(i + 1) % poly.size()];
    m = std::min(m, cross(b - a, p - a) / distance(a, b));
  }
  return m;
}

/// Interior gap as parallel lists: circle of side i, and the tangency point
/// id at the start of side i.
struct ArcCycle {
  std::vector<int> circles;
  std::vector<int> corners;
};

ArcCycle arc_cycle(const Gap& gap, MeshPoints& pts) {
  ArcCycle out;
  for (std::size_t i = 0; i < gap.sides().size(); ++i) {
    if (gap.sides()[i].kind != SideKind::Arc) {
      throw Error(ErrorCode::GeometryError, "interior gap " + std::to_string(gap.id) + " has a boundary side");
    }
    out.circles.push_back(gap.sides()[i].ref);
    out.corners.push_back(corner_id(pts, gap.corners()[i]));
  }
  return out;
}

struct Cocircle {
  Point center;
  double residual = 0.0;
};

Cocircle tangency_cocircle(std::span<const Point> t, const ToleranceConfig& tol) {
  Cocircle c;
  try {
    c.center = circumcenter(t[0], t[1], t[2], tol);
  } catch (const Error&) {
    throw Error(ErrorCode::DegenerateGap, "collinear tangencies");
  }
  const double r = distance(c.center, t[0]);
  for (const Point& p : t) c.residual = std::max(c.residual, std::abs(distance(c.center, p) - r));
  return c;
}

/// Kites (c_i, t_{i+1}, g, t_i) around a shared center point.
std::vector<LargeKite> fan_kites(const MeshPoints& pts, const std::vector<int>& circle_point,
                                 const std::vector<int>& circle_source, const std::vector<int>& corners, int g,
                                 int gap_id) {
  std::vector<LargeKite> out;
  const std::size_t n = corners.size();
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(make_kite(pts, {circle_point[i], corners[(i + 1) % n], g, corners[i]}, gap_id,
                            circle_source[i], false));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Interior gaps
// ---------------------------------------------------------------------------

std::vector<LargeKite> fill_three_gap(const Packing& /*packing*/, const Gap& gap, MeshPoints& pts,
                                      const ToleranceConfig& tol) {
  if (gap.side_count() != 3 || gap.cycles.size() != 1) {
    throw Error(ErrorCode::GeometryError, "fill_three_gap needs a 3-sided interior gap");
  }
  const ArcCycle cyc = arc_cycle(gap, pts);
  std::vector<Point> t;
  for (int id : cyc.corners) t.push_back(pts.at(id));
  const Cocircle cc = tangency_cocircle(t, tol);
  const int g = pts.add(cc.center);
  std::vector<int> centers;
  for (int c : cyc.circles) centers.push_back(pts.center(c));
  return fan_kites(pts, centers, cyc.circles, cyc.corners, g, gap.id);
}

namespace {

struct SplitCandidate {
  Circle circle;
  double score = -std::numeric_limits<double>::infinity();
  int first = -1;  // index of the first of the two opposite arcs
  Point t_a;       // tangency with arc `first`
  Point t_c;       // tangency with arc `first + 2`
};

/// Sub-gap corner quads left by a split circle tangent to arcs i and i + 2.
/// t[k] is the tangency at the start of arc k.
std::array<std::array<Point, 4>, 2> sub_quads(const std::array<Point, 4>& t, std::size_t i, Point t_a, Point t_c) {
  return {{{t_a, t[(i + 1) % 4], t[(i + 2) % 4], t_c}, {t_c, t[(i + 3) % 4], t[i], t_a}}};
}

/// A bad gap is split by the circle tangent to two opposite arcs whose
/// center lies on the line through theirs. Its two tangencies are then
/// antipodal, so its two half-disks fuse into one convex kite between the
/// sub-gap centers. Both opposite pairs are tried; the one whose sub-gaps
/// are more clearly good wins.
std::optional<SplitCandidate> find_bad_gap_split(const Packing& packing, const Gap& gap,
                                                 const std::array<Circle, 4>& cs, const std::array<Point, 4>& t,
                                                 const ToleranceConfig& tol) {
  std::optional<SplitCandidate> best;
  for (std::size_t i = 0; i < 2; ++i) {
    const Circle& a = cs[i];
    const Circle& c = cs[i + 2];
    const double d = distance(a.center, c.center);
    const double rho = 0.5 * (d - a.radius - c.radius);
    if (rho <= tol.eps_dist) continue;
    const Point u = (c.center - a.center) / d;
    SplitCandidate cand;
    cand.circle = Circle{a.center + (a.radius + rho) * u, rho, -1, CircleRole::BadGapSplit};
    cand.first = static_cast<int>(i);
    cand.t_a = a.center + a.radius * u;
    cand.t_c = c.center - c.radius * u;
    if (!point_in_gap(packing, gap, cand.circle.center)) continue;
    bool clear = true;
    for (const auto& other : packing.circles) {
      if (other.id == a.id || other.id == c.id) continue;
      if (distance(cand.circle.center, other.center) - rho - other.radius <= tol.eps_dist) clear = false;
    }
    if (!clear) continue;
    cand.score = std::numeric_limits<double>::infinity();
    for (const auto& q : sub_quads(t, i, cand.t_a, cand.t_c)) {
      if (signed_area(q) <= 0) {
        cand.score = -std::numeric_limits<double>::infinity();
        break;
      }
      try {
        cand.score = std::min(cand.score, inside_margin(q, tangency_cocircle(q, tol).center));
      } catch (const Error&) {
        cand.score = -std::numeric_limits<double>::infinity();
        break;
      }
    }
    if (!best || cand.score > best->score) best = cand;
  }
  if (best && best->score > tol.eps_dist) return best;
  return std::nullopt;
}

}  // namespace

FourGapFill fill_four_gap(const Packing& packing, const Gap& gap, MeshPoints& pts, const ToleranceConfig& tol,
                          int next_circle_id) {
  if (gap.side_count() != 4 || gap.cycles.size() != 1) {
    throw Error(ErrorCode::GeometryError, "fill_four_gap needs a 4-sided interior gap");
  }
  const ArcCycle cyc = arc_cycle(gap, pts);
  std::array<Point, 4> t{};
  std::array<Circle, 4> cs{};
  for (std::size_t i = 0; i < 4; ++i) {
    t[i] = pts.at(cyc.corners[i]);
    cs[i] = packing.circles[static_cast<std::size_t>(cyc.circles[i])];
  }
  const Cocircle cc = tangency_cocircle(t, tol);
  if (cc.residual > tol.eps_dist) {
    throw Error(ErrorCode::NotCocircular, "gap " + std::to_string(gap.id) + " tangencies deviate by " +
                                              std::to_string(cc.residual));
  }
  FourGapFill out;
  out.cocircularity_residual = cc.residual;
  std::vector<int> centers;
  for (int c : cyc.circles) centers.push_back(pts.center(c));

  if (inside_margin(t, cc.center) > tol.eps_dist) {
    const int g = pts.add(cc.center);
    out.kites = fan_kites(pts, centers, cyc.circles, cyc.corners, g, gap.id);
    return out;
  }

  out.bad = true;
  const auto split = find_bad_gap_split(packing, gap, cs, t, tol);
  if (!split) {
    throw Error(ErrorCode::PlacementFailed, "bad gap " + std::to_string(gap.id) + " has no splitting circle");
  }
  Circle n = split->circle;
  n.id = next_circle_id >= 0 ? next_circle_id : static_cast<int>(packing.circles.size());
  out.split_circle = n;

  const std::size_t i = static_cast<std::size_t>(split->first);
  const int t_a = pts.add(split->t_a);
  const int t_c = pts.add(split->t_c);
  // Sub-gap 0 has arcs (i, i+1, i+2) then the split circle; sub-gap 1 has
  // arcs (i+2, i+3, i) then the split circle.
  const std::array<std::array<std::size_t, 3>, 2> sub{{{i, (i + 1) % 4, (i + 2) % 4}, {(i + 2) % 4, (i + 3) % 4, i}}};
  std::array<int, 2> g{};
  for (std::size_t s = 0; s < 2; ++s) {
    const auto& arcs = sub[s];
    std::vector<int> corners{s == 0 ? t_a : t_c, cyc.corners[arcs[1]], cyc.corners[arcs[2]], s == 0 ? t_c : t_a};
    std::vector<int> circle_pts{centers[arcs[0]], centers[arcs[1]], centers[arcs[2]], -1};
    std::vector<int> sources{cyc.circles[arcs[0]], cyc.circles[arcs[1]], cyc.circles[arcs[2]], n.id};
    std::vector<Point> q;
    for (int id : corners) q.push_back(pts.at(id));
    const Cocircle sc = tangency_cocircle(q, tol);
    if (sc.residual > tol.eps_dist) {
      throw Error(ErrorCode::NotCocircular, "split of bad gap " + std::to_string(gap.id));
    }
    out.cocircularity_residual = std::max(out.cocircularity_residual, sc.residual);
    g[s] = pts.add(sc.center);
    for (std::size_t k = 0; k < 3; ++k) {
      out.kites.push_back(make_kite(pts, {circle_pts[k], corners[k + 1], g[s], corners[k]}, gap.id, sources[k], false));
    }
  }
  out.kites.push_back(make_kite(pts, {g[0], t_a, g[1], t_c}, gap.id, n.id, false));
  return out;
}

// ---------------------------------------------------------------------------
// Gaps touching the boundary
// ---------------------------------------------------------------------------

std::vector<LargeKite> fill_boundary_like_gap(const Packing& packing, const Gap& gap, MeshPoints& pts,
                                              const ToleranceConfig& tol) {
  const auto& sides = gap.sides();
  const auto& corners = gap.corners();
  const std::size_t n = sides.size();
  auto side_at = [&](std::size_t i) { return sides[i % n]; };
  auto corner_at = [&](std::size_t i) { return corners[i % n]; };

  if (gap.kind == GapKind::Corner) {
    // [segment, segment, arc]: the corner between the two segments is the
    // polygon vertex.
    for (std::size_t i = 0; i < n; ++i) {
      if (side_at(i).kind == SideKind::Segment && side_at(i + 1).kind == SideKind::Segment) {
        const int v = corner_id(pts, corner_at(i + 1));
        const int t1 = corner_id(pts, corner_at(i));
        const int t2 = corner_id(pts, corner_at(i + 2));
        const int circle = side_at(i + 2).ref;
        return {make_kite(pts, {v, t1, pts.center(circle), t2}, gap.id, corner_at(i + 1).id, true)};
      }
    }
  } else if (gap.kind == GapKind::Boundary) {
    for (std::size_t i = 0; i < n; ++i) {
      if (side_at(i).kind != SideKind::Segment) continue;
      const int edge = side_at(i).ref;
      const int ta = corner_id(pts, corner_at(i));
      const int tb = corner_id(pts, corner_at(i + 1));
      const int m = corner_id(pts, corner_at(i + 2));
      const Circle& cb = packing.circles[static_cast<std::size_t>(side_at(i + 1).ref)];
      const Circle& ca = packing.circles[static_cast<std::size_t>(side_at(i + 2).ref)];
      // Perpendicular to the center line through the mutual tangency, cut
      // against the boundary segment.
      const Point pm = pts.at(m);
      const Point dir = perp_left(cb.center - ca.center);
      const Point a = pts.at(ta);
      const Point seg = pts.at(tb) - a;
      const double denom = cross(seg, dir);
      if (std::abs(denom) < 1e-300) throw Error(ErrorCode::GeometryError, "cut parallel to boundary");
      const double w = cross(pm - a, dir) / denom;
      if (w < -tol.eps_dist || w > 1 + tol.eps_dist) {
        throw Error(ErrorCode::GeometryError, "cut misses the boundary segment in gap " + std::to_string(gap.id));
      }
      const int x = pts.add(a + w * seg, {edge});
      return {make_kite(pts, {pts.center(ca.id), m, x, ta}, gap.id, ca.id, false),
              make_kite(pts, {pts.center(cb.id), m, x, tb}, gap.id, cb.id, false)};
    }
  } else if (gap.kind == GapKind::Reflex) {
    for (std::size_t i = 0; i < n; ++i) {
      if (side_at(i).kind == SideKind::Segment && side_at(i + 1).kind == SideKind::Segment) {
        const int t1 = corner_id(pts, corner_at(i));
        const int v = corner_id(pts, corner_at(i + 1));
        const int t2 = corner_id(pts, corner_at(i + 2));
        const int m = corner_id(pts, corner_at(i + 3));
        const Circle& c2 = packing.circles[static_cast<std::size_t>(side_at(i + 2).ref)];
        const Circle& c1 = packing.circles[static_cast<std::size_t>(side_at(i + 3).ref)];
        // The pair is congruent, so the cut through the mutual tangency
        // passes through the reflex vertex.
        const Point axis = normalized(c2.center - c1.center);
        if (std::abs(dot(pts.at(v) - pts.at(m), axis)) > tol.eps_dist) {
          throw Error(ErrorCode::GeometryError, "reflex cut misses the vertex in gap " + std::to_string(gap.id));
        }
        return {make_kite(pts, {v, t1, pts.center(c1.id), m}, gap.id, c1.id, false),
                make_kite(pts, {v, m, pts.center(c2.id), t2}, gap.id, c2.id, false)};
      }
    }
  }
  throw Error(ErrorCode::GeometryError, "gap " + std::to_string(gap.id) + " is not a boundary-type gap");
}

// ---------------------------------------------------------------------------
// Assembly
// ---------------------------------------------------------------------------

KiteMesh build_mesh(const Packing& packing, const ToleranceConfig& tol) {
  KiteMesh mesh;
  mesh.polygon = packing.polygon;
  MeshPoints pts(packing);
  std::vector<LargeKite> kites;
  for (const auto& gap : packing.gaps) {
    std::vector<LargeKite> filled;
    if (gap.kind == GapKind::Interior && gap.side_count() == 3) {
      filled = fill_three_gap(packing, gap, pts, tol);
    } else if (gap.kind == GapKind::Interior && gap.side_count() == 4) {
      const int next_id = static_cast<int>(packing.circles.size() + mesh.added_circles.size());
      auto four = fill_four_gap(packing, gap, pts, tol, next_id);
      mesh.max_cocircularity_residual = std::max(mesh.max_cocircularity_residual, four.cocircularity_residual);
      if (four.bad) {
        ++mesh.bad_gap_count;
        mesh.added_circles.push_back(*four.split_circle);
      } else {
        ++mesh.good_four_gap_count;
      }
      filled = std::move(four.kites);
    } else {
      filled = fill_boundary_like_gap(packing, gap, pts, tol);
    }
    kites.insert(kites.end(), filled.begin(), filled.end());
  }

  const auto edges = boundary_edges(packing.polygon);
  for (std::size_t k = 0; k < kites.size(); ++k) {
    kites[k].id = static_cast<int>(k);
    if (!is_kite(kites[k].vertices, false, tol.eps_dist)) {
      throw Error(ErrorCode::GeometryError, "cell " + std::to_string(k) + " of gap " +
                                                std::to_string(kites[k].gap_id) + " is not a convex kite");
    }
    const auto& v = kites[k].vertices;
    if (std::abs(distance(v[0], v[1]) - distance(v[0], v[3])) > tol.eps_dist ||
        std::abs(distance(v[2], v[1]) - distance(v[2], v[3])) > tol.eps_dist) {
      throw Error(ErrorCode::GeometryError, "cell " + std::to_string(k) + " is not symmetric about its axis");
    }
  }

  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> sides;
  for (const auto& k : kites) {
    for (int s = 0; s < 4; ++s) {
      const int a = k.point_ids[static_cast<std::size_t>(s)];
      const int b = k.point_ids[static_cast<std::size_t>((s + 1) % 4)];
      sides[{std::min(a, b), std::max(a, b)}].emplace_back(k.id, s);
    }
  }
  for (const auto& [key, users] : sides) {
    if (users.size() == 2) {
      const auto [k0, s0] = users[0];
      const auto [k1, s1] = users[1];
      kites[static_cast<std::size_t>(k0)].neighbor[static_cast<std::size_t>(s0)] = k1;
      kites[static_cast<std::size_t>(k0)].neighbor_side[static_cast<std::size_t>(s0)] = s1;
      kites[static_cast<std::size_t>(k1)].neighbor[static_cast<std::size_t>(s1)] = k0;
      kites[static_cast<std::size_t>(k1)].neighbor_side[static_cast<std::size_t>(s1)] = s0;
      mesh.adjacency[key] = {k0, k1};
      continue;
    }
    if (users.size() > 2) {
      throw Error(ErrorCode::GeometryError, "a kite side is shared by more than two kites");
    }
    const auto& ea = pts.edges_of(key.first);
    const auto& eb = pts.edges_of(key.second);
    int ring = -1;
    for (int e : ea) {
      if (std::find(eb.begin(), eb.end(), e) != eb.end()) ring = edges[static_cast<std::size_t>(e)].ring;
    }
    if (ring < 0) {
      throw Error(ErrorCode::GeometryError, "unmatched interior kite side in cell " + std::to_string(users[0].first));
    }
    kites[static_cast<std::size_t>(users[0].first)].boundary_ring[static_cast<std::size_t>(users[0].second)] = ring;
  }

  mesh.dual_graph.assign(kites.size(), {});
  for (const auto& k : kites) {
    for (int nb : k.neighbor) {
      if (nb >= 0) mesh.dual_graph[static_cast<std::size_t>(k.id)].push_back(nb);
    }
    std::sort(mesh.dual_graph[static_cast<std::size_t>(k.id)].begin(), mesh.dual_graph[static_cast<std::size_t>(k.id)].end());
  }
  if (!kites.empty()) {
    std::vector<bool> seen(kites.size(), false);
    std::queue<int> q;
    q.push(0);
    seen[0] = true;
    std::size_t count = 1;
    while (!q.empty()) {
      const int cur = q.front();
      q.pop();
      for (int nb : mesh.dual_graph[static_cast<std::size_t>(cur)]) {
        if (!seen[static_cast<std::size_t>(nb)]) {
          seen[static_cast<std::size_t>(nb)] = true;
          ++count;
          q.push(nb);
        }
      }
    }
    if (count != kites.size()) throw Error(ErrorCode::DisconnectedDual, "kite dual graph is disconnected");
  }

  double total = 0.0;
  for (const auto& k : kites) total += k.area();
  if (std::abs(total - packing.polygon.area) > 1e-9 * packing.polygon.area) {
    throw Error(ErrorCode::GeometryError, "kite areas do not sum to the polygon area");
  }

  mesh.points = pts.points();
  mesh.kites = std::move(kites);
  return mesh;
}

int tiling_violations(const PolygonWithHoles& polygon, const std::vector<std::vector<Point>>& cells, int samples,
                      double tolerance, unsigned seed) {
  Point lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  Point hi{-lo.x, -lo.y};
  for (const Point& p : polygon.outer) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(lo.x, hi.x);
  std::uniform_real_distribution<double> uy(lo.y, hi.y);
  auto near_side = [&](Point p) {
    for (const auto& cell : cells) {
      for (std::size_t i = 0; i < cell.size(); ++i) {
        if (point_segment_distance(p, cell[i], cell[(i + 1) % cell.size()]) <= tolerance) return true;
      }
    }
    return boundary_distance(p, polygon) <= tolerance;
  };
  int violations = 0;
  int taken = 0;
  for (int attempt = 0; taken < samples && attempt < 100 * samples; ++attempt) {
    const Point p{ux(rng), uy(rng)};
    if (!point_in_polygon(p, polygon)) continue;
    ++taken;
    int hits = 0;
    for (const auto& cell : cells) hits += point_in_ring(p, cell) ? 1 : 0;
    if (hits != 1 && !near_side(p)) ++violations;
  }
  return violations;
}

}  // namespace kitefold
