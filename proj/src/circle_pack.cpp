#include "kitefold/circle_pack.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace kitefold {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Circles that are not meant to touch keep at least this fraction of the
// smaller radius between them; near-contacts would otherwise leave hairline
// channels that the gap splitter cannot resolve.
constexpr double kMargin = 0.1;
constexpr double kShrink = 0.8;

double angle_of(Point v) { return std::atan2(v.y, v.x); }

/// Clockwise sweep from angle `from` to angle `to`, in (0, 2pi].
double cw_sweep(double from, double to) {
  double d = std::fmod(from - to, kTwoPi);
  if (d <= 0) d += kTwoPi;
  return d;
}

}  // namespace

int Gap::side_count() const {
  int n = 0;
  for (const auto& c : cycles) n += static_cast<int>(c.sides.size());
  return n;
}

std::vector<BoundaryEdge> boundary_edges(const PolygonWithHoles& poly) {
  std::vector<BoundaryEdge> edges;
  int base = 0;
  for (int r = 0; r < poly.ring_count(); ++r) {
    const Ring& ring = poly.ring(r);
    const int n = static_cast<int>(ring.size());
    for (int i = 0; i < n; ++i) {
      BoundaryEdge e;
      e.id = base + i;
      e.ring = r;
      e.start_vertex = base + i;
      e.end_vertex = base + (i + 1) % n;
      e.a = ring[static_cast<std::size_t>(i)];
      e.b = ring[static_cast<std::size_t>((i + 1) % n)];
      edges.push_back(e);
    }
    base += n;
  }
  return edges;
}

std::vector<Point> boundary_vertices(const PolygonWithHoles& poly) {
  std::vector<Point> out;
  for (int r = 0; r < poly.ring_count(); ++r) {
    const Ring& ring = poly.ring(r);
    out.insert(out.end(), ring.begin(), ring.end());
  }
  return out;
}

Point Packing::corner_point(const GapCorner& c) const {
  if (c.kind == GapCorner::Kind::Tangency) return tangencies[static_cast<std::size_t>(c.id)].location;
  // Vertex ids follow the concatenated ring order.
  int id = c.id;
  for (int r = 0; r < polygon.ring_count(); ++r) {
    const Ring& ring = polygon.ring(r);
    if (id < static_cast<int>(ring.size())) return ring[static_cast<std::size_t>(id)];
    id -= static_cast<int>(ring.size());
  }
  throw Error(ErrorCode::GeometryError, "vertex id out of range");
}

double local_feature_size(const PolygonWithHoles& poly, int vertex_id) {
  const auto edges = boundary_edges(poly);
  const Point v = boundary_vertices(poly)[static_cast<std::size_t>(vertex_id)];
  double best = std::numeric_limits<double>::infinity();
  for (const auto& e : edges) {
    if (e.start_vertex == vertex_id || e.end_vertex == vertex_id) continue;
    best = std::min(best, point_segment_distance(v, e.a, e.b));
  }
  return best;
}

// ---------------------------------------------------------------------------
// Triangle shortcut
// ---------------------------------------------------------------------------

std::optional<Circle> detect_triangle_incircle(const PolygonWithHoles& poly) {
  if (!poly.holes.empty() || poly.outer.size() != 3) return std::nullopt;
  const Point a = poly.outer[0];
  const Point b = poly.outer[1];
  const Point c = poly.outer[2];
  const double la = distance(b, c);
  const double lb = distance(c, a);
  const double lc = distance(a, b);
  const double s = 0.5 * (la + lb + lc);
  Circle circle;
  circle.center = (la * a + lb * b + lc * c) / (la + lb + lc);
  circle.radius = std::abs(signed_area(poly.outer)) / s;
  circle.id = 0;
  circle.role = CircleRole::Incircle;
  return circle;
}

// ---------------------------------------------------------------------------
// Clearance
// ---------------------------------------------------------------------------

namespace {

struct VertexFrame {
  int id = -1;
  Point v;
  Point dir_in;   // unit direction of the incoming edge
  Point dir_out;  // unit direction of the outgoing edge
  int edge_in = -1;
  int edge_out = -1;
  double turn = 0.0;  // signed turn angle; positive at convex vertices
};

std::vector<VertexFrame> vertex_frames(const PolygonWithHoles& poly) {
  std::vector<VertexFrame> frames;
  int base = 0;
  for (int r = 0; r < poly.ring_count(); ++r) {
    const Ring& ring = poly.ring(r);
    const int n = static_cast<int>(ring.size());
    for (int i = 0; i < n; ++i) {
      const Point u = ring[static_cast<std::size_t>((i + n - 1) % n)];
      const Point v = ring[static_cast<std::size_t>(i)];
      const Point w = ring[static_cast<std::size_t>((i + 1) % n)];
      VertexFrame f;
      f.id = base + i;
      f.v = v;
      f.dir_in = normalized(v - u);
      f.dir_out = normalized(w - v);
      f.edge_in = base + (i + n - 1) % n;
      f.edge_out = base + i;
      f.turn = std::atan2(cross(f.dir_in, f.dir_out), dot(f.dir_in, f.dir_out));
      frames.push_back(f);
    }
    base += n;
  }
  return frames;
}

/// Gap between two circles' boundaries (negative when they overlap).
double circle_gap(const Circle& a, const Circle& b) {
  return distance(a.center, b.center) - a.radius - b.radius;
}

/// A circle placed next to existing geometry must lie inside the region,
/// keep kMargin clearance from every edge except those in `tangent_edges`,
/// and from every circle except those in `tangent_circles`.
bool has_clearance(const Circle& c, const PolygonWithHoles& poly, const std::vector<BoundaryEdge>& edges,
                   const std::vector<Circle>& circles, std::initializer_list<int> tangent_edges,
                   std::initializer_list<int> tangent_circles, double eps) {
  if (!point_in_polygon(c.center, poly)) return false;
  for (const auto& e : edges) {
    const double d = point_segment_distance(c.center, e.a, e.b);
    const bool tangent = std::find(tangent_edges.begin(), tangent_edges.end(), e.id) != tangent_edges.end();
    if (tangent) {
      if (d < c.radius - eps) return false;
    } else if (d < c.radius * (1.0 + kMargin)) {
      return false;
    }
  }
  for (const auto& other : circles) {
    const double g = circle_gap(c, other);
    const bool tangent =
        std::find(tangent_circles.begin(), tangent_circles.end(), other.id) != tangent_circles.end();
    if (tangent) {
      if (g < -eps) return false;
    } else if (g < kMargin * std::min(c.radius, other.radius)) {
      return false;
    }
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Reflex pairs
// ---------------------------------------------------------------------------

std::vector<Circle> place_reflex_pairs(const PolygonWithHoles& poly, const ToleranceConfig& tol) {
  const auto edges = boundary_edges(poly);
  std::vector<Circle> placed;
  for (const auto& f : vertex_frames(poly)) {
    if (f.turn >= -tol.eps_angle) continue;
    // Interior angle theta = pi - turn; the tangent points sit
    // s = r * cot(theta / 4) from the vertex so that the two circles touch on
    // the bisector.
    const double theta = std::numbers::pi - f.turn;
    const double cot_quarter = 1.0 / std::tan(theta / 4.0);
    double r = local_feature_size(poly, f.id) / 4.0;
    bool ok = false;
    for (int attempt = 0; attempt <= 20 && !ok; ++attempt, r *= 0.5) {
      if (r <= tol.eps_dist) break;
      const double s = r * cot_quarter;
      Circle c1{f.v - s * f.dir_in + r * perp_left(f.dir_in), r, static_cast<int>(placed.size()),
                CircleRole::ReflexPair};
      Circle c2{f.v + s * f.dir_out + r * perp_left(f.dir_out), r, c1.id + 1, CircleRole::ReflexPair};
      ok = has_clearance(c1, poly, edges, placed, {f.edge_in, f.edge_out}, {}, tol.eps_dist) &&
           has_clearance(c2, poly, edges, placed, {f.edge_in, f.edge_out}, {}, tol.eps_dist) &&
           std::abs(circle_gap(c1, c2)) <= tol.eps_dist;
      if (ok) {
        placed.push_back(c1);
        placed.push_back(c2);
      }
    }
    if (!ok) {
      throw Error(ErrorCode::PlacementFailed,
                  "no clear reflex pair at vertex " + std::to_string(f.id));
    }
  }
  return placed;
}

// ---------------------------------------------------------------------------
// Boundary chain
// ---------------------------------------------------------------------------

double connector_radius(double span, double r1, double r2) {
  const double root = span / (2.0 * (std::sqrt(r1) + std::sqrt(r2)));
  return root * root;
}

namespace {

/// A circle touching a particular edge, with the tangent point's distance
/// from the edge start.
struct EdgeContact {
  int circle = -1;
  double param = 0.0;
};

std::optional<EdgeContact> contact_with_edge(const Circle& c, const BoundaryEdge& e, double eps) {
  const Point dir = e.direction();
  const double param = dot(c.center - e.a, dir);
  if (param <= 0 || param >= e.length()) return std::nullopt;
  const double offset = dot(c.center - e.a, perp_left(dir));
  if (std::abs(offset - c.radius) > eps) return std::nullopt;
  return EdgeContact{c.id, param};
}

class ChainBuilder {
 public:
  ChainBuilder(const PolygonWithHoles& poly, std::vector<Circle> circles, const ToleranceConfig& tol)
      : poly_(poly), edges_(boundary_edges(poly)), circles_(std::move(circles)), tol_(tol) {}

  std::vector<Circle> take() && { return std::move(circles_); }

  void place_corners() {
    const auto frames = vertex_frames(poly_);
    struct Corner {
      VertexFrame frame;
      double d = 0.0;
      double tan_half = 0.0;
      int circle = -1;
    };
    std::vector<Corner> corners;
    for (const auto& f : frames) {
      if (std::abs(f.turn) <= tol_.eps_angle) {
        throw Error(ErrorCode::PlacementFailed,
                    "vertex " + std::to_string(f.id) + " has a straight interior angle");
      }
      if (f.turn < 0) continue;
      Corner c;
      c.frame = f;
      c.tan_half = 1.0 / std::tan(f.turn / 2.0);  // tan(alpha / 2), alpha = pi - turn
      const double len_in = edges_[static_cast<std::size_t>(f.edge_in)].length();
      const double len_out = edges_[static_cast<std::size_t>(f.edge_out)].length();
      c.d = std::min({len_in / 4.0, len_out / 4.0, local_feature_size(poly_, f.id) / 2.0});
      corners.push_back(c);
    }

    auto circle_for = [&](const Corner& c, int id) {
      const double r = c.d * c.tan_half;
      return Circle{c.frame.v - c.d * c.frame.dir_in + r * perp_left(c.frame.dir_in), r, id, CircleRole::Corner};
    };

    const int first_id = static_cast<int>(circles_.size());
    for (std::size_t i = 0; i < corners.size(); ++i) corners[i].circle = first_id + static_cast<int>(i);

    const std::vector<Circle> fixed = circles_;
    for (int pass = 0;; ++pass) {
      if (pass > 400) throw Error(ErrorCode::PlacementFailed, "corner circles did not settle");
      std::vector<Circle> current = fixed;
      for (const auto& c : corners) current.push_back(circle_for(c, c.circle));

      // Neighbours along an edge may touch exactly or must be well apart.
      std::vector<std::pair<int, int>> adjacent;
      for (const auto& e : edges_) {
        const auto ends = edge_end_circles(e, current);
        if (ends.first >= 0 && ends.second >= 0) adjacent.emplace_back(ends.first, ends.second);
      }
      auto are_adjacent = [&](int a, int b) {
        return std::any_of(adjacent.begin(), adjacent.end(), [&](const auto& p) {
          return (p.first == a && p.second == b) || (p.first == b && p.second == a);
        });
      };

      std::vector<bool> shrink(corners.size(), false);
      for (std::size_t i = 0; i < corners.size(); ++i) {
        const Circle& ci = current[static_cast<std::size_t>(corners[i].circle)];
        const auto& f = corners[i].frame;
        if (!point_in_polygon(ci.center, poly_)) shrink[i] = true;
        for (const auto& e : edges_) {
          if (e.id == f.edge_in || e.id == f.edge_out) continue;
          if (point_segment_distance(ci.center, e.a, e.b) < ci.radius * (1.0 + kMargin)) shrink[i] = true;
        }
        for (const auto& other : current) {
          if (other.id == ci.id) continue;
          const double g = circle_gap(ci, other);
          const double need = kMargin * std::min(ci.radius, other.radius);
          if (are_adjacent(ci.id, other.id)) {
            if (std::abs(g) > tol_.eps_dist && g < need) shrink[i] = true;
          } else if (g < need) {
            shrink[i] = true;
          }
        }
      }
      if (std::none_of(shrink.begin(), shrink.end(), [](bool b) { return b; })) {
        circles_ = std::move(current);
        return;
      }
      for (std::size_t i = 0; i < corners.size(); ++i) {
        if (shrink[i]) corners[i].d *= kShrink;
      }
    }
  }

  void place_connectors() {
    for (const auto& e : edges_) {
      const auto ends = edge_end_circles(e, circles_);
      if (ends.first < 0 || ends.second < 0) {
        throw Error(ErrorCode::PlacementFailed, "edge " + std::to_string(e.id) + " lacks end circles");
      }
      fill(e, ends.first, ends.second, 0);
    }
  }

 private:
  /// Circles touching edge e nearest to its start and its end.
  std::pair<int, int> edge_end_circles(const BoundaryEdge& e, const std::vector<Circle>& circles) const {
    int first = -1;
    int last = -1;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& c : circles) {
      const auto contact = contact_with_edge(c, e, tol_.eps_dist);
      if (!contact) continue;
      if (contact->param < lo) {
        lo = contact->param;
        first = c.id;
      }
      if (contact->param > hi) {
        hi = contact->param;
        last = c.id;
      }
    }
    return {first, last};
  }

  void fill(const BoundaryEdge& e, int a_id, int b_id, int depth) {
    if (depth > 40) throw Error(ErrorCode::PlacementFailed, "connector recursion too deep on edge " + std::to_string(e.id));
    const Circle a = circles_[static_cast<std::size_t>(a_id)];
    const Circle b = circles_[static_cast<std::size_t>(b_id)];
    if (std::abs(circle_gap(a, b)) <= tol_.eps_dist) return;
    const double pa = contact_with_edge(a, e, tol_.eps_dist)->param;
    const double pb = contact_with_edge(b, e, tol_.eps_dist)->param;
    const double span = pb - pa;
    const Point dir = e.direction();
    const Point normal = e.inward_normal();
    const int id = static_cast<int>(circles_.size());

    const double r3 = connector_radius(span, a.radius, b.radius);
    const double p3 = pa + 2.0 * std::sqrt(a.radius * r3);
    Circle conn{e.a + p3 * dir + r3 * normal, r3, id, CircleRole::Connector};
    if (has_clearance(conn, poly_, edges_, circles_, {e.id}, {a_id, b_id}, tol_.eps_dist)) {
      circles_.push_back(conn);
      return;
    }

    // Split the span with a free-standing circle at its midpoint and connect
    // each half separately.
    const double pm = 0.5 * (pa + pb);
    double rm = 0.5 * std::min(span * span / (16.0 * a.radius), span * span / (16.0 * b.radius));
    for (int attempt = 0; attempt < 40; ++attempt, rm *= 0.5) {
      Circle mid{e.a + pm * dir + rm * normal, rm, id, CircleRole::Connector};
      if (rm > tol_.eps_dist && has_clearance(mid, poly_, edges_, circles_, {e.id}, {}, tol_.eps_dist)) {
        circles_.push_back(mid);
        fill(e, a_id, id, depth + 1);
        fill(e, id, b_id, depth + 1);
        return;
      }
    }
    throw Error(ErrorCode::PlacementFailed, "no clear connector on edge " + std::to_string(e.id));
  }

  const PolygonWithHoles& poly_;
  std::vector<BoundaryEdge> edges_;
  std::vector<Circle> circles_;
  ToleranceConfig tol_;
};

}  // namespace

std::vector<Circle> place_boundary_chain(const PolygonWithHoles& poly, const std::vector<Circle>& fixed,
                                         const ToleranceConfig& tol) {
  ChainBuilder builder(poly, fixed, tol);
  builder.place_corners();
  builder.place_connectors();
  auto all = std::move(builder).take();
  return {all.begin() + static_cast<std::ptrdiff_t>(fixed.size()), all.end()};
}

// ---------------------------------------------------------------------------
// Contacts and the gap walk
// ---------------------------------------------------------------------------

GapExtraction extract_gaps(const PolygonWithHoles& poly, const std::vector<Circle>& circles,
                           const ToleranceConfig& tol) {
  const auto edges = boundary_edges(poly);
  const double eps = tol.eps_dist;
  GapExtraction out;

  for (std::size_t i = 0; i < circles.size(); ++i) {
    if (circles[i].id != static_cast<int>(i)) {
      throw Error(ErrorCode::GeometryError, "circle ids must equal their positions");
    }
    if (!point_in_polygon(circles[i].center, poly)) {
      throw Error(ErrorCode::NonTangentContact, "circle " + std::to_string(i) + " lies outside the region");
    }
  }
  for (std::size_t i = 0; i < circles.size(); ++i) {
    for (std::size_t j = i + 1; j < circles.size(); ++j) {
      const double g = circle_gap(circles[i], circles[j]);
      if (g < -eps) {
        throw Error(ErrorCode::NonTangentContact,
                    "circles " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
      }
      if (g <= eps) {
        const Point u = normalized(circles[j].center - circles[i].center);
        out.tangencies.push_back({circles[i].center + circles[i].radius * u, TangencyKind::CircleCircle,
                                  static_cast<int>(i), static_cast<int>(j)});
      }
    }
  }
  for (const auto& c : circles) {
    for (const auto& e : edges) {
      if (point_segment_distance(c.center, e.a, e.b) < c.radius - eps) {
        throw Error(ErrorCode::NonTangentContact,
                    "circle " + std::to_string(c.id) + " crosses edge " + std::to_string(e.id));
      }
      if (const auto contact = contact_with_edge(c, e, eps)) {
        out.tangencies.push_back({e.a + contact->param * e.direction(), TangencyKind::CircleBoundary, c.id, e.id});
      }
    }
  }

  const auto& tans = out.tangencies;
  const std::size_t n_circles = circles.size();
  const std::size_t n_edges = edges.size();

  // Contacts around each circle by angle and along each edge by parameter.
  std::vector<std::vector<int>> at_circle(n_circles);
  std::vector<std::vector<int>> at_edge(n_edges);
  for (std::size_t t = 0; t < tans.size(); ++t) {
    at_circle[static_cast<std::size_t>(tans[t].circle)].push_back(static_cast<int>(t));
    if (tans[t].kind == TangencyKind::CircleCircle) {
      at_circle[static_cast<std::size_t>(tans[t].other)].push_back(static_cast<int>(t));
    } else {
      at_edge[static_cast<std::size_t>(tans[t].other)].push_back(static_cast<int>(t));
    }
  }
  std::vector<int> pos_in_first(tans.size(), -1);
  std::vector<int> pos_in_second(tans.size(), -1);
  std::vector<int> pos_on_edge(tans.size(), -1);
  for (std::size_t c = 0; c < n_circles; ++c) {
    auto& list = at_circle[c];
    const Point center = circles[c].center;
    std::sort(list.begin(), list.end(), [&](int a, int b) {
      return angle_of(tans[static_cast<std::size_t>(a)].location - center) <
             angle_of(tans[static_cast<std::size_t>(b)].location - center);
    });
    for (std::size_t k = 0; k < list.size(); ++k) {
      const auto t = static_cast<std::size_t>(list[k]);
      (tans[t].circle == static_cast<int>(c) ? pos_in_first : pos_in_second)[t] = static_cast<int>(k);
    }
  }
  for (std::size_t e = 0; e < n_edges; ++e) {
    auto& list = at_edge[e];
    const Point a = edges[e].a;
    const Point dir = edges[e].direction();
    std::sort(list.begin(), list.end(), [&](int x, int y) {
      return dot(tans[static_cast<std::size_t>(x)].location - a, dir) <
             dot(tans[static_cast<std::size_t>(y)].location - a, dir);
    });
    for (std::size_t k = 0; k < list.size(); ++k) pos_on_edge[static_cast<std::size_t>(list[k])] = static_cast<int>(k);
  }

  // Dart numbering: arcs first (one per contact on each circle), then edge
  // pieces (one more than the contacts on each edge).
  std::vector<int> arc_offset(n_circles + 1, 0);
  for (std::size_t c = 0; c < n_circles; ++c) {
    arc_offset[c + 1] = arc_offset[c] + static_cast<int>(at_circle[c].size());
  }
  std::vector<int> edge_offset(n_edges + 1, arc_offset[n_circles]);
  for (std::size_t e = 0; e < n_edges; ++e) {
    edge_offset[e + 1] = edge_offset[e] + static_cast<int>(at_edge[e].size()) + 1;
  }
  const int n_darts = edge_offset[n_edges];

  for (std::size_t c = 0; c < n_circles; ++c) {
    if (at_circle[c].empty()) {
      throw Error(ErrorCode::NonTangentContact, "circle " + std::to_string(c) + " touches nothing");
    }
  }

  auto arc_dart_at = [&](int circle, int t) {
    const auto ts = static_cast<std::size_t>(t);
    const int k = tans[ts].circle == circle ? pos_in_first[ts] : pos_in_second[ts];
    return arc_offset[static_cast<std::size_t>(circle)] + k;
  };

  std::vector<GapCycle> raw;
  std::vector<bool> used(static_cast<std::size_t>(n_darts), false);
  for (int start = 0; start < n_darts; ++start) {
    if (used[static_cast<std::size_t>(start)]) continue;
    GapCycle cycle;
    int dart = start;
    for (int steps = 0;; ++steps) {
      if (steps > n_darts) throw Error(ErrorCode::NonTangentContact, "gap walk does not close");
      used[static_cast<std::size_t>(dart)] = true;
      int next = -1;
      if (dart < arc_offset[n_circles]) {
        const auto c = static_cast<std::size_t>(
            std::upper_bound(arc_offset.begin(), arc_offset.end(), dart) - arc_offset.begin() - 1);
        const auto& list = at_circle[c];
        const int n = static_cast<int>(list.size());
        const int k = dart - arc_offset[c];
        const int from = list[static_cast<std::size_t>(k)];
        const int to = list[static_cast<std::size_t>((k - 1 + n) % n)];
        cycle.sides.push_back({SideKind::Arc, static_cast<int>(c)});
        cycle.corners.push_back({GapCorner::Kind::Tangency, from});
        const Tangency& tt = tans[static_cast<std::size_t>(to)];
        if (tt.kind == TangencyKind::CircleCircle) {
          const int o = tt.circle == static_cast<int>(c) ? tt.other : tt.circle;
          next = arc_dart_at(o, to);
        } else {
          next = edge_offset[static_cast<std::size_t>(tt.other)] + pos_on_edge[static_cast<std::size_t>(to)] + 1;
        }
      } else {
        const auto e = static_cast<std::size_t>(
            std::upper_bound(edge_offset.begin(), edge_offset.end(), dart) - edge_offset.begin() - 1);
        const auto& list = at_edge[e];
        const int k = dart - edge_offset[e];
        cycle.sides.push_back({SideKind::Segment, static_cast<int>(e)});
        if (k == 0) {
          cycle.corners.push_back({GapCorner::Kind::Vertex, edges[e].start_vertex});
        } else {
          cycle.corners.push_back({GapCorner::Kind::Tangency, list[static_cast<std::size_t>(k - 1)]});
        }
        if (k < static_cast<int>(list.size())) {
          const int to = list[static_cast<std::size_t>(k)];
          next = arc_dart_at(tans[static_cast<std::size_t>(to)].circle, to);
        } else {
          next = edge_offset[static_cast<std::size_t>(edges[e].end_vertex)];
        }
      }
      dart = next;
      if (dart == start) break;
    }
    raw.push_back(std::move(cycle));
  }

  // Group cycles into gaps: counterclockwise cycles bound a gap from
  // outside, clockwise ones are islands inside the smallest enclosing gap.
  Packing view;
  view.polygon = poly;
  view.circles = circles;
  view.tangencies = out.tangencies;
  std::vector<double> areas;
  for (const auto& cyc : raw) {
    Gap g;
    g.cycles = {cyc};
    areas.push_back(gap_area(view, g));
  }
  std::vector<int> owner(raw.size(), -1);
  std::vector<int> outer_index(raw.size(), -1);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (areas[i] > 0) {
      outer_index[i] = static_cast<int>(out.gaps.size());
      Gap g;
      g.cycles = {raw[i]};
      out.gaps.push_back(std::move(g));
    }
  }
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (areas[i] > 0) continue;
    // Probe a point just off the first side, on the gap's side.
    const GapSide side = raw[i].sides.front();
    const Point p0 = view.corner_point(raw[i].corners.front());
    const Point p1 = view.corner_point(raw[i].corners[1 % raw[i].corners.size()]);
    Point probe;
    if (side.kind == SideKind::Arc) {
      const Circle& c = circles[static_cast<std::size_t>(side.ref)];
      const double a0 = angle_of(p0 - c.center);
      const double sweep = raw[i].corners.size() == 1 ? kTwoPi : cw_sweep(a0, angle_of(p1 - c.center));
      const double a = a0 - 0.5 * sweep;
      probe = c.center + (c.radius + 1e-6) * Point{std::cos(a), std::sin(a)};
    } else {
      const auto& e = edges[static_cast<std::size_t>(side.ref)];
      probe = midpoint(p0, p1) + 1e-6 * e.inward_normal();
    }
    int best = -1;
    double best_area = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < raw.size(); ++j) {
      if (areas[j] <= 0 || areas[j] >= best_area) continue;
      if (point_in_ring(probe, cycle_polyline(view, raw[j]))) {
        best = static_cast<int>(j);
        best_area = areas[j];
      }
    }
    if (best < 0) throw Error(ErrorCode::NonTangentContact, "island cycle has no enclosing gap");
    owner[i] = outer_index[static_cast<std::size_t>(best)];
  }
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (owner[i] >= 0) out.gaps[static_cast<std::size_t>(owner[i])].cycles.push_back(raw[i]);
  }

  const auto frames = vertex_frames(poly);
  for (std::size_t g = 0; g < out.gaps.size(); ++g) {
    Gap& gap = out.gaps[g];
    gap.id = static_cast<int>(g);
    gap.area = gap_area(view, gap);
    int arcs = 0;
    int segs = 0;
    for (const auto& cyc : gap.cycles) {
      for (const auto& s : cyc.sides) (s.kind == SideKind::Arc ? arcs : segs)++;
    }
    if (segs == 0) {
      gap.kind = GapKind::Interior;
    } else if (gap.cycles.size() == 1 && arcs + segs == 3 && segs == 2) {
      gap.kind = GapKind::Corner;
    } else if (gap.cycles.size() == 1 && arcs + segs == 3 && segs == 1) {
      gap.kind = GapKind::Boundary;
    } else if (gap.cycles.size() == 1 && arcs == 2 && segs == 2) {
      gap.kind = GapKind::Other;
      for (const auto& c : gap.corners()) {
        if (c.kind == GapCorner::Kind::Vertex && frames[static_cast<std::size_t>(c.id)].turn < 0) {
          gap.kind = GapKind::Reflex;
        }
      }
    } else {
      gap.kind = GapKind::Other;
    }
  }
  return out;
}

double gap_area(const Packing& packing, const Gap& gap) {
  double total = 0.0;
  for (const auto& cyc : gap.cycles) {
    std::vector<Point> corners;
    corners.reserve(cyc.corners.size());
    for (const auto& c : cyc.corners) corners.push_back(packing.corner_point(c));
    double area = signed_area(corners);
    const std::size_t n = cyc.sides.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (cyc.sides[i].kind != SideKind::Arc) continue;
      const Circle& c = packing.circles[static_cast<std::size_t>(cyc.sides[i].ref)];
      const double sweep = n == 1 ? kTwoPi
                                  : cw_sweep(angle_of(corners[i] - c.center),
                                             angle_of(corners[(i + 1) % n] - c.center));
      area -= 0.5 * c.radius * c.radius * (sweep - std::sin(sweep));
    }
    total += area;
  }
  return total;
}

std::vector<Point> cycle_polyline(const Packing& packing, const GapCycle& cycle, int samples_per_arc) {
  std::vector<Point> out;
  const std::size_t n = cycle.sides.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point p0 = packing.corner_point(cycle.corners[i]);
    out.push_back(p0);
    if (cycle.sides[i].kind != SideKind::Arc) continue;
    const Circle& c = packing.circles[static_cast<std::size_t>(cycle.sides[i].ref)];
    const Point p1 = packing.corner_point(cycle.corners[(i + 1) % n]);
    const double a0 = angle_of(p0 - c.center);
    const double sweep = n == 1 ? kTwoPi : cw_sweep(a0, angle_of(p1 - c.center));
    for (int s = 1; s < samples_per_arc; ++s) {
      const double a = a0 - sweep * s / samples_per_arc;
      out.push_back(c.center + c.radius * Point{std::cos(a), std::sin(a)});
    }
  }
  return out;
}

bool point_in_gap(const Packing& packing, const Gap& gap, Point p) {
  bool inside = false;
  for (const auto& cyc : gap.cycles) {
    if (point_in_ring(p, cycle_polyline(packing, cyc))) inside = !inside;
  }
  return inside;
}

// ---------------------------------------------------------------------------
// Circles tangent to three circles
// ---------------------------------------------------------------------------

namespace {

bool solve3(const double m[3][3], const double rhs[3], double out[3]) {
  const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                     m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                     m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  if (std::abs(det) < 1e-300) return false;
  for (int col = 0; col < 3; ++col) {
    double t[3][3];
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) t[r][c] = c == col ? rhs[r] : m[r][c];
    }
    out[col] = (t[0][0] * (t[1][1] * t[2][2] - t[1][2] * t[2][1]) -
                t[0][1] * (t[1][0] * t[2][2] - t[1][2] * t[2][0]) +
                t[0][2] * (t[1][0] * t[2][1] - t[1][1] * t[2][0])) /
               det;
  }
  return true;
}

/// Newton polish of |X - c_i| = r_i + rho for the three circles.
void polish(const std::array<Circle, 3>& cs, Point& x, double& rho) {
  for (int iter = 0; iter < 6; ++iter) {
    double m[3][3];
    double f[3];
    for (int i = 0; i < 3; ++i) {
      const Point d = x - cs[static_cast<std::size_t>(i)].center;
      const double len = norm(d);
      if (len == 0) return;
      m[i][0] = d.x / len;
      m[i][1] = d.y / len;
      m[i][2] = -1.0;
      f[i] = -(len - cs[static_cast<std::size_t>(i)].radius - rho);
    }
    double step[3];
    if (!solve3(m, f, step)) return;
    x = x + Point{step[0], step[1]};
    rho += step[2];
    if (std::abs(step[0]) + std::abs(step[1]) + std::abs(step[2]) < 1e-17) return;
  }
}

}  // namespace

std::vector<Circle> tangent_circles(const Circle& a, const Circle& b, const Circle& c) {
  // Work relative to a's center; subtracting the first equation from the
  // other two leaves two linear equations in (x, y, rho), whose solution
  // line is substituted back into the first.
  const Point p2 = b.center - a.center;
  const Point p3 = c.center - a.center;
  const double r1 = a.radius;
  const double row1[3] = {2 * p2.x, 2 * p2.y, 2 * (b.radius - r1)};
  const double row2[3] = {2 * p3.x, 2 * p3.y, 2 * (c.radius - r1)};
  const double k1 = dot(p2, p2) - b.radius * b.radius + r1 * r1;
  const double k2 = dot(p3, p3) - c.radius * c.radius + r1 * r1;

  double dir[3] = {row1[1] * row2[2] - row1[2] * row2[1], row1[2] * row2[0] - row1[0] * row2[2],
                   row1[0] * row2[1] - row1[1] * row2[0]};
  const double dlen = std::sqrt(dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]);
  if (dlen < 1e-300) return {};
  for (double& v : dir) v /= dlen;

  // Minimum-norm particular solution p0 = M^T (M M^T)^-1 k.
  const double g11 = row1[0] * row1[0] + row1[1] * row1[1] + row1[2] * row1[2];
  const double g12 = row1[0] * row2[0] + row1[1] * row2[1] + row1[2] * row2[2];
  const double g22 = row2[0] * row2[0] + row2[1] * row2[1] + row2[2] * row2[2];
  const double gdet = g11 * g22 - g12 * g12;
  if (std::abs(gdet) < 1e-300) return {};
  const double l1 = (g22 * k1 - g12 * k2) / gdet;
  const double l2 = (g11 * k2 - g12 * k1) / gdet;
  double p0[3];
  for (int i = 0; i < 3; ++i) p0[i] = row1[i] * l1 + row2[i] * l2;

  const double qa = dir[0] * dir[0] + dir[1] * dir[1] - dir[2] * dir[2];
  const double qb = 2 * (p0[0] * dir[0] + p0[1] * dir[1]) - 2 * (r1 + p0[2]) * dir[2];
  const double qc = p0[0] * p0[0] + p0[1] * p0[1] - (r1 + p0[2]) * (r1 + p0[2]);
  std::vector<double> roots;
  if (std::abs(qa) < 1e-14) {
    if (std::abs(qb) > 1e-300) roots.push_back(-qc / qb);
  } else {
    const double disc = qb * qb - 4 * qa * qc;
    if (disc >= 0) {
      const double sq = std::sqrt(disc);
      const double q = -0.5 * (qb + (qb >= 0 ? sq : -sq));
      roots.push_back(q / qa);
      if (q != 0) roots.push_back(qc / q);
    }
  }

  const std::array<Circle, 3> cs{a, b, c};
  std::vector<Circle> out;
  for (double s : roots) {
    Point x{p0[0] + s * dir[0], p0[1] + s * dir[1]};
    double rho = p0[2] + s * dir[2];
    if (!(rho > 0)) continue;
    x = x + a.center;
    polish(cs, x, rho);
    if (!(rho > 0) || !is_finite(x)) continue;
    out.push_back({x, rho, -1, CircleRole::GapSplit});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Gap splitting
// ---------------------------------------------------------------------------

namespace {

bool has_repeated_circle(const Gap& gap) {
  std::vector<int> ids;
  for (const auto& cyc : gap.cycles) {
    for (const auto& s : cyc.sides) ids.push_back(s.ref);
  }
  std::sort(ids.begin(), ids.end());
  return std::adjacent_find(ids.begin(), ids.end()) != ids.end();
}

bool needs_split(const Gap& gap) {
  return gap.kind == GapKind::Interior &&
         (gap.cycles.size() > 1 || gap.side_count() >= 5 || has_repeated_circle(gap));
}

/// Picks the circle to insert into `gap`: tangent to three of its sides,
/// inside the gap and clear of everything else, with the most even split.
std::optional<Circle> choose_split_circle(const Packing& view, const Gap& gap, const ToleranceConfig& tol) {
  struct Slot {
    int cycle;
    int circle;
  };
  std::vector<Slot> slots;
  for (std::size_t ci = 0; ci < gap.cycles.size(); ++ci) {
    for (const auto& s : gap.cycles[ci].sides) slots.push_back({static_cast<int>(ci), s.ref});
  }
  const int k = static_cast<int>(slots.size());
  const bool single = gap.cycles.size() == 1;

  struct Triple {
    int worst;
    int a, b, c;
  };
  std::vector<Triple> triples;
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) {
      for (int c = b + 1; c < k; ++c) {
        const auto& sa = slots[static_cast<std::size_t>(a)];
        const auto& sb = slots[static_cast<std::size_t>(b)];
        const auto& sc = slots[static_cast<std::size_t>(c)];
        if (sa.circle == sb.circle || sb.circle == sc.circle || sa.circle == sc.circle) continue;
        int worst = 0;
        if (single) {
          worst = std::max({b - a, c - b, k - (c - a)}) + 2;
        } else if (sa.cycle == sb.cycle && sb.cycle == sc.cycle) {
          continue;
        }
        triples.push_back({worst, a, b, c});
      }
    }
  }
  std::stable_sort(triples.begin(), triples.end(),
                   [](const Triple& x, const Triple& y) { return x.worst < y.worst; });

  const double eps = tol.eps_dist;
  std::optional<Circle> best;
  bool best_clean = false;
  for (std::size_t i = 0; i < triples.size();) {
    std::size_t j = i;
    while (j < triples.size() && triples[j].worst == triples[i].worst) {
      const auto& t = triples[j];
      const auto& ca = view.circles[static_cast<std::size_t>(slots[static_cast<std::size_t>(t.a)].circle)];
      const auto& cb = view.circles[static_cast<std::size_t>(slots[static_cast<std::size_t>(t.b)].circle)];
      const auto& cc = view.circles[static_cast<std::size_t>(slots[static_cast<std::size_t>(t.c)].circle)];
      for (const Circle& cand : tangent_circles(ca, cb, cc)) {
        if (cand.radius <= 10 * eps) continue;
        if (best && best_clean && cand.radius <= best->radius) continue;
        if (!point_in_polygon(cand.center, view.polygon)) continue;
        if (boundary_distance(cand.center, view.polygon) <= cand.radius + eps) continue;
        bool valid = true;
        bool clean = true;
        for (const auto& other : view.circles) {
          const double g = circle_gap(cand, other);
          if (g < -eps) {
            valid = false;
            break;
          }
          if (g > eps && g < 1e-6) clean = false;
        }
        if (!valid || !point_in_gap(view, gap, cand.center)) continue;
        const bool better = !best || (clean && !best_clean) ||
                            (clean == best_clean && cand.radius > best->radius);
        if (better) {
          best = cand;
          best_clean = clean;
        }
      }
      ++j;
    }
    if (best) return best;
    i = j;
  }
  return best;
}

void require_complete(const GapExtraction& ext) {
  for (const auto& g : ext.gaps) {
    const int k = g.side_count();
    if (g.kind == GapKind::Other || k < 3 || k > 4 || needs_split(g)) {
      throw Error(ErrorCode::PlacementFailed,
                  "gap " + std::to_string(g.id) + " has " + std::to_string(k) + " sides after packing");
    }
  }
}

}  // namespace

Packing split_interior_gaps(Packing packing, const ToleranceConfig& tol) {
  const std::size_t limit = 50 * packing.circles.size() + 500;
  for (std::size_t iter = 0; iter <= limit; ++iter) {
    auto ext = extract_gaps(packing.polygon, packing.circles, tol);
    const Gap* target = nullptr;
    for (const auto& g : ext.gaps) {
      if (needs_split(g) && (!target || g.side_count() > target->side_count())) target = &g;
    }
    if (!target) {
      require_complete(ext);
      packing.tangencies = std::move(ext.tangencies);
      packing.gaps = std::move(ext.gaps);
      return packing;
    }
    Packing view;
    view.polygon = packing.polygon;
    view.circles = packing.circles;
    view.tangencies = ext.tangencies;
    auto circle = choose_split_circle(view, *target, tol);
    if (!circle) {
      throw Error(ErrorCode::PlacementFailed,
                  "no circle splits gap " + std::to_string(target->id) + " with " +
                      std::to_string(target->side_count()) + " sides");
    }
    circle->id = static_cast<int>(packing.circles.size());
    circle->role = CircleRole::GapSplit;
    packing.circles.push_back(*circle);
  }
  throw Error(ErrorCode::PlacementFailed, "gap splitting did not terminate");
}

Packing pack_polygon(const PolygonWithHoles& poly, const ToleranceConfig& tol) {
  Packing packing;
  packing.polygon = poly;
  if (auto incircle = detect_triangle_incircle(poly)) {
    packing.circles = {*incircle};
    packing.incircle_shortcut = true;
    auto ext = extract_gaps(poly, packing.circles, tol);
    require_complete(ext);
    packing.tangencies = std::move(ext.tangencies);
    packing.gaps = std::move(ext.gaps);
    return packing;
  }
  packing.circles = place_reflex_pairs(poly, tol);
  auto chain = place_boundary_chain(poly, packing.circles, tol);
  packing.circles.insert(packing.circles.end(), chain.begin(), chain.end());
  return split_interior_gaps(std::move(packing), tol);
}

// ---------------------------------------------------------------------------
// Invariant report
// ---------------------------------------------------------------------------

PackingReport check_packing(const Packing& packing) {
  PackingReport rep;
  const auto edges = boundary_edges(packing.polygon);
  rep.max_containment_violation = -std::numeric_limits<double>::infinity();
  double circle_area = 0.0;
  for (const auto& c : packing.circles) {
    double v = c.radius - boundary_distance(c.center, packing.polygon);
    if (!point_in_polygon(c.center, packing.polygon)) v = std::max(v, c.radius);
    rep.max_containment_violation = std::max(rep.max_containment_violation, v);
    circle_area += std::numbers::pi * c.radius * c.radius;
  }
  for (std::size_t i = 0; i < packing.circles.size(); ++i) {
    for (std::size_t j = i + 1; j < packing.circles.size(); ++j) {
      rep.max_overlap = std::max(rep.max_overlap, -circle_gap(packing.circles[i], packing.circles[j]));
    }
  }
  for (const auto& t : packing.tangencies) {
    const Circle& c = packing.circles[static_cast<std::size_t>(t.circle)];
    double res = std::abs(distance(t.location, c.center) - c.radius);
    if (t.kind == TangencyKind::CircleCircle) {
      const Circle& o = packing.circles[static_cast<std::size_t>(t.other)];
      res = std::max(res, std::abs(distance(t.location, o.center) - o.radius));
    } else {
      const auto& e = edges[static_cast<std::size_t>(t.other)];
      res = std::max(res, point_segment_distance(t.location, e.a, e.b));
    }
    rep.max_tangency_residual = std::max(rep.max_tangency_residual, res);
  }
  double gap_total = 0.0;
  rep.min_gap_sides = std::numeric_limits<int>::max();
  for (const auto& g : packing.gaps) {
    gap_total += gap_area(packing, g);
    const int k = g.side_count();
    rep.min_gap_sides = std::min(rep.min_gap_sides, k);
    rep.max_gap_sides = std::max(rep.max_gap_sides, k);
    if (g.kind == GapKind::Reflex && k != 4) rep.reflex_gaps_four_sided = false;
    if (k == 4 && g.kind != GapKind::Reflex && g.kind != GapKind::Interior) rep.four_sided_gaps_allowed = false;
  }
  if (packing.gaps.empty()) rep.min_gap_sides = 0;
  rep.area_relative_error = std::abs(circle_area + gap_total - packing.polygon.area) / packing.polygon.area;
  return rep;
}

}  // namespace kitefold
