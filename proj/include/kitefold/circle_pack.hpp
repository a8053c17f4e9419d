#pragma once

#include <optional>
#include <vector>

#include "kitefold/geometry.hpp"

namespace kitefold {

/// Which construction step produced a circle. Informational; used by the
/// renderer and by tests that want to look at one family of circles.
enum class CircleRole { Incircle, ReflexPair, Corner, Connector, GapSplit, BadGapSplit };

struct Circle {
  Point center;
  double radius = 0.0;
  int id = -1;
  CircleRole role = CircleRole::Connector;
};

/// One directed edge of the validated polygon. Edge ids and vertex ids share
/// a numbering: edge e starts at vertex e. Rings are concatenated outer
/// first, then holes in order.
struct BoundaryEdge {
  int id = -1;
  int ring = 0;
  int start_vertex = -1;
  int end_vertex = -1;
  Point a;
  Point b;

  Point direction() const { return normalized(b - a); }
  double length() const { return distance(a, b); }
  /// Inward normal; the region lies to the left of every edge.
  Point inward_normal() const { return perp_left(direction()); }
};

std::vector<BoundaryEdge> boundary_edges(const PolygonWithHoles& poly);
std::vector<Point> boundary_vertices(const PolygonWithHoles& poly);

enum class TangencyKind { CircleCircle, CircleBoundary };

/// A snapped contact point. For CircleCircle, `other` is the second circle
/// id (always greater than `circle`); for CircleBoundary it is the edge id.
struct Tangency {
  Point location;
  TangencyKind kind = TangencyKind::CircleCircle;
  int circle = -1;
  int other = -1;
};

enum class SideKind { Arc, Segment };

struct GapSide {
  SideKind kind = SideKind::Arc;
  int ref = -1;  // circle id for arcs, edge id for segments
};

struct GapCorner {
  enum class Kind { Tangency, Vertex };
  Kind kind = Kind::Tangency;
  int id = -1;  // tangency index or polygon vertex id

  friend bool operator==(const GapCorner&, const GapCorner&) = default;
};

/// One closed boundary walk of a gap, with the gap on its left. Side i runs
/// from corners[i] to corners[(i + 1) % size].
struct GapCycle {
  std::vector<GapSide> sides;
  std::vector<GapCorner> corners;
};

enum class GapKind { Interior, Boundary, Corner, Reflex, Other };

struct Gap {
  int id = -1;
  GapKind kind = GapKind::Other;
  /// Completed packings have exactly one cycle per gap; a gap surrounding a
  /// hole's circle chain has more than one while packing is in progress.
  std::vector<GapCycle> cycles;
  double area = 0.0;

  const std::vector<GapSide>& sides() const { return cycles.front().sides; }
  const std::vector<GapCorner>& corners() const { return cycles.front().corners; }
  int side_count() const;
};

struct Packing {
  PolygonWithHoles polygon;
  std::vector<Circle> circles;
  std::vector<Tangency> tangencies;
  std::vector<Gap> gaps;
  bool incircle_shortcut = false;

  Point corner_point(const GapCorner& c) const;
};

// --- individual steps -----------------------------------------------------

std::optional<Circle> detect_triangle_incircle(const PolygonWithHoles& poly);

/// Distance from vertex v to the nearest boundary edge not incident to it.
double local_feature_size(const PolygonWithHoles& poly, int vertex_id);

std::vector<Circle> place_reflex_pairs(const PolygonWithHoles& poly, const ToleranceConfig& tol = {});

/// Radius of the circle tangent to a line and to two circles (radii r1, r2)
/// that touch the same line at points `span` apart.
double connector_radius(double span, double r1, double r2);

/// Corner circles plus edge connectors. Returned circles are numbered after
/// `fixed`, and the returned list does not repeat `fixed`.
std::vector<Circle> place_boundary_chain(const PolygonWithHoles& poly, const std::vector<Circle>& fixed,
                                         const ToleranceConfig& tol = {});

struct GapExtraction {
  std::vector<Tangency> tangencies;
  std::vector<Gap> gaps;
};

/// Finds all contacts (within eps_dist) between the circles and the boundary,
/// snaps them, and walks the resulting arrangement into gaps.
GapExtraction extract_gaps(const PolygonWithHoles& poly, const std::vector<Circle>& circles,
                           const ToleranceConfig& tol = {});

/// Inserts circles until every interior gap has 3 or 4 distinct arc sides.
Packing split_interior_gaps(Packing packing, const ToleranceConfig& tol = {});

/// Runs the whole packing: incircle shortcut, or reflex pairs, boundary chain
/// and gap splitting.
Packing pack_polygon(const PolygonWithHoles& poly, const ToleranceConfig& tol = {});

// --- geometry helpers used across modules ----------------------------------

/// Circles externally tangent to all three given circles. Up to two results.
std::vector<Circle> tangent_circles(const Circle& a, const Circle& b, const Circle& c);

/// Area of the gap region (corner polygon minus circular segments).
double gap_area(const Packing& packing, const Gap& gap);
/// Closed polyline approximating one gap cycle (arcs sampled).
std::vector<Point> cycle_polyline(const Packing& packing, const GapCycle& cycle, int samples_per_arc = 8);
bool point_in_gap(const Packing& packing, const Gap& gap, Point p);

struct PackingReport {
  double max_containment_violation = 0.0;  // max(r - distance to boundary), or <= 0
  double max_overlap = 0.0;                // max(r1 + r2 - |c1 - c2|) over non-tangent pairs
  double max_tangency_residual = 0.0;
  double area_relative_error = 0.0;
  int min_gap_sides = 0;
  int max_gap_sides = 0;
  bool reflex_gaps_four_sided = true;
  bool four_sided_gaps_allowed = true;  // every 4-sided gap is reflex or interior
};

PackingReport check_packing(const Packing& packing);

}  // namespace kitefold
