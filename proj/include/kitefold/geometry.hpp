#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "kitefold/error.hpp"

namespace kitefold {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend Point operator*(Point a, double s) { return {s * a.x, s * a.y}; }
  friend Point operator/(Point a, double s) { return {a.x / s, a.y / s}; }
  friend bool operator==(Point a, Point b) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }
inline Point midpoint(Point a, Point b) { return {(a.x + b.x) * 0.5, (a.y + b.y) * 0.5}; }
inline Point perp_left(Point a) { return {-a.y, a.x}; }
inline Point normalized(Point a) { return a / norm(a); }
inline bool is_finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Lexicographic order on (x, y); used for deterministic tie-breaks.
inline bool lex_less(Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

/// Absolute tolerances, all expressed in the frame where the input's
/// bounding-box diagonal has length 1.
struct ToleranceConfig {
  double eps_dist = 1e-9;
  double eps_area = 1e-12;
  double eps_angle = 1e-9;
  double verify_tol = 1e-6;

  /// Throws ParameterOutOfRange if the ordering/positivity constraints fail.
  void validate() const;
  /// Same policy in a frame whose lengths are `factor` times larger.
  ToleranceConfig scaled(double factor) const;
};

/// p -> R(rotation) * (reflected ? (x, -y) : (x, y)) + translation.
/// The reflection across the x-axis is always applied first.
struct RigidMotion {
  double rotation = 0.0;
  Point translation{};
  bool reflected = false;

  static RigidMotion identity() { return {}; }
};

Point apply_motion(const RigidMotion& m, Point p);
/// Rotational part only (no translation); for direction vectors.
Point apply_linear(const RigidMotion& m, Point v);
/// compose(a, b) applies b first, then a.
RigidMotion compose(const RigidMotion& a, const RigidMotion& b);
RigidMotion inverse(const RigidMotion& m);

using Ring = std::vector<Point>;

/// Maps input coordinates into the unit-diagonal working frame:
/// working = (input - offset) / scale.
struct Normalization {
  Point offset{};
  double scale = 1.0;

  Point to_working(Point p) const { return (p - offset) / scale; }
  Point to_input(Point p) const { return p * scale + offset; }
};

struct PolygonWithHoles {
  Ring outer;                // counterclockwise
  std::vector<Ring> holes;   // clockwise
  int vertex_count = 0;
  double area = 0.0;
  Normalization normalization;

  /// Ring 0 is the outer ring, rings 1.. are the holes. With this
  /// orientation the region always lies to the left of each directed edge.
  int ring_count() const { return 1 + static_cast<int>(holes.size()); }
  const Ring& ring(int r) const { return r == 0 ? outer : holes[static_cast<std::size_t>(r - 1)]; }
};

double signed_area(std::span<const Point> ring);
int orientation(Point p, Point q, Point r, const ToleranceConfig& tol = {});
Point circumcenter(Point a, Point b, Point c, const ToleranceConfig& tol = {});

/// Orients, normalizes, and checks the rings. `rings[0]` is the outer
/// boundary; any further rings are holes.
PolygonWithHoles validate_polygon(const std::vector<Ring>& rings, const ToleranceConfig& tol = {});

/// Axis of reflection symmetry (indices of two opposite vertices) of a
/// quadrilateral, or nothing. Rhombi report the axis through vertex 0.
std::optional<std::pair<int, int>> is_kite(const std::array<Point, 4>& q, bool allow_nonconvex,
                                           double eps_dist);

// Small predicates shared by the pipeline modules.
double point_segment_distance(Point p, Point a, Point b);
bool segments_intersect(Point a, Point b, Point c, Point d);
/// Even-odd point-in-ring test (boundary points are unspecified).
bool point_in_ring(Point p, std::span<const Point> ring);
bool point_in_polygon(Point p, const PolygonWithHoles& poly);
/// Distance from p to the nearest boundary edge of the polygon.
double boundary_distance(Point p, const PolygonWithHoles& poly);
/// Wraps an angle into (-pi, pi].
double wrap_angle(double a);

}  // namespace kitefold
