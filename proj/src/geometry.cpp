#include "kitefold/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <string>

namespace kitefold {

void ToleranceConfig::validate() const {
  if (!(eps_dist > 0 && eps_area > 0 && eps_angle > 0 && verify_tol > 0)) {
    throw Error(ErrorCode::ParameterOutOfRange, "tolerances must be strictly positive");
  }
  if (!(eps_dist < verify_tol)) {
    throw Error(ErrorCode::ParameterOutOfRange, "eps_dist must be smaller than verify_tol");
  }
}

ToleranceConfig ToleranceConfig::scaled(double factor) const {
  return {eps_dist * factor, eps_area * factor * factor, eps_angle, verify_tol * factor};
}

Point apply_linear(const RigidMotion& m, Point v) {
  if (m.reflected) v.y = -v.y;
  const double c = std::cos(m.rotation);
  const double s = std::sin(m.rotation);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

Point apply_motion(const RigidMotion& m, Point p) { return apply_linear(m, p) + m.translation; }

RigidMotion compose(const RigidMotion& a, const RigidMotion& b) {
  // S R(b) = R(-b) S, so a reflection in `a` flips the sense of b's rotation.
  RigidMotion out;
  out.reflected = a.reflected != b.reflected;
  out.rotation = a.rotation + (a.reflected ? -b.rotation : b.rotation);
  out.translation = apply_motion(a, b.translation);
  return out;
}

RigidMotion inverse(const RigidMotion& m) {
  RigidMotion out;
  out.reflected = m.reflected;
  out.rotation = m.reflected ? m.rotation : -m.rotation;
  RigidMotion linear = out;
  linear.translation = {};
  out.translation = Point{} - apply_motion(linear, m.translation);
  return out;
}

double signed_area(std::span<const Point> ring) {
  double twice = 0.0;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    twice += cross(ring[i], ring[(i + 1) % n]);
  }
  return 0.5 * twice;
}

int orientation(Point p, Point q, Point r, const ToleranceConfig& tol) {
  const double twice = cross(q - p, r - p);
  if (std::abs(0.5 * twice) <= tol.eps_area) return 0;
  return twice > 0 ? 1 : -1;
}

Point circumcenter(Point a, Point b, Point c, const ToleranceConfig& tol) {
  if (orientation(a, b, c, tol) == 0) {
    throw Error(ErrorCode::CollinearInput, "circumcenter of collinear points");
  }
  const Point ab = b - a;
  const Point ac = c - a;
  const double d = 2.0 * cross(ab, ac);
  const double ab2 = dot(ab, ab);
  const double ac2 = dot(ac, ac);
  const Point offset{(ac.y * ab2 - ab.y * ac2) / d, (ab.x * ac2 - ac.x * ab2) / d};
  return a + offset;
}

double point_segment_distance(Point p, Point a, Point b) {
  const Point ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(p, a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + t * ab);
}

namespace {

int sign_of(double v) { return (v > 0) - (v < 0); }

bool on_segment(Point p, Point a, Point b) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

}  // namespace

bool segments_intersect(Point a, Point b, Point c, Point d) {
  const int o1 = sign_of(cross(b - a, c - a));
  const int o2 = sign_of(cross(b - a, d - a));
  const int o3 = sign_of(cross(d - c, a - c));
  const int o4 = sign_of(cross(d - c, b - c));
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(c, a, b)) return true;
  if (o2 == 0 && on_segment(d, a, b)) return true;
  if (o3 == 0 && on_segment(a, c, d)) return true;
  if (o4 == 0 && on_segment(b, c, d)) return true;
  return false;
}

bool point_in_ring(Point p, std::span<const Point> ring) {
  bool inside = false;
  const std::size_t n = ring.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point a = ring[i];
    const Point b = ring[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

bool point_in_polygon(Point p, const PolygonWithHoles& poly) {
  if (!point_in_ring(p, poly.outer)) return false;
  for (const auto& hole : poly.holes) {
    if (point_in_ring(p, hole)) return false;
  }
  return true;
}

double boundary_distance(Point p, const PolygonWithHoles& poly) {
  double best = std::numeric_limits<double>::infinity();
  for (int r = 0; r < poly.ring_count(); ++r) {
    const Ring& ring = poly.ring(r);
    for (std::size_t i = 0; i < ring.size(); ++i) {
      best = std::min(best, point_segment_distance(p, ring[i], ring[(i + 1) % ring.size()]));
    }
  }
  return best;
}

double wrap_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  if (a <= -std::numbers::pi) a += two_pi;
  if (a > std::numbers::pi) a -= two_pi;
  return a;
}

namespace {

void check_ring_simple(const Ring& ring, const ToleranceConfig& tol, int ring_index) {
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = ring[i];
    const Point b = ring[(i + 1) % n];
    const Point c = ring[(i + 2) % n];
    // Adjacent edges may only meet at their shared vertex; a fold-back spike
    // overlaps itself.
    if (orientation(a, b, c, tol) == 0 && dot(b - a, c - b) < 0) {
      throw Error(ErrorCode::SelfIntersecting,
                  "ring " + std::to_string(ring_index) + " doubles back at vertex " +
                      std::to_string((i + 1) % n));
    }
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segments_intersect(a, b, ring[j], ring[(j + 1) % n])) {
        throw Error(ErrorCode::SelfIntersecting, "ring " + std::to_string(ring_index) +
                                                     " edges " + std::to_string(i) + " and " +
                                                     std::to_string(j) + " intersect");
      }
    }
  }
}

bool rings_cross(const Ring& a, const Ring& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (segments_intersect(a[i], a[(i + 1) % a.size()], b[j], b[(j + 1) % b.size()])) {
        return true;
      }
    }
  }
  return false;
}

}  // namespace

PolygonWithHoles validate_polygon(const std::vector<Ring>& rings, const ToleranceConfig& tol) {
  if (rings.empty()) {
    throw Error(ErrorCode::DegenerateArea, "no rings given");
  }
  Point lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  Point hi{-lo.x, -lo.y};
  for (std::size_t r = 0; r < rings.size(); ++r) {
    if (rings[r].size() < 3) {
      throw Error(ErrorCode::DegenerateArea,
                  "ring " + std::to_string(r) + " has fewer than 3 vertices");
    }
    for (const Point& p : rings[r]) {
      if (!is_finite(p)) {
        throw Error(ErrorCode::DegenerateArea, "non-finite coordinate in ring " + std::to_string(r));
      }
      lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
      hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    }
  }
  const double diag = distance(lo, hi);
  if (!(diag > 0)) throw Error(ErrorCode::DegenerateArea, "all vertices coincide");

  PolygonWithHoles poly;
  poly.normalization = {lo, diag};
  std::vector<Ring> work;
  work.reserve(rings.size());
  for (const Ring& ring : rings) {
    Ring out;
    out.reserve(ring.size());
    for (const Point& p : ring) out.push_back(poly.normalization.to_working(p));
    work.push_back(std::move(out));
  }

  for (std::size_t r = 0; r < work.size(); ++r) {
    const Ring& ring = work[r];
    for (std::size_t i = 0; i < ring.size(); ++i) {
      if (distance(ring[i], ring[(i + 1) % ring.size()]) <= tol.eps_dist) {
        throw Error(ErrorCode::DuplicateVertex, "ring " + std::to_string(r) + " vertex " +
                                                    std::to_string(i) + " repeats its successor");
      }
    }
    // A ring lying on one line has no area; anything else with zero area
    // crosses itself.
    bool flat = true;
    const Point dir = normalized(ring[1] - ring[0]);
    for (const Point& p : ring) flat = flat && std::abs(cross(dir, p - ring[0])) <= tol.eps_dist;
    if (flat) throw Error(ErrorCode::DegenerateArea, "ring " + std::to_string(r) + " has zero area");
    check_ring_simple(ring, tol, static_cast<int>(r));
    if (std::abs(signed_area(ring)) <= tol.eps_area) {
      throw Error(ErrorCode::DegenerateArea, "ring " + std::to_string(r) + " has zero area");
    }
  }

  for (std::size_t r = 0; r < work.size(); ++r) {
    const bool want_ccw = r == 0;
    if ((signed_area(work[r]) > 0) != want_ccw) std::reverse(work[r].begin(), work[r].end());
  }

  for (std::size_t h = 1; h < work.size(); ++h) {
    if (rings_cross(work[0], work[h])) {
      throw Error(ErrorCode::HoleOutsideOuter, "hole " + std::to_string(h - 1) + " crosses the outer ring");
    }
    if (!point_in_ring(work[h][0], work[0])) {
      throw Error(ErrorCode::HoleOutsideOuter, "hole " + std::to_string(h - 1) + " lies outside the outer ring");
    }
    for (std::size_t g = 1; g < h; ++g) {
      if (rings_cross(work[g], work[h])) {
        throw Error(ErrorCode::SelfIntersecting, "holes " + std::to_string(g - 1) + " and " +
                                                     std::to_string(h - 1) + " intersect");
      }
      if (point_in_ring(work[h][0], work[g]) || point_in_ring(work[g][0], work[h])) {
        throw Error(ErrorCode::HoleOutsideOuter, "holes " + std::to_string(g - 1) + " and " +
                                                     std::to_string(h - 1) + " are nested");
      }
    }
  }

  poly.outer = std::move(work[0]);
  poly.area = signed_area(poly.outer);
  poly.vertex_count = static_cast<int>(poly.outer.size());
  for (std::size_t h = 1; h < work.size(); ++h) {
    poly.area += signed_area(work[h]);
    poly.vertex_count += static_cast<int>(work[h].size());
    poly.holes.push_back(std::move(work[h]));
  }
  if (poly.area <= tol.eps_area) {
    throw Error(ErrorCode::DegenerateArea, "region area is not positive");
  }
  return poly;
}

std::optional<std::pair<int, int>> is_kite(const std::array<Point, 4>& q, bool allow_nonconvex,
                                           double eps_dist) {
  if (segments_intersect(q[0], q[1], q[2], q[3]) || segments_intersect(q[1], q[2], q[3], q[0])) {
    throw Error(ErrorCode::NotSimple, "quadrilateral is self-intersecting");
  }
  if (!allow_nonconvex) {
    int sign = 0;
    for (int i = 0; i < 4; ++i) {
      const double c = cross(q[(i + 1) % 4] - q[i], q[(i + 2) % 4] - q[(i + 1) % 4]);
      const double scale = distance(q[(i + 1) % 4], q[i]) * distance(q[(i + 2) % 4], q[(i + 1) % 4]);
      if (std::abs(c) <= eps_dist * std::max(scale, eps_dist)) continue;
      const int s = c > 0 ? 1 : -1;
      if (sign != 0 && s != sign) return std::nullopt;
      sign = s;
    }
  }
  for (int a = 0; a < 2; ++a) {
    const Point p = q[a];
    const Point r = q[a + 2];
    const Point w1 = q[a + 1];
    const Point w2 = q[(a + 3) % 4];
    if (std::abs(distance(p, w1) - distance(p, w2)) <= eps_dist &&
        std::abs(distance(r, w1) - distance(r, w2)) <= eps_dist) {
      return std::make_pair(a, a + 2);
    }
  }
  return std::nullopt;
}

}  // namespace kitefold
