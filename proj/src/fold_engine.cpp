#include "kitefold/fold_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

namespace kitefold {

namespace {

double axis_angle(const SmallPiece& p) {
  const Point d = p.axis_end - p.axis_start;
  return std::atan2(d.y, d.x);
}

double min_vertex_distance(Point p, const std::vector<Point>& poly) {
  double best = std::numeric_limits<double>::infinity();
  for (const Point& q : poly) best = std::min(best, distance(p, q));
  return best;
}

bool near_boundary(Point p, const std::vector<Point>& poly, double margin) {
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (point_segment_distance(p, poly[i], poly[(i + 1) % poly.size()]) <= margin) return true;
  }
  return false;
}

}  // namespace

std::vector<double> compute_fold_angles(const HingedChain& chain, const ToleranceConfig& tol) {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < chain.pieces.size(); ++i) {
    double theta = wrap_angle(axis_angle(chain.pieces[i + 1]) - axis_angle(chain.pieces[i]));
    if (std::abs(theta) > std::numbers::pi - tol.eps_angle) theta = std::numbers::pi;
    out.push_back(theta);
  }
  return out;
}

ChainConfiguration configure(const HingedChain& chain, double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw Error(ErrorCode::ParameterOutOfRange, "fold parameter " + std::to_string(t) + " is outside [0, 1]");
  }
  ChainConfiguration config;
  config.t = t;
  if (chain.pieces.empty()) return config;
  if (chain.fold_angles.size() + 1 != chain.pieces.size()) {
    throw Error(ErrorCode::ParameterOutOfRange, "chain has " + std::to_string(chain.pieces.size()) + " pieces but " +
                                                    std::to_string(chain.fold_angles.size()) + " fold angles");
  }
  const double factor = 1.0 - 2.0 * t;
  double beta = axis_angle(chain.pieces.front());
  Point at = chain.pieces.front().axis_start;
  for (std::size_t i = 0; i < chain.pieces.size(); ++i) {
    config.poses.push_back(RigidMotion{beta, at, false});
    if (i + 1 == chain.pieces.size()) break;
    const double d = chain.pieces[i].hinge_distance();
    at = at + d * Point{std::cos(beta), std::sin(beta)};
    beta += factor * chain.fold_angles[i];
  }
  return config;
}

std::vector<Point> posed_polygon(const HingedChain& chain, const ChainConfiguration& config, std::size_t piece) {
  std::vector<Point> out = chain.pieces[piece].local_frame();
  for (Point& p : out) p = apply_motion(config.poses[piece], p);
  return out;
}

std::vector<std::vector<Point>> posed_polygons(const HingedChain& chain, const ChainConfiguration& config) {
  std::vector<std::vector<Point>> out;
  for (std::size_t i = 0; i < chain.pieces.size(); ++i) out.push_back(posed_polygon(chain, config, i));
  return out;
}

double max_joint_gap(const HingedChain& chain, const ChainConfiguration& config) {
  double gap = 0.0;
  for (std::size_t i = 0; i + 1 < chain.pieces.size(); ++i) {
    const Point end = apply_motion(config.poses[i], {chain.pieces[i].hinge_distance(), 0.0});
    const Point start = apply_motion(config.poses[i + 1], {0.0, 0.0});
    gap = std::max(gap, distance(end, start));
  }
  return gap;
}

MirrorReport verify_mirror(const HingedChain& chain, const ToleranceConfig& tol) {
  MirrorReport report;
  if (chain.pieces.empty()) {
    report.ok = true;
    return report;
  }
  const ChainConfiguration mirrored = configure(chain, 1.0);
  const SmallPiece& first = chain.pieces.front();
  const RigidMotion in_situ{axis_angle(first), first.axis_start, false};
  const RigidMotion flip{0.0, {}, true};
  const RigidMotion fit = compose(mirrored.poses.front(), compose(flip, inverse(in_situ)));
  for (std::size_t i = 0; i < chain.pieces.size(); ++i) {
    const std::vector<Point> target = posed_polygon(chain, mirrored, i);
    std::vector<Point> image;
    for (const Point& p : chain.pieces[i].polygon) image.push_back(apply_motion(fit, p));
    for (const Point& p : image) report.max_deviation = std::max(report.max_deviation, min_vertex_distance(p, target));
    for (const Point& p : target) report.max_deviation = std::max(report.max_deviation, min_vertex_distance(p, image));
  }
  report.ok = std::isfinite(report.max_deviation) && report.max_deviation <= tol.verify_tol;
  return report;
}

OverlapReport unfolded_overlap_check(const HingedChain& chain, const ToleranceConfig& tol, int samples,
                                     unsigned seed) {
  OverlapReport report;
  if (chain.pieces.size() < 2) {
    report.slab_argument = true;
    return report;
  }
  const ChainConfiguration flat = configure(chain, 0.5);
  const auto polys = posed_polygons(chain, flat);

  report.slab_argument = true;
  for (const auto& p : chain.pieces) {
    const double d = p.hinge_distance();
    for (const Point& q : p.local_frame()) {
      if (q.x < -tol.eps_dist || q.x > d + tol.eps_dist) report.slab_argument = false;
    }
  }
  if (report.slab_argument) return report;

  // Sample inside each piece and look for a second piece containing the
  // point. Pieces are consecutive along one line, so only pieces whose axis
  // spans overlap the sample need testing; the check is kept exhaustive
  // for simplicity.
  std::mt19937_64 rng(seed);
  const std::size_t n = polys.size();
  const int per_piece = std::max(1, samples / static_cast<int>(n));
  for (std::size_t i = 0; i < n; ++i) {
    Point lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    Point hi{-lo.x, -lo.y};
    for (const Point& p : polys[i]) {
      lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
      hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    }
    std::uniform_real_distribution<double> ux(lo.x, hi.x);
    std::uniform_real_distribution<double> uy(lo.y, hi.y);
    int taken = 0;
    for (int attempt = 0; taken < per_piece && attempt < 200 * per_piece; ++attempt) {
      const Point p{ux(rng), uy(rng)};
      if (!point_in_ring(p, polys[i]) || near_boundary(p, polys[i], tol.eps_dist)) continue;
      ++taken;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        if (point_in_ring(p, polys[j]) && !near_boundary(p, polys[j], tol.eps_dist)) {
          ++report.violations;
          break;
        }
      }
    }
    report.samples += taken;
  }
  report.disjoint = report.violations == 0;
  return report;
}

}  // namespace kitefold
