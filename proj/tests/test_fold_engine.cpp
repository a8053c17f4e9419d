#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fixtures.hpp"
#include "kitefold/fold_engine.hpp"
#include "kitefold/pipeline.hpp"
#include "kitefold/reductions.hpp"

using namespace kitefold;

namespace {

HingedChain pipeline_chain(const std::vector<Ring>& rings) {
  return run_pipeline_artifacts(validate_polygon(rings)).chain;
}

double axis_angle(const HingedChain& chain, const ChainConfiguration& config, std::size_t i) {
  const auto& p = chain.pieces[i];
  const Point a = apply_motion(config.poses[i], {0, 0});
  const Point b = apply_motion(config.poses[i], {p.hinge_distance(), 0});
  return std::atan2(b.y - a.y, b.x - a.x);
}

}  // namespace

TEST_CASE("fold angles") {
  HingedChain c;
  c.pieces.push_back(fixtures::kite_piece({{0, 0}, {0.5, 0.25}, {1, 0}, {0.5, -0.25}}));
  c.pieces.push_back(fixtures::kite_piece({{1, 0}, {1.25, 0.5}, {1, 1}, {0.75, 0.5}}));
  auto angles = compute_fold_angles(c);
  REQUIRE(angles.size() == 1);
  CHECK(std::abs(angles[0]) == doctest::Approx(std::numbers::pi / 2));

  c.pieces[1] = fixtures::kite_piece({{1, 0}, {0.5, -0.25}, {0, 0}, {0.5, 0.25}});
  angles = compute_fold_angles(c);
  CHECK(angles[0] == doctest::Approx(std::numbers::pi));

  const auto refined = common_refinement(fixtures::rhombus_chain({3}), fixtures::rhombus_chain({1, 1, 1})).first;
  for (double a : refined.fold_angles) CHECK(std::abs(a) <= 1e-12);
}

TEST_CASE("configure") {
  const auto chain = pipeline_chain(fixtures::triangle_345());
  const auto at0 = configure(chain, 0.0);
  for (std::size_t i = 0; i < chain.pieces.size(); ++i) {
    const auto poly = posed_polygon(chain, at0, i);
    for (std::size_t k = 0; k < poly.size(); ++k) CHECK(distance(poly[k], chain.pieces[i].polygon[k]) <= 1e-12);
  }

  const auto half = configure(chain, 0.5);
  double span = 0.0;
  for (const auto& p : chain.pieces) span += p.hinge_distance();
  const Point start = apply_motion(half.poses.front(), {0, 0});
  const Point end = apply_motion(half.poses.back(), {chain.pieces.back().hinge_distance(), 0});
  CHECK(distance(start, end) == doctest::Approx(span).epsilon(1e-12));
  for (std::size_t i = 1; i < chain.pieces.size(); ++i) {
    CHECK(std::abs(wrap_angle(axis_angle(chain, half, i) - axis_angle(chain, half, 0))) <= 1e-9);
  }

  for (double t : {-0.1, 1.1, std::nan("")}) CHECK_THROWS_AS(configure(chain, t), Error);
}

TEST_CASE("configurations at t and 1 - t are mirror images") {
  const auto chain = pipeline_chain(fixtures::concave_hexagon());
  const auto& p0 = chain.pieces.front();
  const Point u = normalized(p0.axis_end - p0.axis_start);
  auto reflect = [&](Point p) {
    const Point d = p - p0.axis_start;
    return p0.axis_start + (2 * dot(d, u)) * u - d;
  };
  for (double t : {0.0, 0.2, 0.35}) {
    const auto a = posed_polygons(chain, configure(chain, t));
    const auto b = posed_polygons(chain, configure(chain, 1 - t));
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (const Point& p : a[i]) {
        double best = 1e300;
        for (const Point& q : b[i]) best = std::min(best, distance(reflect(p), q));
        worst = std::max(worst, best);
      }
    }
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("verify_mirror") {
  HingedChain one;
  one.pieces.push_back(fixtures::kite_piece({{0, 0}, {0.5, 0.25}, {1, 0}, {0.5, -0.25}}));
  const auto single = verify_mirror(one);
  CHECK(single.ok);
  CHECK(single.max_deviation <= 1e-15);

  auto chain = pipeline_chain(fixtures::triangle_345());
  const auto r = verify_mirror(chain);
  CHECK(r.ok);
  CHECK(r.max_deviation <= 1e-6);

  chain.fold_angles[chain.fold_angles.size() / 2] += 1e-3;
  CHECK_FALSE(verify_mirror(chain).ok);

  const auto three = three_piece_triangle({Point{0, 0}, {4, 0}, {0, 3}});
  CHECK(verify_mirror(three).ok);
}

TEST_CASE("chain contiguity over the suite") {
  for (const auto& [name, rings] : fixtures::suite()) {
    CAPTURE(name);
    const auto chain = pipeline_chain(rings);
    for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) CHECK(max_joint_gap(chain, configure(chain, t)) <= 1e-9);
  }
}

TEST_CASE("unfolded overlap check") {
  const auto convex = pipeline_chain(fixtures::square_with_hole());
  const auto slab = unfolded_overlap_check(convex);
  CHECK(slab.disjoint);
  CHECK(slab.slab_argument);

  const auto tri = run_pipeline(validate_polygon(fixtures::triangle_345())).chain;
  const auto sq = run_pipeline(validate_polygon(fixtures::square(std::sqrt(6.0)))).chain;
  const auto refined = common_refinement(tri, sq).first;
  bool has_dart = false;
  for (const auto& p : refined.pieces) has_dart = has_dart || p.kind == PieceKind::Dart;
  CHECK(has_dart);
  const auto sampled = unfolded_overlap_check(refined, {}, 20000);
  CHECK(sampled.disjoint);

  // A dart whose wings reach past its axis end into the next piece.
  HingedChain bad;
  bad.pieces.push_back(fixtures::kite_piece({{0, 0}, {2, -1}, {1, 0}, {2, 1}}, PieceKind::Dart));
  bad.pieces.push_back(fixtures::kite_piece({{1, 0}, {2, -1.5}, {3, 0}, {2, 1.5}}));
  bad.fold_angles = compute_fold_angles(bad);
  const auto overlap = unfolded_overlap_check(bad);
  CHECK_FALSE(overlap.disjoint);
  CHECK_FALSE(overlap.slab_argument);
  CHECK(overlap.violations > 0);
}
