#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "kitefold/circle_pack.hpp"

using namespace kitefold;

namespace {

bool near(Point a, Point b, double eps) { return distance(a, b) <= eps; }

int count_role(const Packing& p, CircleRole role) {
  return static_cast<int>(std::count_if(p.circles.begin(), p.circles.end(), [&](const Circle& c) { return c.role == role; }));
}

int count_kind(const std::vector<Gap>& gaps, GapKind kind) {
  return static_cast<int>(std::count_if(gaps.begin(), gaps.end(), [&](const Gap& g) { return g.kind == kind; }));
}

}  // namespace

TEST_CASE("triangle incircle") {
  const auto tri = validate_polygon(fixtures::triangle_345());
  const auto c = detect_triangle_incircle(tri);
  REQUIRE(c);
  const auto& n = tri.normalization;
  CHECK(near(n.to_input(c->center), {1, 1}, 1e-12));
  CHECK(c->radius * n.scale == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_FALSE(detect_triangle_incircle(validate_polygon(fixtures::square(1))));
  CHECK_FALSE(detect_triangle_incircle(
      validate_polygon({{{0, 0}, {4, 0}, {0, 3}}, {{0.5, 0.5}, {1.0, 0.5}, {0.5, 1.0}}})));

  const auto packing = pack_polygon(tri);
  CHECK(packing.incircle_shortcut);
  CHECK(packing.circles.size() == 1);
}

TEST_CASE("reflex pairs") {
  CHECK(place_reflex_pairs(validate_polygon(fixtures::square(4))).empty());

  const auto l = validate_polygon(fixtures::l_polyomino());
  const auto pair = place_reflex_pairs(l);
  REQUIRE(pair.size() == 2);
  const auto& n = l.normalization;
  std::vector<Point> centers{n.to_input(pair[0].center), n.to_input(pair[1].center)};
  std::sort(centers.begin(), centers.end(), [](Point a, Point b) { return lex_less(b, a); });
  const double s = 1 + 0.25 * std::tan(std::numbers::pi / 8);  // 1.1036
  CHECK(near(centers[0], {s, 0.75}, 1e-9));
  CHECK(near(centers[1], {0.75, s}, 1e-9));
  for (const auto& c : pair) CHECK(c.radius * n.scale == doctest::Approx(0.25).epsilon(1e-12));
  const Point touch = n.to_input(midpoint(pair[0].center, pair[1].center));
  CHECK(near(touch, {0.75 + (s - 0.75) / 2, 0.75 + (s - 0.75) / 2}, 1e-9));
  CHECK(touch.x == doctest::Approx(0.9268).epsilon(1e-4));

  const auto holed = place_reflex_pairs(validate_polygon(fixtures::square_with_hole()));
  CHECK(holed.size() == 8);
}

TEST_CASE("connector radius") {
  const double r1 = 1.0, r2 = 2.25, span = 5.0;
  const double r3 = connector_radius(span, r1, r2);
  CHECK(std::sqrt(r3) == doctest::Approx(span / (2 * (std::sqrt(r1) + std::sqrt(r2)))));
  CHECK(2 * std::sqrt(r1 * r3) + 2 * std::sqrt(r3 * r2) == doctest::Approx(span));
}

TEST_CASE("boundary chain of the side-4 square") {
  const auto sq = validate_polygon(fixtures::square(4));
  const auto chain = place_boundary_chain(sq, {});
  REQUIRE(chain.size() == 4);
  for (const auto& c : chain) {
    CHECK(c.role == CircleRole::Corner);
    CHECK(c.radius * sq.normalization.scale == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("gap splitting") {
  const auto sq = pack_polygon(validate_polygon(fixtures::square(4)));
  CHECK(sq.circles.size() == 4);
  CHECK(count_role(sq, CircleRole::GapSplit) == 0);

  const auto pent = pack_polygon(validate_polygon(fixtures::regular_polygon(5)));
  CHECK(count_role(pent, CircleRole::GapSplit) == 1);
  std::vector<int> interior_sides;
  for (const auto& g : pent.gaps) {
    if (g.kind == GapKind::Interior) interior_sides.push_back(g.side_count());
  }
  // The corner circles and connectors enclose one 10-sided gap; the single
  // central circle cuts it into five 4-sided gaps.
  CHECK(interior_sides == std::vector<int>(5, 4));

  const auto tri = pack_polygon(validate_polygon(fixtures::triangle_345()));
  CHECK(count_kind(tri.gaps, GapKind::Interior) == 0);
}

TEST_CASE("extract_gaps") {
  SUBCASE("triangle with incircle") {
    const auto tri = pack_polygon(validate_polygon(fixtures::triangle_345()));
    REQUIRE(tri.gaps.size() == 3);
    for (const auto& g : tri.gaps) {
      CHECK(g.kind == GapKind::Corner);
      int arcs = 0, segments = 0;
      for (const auto& s : g.sides()) (s.kind == SideKind::Arc ? arcs : segments)++;
      CHECK(arcs == 1);
      CHECK(segments == 2);
    }
    std::vector<Point> touches;
    for (const auto& t : tri.tangencies) touches.push_back(tri.polygon.normalization.to_input(t.location));
    std::sort(touches.begin(), touches.end(), lex_less);
    REQUIRE(touches.size() == 3);
    CHECK(near(touches[0], {0, 1}, 1e-12));
    CHECK(near(touches[1], {1, 0}, 1e-12));
    CHECK(near(touches[2], {1.6, 1.8}, 1e-12));
  }
  SUBCASE("side-4 square") {
    const auto sq = pack_polygon(validate_polygon(fixtures::square(4)));
    CHECK(sq.gaps.size() == 9);
    CHECK(count_kind(sq.gaps, GapKind::Corner) == 4);
    CHECK(count_kind(sq.gaps, GapKind::Boundary) == 4);
    CHECK(count_kind(sq.gaps, GapKind::Interior) == 1);
  }
  SUBCASE("one circle inscribed in a square") {
    const auto p = fixtures::synthetic_packing(fixtures::square(2), {{{1, 1}, 1.0}});
    CHECK(p.gaps.size() == 4);
    CHECK(count_kind(p.gaps, GapKind::Corner) == 4);
  }
}

TEST_CASE("packing invariants over the suite") {
  for (const auto& [name, rings] : fixtures::suite()) {
    CAPTURE(name);
    const auto poly = validate_polygon(rings);
    const auto packing = pack_polygon(poly);
    const auto r = check_packing(packing);
    CHECK(r.max_containment_violation <= 1e-9);
    CHECK(r.max_overlap <= 1e-9);
    CHECK(r.max_tangency_residual <= 1e-9);
    CHECK(r.area_relative_error <= 1e-9);
    CHECK(r.min_gap_sides >= 3);
    CHECK(r.max_gap_sides <= 4);
    CHECK(r.reflex_gaps_four_sided);
    CHECK(r.four_sided_gaps_allowed);

    const auto again = pack_polygon(poly);
    REQUIRE(again.circles.size() == packing.circles.size());
    for (std::size_t i = 0; i < packing.circles.size(); ++i) {
      CHECK(again.circles[i].center == packing.circles[i].center);
      CHECK(again.circles[i].radius == packing.circles[i].radius);
    }
  }
}
