#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "kitefold/hinge_chain.hpp"
#include "kitefold/kite_mesh.hpp"

using namespace kitefold;

namespace {

bool near(Point a, Point b, double eps = 1e-9) { return distance(a, b) <= eps; }

const Gap& find_gap(const Packing& p, GapKind kind, int sides) {
  for (const auto& g : p.gaps) {
    if (g.kind == kind && g.side_count() == sides) return g;
  }
  FAIL("no such gap");
  return p.gaps.front();
}

bool has_vertex(const LargeKite& k, Point p, const Normalization& n) {
  return std::any_of(k.vertices.begin(), k.vertices.end(), [&](Point v) { return near(n.to_input(v), p); });
}

// The one vertex shared by every kite in the list.
std::optional<Point> common_vertex(const std::vector<LargeKite>& kites) {
  for (const Point& v : kites.front().vertices) {
    bool all = true;
    for (const auto& k : kites) {
      all = all && std::any_of(k.vertices.begin(), k.vertices.end(), [&](Point w) { return near(v, w, 1e-12); });
    }
    if (all) return v;
  }
  return std::nullopt;
}

std::vector<std::vector<Point>> cells_of(const std::vector<LargeKite>& kites) {
  std::vector<std::vector<Point>> out;
  for (const auto& k : kites) out.emplace_back(k.vertices.begin(), k.vertices.end());
  return out;
}

}  // namespace

TEST_CASE("fill_three_gap") {
  const double h = std::sqrt(3.0);
  const auto p = fixtures::synthetic_packing({{{-3, -3}, {5, -3}, {5, 5}, {-3, 5}}},
                                             {{{0, 0}, 1.0}, {{2, 0}, 1.0}, {{1, h}, 1.0}});
  const Gap* gap = nullptr;
  for (const auto& g : p.gaps) {
    if (fixtures::all_arcs(g)) gap = &g;
  }
  REQUIRE(gap);
  REQUIRE(gap->side_count() == 3);
  MeshPoints pts(p);
  const auto kites = fill_three_gap(p, *gap, pts);
  REQUIRE(kites.size() == 3);
  const auto& n = p.polygon.normalization;
  const auto g = common_vertex(kites);
  REQUIRE(g);
  CHECK(near(n.to_input(*g), {1, h / 3}));
  for (const auto& k : kites) {
    CHECK(is_kite(k.vertices, false, 1e-9));
    CHECK((has_vertex(k, {1, 0}, n) || has_vertex(k, {1.5, h / 2}, n)));
  }
}

TEST_CASE("fill_four_gap on the side-4 square") {
  const auto p = pack_polygon(validate_polygon(fixtures::square(4)));
  const auto& gap = find_gap(p, GapKind::Interior, 4);
  MeshPoints pts(p);
  const auto fill = fill_four_gap(p, gap, pts);
  CHECK_FALSE(fill.bad);
  REQUIRE(fill.kites.size() == 4);
  CHECK(fill.cocircularity_residual <= 1e-9);
  const auto& n = p.polygon.normalization;
  const auto g = common_vertex(fill.kites);
  REQUIRE(g);
  CHECK(near(n.to_input(*g), {2, 2}));
  for (const auto& k : fill.kites) {
    CHECK(is_kite(k.vertices, false, 1e-9));
    CHECK(k.area() * n.scale * n.scale == doctest::Approx(1.0).epsilon(1e-12));
  }
  bool found = false;
  for (const auto& k : fill.kites) {
    found = found || (has_vertex(k, {1, 1}, n) && has_vertex(k, {2, 1}, n) && has_vertex(k, {1, 2}, n));
  }
  CHECK(found);
}

TEST_CASE("fill_four_gap on a bad gap") {
  const auto p = fixtures::synthetic_packing(fixtures::bad_gap_frame(), fixtures::bad_gap_circles());
  const Gap* gap = nullptr;
  for (const auto& g : p.gaps) {
    if (fixtures::all_arcs(g)) gap = &g;
  }
  REQUIRE(gap);
  REQUIRE(gap->side_count() == 4);
  MeshPoints pts(p);
  const auto fill = fill_four_gap(p, *gap, pts, {}, static_cast<int>(p.circles.size()));
  CHECK(fill.bad);
  REQUIRE(fill.split_circle);
  REQUIRE(fill.kites.size() == 7);
  for (const auto& k : fill.kites) CHECK(is_kite(k.vertices, false, 1e-9));

  // The kites tile the quadrilateral of circle centers.
  PolygonWithHoles quad;
  for (const auto& c : p.circles) quad.outer.push_back(c.center);
  if (signed_area(quad.outer) < 0) std::reverse(quad.outer.begin(), quad.outer.end());
  quad.area = signed_area(quad.outer);
  quad.vertex_count = 4;
  double total = 0.0;
  for (const auto& k : fill.kites) total += k.area();
  CHECK(std::abs(total - quad.area) <= 1e-9 * quad.area);
  CHECK(tiling_violations(quad, cells_of(fill.kites), 10000, 1e-6) == 0);
}

TEST_CASE("fill_boundary_like_gap") {
  SUBCASE("corner gap") {
    const auto p = fixtures::synthetic_packing(fixtures::square(2), {{{1, 1}, 1.0}});
    const auto& n = p.polygon.normalization;
    int checked = 0;
    for (const auto& g : p.gaps) {
      MeshPoints pts(p);
      const auto kites = fill_boundary_like_gap(p, g, pts);
      REQUIRE(kites.size() == 1);
      CHECK(is_kite(kites[0].vertices, false, 1e-9));
      if (has_vertex(kites[0], {0, 0}, n)) {
        ++checked;
        CHECK(has_vertex(kites[0], {1, 0}, n));
        CHECK(has_vertex(kites[0], {1, 1}, n));
        CHECK(has_vertex(kites[0], {0, 1}, n));
      }
    }
    CHECK(checked == 1);
  }
  SUBCASE("boundary gap between two circles") {
    const auto p = fixtures::synthetic_packing({{{-3, 0}, {3, 0}, {3, 4}, {-3, 4}}},
                                               {{{-1, 1}, 1.0}, {{1, 1}, 1.0}});
    const auto& n = p.polygon.normalization;
    const Gap* gap = nullptr;
    for (const auto& g : p.gaps) {
      if (g.kind == GapKind::Boundary && g.side_count() == 3) gap = &g;
    }
    REQUIRE(gap);
    MeshPoints pts(p);
    const auto kites = fill_boundary_like_gap(p, *gap, pts);
    REQUIRE(kites.size() == 2);
    for (const auto& k : kites) {
      CHECK(is_kite(k.vertices, false, 1e-9));
      CHECK(has_vertex(k, {0, 1}, n));
      CHECK(has_vertex(k, {0, 0}, n));
      CHECK(k.area() * n.scale * n.scale == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK((has_vertex(kites[0], {-1, 0}, n) || has_vertex(kites[1], {-1, 0}, n)));
    CHECK((has_vertex(kites[0], {1, 0}, n) || has_vertex(kites[1], {1, 0}, n)));
  }
  SUBCASE("reflex gap of the L") {
    const auto p = pack_polygon(validate_polygon(fixtures::l_polyomino()));
    const auto& n = p.polygon.normalization;
    const auto& gap = find_gap(p, GapKind::Reflex, 4);
    MeshPoints pts(p);
    const auto kites = fill_boundary_like_gap(p, gap, pts);
    REQUIRE(kites.size() == 2);
    const double t = 0.75 + 0.125 * std::tan(std::numbers::pi / 8);
    for (const auto& k : kites) {
      CHECK(is_kite(k.vertices, false, 1e-9));
      CHECK(has_vertex(k, {1, 1}, n));
      CHECK(has_vertex(k, {t + 0.125, t + 0.125}, n));
    }
  }
}

TEST_CASE("build_mesh examples") {
  SUBCASE("triangle") {
    const auto mesh = build_mesh(pack_polygon(validate_polygon(fixtures::triangle_345())));
    REQUIRE(mesh.kites.size() == 3);
    for (const auto& nbrs : mesh.dual_graph) CHECK(nbrs.size() == 2);
  }
  SUBCASE("side-4 square") {
    const auto mesh = build_mesh(pack_polygon(validate_polygon(fixtures::square(4))));
    REQUIRE(mesh.kites.size() == 16);
    const double s = mesh.polygon.normalization.scale;
    for (const auto& k : mesh.kites) {
      CHECK(k.area() * s * s == doctest::Approx(1.0).epsilon(1e-12));
      for (int i = 0; i < 4; ++i) CHECK(distance(k.vertices[i], k.vertices[(i + 1) % 4]) * s == doctest::Approx(1.0));
    }
    CHECK(spanning_tree(mesh).edges.size() == 15);
  }
}

TEST_CASE("mesh invariants over the suite") {
  for (const auto& [name, rings] : fixtures::suite()) {
    CAPTURE(name);
    const auto poly = validate_polygon(rings);
    const auto mesh = build_mesh(pack_polygon(poly));
    double total = 0.0;
    for (const auto& k : mesh.kites) {
      total += k.area();
      const auto axis = is_kite(k.vertices, false, 1e-9);
      REQUIRE(axis);
      CHECK(*axis == std::pair{0, 2});
      for (int s = 0; s < 4; ++s) {
        const int nb = k.neighbor[s];
        if (nb < 0) {
          CHECK(k.boundary_ring[s] >= 0);
          continue;
        }
        const auto& o = mesh.kites[static_cast<std::size_t>(nb)];
        const int os = k.neighbor_side[s];
        CHECK(o.neighbor[os] == k.id);
        CHECK(o.point_ids[os] == k.point_ids[(s + 1) % 4]);
        CHECK(o.point_ids[(os + 1) % 4] == k.point_ids[s]);
      }
    }
    CHECK(std::abs(total - poly.area) <= 1e-9 * poly.area);
    CHECK(mesh.max_cocircularity_residual <= 1e-9);
    CHECK(tiling_violations(poly, cells_of(mesh.kites), 10000, 1e-6) == 0);
  }
}
