#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "kitefold/hinge_chain.hpp"

using namespace kitefold;

namespace {

LargeKite large_kite(std::array<Point, 4> v) {
  LargeKite k;
  k.id = 0;
  k.vertices = v;
  for (int i = 0; i < 4; ++i) {
    k.point_ids[i] = i;
    k.edge_midpoints[i] = midpoint(v[i], v[(i + 1) % 4]);
  }
  return k;
}

KiteMesh single_kite_mesh() {
  KiteMesh mesh;
  auto k = large_kite({Point{0, 0}, {0.5, -0.25}, {0.75, 0}, {0.5, 0.25}});
  k.boundary_ring = {0, 0, 0, 0};
  mesh.kites.push_back(k);
  mesh.dual_graph.emplace_back();
  mesh.polygon = validate_polygon({{k.vertices.begin(), k.vertices.end()}});
  return mesh;
}

double side(const std::vector<Point>& q, int i) { return distance(q[i], q[(i + 1) % q.size()]); }

bool same_polygon(const std::vector<Point>& a, const std::vector<Point>& b) {
  if (a.size() != b.size()) return false;
  for (const Point& p : a) {
    if (std::none_of(b.begin(), b.end(), [&](Point q) { return distance(p, q) < 1e-12; })) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("subdivide unit square") {
  const auto pieces = subdivide_large_kite(large_kite({Point{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
  double total = 0.0;
  for (const auto& p : pieces) {
    REQUIRE(p.polygon.size() == 4);
    for (int i = 0; i < 4; ++i) CHECK(side(p.polygon, i) == doctest::Approx(0.5));
    CHECK(p.polygon[p.entry_slot] == p.axis_start);
    CHECK(p.polygon[p.exit_slot] == p.axis_end);
    total += p.area();
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("subdivide a kite") {
  const auto pieces = subdivide_large_kite(large_kite({Point{0, 0}, {1, -1}, {3, 0}, {1, 1}}));
  CHECK(pieces[0].kind == PieceKind::Rhombus);
  CHECK(pieces[2].kind == PieceKind::Rhombus);
  CHECK(pieces[1].kind == PieceKind::HalfKite);
  CHECK(pieces[3].kind == PieceKind::HalfKite);
  for (int i = 0; i < 4; ++i) {
    CHECK(side(pieces[0].polygon, i) == doctest::Approx(std::sqrt(2.0) / 2));
    CHECK(side(pieces[2].polygon, i) == doctest::Approx(std::sqrt(5.0) / 2));
  }
  CHECK(same_polygon(pieces[3].polygon, {{0.5, 0.5}, {1, 1}, {2, 0.5}, {1, 0}}));
  for (const auto& p : pieces) CHECK(p.polygon[3] == Point{1, 0});
  double total = 0.0;
  for (const auto& p : pieces) total += p.area();
  CHECK(total == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("spanning tree") {
  const auto tri = build_mesh(pack_polygon(validate_polygon(fixtures::triangle_345())));
  CHECK(spanning_tree(tri).edges.size() == 2);
  const auto sq = build_mesh(pack_polygon(validate_polygon(fixtures::square(4))));
  CHECK(spanning_tree(sq).edges.size() == 15);
  const auto one = spanning_tree(single_kite_mesh());
  CHECK(one.root == 0);
  CHECK(one.edges.empty());
}

TEST_CASE("trace examples") {
  const auto tri = build_mesh(pack_polygon(validate_polygon(fixtures::triangle_345())));
  CHECK(trace_chain(tri, spanning_tree(tri)).pieces.size() == 12);
  const auto sq = build_mesh(pack_polygon(validate_polygon(fixtures::square(4))));
  CHECK(trace_chain(sq, spanning_tree(sq)).pieces.size() == 64);

  const auto mesh = single_kite_mesh();
  const auto tree = spanning_tree(mesh);
  const auto chain = trace_chain(mesh, tree);
  REQUIRE(chain.pieces.size() == 4);
  CHECK(chain.pieces.front().axis_start == tree.root_port);
  CHECK(chain.pieces.back().axis_end == tree.root_port);
}

TEST_CASE("chain invariants over the suite") {
  for (const auto& [name, rings] : fixtures::suite()) {
    CAPTURE(name);
    const auto poly = validate_polygon(rings);
    const auto mesh = build_mesh(pack_polygon(poly));
    const auto tree = spanning_tree(mesh);
    const auto chain = trace_chain(mesh, tree);
    REQUIRE(chain.pieces.size() == 4 * mesh.kites.size());
    CHECK(chain.pieces.front().axis_start == chain.open_point);
    CHECK(chain.pieces.back().axis_end == chain.open_point);

    const auto r = check_chain(chain);
    CHECK(r.max_joint_gap <= 1e-9);
    CHECK(r.max_symmetry_error <= 1e-9);
    CHECK(r.area_relative_error <= 1e-9);
    CHECK(r.hinge_slots_on_axis);
    CHECK(r.pieces_are_kites);

    std::set<std::pair<int, std::pair<double, double>>> seen;
    for (const auto& p : chain.pieces) seen.insert({p.parent, {p.polygon[1].x, p.polygon[1].y}});
    CHECK(seen.size() == chain.pieces.size());

    CHECK(std::abs(chain.total_area - poly.area) <= 1e-9 * poly.area);
    CHECK(tiling_violations(poly, fixtures::polygons_of(chain), 10000, 1e-6) == 0);

    const auto again = trace_chain(mesh, spanning_tree(mesh));
    REQUIRE(again.pieces.size() == chain.pieces.size());
    for (std::size_t i = 0; i < chain.pieces.size(); ++i) CHECK(again.pieces[i].polygon == chain.pieces[i].polygon);
  }
}
