#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "kitefold/fold_engine.hpp"
#include "kitefold/reductions.hpp"

using namespace kitefold;

namespace {

std::vector<double> areas(const HingedChain& c) {
  std::vector<double> out;
  for (const auto& p : c.pieces) out.push_back(p.area());
  return out;
}

void check_areas(const HingedChain& c, const std::vector<double>& expected) {
  const auto got = areas(c);
  REQUIRE(got.size() == expected.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(expected[i]).epsilon(1e-12));
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::VerificationFailed;
}

const auto kParent = fixtures::kite_piece({{0, 0}, {1, 1}, {3, 0}, {1, -1}});

}  // namespace

TEST_CASE("split_piece_at_area") {
  const auto s = split_piece_at_area(kParent, 0.75);
  CHECK(s.first.polygon == std::vector<Point>{{0, 0}, {1, 1}, {0.75, 0}, {1, -1}});
  CHECK(s.second.polygon == std::vector<Point>{{0.75, 0}, {1, 1}, {3, 0}, {1, -1}});
  CHECK(s.first.kind == PieceKind::Dart);
  CHECK(s.second.kind == PieceKind::Kite);
  CHECK(s.first.area() == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(s.second.area() == doctest::Approx(2.25).epsilon(1e-12));
  CHECK_FALSE(s.degenerate);
  CHECK(s.first.axis_end == s.second.axis_start);
  CHECK(is_kite({s.first.polygon[0], s.first.polygon[1], s.first.polygon[2], s.first.polygon[3]}, true, 1e-9));

  const auto rhombus = fixtures::kite_piece({{0, 0}, {1, 0.5}, {2, 0}, {1, -0.5}});
  const auto half = split_piece_at_area(rhombus, rhombus.area() / 2);
  CHECK(half.first.axis_end == Point{1, 0});
  CHECK(half.first.area() == doctest::Approx(half.second.area()));

  CHECK(split_piece_at_area(kParent, 1.0).degenerate);
  CHECK(code_of([] { split_piece_at_area(kParent, 3.0); }) == ErrorCode::AreaOutOfRange);
  CHECK(code_of([] { split_piece_at_area(kParent, 0.0); }) == ErrorCode::AreaOutOfRange);
}

TEST_CASE("common_refinement") {
  SUBCASE("[2,1] vs [1,2]") {
    const auto [a, b] = common_refinement(fixtures::rhombus_chain({2, 1}), fixtures::rhombus_chain({1, 2}));
    check_areas(a, {1, 1, 1});
    check_areas(b, {1, 1, 1});
  }
  SUBCASE("identical chains") {
    const auto c = fixtures::rhombus_chain({1.5, 0.5, 2});
    const auto [a, b] = common_refinement(c, c);
    REQUIRE(a.pieces.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(a.pieces[i].polygon == c.pieces[i].polygon);
      CHECK(b.pieces[i].polygon == c.pieces[i].polygon);
    }
  }
  SUBCASE("[3] vs [1,1,1]") {
    const auto [a, b] = common_refinement(fixtures::rhombus_chain({3}), fixtures::rhombus_chain({1, 1, 1}));
    check_areas(a, {1, 1, 1});
    check_areas(b, {1, 1, 1});
    for (double t : a.fold_angles) CHECK(std::abs(t) <= 1e-12);
  }
  SUBCASE("unequal areas") {
    CHECK(code_of([] { common_refinement(fixtures::rhombus_chain({3}), fixtures::rhombus_chain({1, 1})); }) ==
          ErrorCode::AreaMismatch);
  }
  SUBCASE("properties") {
    const auto ca = fixtures::rhombus_chain({0.7, 1.3, 0.4, 1.6});
    const auto cb = fixtures::rhombus_chain({1.1, 0.2, 2.0, 0.7});
    const auto [a, b] = common_refinement(ca, cb);
    CHECK(a.pieces.size() <= ca.pieces.size() + cb.pieces.size() - 1);
    REQUIRE(a.pieces.size() == b.pieces.size());
    for (std::size_t i = 0; i < a.pieces.size(); ++i) {
      CHECK(a.pieces[i].area() == doctest::Approx(b.pieces[i].area()).epsilon(1e-9));
    }
    for (const auto* c : {&a, &b}) {
      const auto r = check_chain(*c);
      CHECK(r.max_joint_gap <= 1e-12);
      CHECK(r.max_symmetry_error <= 1e-12);
      CHECK(r.pieces_are_kites);
      CHECK(verify_mirror(*c).ok);
    }
  }
}

TEST_CASE("split_along_axis") {
  const auto t = split_along_axis(kParent);
  CHECK(t[0] == std::vector<Point>{{0, 0}, {1, 1}, {3, 0}});
  CHECK(t[1] == std::vector<Point>{{0, 0}, {3, 0}, {1, -1}});

  const auto dart = split_piece_at_area(kParent, 0.75).first;
  const auto d = split_along_axis(dart);
  CHECK(std::abs(signed_area(d[0])) == doctest::Approx(0.375));
  CHECK(std::abs(signed_area(d[1])) == doctest::Approx(0.375));
}

TEST_CASE("three_piece_triangle") {
  const std::array<Point, 3> tri{Point{0, 0}, {4, 0}, {0, 3}};
  const Point p = three_piece_cut_point(tri);
  CHECK(distance(p, {1.44, 1.92}) <= 1e-9);

  const auto chain = three_piece_triangle(tri);
  REQUIRE(chain.pieces.size() == 3);
  CHECK(chain.pieces[0].kind == PieceKind::Triangle);
  CHECK(chain.pieces[1].kind == PieceKind::Kite);
  CHECK(chain.pieces[2].kind == PieceKind::Triangle);
  const auto& k = chain.pieces[1].polygon;
  CHECK(is_kite({k[0], k[1], k[2], k[3]}, false, 1e-9));
  for (const auto& q : {chain.pieces[0].polygon, chain.pieces[2].polygon}) {
    // Isosceles with the apex at the hinge (slot 0).
    CHECK(std::abs(distance(q[0], q[1]) - distance(q[0], q[2])) <= 1e-9);
  }
  CHECK(chain.total_area == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(verify_mirror(chain).ok);
  CHECK(max_joint_gap(chain, configure(chain, 0.5)) <= 1e-12);

  const std::array<Point, 3> equilateral{Point{0, 0}, {2, 0}, {1, std::sqrt(3.0)}};
  CHECK(code_of([&] { three_piece_triangle(equilateral); }) == ErrorCode::NotScalene);
  const std::array<Point, 3> isosceles{Point{0, 0}, {2, 0}, {1, 3}};
  CHECK(code_of([&] { three_piece_triangle(isosceles); }) == ErrorCode::NotScalene);
}
