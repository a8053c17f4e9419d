#pragma once

#include <array>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "kitefold/circle_pack.hpp"

namespace kitefold {

/// A mesh cell. Vertices are counterclockwise with the symmetry axis
/// between vertices 0 and 2; vertex 0 is the axis end with the smaller
/// point id. Side i runs from vertex i to vertex i + 1.
struct LargeKite {
  int id = -1;
  std::array<int, 4> point_ids{};
  std::array<Point, 4> vertices{};
  std::array<Point, 4> edge_midpoints{};
  int gap_id = -1;
  /// Circle id for kites around a circle center, polygon vertex id for
  /// kites at a polygon corner.
  int source = -1;
  bool source_is_vertex = false;
  /// Neighbouring kite across side i and that kite's matching side, or -1
  /// when side i lies on the boundary.
  std::array<int, 4> neighbor{-1, -1, -1, -1};
  std::array<int, 4> neighbor_side{-1, -1, -1, -1};
  /// Boundary ring that side i lies on (0 = outer), or -1.
  std::array<int, 4> boundary_ring{-1, -1, -1, -1};

  double area() const;
};

/// Point registry shared by all kites of a mesh, so that coincident kite
/// vertices are literally the same stored coordinates.
class MeshPoints {
 public:
  explicit MeshPoints(const Packing& packing);

  int vertex(int vertex_id);
  int center(int circle_id);
  int tangency(int tangency_id);
  int add(Point p, std::vector<int> edges = {});

  Point at(int id) const { return points_[static_cast<std::size_t>(id)]; }
  const std::vector<int>& edges_of(int id) const { return edges_[static_cast<std::size_t>(id)]; }
  const std::vector<Point>& points() const { return points_; }

 private:
  const Packing* packing_;
  std::vector<Point> points_;
  std::vector<std::vector<int>> edges_;
  std::vector<int> vertex_ids_;
  std::vector<int> center_ids_;
  std::vector<int> tangency_ids_;
  std::vector<BoundaryEdge> boundary_;
};

struct KiteMesh {
  PolygonWithHoles polygon;
  std::vector<Point> points;
  std::vector<LargeKite> kites;
  /// Shared side (ordered point id pair) -> the two kites using it.
  std::map<std::pair<int, int>, std::pair<int, int>> adjacency;
  /// Sorted neighbour lists, one per kite.
  std::vector<std::vector<int>> dual_graph;

  /// Circles inserted while splitting bad gaps (ids continue the packing's).
  std::vector<Circle> added_circles;
  int bad_gap_count = 0;
  int good_four_gap_count = 0;
  double max_cocircularity_residual = 0.0;
};

struct FourGapFill {
  std::vector<LargeKite> kites;
  bool bad = false;
  std::optional<Circle> split_circle;
  double cocircularity_residual = 0.0;
};

/// Gap fills. Kites come back canonicalized but without ids or
/// neighbour information; build_mesh assigns those.
std::vector<LargeKite> fill_three_gap(const Packing& packing, const Gap& gap, MeshPoints& points,
                                      const ToleranceConfig& tol = {});
FourGapFill fill_four_gap(const Packing& packing, const Gap& gap, MeshPoints& points,
                          const ToleranceConfig& tol = {}, int next_circle_id = -1);
std::vector<LargeKite> fill_boundary_like_gap(const Packing& packing, const Gap& gap, MeshPoints& points,
                                              const ToleranceConfig& tol = {});

KiteMesh build_mesh(const Packing& packing, const ToleranceConfig& tol = {});

/// Deterministic Monte Carlo check that sample points of the polygon fall in
/// exactly one cell. Points within `tolerance` of a cell side are skipped.
/// Returns the number of violations.
int tiling_violations(const PolygonWithHoles& polygon, const std::vector<std::vector<Point>>& cells,
                      int samples, double tolerance, unsigned seed = 12345);

}  // namespace kitefold
