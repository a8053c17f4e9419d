#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "kitefold/kite_mesh.hpp"

namespace kitefold {

enum class PieceKind { Rhombus, HalfKite, Kite, Dart, Triangle };

std::string_view piece_kind_name(PieceKind kind);
/// Throws ParseError for unknown names.
PieceKind piece_kind_from_name(std::string_view name);

/// One link of a hinged chain. The piece is mirror symmetric about the
/// segment axis_start -> axis_end; consecutive pieces meet where one's
/// axis_end is the next one's axis_start. Hinge slots index into `polygon`,
/// or are -1 for a free chain end whose axis point is not a vertex.
struct SmallPiece {
  int id = -1;
  PieceKind kind = PieceKind::Rhombus;
  int parent = -1;  // large kite id, or the index of the piece it was split from
  std::vector<Point> polygon;
  int entry_slot = -1;
  int exit_slot = -1;
  Point axis_start;
  Point axis_end;

  double area() const;
  double hinge_distance() const { return distance(axis_start, axis_end); }
  /// The piece with axis_start at the origin and axis_end on the positive
  /// x-axis.
  std::vector<Point> local_frame() const;
};

struct DualTree {
  int root = -1;
  int root_side = -1;
  Point root_port;
  /// Tree edges as (parent, child) in discovery order.
  std::vector<std::pair<int, int>> edges;
  std::vector<int> parent;

  bool contains(int a, int b) const;
};

struct HingedChain {
  std::vector<SmallPiece> pieces;
  /// joints[i] is shared by pieces i and i + 1.
  std::vector<Point> joints;
  std::vector<double> fold_angles;
  double total_area = 0.0;
  /// Where the chain was opened; both ends sit here for a traced chain.
  Point open_point;
};

/// Pieces at vertices 0..3 of the kite. Piece j is (m_{j-1}, v_j, m_j, x)
/// with m_i the midpoint of side i and x the diagonal intersection; its
/// hinge slots are vertices 0 and 2.
std::array<SmallPiece, 4> subdivide_large_kite(const LargeKite& kite, const ToleranceConfig& tol = {});

DualTree spanning_tree(const KiteMesh& mesh);

HingedChain trace_chain(const KiteMesh& mesh, const DualTree& tree, const ToleranceConfig& tol = {});

struct ChainReport {
  double max_joint_gap = 0.0;       // in-situ distance between consecutive axis ends
  double max_symmetry_error = 0.0;  // reflection of each piece across its axis vs itself
  double area_relative_error = 0.0; // vs total_area
  bool hinge_slots_on_axis = true;
  bool pieces_are_kites = true;     // every quadrilateral passes is_kite (darts allowed)
};

ChainReport check_chain(const HingedChain& chain, const ToleranceConfig& tol = {});

}  // namespace kitefold
