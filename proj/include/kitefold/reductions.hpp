#pragma once

#include <array>
#include <utility>
#include <vector>

#include "kitefold/hinge_chain.hpp"

namespace kitefold {

/// Refined chains reuse the chain piece type; kind is Kite, Dart or
/// Triangle.
using RefinedPiece = SmallPiece;

struct PieceSplit {
  RefinedPiece first;   // from the entry end, area a
  RefinedPiece second;  // to the exit end
  /// The cut point is on the wing line: the first piece is a triangle in
  /// all but name.
  bool degenerate = false;
};

/// Cuts a kite or dart across its hinge axis so that the piece at the entry
/// end has area `a`. Throws AreaOutOfRange unless 0 < a < area.
PieceSplit split_piece_at_area(const RefinedPiece& piece, double a, const ToleranceConfig& tol = {});

/// Overlays the cumulative-area partitions of two equal-area chains and
/// splits pieces so that both chains end up with the same area sequence.
/// Cut positions closer than `tol.eps_area * area` are merged.
std::pair<HingedChain, HingedChain> common_refinement(const HingedChain& a, const HingedChain& b,
                                                      const ToleranceConfig& tol = {});

/// The two mirror triangles on either side of the hinge axis.
std::array<std::vector<Point>, 2> split_along_axis(const RefinedPiece& piece);

/// Three-piece chain for a scalene triangle: isosceles triangle, kite,
/// isosceles triangle, hinged at the midpoints of the two shorter sides.
HingedChain three_piece_triangle(const std::array<Point, 3>& triangle, const ToleranceConfig& tol = {});

/// The cut point on the longest side used by three_piece_triangle.
Point three_piece_cut_point(const std::array<Point, 3>& triangle, const ToleranceConfig& tol = {});

}  // namespace kitefold
