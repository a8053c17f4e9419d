#pragma once

#include <vector>

#include "kitefold/hinge_chain.hpp"

namespace kitefold {

/// Signed angle in (-pi, pi] from each piece's axis to the next one's, in
/// the folded (in-situ) state.
std::vector<double> compute_fold_angles(const HingedChain& chain, const ToleranceConfig& tol = {});

struct ChainConfiguration {
  double t = 0.0;
  /// Maps each piece's local frame into the plane.
  std::vector<RigidMotion> poses;
};

/// Joint angles (1 - 2t) * theta_i, with piece 0 held at its in-situ pose.
ChainConfiguration configure(const HingedChain& chain, double t);

std::vector<Point> posed_polygon(const HingedChain& chain, const ChainConfiguration& config, std::size_t piece);
std::vector<std::vector<Point>> posed_polygons(const HingedChain& chain, const ChainConfiguration& config);

/// Largest distance between piece i's exit and piece i + 1's entry.
double max_joint_gap(const HingedChain& chain, const ChainConfiguration& config);

struct MirrorReport {
  bool ok = false;
  double max_deviation = 0.0;
};

/// Fits the reflection taking piece 0 in situ onto piece 0 at t = 1 and
/// checks that it takes every in-situ piece onto its t = 1 placement.
MirrorReport verify_mirror(const HingedChain& chain, const ToleranceConfig& tol = {});

struct OverlapReport {
  bool disjoint = true;
  /// True when every piece projects inside its own axis span, which makes
  /// disjointness immediate; otherwise `samples` points were tested.
  bool slab_argument = false;
  int samples = 0;
  int violations = 0;
};

OverlapReport unfolded_overlap_check(const HingedChain& chain, const ToleranceConfig& tol = {}, int samples = 20000,
                                     unsigned seed = 12345);

}  // namespace kitefold
