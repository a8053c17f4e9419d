#pragma once

#include <array>
#include <filesystem>
#include <string>

#include "kitefold/document.hpp"
#include "kitefold/fold_engine.hpp"
#include "kitefold/kite_mesh.hpp"

namespace kitefold {

struct PipelineOptions {
  ToleranceConfig tol;
};

/// Every intermediate result of one dissection, in the working frame
/// except for `document`.
struct PipelineArtifacts {
  Packing packing;
  KiteMesh mesh;
  DualTree tree;
  HingedChain chain;
  MirrorReport mirror;
  DissectionDocument document;
};

/// Packing, mesh, chain and fold angles. Errors carry the failing stage's
/// name; a failed mirror check throws VerificationFailed.
PipelineArtifacts run_pipeline_artifacts(const PolygonWithHoles& polygon, const PipelineOptions& options = {});
DissectionDocument run_pipeline(const PolygonWithHoles& polygon, const PipelineOptions& options = {});

/// The three-piece dissection of a scalene triangle as a document.
DissectionDocument triangle3_document(const PolygonWithHoles& triangle, const PipelineOptions& options = {});

/// Refines two equal-area dissections (areas compared in input units).
RefinementDocument refine_documents(const DissectionDocument& a, const DissectionDocument& b,
                                    const PipelineOptions& options = {});

/// verify_mirror in the document's working frame.
MirrorReport verify_document(const DissectionDocument& doc, const ToleranceConfig& tol = {});

/// Wraps a working-frame chain into a document in input coordinates.
DissectionDocument make_document(const PolygonWithHoles& polygon, const HingedChain& chain, int large_kites,
                                 int circles);

struct SvgOptions {
  double hinge_radius_fraction = 0.004;  // of the view diagonal
};

std::string render_svg(const HingedChain& chain, double t, const SvgOptions& options = {});
void write_svg(const DissectionDocument& doc, double t, const std::filesystem::path& path);

}  // namespace kitefold
