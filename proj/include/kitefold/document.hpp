#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "kitefold/hinge_chain.hpp"

namespace kitefold {

struct DocumentStats {
  int piece_count = 0;
  int large_kite_count = 0;
  int circle_count = 0;
  double total_area = 0.0;

  friend bool operator==(const DocumentStats&, const DocumentStats&) = default;
};

/// A finished dissection in input coordinates. `polygon` holds the outer
/// ring followed by the holes, oriented as validated.
struct DissectionDocument {
  int schema_version = 1;
  Normalization normalization;
  std::vector<Ring> polygon;
  HingedChain chain;
  DocumentStats stats;
};

/// Output of `refine`: the two refined chains, each with its own polygon.
struct RefinementDocument {
  int schema_version = 1;
  std::vector<DissectionDocument> chains;
};

std::string serialize(const DissectionDocument& doc);
std::string serialize(const RefinementDocument& doc);

DissectionDocument parse_dissection(const std::string& text);
RefinementDocument parse_refinement(const std::string& text);
/// True when the text holds a refinement document rather than a dissection.
bool is_refinement_document(const std::string& text);

/// Parses {"outer": [[x, y], ...], "holes": [[[x, y], ...], ...]} and
/// validates it.
PolygonWithHoles parse_polygon(const std::string& text, const ToleranceConfig& tol = {});
PolygonWithHoles load_polygon(const std::filesystem::path& path, const ToleranceConfig& tol = {});

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

/// The chain mapped back into the working frame of `doc.normalization`.
HingedChain working_chain(const DissectionDocument& doc);

}  // namespace kitefold
