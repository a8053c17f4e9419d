#include "kitefold/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "kitefold/reductions.hpp"

namespace kitefold {

namespace {

template <typename F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.code(), std::string(name) + ": " + e.message());
  }
}

HingedChain map_chain(const HingedChain& chain, const Normalization& n) {
  HingedChain c = chain;
  for (auto& p : c.pieces) {
    for (Point& v : p.polygon) v = n.to_input(v);
    p.axis_start = n.to_input(p.axis_start);
    p.axis_end = n.to_input(p.axis_end);
  }
  for (Point& j : c.joints) j = n.to_input(j);
  c.open_point = n.to_input(c.open_point);
  c.total_area *= n.scale * n.scale;
  return c;
}

void require_mirror(const MirrorReport& report, const ToleranceConfig& tol) {
  if (!report.ok) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "mirror deviation %.3g exceeds %.3g", report.max_deviation, tol.verify_tol);
    throw Error(ErrorCode::VerificationFailed, buf);
  }
}

}  // namespace

DissectionDocument make_document(const PolygonWithHoles& polygon, const HingedChain& chain, int large_kites,
                                 int circles) {
  DissectionDocument doc;
  doc.normalization = polygon.normalization;
  for (int r = 0; r < polygon.ring_count(); ++r) {
    Ring ring;
    for (const Point& p : polygon.ring(r)) ring.push_back(polygon.normalization.to_input(p));
    doc.polygon.push_back(std::move(ring));
  }
  doc.chain = map_chain(chain, polygon.normalization);
  doc.stats.piece_count = static_cast<int>(chain.pieces.size());
  doc.stats.large_kite_count = large_kites;
  doc.stats.circle_count = circles;
  doc.stats.total_area = doc.chain.total_area;
  return doc;
}

PipelineArtifacts run_pipeline_artifacts(const PolygonWithHoles& polygon, const PipelineOptions& options) {
  const ToleranceConfig& tol = options.tol;
  tol.validate();
  PipelineArtifacts out;
  out.packing = stage("circle-pack", [&] { return pack_polygon(polygon, tol); });
  out.mesh = stage("kite-mesh", [&] { return build_mesh(out.packing, tol); });
  out.tree = stage("hinge-chain", [&] { return spanning_tree(out.mesh); });
  out.chain = stage("hinge-chain", [&] { return trace_chain(out.mesh, out.tree, tol); });
  out.mirror = stage("fold-engine", [&] { return verify_mirror(out.chain, tol); });
  stage("verify", [&] { require_mirror(out.mirror, tol); });
  const int circles = static_cast<int>(out.packing.circles.size() + out.mesh.added_circles.size());
  out.document = make_document(polygon, out.chain, static_cast<int>(out.mesh.kites.size()), circles);
  return out;
}

DissectionDocument run_pipeline(const PolygonWithHoles& polygon, const PipelineOptions& options) {
  return run_pipeline_artifacts(polygon, options).document;
}

DissectionDocument triangle3_document(const PolygonWithHoles& triangle, const PipelineOptions& options) {
  const ToleranceConfig& tol = options.tol;
  tol.validate();
  if (!triangle.holes.empty() || triangle.outer.size() != 3) {
    throw Error(ErrorCode::NotScalene, "triangle3: input must be a single triangle");
  }
  const auto chain = stage("triangle3", [&] {
    return three_piece_triangle({triangle.outer[0], triangle.outer[1], triangle.outer[2]}, tol);
  });
  stage("verify", [&] { require_mirror(verify_mirror(chain, tol), tol); });
  return make_document(triangle, chain, 0, 0);
}

MirrorReport verify_document(const DissectionDocument& doc, const ToleranceConfig& tol) {
  return verify_mirror(working_chain(doc), tol);
}

RefinementDocument refine_documents(const DissectionDocument& a, const DissectionDocument& b,
                                    const PipelineOptions& options) {
  const ToleranceConfig& tol = options.tol;
  tol.validate();
  // Cuts are placed in input units, where the two areas agree.
  const ToleranceConfig input_tol = tol.scaled(a.normalization.scale);
  auto [ra, rb] = stage("reductions", [&] { return common_refinement(a.chain, b.chain, input_tol); });
  RefinementDocument out;
  for (auto* pair : {&ra, &rb}) {
    const DissectionDocument& src = pair == &ra ? a : b;
    DissectionDocument doc = src;
    doc.chain = *pair;
    doc.stats.piece_count = static_cast<int>(pair->pieces.size());
    stage("verify", [&] { require_mirror(verify_document(doc, tol), tol); });
    out.chains.push_back(std::move(doc));
  }
  return out;
}

// ---------------------------------------------------------------------------
// SVG
// ---------------------------------------------------------------------------

namespace {

std::string num(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

const char* fill_for(PieceKind kind) {
  switch (kind) {
    case PieceKind::Rhombus: return "#9ecae1";
    case PieceKind::HalfKite: return "#fdd0a2";
    case PieceKind::Kite: return "#c7e9c0";
    case PieceKind::Dart: return "#dadaeb";
    case PieceKind::Triangle: return "#fcbba1";
  }
  return "#dddddd";
}

}  // namespace

std::string render_svg(const HingedChain& chain, double t, const SvgOptions& options) {
  const ChainConfiguration config = configure(chain, t);
  const auto polys = posed_polygons(chain, config);
  std::vector<Point> hinges;
  for (std::size_t i = 0; i + 1 < chain.pieces.size(); ++i) {
    hinges.push_back(apply_motion(config.poses[i], {chain.pieces[i].hinge_distance(), 0.0}));
  }

  // SVG y grows downward, so y is negated throughout.
  double min_x = std::numeric_limits<double>::infinity();
  double min_y = min_x;
  double max_x = -min_x;
  double max_y = -min_x;
  for (const auto& poly : polys) {
    for (const Point& p : poly) {
      min_x = std::min(min_x, p.x);
      max_x = std::max(max_x, p.x);
      min_y = std::min(min_y, -p.y);
      max_y = std::max(max_y, -p.y);
    }
  }
  if (polys.empty()) min_x = min_y = max_x = max_y = 0.0;
  double w = max_x - min_x;
  double h = max_y - min_y;
  const double extent = std::max({w, h, 1e-12});
  const double pad_x = 0.05 * (w > 0 ? w : extent);
  const double pad_y = 0.05 * (h > 0 ? h : extent);
  min_x -= pad_x;
  min_y -= pad_y;
  w += 2 * pad_x;
  h += 2 * pad_y;
  const double diag = std::hypot(w, h);

  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" + num(min_x) + " " + num(min_y) +
         " " + num(w) + " " + num(h) + "\" width=\"800\" height=\"" + num(800.0 * h / w) + "\">\n";
  out += "<g stroke=\"#333333\" stroke-width=\"" + num(diag * 0.001) + "\" stroke-linejoin=\"round\">\n";
  for (std::size_t i = 0; i < polys.size(); ++i) {
    out += "<path fill=\"";
    out += fill_for(chain.pieces[i].kind);
    out += "\" d=\"";
    for (std::size_t k = 0; k < polys[i].size(); ++k) {
      out += (k == 0 ? "M" : " L") + num(polys[i][k].x) + " " + num(-polys[i][k].y);
    }
    out += " Z\"/>\n";
  }
  out += "</g>\n<g fill=\"#cb181d\">\n";
  const std::string r = num(diag * options.hinge_radius_fraction);
  for (const Point& p : hinges) out += "<circle cx=\"" + num(p.x) + "\" cy=\"" + num(-p.y) + "\" r=\"" + r + "\"/>\n";
  out += "</g>\n</svg>\n";
  return out;
}

void write_svg(const DissectionDocument& doc, double t, const std::filesystem::path& path) {
  write_text(path, render_svg(doc.chain, t));
}

}  // namespace kitefold
