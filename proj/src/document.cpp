#include "kitefold/document.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace kitefold {

using nlohmann::json;

namespace {

json point_json(Point p) { return json::array({p.x, p.y}); }

json points_json(const std::vector<Point>& pts) {
  json out = json::array();
  for (const Point& p : pts) out.push_back(point_json(p));
  return out;
}

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::ParseError, where + ": " + what);
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) bad(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) bad(where, std::string("missing field '") + key + "'");
  return *it;
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) bad(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) bad(where, "number is not finite");
  return v;
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  return j.get<int>();
}

Point point(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) bad(where, "expected a point [x, y]");
  return {number(j[0], where + "[0]"), number(j[1], where + "[1]")};
}

std::vector<Point> points(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected a list of points");
  std::vector<Point> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(point(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // The library message already names the line and column.
    throw Error(ErrorCode::ParseError, e.what());
  }
}

json dissection_json(const DissectionDocument& doc) {
  json j;
  j["schema_version"] = doc.schema_version;
  j["normalization"] = {{"offset", point_json(doc.normalization.offset)}, {"scale", doc.normalization.scale}};
  json rings = json::array();
  for (const auto& r : doc.polygon) rings.push_back(points_json(r));
  j["polygon"] = {{"outer", rings.empty() ? json::array() : rings[0]}, {"holes", json::array()}};
  for (std::size_t i = 1; i < rings.size(); ++i) j["polygon"]["holes"].push_back(rings[i]);

  json pieces = json::array();
  json order = json::array();
  for (const auto& p : doc.chain.pieces) {
    pieces.push_back({{"id", p.id},
                      {"kind", std::string(piece_kind_name(p.kind))},
                      {"parent", p.parent},
                      {"vertices", points_json(p.polygon)},
                      {"hinge_slots", json::array({p.entry_slot, p.exit_slot})},
                      {"axis", json::array({point_json(p.axis_start), point_json(p.axis_end)})}});
    order.push_back(p.id);
  }
  j["pieces"] = std::move(pieces);
  j["chain"] = std::move(order);
  j["joints"] = points_json(doc.chain.joints);
  j["fold_angles"] = doc.chain.fold_angles;
  j["open_point"] = point_json(doc.chain.open_point);
  j["stats"] = {{"piece_count", doc.stats.piece_count},
                {"large_kite_count", doc.stats.large_kite_count},
                {"circle_count", doc.stats.circle_count},
                {"total_area", doc.stats.total_area}};
  return j;
}

DissectionDocument dissection_from_json(const json& j, const std::string& where) {
  DissectionDocument doc;
  doc.schema_version = integer(field(j, "schema_version", where), where + ".schema_version");
  if (doc.schema_version != 1) bad(where, "unsupported schema_version " + std::to_string(doc.schema_version));
  const json& norm = field(j, "normalization", where);
  doc.normalization.offset = point(field(norm, "offset", where + ".normalization"), where + ".normalization.offset");
  doc.normalization.scale = number(field(norm, "scale", where + ".normalization"), where + ".normalization.scale");
  if (!(doc.normalization.scale > 0)) bad(where + ".normalization.scale", "must be positive");

  const json& poly = field(j, "polygon", where);
  doc.polygon.push_back(points(field(poly, "outer", where + ".polygon"), where + ".polygon.outer"));
  const json& holes = field(poly, "holes", where + ".polygon");
  if (!holes.is_array()) bad(where + ".polygon.holes", "expected a list of rings");
  for (std::size_t i = 0; i < holes.size(); ++i) {
    doc.polygon.push_back(points(holes[i], where + ".polygon.holes[" + std::to_string(i) + "]"));
  }

  const json& pieces = field(j, "pieces", where);
  if (!pieces.is_array()) bad(where + ".pieces", "expected a list");
  std::vector<SmallPiece> by_id(pieces.size());
  std::vector<bool> have(pieces.size(), false);
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const std::string at = where + ".pieces[" + std::to_string(i) + "]";
    SmallPiece p;
    p.id = integer(field(pieces[i], "id", at), at + ".id");
    if (p.id < 0 || static_cast<std::size_t>(p.id) >= pieces.size() || have[static_cast<std::size_t>(p.id)]) {
      bad(at + ".id", "ids must be a permutation of 0..n-1");
    }
    const json& kind = field(pieces[i], "kind", at);
    if (!kind.is_string()) bad(at + ".kind", "expected a string");
    p.kind = piece_kind_from_name(kind.get<std::string>());
    p.parent = integer(field(pieces[i], "parent", at), at + ".parent");
    p.polygon = points(field(pieces[i], "vertices", at), at + ".vertices");
    if (p.polygon.size() < 3) bad(at + ".vertices", "a piece needs at least 3 vertices");
    const json& slots = field(pieces[i], "hinge_slots", at);
    if (!slots.is_array() || slots.size() != 2) bad(at + ".hinge_slots", "expected [entry, exit]");
    p.entry_slot = integer(slots[0], at + ".hinge_slots[0]");
    p.exit_slot = integer(slots[1], at + ".hinge_slots[1]");
    for (int s : {p.entry_slot, p.exit_slot}) {
      if (s < -1 || s >= static_cast<int>(p.polygon.size())) bad(at + ".hinge_slots", "slot out of range");
    }
    const auto axis = points(field(pieces[i], "axis", at), at + ".axis");
    if (axis.size() != 2) bad(at + ".axis", "expected two points");
    p.axis_start = axis[0];
    p.axis_end = axis[1];
    have[static_cast<std::size_t>(p.id)] = true;
    by_id[static_cast<std::size_t>(p.id)] = std::move(p);
  }
  const json& order = field(j, "chain", where);
  if (!order.is_array() || order.size() != pieces.size()) bad(where + ".chain", "must list every piece once");
  std::vector<bool> used(pieces.size(), false);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const int id = integer(order[i], where + ".chain[" + std::to_string(i) + "]");
    if (id < 0 || static_cast<std::size_t>(id) >= pieces.size() || used[static_cast<std::size_t>(id)]) {
      bad(where + ".chain", "must list every piece once");
    }
    used[static_cast<std::size_t>(id)] = true;
    doc.chain.pieces.push_back(by_id[static_cast<std::size_t>(id)]);
  }
  doc.chain.joints = points(field(j, "joints", where), where + ".joints");
  const json& angles = field(j, "fold_angles", where);
  if (!angles.is_array()) bad(where + ".fold_angles", "expected a list");
  for (std::size_t i = 0; i < angles.size(); ++i) {
    doc.chain.fold_angles.push_back(number(angles[i], where + ".fold_angles[" + std::to_string(i) + "]"));
  }
  if (!doc.chain.pieces.empty() && doc.chain.fold_angles.size() + 1 != doc.chain.pieces.size()) {
    bad(where + ".fold_angles", "needs one angle per joint");
  }
  doc.chain.open_point = point(field(j, "open_point", where), where + ".open_point");
  const json& stats = field(j, "stats", where);
  doc.stats.piece_count = integer(field(stats, "piece_count", where + ".stats"), where + ".stats.piece_count");
  doc.stats.large_kite_count =
      integer(field(stats, "large_kite_count", where + ".stats"), where + ".stats.large_kite_count");
  doc.stats.circle_count = integer(field(stats, "circle_count", where + ".stats"), where + ".stats.circle_count");
  doc.stats.total_area = number(field(stats, "total_area", where + ".stats"), where + ".stats.total_area");
  doc.chain.total_area = doc.stats.total_area;
  return doc;
}

}  // namespace

std::string serialize(const DissectionDocument& doc) { return dissection_json(doc).dump(2) + "\n"; }

std::string serialize(const RefinementDocument& doc) {
  json j;
  j["schema_version"] = doc.schema_version;
  j["kind"] = "refinement";
  j["chains"] = json::array();
  for (const auto& c : doc.chains) j["chains"].push_back(dissection_json(c));
  return j.dump(2) + "\n";
}

DissectionDocument parse_dissection(const std::string& text) { return dissection_from_json(parse_json(text), "$"); }

RefinementDocument parse_refinement(const std::string& text) {
  const json j = parse_json(text);
  RefinementDocument doc;
  doc.schema_version = integer(field(j, "schema_version", "$"), "$.schema_version");
  const json& chains = field(j, "chains", "$");
  if (!chains.is_array()) bad("$.chains", "expected a list");
  for (std::size_t i = 0; i < chains.size(); ++i) {
    doc.chains.push_back(dissection_from_json(chains[i], "$.chains[" + std::to_string(i) + "]"));
  }
  return doc;
}

bool is_refinement_document(const std::string& text) {
  const json j = parse_json(text);
  return j.is_object() && j.contains("kind") && j["kind"] == "refinement";
}

PolygonWithHoles parse_polygon(const std::string& text, const ToleranceConfig& tol) {
  const json j = parse_json(text);
  std::vector<Ring> rings;
  rings.push_back(points(field(j, "outer", "$"), "$.outer"));
  if (j.contains("holes")) {
    const json& holes = j["holes"];
    if (!holes.is_array()) bad("$.holes", "expected a list of rings");
    for (std::size_t i = 0; i < holes.size(); ++i) {
      rings.push_back(points(holes[i], "$.holes[" + std::to_string(i) + "]"));
    }
  }
  for (std::size_t r = 0; r < rings.size(); ++r) {
    if (rings[r].size() < 3) {
      bad(r == 0 ? "$.outer" : "$.holes[" + std::to_string(r - 1) + "]", "a ring needs at least 3 points");
    }
  }
  try {
    return validate_polygon(rings, tol);
  } catch (const Error& e) {
    throw Error(e.code(), "validate: " + e.message());
  }
}

PolygonWithHoles load_polygon(const std::filesystem::path& path, const ToleranceConfig& tol) {
  const std::string text = read_text(path);
  try {
    return parse_polygon(text, tol);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.message());
  }
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

HingedChain working_chain(const DissectionDocument& doc) {
  const Normalization& n = doc.normalization;
  HingedChain c = doc.chain;
  for (auto& p : c.pieces) {
    for (Point& v : p.polygon) v = n.to_working(v);
    p.axis_start = n.to_working(p.axis_start);
    p.axis_end = n.to_working(p.axis_end);
  }
  for (Point& j : c.joints) j = n.to_working(j);
  c.open_point = n.to_working(c.open_point);
  c.total_area /= n.scale * n.scale;
  return c;
}

}  // namespace kitefold
