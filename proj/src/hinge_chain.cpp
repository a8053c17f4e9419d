#include "kitefold/hinge_chain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "kitefold/fold_engine.hpp"

namespace kitefold {

std::string_view piece_kind_name(PieceKind kind) {
  switch (kind) {
    case PieceKind::Rhombus: return "rhombus";
    case PieceKind::HalfKite: return "half_kite";
    case PieceKind::Kite: return "kite";
    case PieceKind::Dart: return "dart";
    case PieceKind::Triangle: return "triangle";
  }
  return "unknown";
}

PieceKind piece_kind_from_name(std::string_view name) {
  for (PieceKind k : {PieceKind::Rhombus, PieceKind::HalfKite, PieceKind::Kite, PieceKind::Dart, PieceKind::Triangle}) {
    if (piece_kind_name(k) == name) return k;
  }
  throw Error(ErrorCode::ParseError, "unknown piece kind '" + std::string(name) + "'");
}

double SmallPiece::area() const { return std::abs(signed_area(polygon)); }

std::vector<Point> SmallPiece::local_frame() const {
  const Point u = normalized(axis_end - axis_start);
  std::vector<Point> out;
  out.reserve(polygon.size());
  for (const Point& p : polygon) {
    const Point d = p - axis_start;
    out.push_back({dot(d, u), cross(u, d)});
  }
  return out;
}

bool DualTree::contains(int a, int b) const {
  if (a < 0 || b < 0 || a == b) return false;
  return parent[static_cast<std::size_t>(b)] == a || parent[static_cast<std::size_t>(a)] == b;
}

namespace {

Point line_intersection(Point a, Point b, Point c, Point d) {
  const Point r = b - a;
  const Point s = d - c;
  const double denom = cross(r, s);
  if (std::abs(denom) < 1e-300) throw Error(ErrorCode::GeometryError, "kite diagonals are parallel");
  return a + (cross(c - a, s) / denom) * r;
}

double axis_asymmetry(const std::array<Point, 4>& q) {
  return std::max(std::abs(distance(q[0], q[1]) - distance(q[0], q[3])),
                  std::abs(distance(q[2], q[1]) - distance(q[2], q[3])));
}

}  // namespace

std::array<SmallPiece, 4> subdivide_large_kite(const LargeKite& kite, const ToleranceConfig& tol) {
  const auto& v = kite.vertices;
  const auto& m = kite.edge_midpoints;
  const Point x = line_intersection(v[0], v[2], v[1], v[3]);
  std::array<SmallPiece, 4> out;
  for (std::size_t j = 0; j < 4; ++j) {
    const Point entry = m[(j + 3) % 4];
    const Point exit = m[j];
    const std::array<Point, 4> q{entry, v[j], exit, x};
    if (!is_kite(q, false, tol.eps_dist) || axis_asymmetry(q) > tol.eps_dist) {
      throw Error(ErrorCode::GeometryError, "subdivision of kite " + std::to_string(kite.id) + " at vertex " +
                                                std::to_string(j) + " is not symmetric about its hinge axis");
    }
    SmallPiece& p = out[j];
    p.kind = j % 2 == 0 ? PieceKind::Rhombus : PieceKind::HalfKite;
    p.parent = kite.id;
    p.polygon.assign(q.begin(), q.end());
    p.entry_slot = 0;
    p.exit_slot = 2;
    p.axis_start = entry;
    p.axis_end = exit;
  }
  return out;
}

DualTree spanning_tree(const KiteMesh& mesh) {
  DualTree tree;
  for (const auto& k : mesh.kites) {
    for (std::size_t s = 0; s < 4; ++s) {
      if (k.boundary_ring[s] != 0) continue;
      if (tree.root < 0 || lex_less(k.edge_midpoints[s], tree.root_port)) {
        tree.root = k.id;
        tree.root_side = static_cast<int>(s);
        tree.root_port = k.edge_midpoints[s];
      }
    }
  }
  if (tree.root < 0) throw Error(ErrorCode::NoBoundaryKite, "no kite has a side on the outer boundary");

  tree.parent.assign(mesh.kites.size(), -1);
  std::vector<bool> seen(mesh.kites.size(), false);
  std::queue<int> q;
  q.push(tree.root);
  seen[static_cast<std::size_t>(tree.root)] = true;
  while (!q.empty()) {
    const int cur = q.front();
    q.pop();
    for (int nb : mesh.dual_graph[static_cast<std::size_t>(cur)]) {
      if (seen[static_cast<std::size_t>(nb)]) continue;
      seen[static_cast<std::size_t>(nb)] = true;
      tree.parent[static_cast<std::size_t>(nb)] = cur;
      tree.edges.emplace_back(cur, nb);
      q.push(nb);
    }
  }
  if (tree.edges.size() + 1 != mesh.kites.size()) {
    throw Error(ErrorCode::DisconnectedDual, "spanning tree does not reach every kite");
  }
  return tree;
}

HingedChain trace_chain(const KiteMesh& mesh, const DualTree& tree, const ToleranceConfig& tol) {
  const std::size_t n = mesh.kites.size();
  std::vector<std::array<SmallPiece, 4>> pieces;
  pieces.reserve(n);
  for (const auto& k : mesh.kites) pieces.push_back(subdivide_large_kite(k, tol));

  // A child is entered through the first side it shares with its parent;
  // any further shared side is crossed by neither.
  std::vector<int> via(n, -1);
  for (std::size_t k = 0; k < n; ++k) {
    const int p = tree.parent[k];
    if (p < 0) continue;
    const auto& pk = mesh.kites[static_cast<std::size_t>(p)];
    for (int s = 0; s < 4 && via[k] < 0; ++s) {
      if (pk.neighbor[static_cast<std::size_t>(s)] == static_cast<int>(k)) via[k] = s;
    }
  }

  HingedChain chain;
  chain.open_point = tree.root_port;
  std::vector<std::array<bool, 4>> used(n, {false, false, false, false});
  struct Frame {
    int kite;
    int entry;
    int step;
  };
  std::vector<Frame> stack{{tree.root, tree.root_side, 1}};
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.step > 4) {
      stack.pop_back();
      continue;
    }
    const int step = f.step++;
    const std::size_t kite = static_cast<std::size_t>(f.kite);
    const std::size_t vertex = static_cast<std::size_t>((f.entry + step) % 4);
    if (used[kite][vertex]) throw Error(ErrorCode::TraceIncomplete, "piece visited twice");
    used[kite][vertex] = true;
    SmallPiece piece = pieces[kite][vertex];
    piece.id = static_cast<int>(chain.pieces.size());
    chain.pieces.push_back(std::move(piece));
    if (step == 4) continue;
    // The piece just added leaves through the midpoint of side `vertex`.
    const auto& k = mesh.kites[kite];
    const int nb = k.neighbor[vertex];
    if (nb >= 0 && tree.parent[static_cast<std::size_t>(nb)] == f.kite &&
        via[static_cast<std::size_t>(nb)] == static_cast<int>(vertex)) {
      stack.push_back({nb, k.neighbor_side[vertex], 1});
    }
  }
  if (chain.pieces.size() != 4 * n) {
    throw Error(ErrorCode::TraceIncomplete, "trace visited " + std::to_string(chain.pieces.size()) + " of " +
                                                std::to_string(4 * n) + " pieces");
  }

  for (std::size_t i = 0; i + 1 < chain.pieces.size(); ++i) {
    if (distance(chain.pieces[i].axis_end, chain.pieces[i + 1].axis_start) > tol.eps_dist) {
      throw Error(ErrorCode::TraceIncomplete, "pieces " + std::to_string(i) + " and " + std::to_string(i + 1) +
                                                  " do not share a joint");
    }
    chain.joints.push_back(chain.pieces[i].axis_end);
  }
  for (const auto& p : chain.pieces) chain.total_area += p.area();
  chain.fold_angles = compute_fold_angles(chain, tol);
  return chain;
}

ChainReport check_chain(const HingedChain& chain, const ToleranceConfig& tol) {
  ChainReport r;
  double total = 0.0;
  for (std::size_t i = 0; i < chain.pieces.size(); ++i) {
    const auto& p = chain.pieces[i];
    total += p.area();
    if (i + 1 < chain.pieces.size()) {
      r.max_joint_gap = std::max(r.max_joint_gap, distance(p.axis_end, chain.pieces[i + 1].axis_start));
    }
    if (p.entry_slot >= 0 && distance(p.polygon[static_cast<std::size_t>(p.entry_slot)], p.axis_start) > tol.eps_dist) {
      r.hinge_slots_on_axis = false;
    }
    if (p.exit_slot >= 0 && distance(p.polygon[static_cast<std::size_t>(p.exit_slot)], p.axis_end) > tol.eps_dist) {
      r.hinge_slots_on_axis = false;
    }
    // Reflect across the axis and match each vertex to its nearest image.
    const Point u = normalized(p.axis_end - p.axis_start);
    for (const Point& a : p.polygon) {
      const Point d = a - p.axis_start;
      const Point mirrored = p.axis_start + (2 * dot(d, u)) * u - d;
      double best = std::numeric_limits<double>::infinity();
      for (const Point& b : p.polygon) best = std::min(best, distance(mirrored, b));
      r.max_symmetry_error = std::max(r.max_symmetry_error, best);
    }
    if (p.polygon.size() == 4) {
      std::array<Point, 4> q{p.polygon[0], p.polygon[1], p.polygon[2], p.polygon[3]};
      try {
        if (!is_kite(q, true, tol.eps_dist)) r.pieces_are_kites = false;
      } catch (const Error&) {
        r.pieces_are_kites = false;
      }
    }
  }
  if (chain.total_area > 0) r.area_relative_error = std::abs(total - chain.total_area) / chain.total_area;
  return r;
}

}  // namespace kitefold
