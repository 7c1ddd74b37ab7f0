#pragma once

// Brute-force reference implementations, kept independent of the library's
// algorithmic paths. Everything here trades speed for obviousness.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "loonmesh/geometry.hpp"
#include "loonmesh/topology.hpp"

namespace oracles {

using loonmesh::NodeId;
using loonmesh::geometry::CartesianPoint;

// A point is a strict hull vertex iff some line through it leaves every other
// point strictly on one side, i.e. the directions toward all other points fit
// inside an open half-plane (largest circular gap between direction angles
// exceeds pi). Coincident points collapse to the smallest id first.
inline std::set<NodeId> hull_vertex_oracle(const std::map<NodeId, CartesianPoint>& points) {
  std::map<std::pair<double, double>, NodeId> distinct;
  for (const auto& [id, p] : points) {
    auto key = std::make_pair(p.x, p.y);
    auto it = distinct.find(key);
    if (it == distinct.end() || id < it->second) distinct[key] = id;
  }

  std::set<NodeId> out;
  for (const auto& [p, id] : distinct) {
    std::vector<double> angles;
    for (const auto& [q, other] : distinct) {
      if (q == p) continue;
      angles.push_back(std::atan2(q.second - p.second, q.first - p.first));
    }
    std::sort(angles.begin(), angles.end());
    double max_gap = angles.front() + loonmesh::geometry::kTwoPi - angles.back();
    for (std::size_t i = 1; i < angles.size(); ++i) {
      max_gap = std::max(max_gap, angles[i] - angles[i - 1]);
    }
    if (max_gap > 3.14159265358979323846 + 1e-12) out.insert(id);
  }
  return out;
}

// Half-plane containment against a counterclockwise polygon.
inline bool point_in_ccw_polygon(const std::vector<CartesianPoint>& polygon,
                                 const CartesianPoint& p, double tol) {
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const auto& a = polygon[i];
    const auto& b = polygon[(i + 1) % polygon.size()];
    double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
    double len = std::hypot(b.x - a.x, b.y - a.y);
    if (cross / len < -tol) return false;
  }
  return true;
}

// Minimum spanning-tree (or forest) weight by exhaustive edge-subset
// enumeration; intended for tiny graphs only.
inline double mst_weight_exhaustive(const std::vector<NodeId>& ids,
                                    const std::vector<loonmesh::topology::LinkEdge>& edges) {
  int n = static_cast<int>(ids.size());
  int m = static_cast<int>(edges.size());
  std::map<NodeId, int> index;
  for (int i = 0; i < n; ++i) index[ids[i]] = i;

  auto component_count = [&](unsigned mask) {
    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (int e = 0; e < m; ++e) {
      if (mask & (1u << e)) {
        parent[find(index.at(edges[e].a))] = find(index.at(edges[e].b));
      }
    }
    std::set<int> roots;
    for (int i = 0; i < n; ++i) roots.insert(find(i));
    return static_cast<int>(roots.size());
  };

  int base_components = component_count((1u << m) - 1u);
  double best = std::numeric_limits<double>::infinity();
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    if (__builtin_popcount(mask) != n - base_components) continue;
    if (component_count(mask) != base_components) continue;
    double w = 0.0;
    for (int e = 0; e < m; ++e) {
      if (mask & (1u << e)) w += edges[e].distance_km;
    }
    best = std::min(best, w);
  }
  return best;
}

struct OraclePath {
  std::vector<NodeId> path;
  double reliability = 0.0;
  int hops = 0;
};

// Exhaustive simple-path enumeration maximizing the product of effective
// probabilities, with Passive nodes barred from interior positions. Ties
// break by fewer hops, then the lexicographically smaller id sequence.
inline std::optional<OraclePath> best_path_oracle(const loonmesh::topology::MeshTopology& topo,
                                                  const NodeId& src, const NodeId& dst) {
  std::optional<OraclePath> best;
  std::vector<NodeId> path{src};
  std::set<NodeId> visited{src};

  auto consider = [&](double reliability) {
    OraclePath cand{path, reliability, static_cast<int>(path.size()) - 1};
    if (!best || cand.reliability > best->reliability ||
        (cand.reliability == best->reliability &&
         (cand.hops < best->hops || (cand.hops == best->hops && cand.path < best->path)))) {
      best = std::move(cand);
    }
  };

  std::function<void(const NodeId&, double)> dfs = [&](const NodeId& u, double product) {
    if (u == dst) {
      consider(product);
      return;
    }
    if (u != src && topo.nodes.at(u).role == loonmesh::topology::NodeRole::Passive) return;
    auto adj = topo.adjacency.find(u);
    if (adj == topo.adjacency.end()) return;
    for (const auto& v : adj->second) {
      if (visited.count(v)) continue;
      const auto* e = topo.find_edge(u, v);
      visited.insert(v);
      path.push_back(v);
      dfs(v, product * e->effective_probability());
      path.pop_back();
      visited.erase(v);
    }
  };
  dfs(src, 1.0);
  return best;
}

// Same enumeration, minimizing hops; ties by the lexicographically smaller
// id sequence.
inline std::optional<OraclePath> min_hop_oracle(const loonmesh::topology::MeshTopology& topo,
                                                const NodeId& src, const NodeId& dst) {
  std::optional<OraclePath> best;
  std::vector<NodeId> path{src};
  std::set<NodeId> visited{src};

  std::function<void(const NodeId&, double)> dfs = [&](const NodeId& u, double product) {
    if (u == dst) {
      OraclePath cand{path, product, static_cast<int>(path.size()) - 1};
      if (!best || cand.hops < best->hops ||
          (cand.hops == best->hops && cand.path < best->path)) {
        best = std::move(cand);
      }
      return;
    }
    if (u != src && topo.nodes.at(u).role == loonmesh::topology::NodeRole::Passive) return;
    auto adj = topo.adjacency.find(u);
    if (adj == topo.adjacency.end()) return;
    for (const auto& v : adj->second) {
      if (visited.count(v)) continue;
      const auto* e = topo.find_edge(u, v);
      visited.insert(v);
      path.push_back(v);
      dfs(v, product * e->effective_probability());
      path.pop_back();
      visited.erase(v);
    }
  };
  dfs(src, 1.0);
  return best;
}

// Plain frontier-expansion BFS over an explicit edge list.
inline std::map<NodeId, int> bfs_oracle(const std::vector<std::pair<NodeId, NodeId>>& edges,
                                        const NodeId& start) {
  std::map<NodeId, int> dist;
  dist[start] = 0;
  std::set<NodeId> frontier{start};
  int level = 0;
  while (!frontier.empty()) {
    ++level;
    std::set<NodeId> next;
    for (const auto& [a, b] : edges) {
      if (frontier.count(a) && !dist.count(b)) next.insert(b);
      if (frontier.count(b) && !dist.count(a)) next.insert(a);
    }
    for (const auto& id : next) dist[id] = level;
    frontier = std::move(next);
  }
  return dist;
}

// Exhaustive pairwise neighbor scan mirroring the documented discovery rule.
inline std::vector<NodeId> neighbor_scan_oracle(
    const std::map<NodeId, loonmesh::topology::BalloonNode>& nodes,
    const std::map<NodeId, CartesianPoint>& positions, const NodeId& self,
    double radio_range_km, double density_threshold, double d_min_km) {
  std::vector<NodeId> qualified;
  NodeId strongest;
  double strongest_density = -1.0;
  for (const auto& [id, node] : nodes) {
    if (id == self) continue;
    double d = loonmesh::geometry::distance(positions.at(self), positions.at(id));
    if (d > radio_range_km) continue;
    double dd = std::max(d, d_min_km);
    double density = node.signal_power / (dd * dd);
    if (density > strongest_density) {
      strongest_density = density;
      strongest = id;
    }
    if (density >= density_threshold) qualified.push_back(id);
  }
  if (qualified.empty() && strongest_density >= 0.0) qualified.push_back(strongest);
  return qualified;
}

}  // namespace oracles
