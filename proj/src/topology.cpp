#include "loonmesh/topology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>

#include "loonmesh/errors.hpp"
#include "loonmesh/protocol.hpp"
#include "loonmesh/routing.hpp"

namespace loonmesh::topology {

void BalloonNode::validate() const {
  if (id.empty()) throw std::invalid_argument("node id must be non-empty");
  if (load < 0) throw std::invalid_argument("load must be >= 0");
  if (max_load < 1) throw std::invalid_argument("max_load must be >= 1");
  if (load > max_load) throw std::invalid_argument("load must be <= max_load");
  if (!(bandwidth_mbps > 0.0)) throw std::invalid_argument("bandwidth_mbps must be > 0");
  if (!(signal_power > 0.0)) throw std::invalid_argument("signal_power must be > 0");
}

void MeshParams::validate() const {
  if (!(radio_range_km > 0.0)) throw std::invalid_argument("radio_range_km must be > 0");
  if (density_threshold < 0.0) throw std::invalid_argument("density_threshold must be >= 0");
  if (!(d_min_km > 0.0)) throw std::invalid_argument("d_min_km must be > 0");
  if (t_max < 1) throw std::invalid_argument("t_max must be >= 1");
  if (h_max < 1) throw std::invalid_argument("h_max must be >= 1");
  if (max_hop < 0) throw std::invalid_argument("max_hop must be >= 0");
  if (gap_range_km < 0.0) throw std::invalid_argument("gap_range_km must be >= 0");
  if (percolation_degree_threshold < 0.0) {
    throw std::invalid_argument("percolation_degree_threshold must be >= 0");
  }
  link.validate();
}

const LinkEdge* MeshTopology::find_edge(const NodeId& a, const NodeId& b) const {
  const NodeId& lo = std::min(a, b);
  const NodeId& hi = std::max(a, b);
  auto it = std::lower_bound(edges.begin(), edges.end(), std::make_pair(lo, hi),
                             [](const LinkEdge& e, const std::pair<NodeId, NodeId>& key) {
                               return std::tie(e.a, e.b) < std::tie(key.first, key.second);
                             });
  if (it != edges.end() && it->a == lo && it->b == hi) return &*it;
  return nullptr;
}

int MeshTopology::degree(const NodeId& id) const {
  auto it = adjacency.find(id);
  return it == adjacency.end() ? 0 : static_cast<int>(it->second.size());
}

bool MeshTopology::is_hull_vertex(const NodeId& id) const {
  return !hull_degenerate && hull.is_vertex(id);
}

double MeshTopology::radial_distance(const NodeId& id) const {
  return geometry::distance(positions.at(id), partition.origin);
}

double MeshTopology::mean_degree() const {
  if (nodes.empty()) return 0.0;
  return 2.0 * static_cast<double>(edges.size()) / static_cast<double>(nodes.size());
}

void MeshTopology::rebuild_adjacency() {
  adjacency.clear();
  for (const auto& [id, node] : nodes) adjacency[id];
  for (const auto& e : edges) {
    adjacency[e.a].push_back(e.b);
    adjacency[e.b].push_back(e.a);
  }
  for (auto& [id, peers] : adjacency) std::sort(peers.begin(), peers.end());
}

double power_density(double transmit_power, double distance_km, double d_min_km) {
  if (!(transmit_power > 0.0)) throw std::invalid_argument("transmit_power must be > 0");
  if (distance_km < 0.0) throw std::invalid_argument("distance_km must be >= 0");
  if (!(d_min_km > 0.0)) throw std::invalid_argument("d_min_km must be > 0");
  double d = std::max(distance_km, d_min_km);
  return transmit_power / (d * d);
}

namespace {

std::vector<NodeId> discover_impl(const std::map<NodeId, BalloonNode>& nodes,
                                  const std::map<NodeId, geometry::CartesianPoint>& positions,
                                  const NodeId& self, double radio_range_km,
                                  double density_threshold, double d_min_km) {
  const auto& me = positions.at(self);
  std::vector<NodeId> out;
  NodeId strongest;
  double strongest_density = -1.0;
  for (const auto& [id, node] : nodes) {
    if (id == self) continue;
    double d = geometry::distance(me, positions.at(id));
    if (d > radio_range_km) continue;
    double density = power_density(node.signal_power, d, d_min_km);
    if (density > strongest_density) {
      strongest_density = density;
      strongest = id;
    }
    if (density >= density_threshold) out.push_back(id);
  }
  if (out.empty() && strongest_density >= 0.0) out.push_back(strongest);
  return out;
}

void rebuild_edges(MeshTopology& t) {
  std::set<std::pair<NodeId, NodeId>> pairs;
  for (const auto& [id, node] : t.nodes) {
    for (const auto& peer : discover_impl(t.nodes, t.positions, id, t.params.radio_range_km,
                                          t.params.density_threshold, t.params.d_min_km)) {
      pairs.insert({std::min(id, peer), std::max(id, peer)});
    }
  }
  t.edges.clear();
  t.edges.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    LinkEdge e;
    e.a = a;
    e.b = b;
    e.distance_km = geometry::distance(t.positions.at(a), t.positions.at(b));
    t.edges.push_back(std::move(e));
  }
  t.rebuild_adjacency();
}

void rebuild_hull_full(MeshTopology& t) {
  try {
    t.hull = geometry::compute_convex_hull(t.positions);
    t.hull_degenerate = false;
  } catch (const DegenerateInput&) {
    t.hull = geometry::ConvexHull{};
    t.hull_degenerate = true;
  }
}

void rebuild_partition_full(MeshTopology& t) {
  if (t.hull_degenerate) {
    t.partition = geometry::single_sector_partition(t.positions);
    return;
  }
  auto sc = geometry::sector_angle(static_cast<int>(t.nodes.size()),
                                   static_cast<int>(t.hull.vertices.size()),
                                   t.params.t_max, t.params.h_max);
  t.partition = geometry::partition_sectors(t.positions, t.hull, sc.sector_count);
}

void partition_insert(geometry::SectorPartition& part, const NodeId& id,
                      const geometry::CartesianPoint& pos) {
  auto& members = part.sectors[part.sector_of(pos)].members;
  members.insert(std::upper_bound(members.begin(), members.end(), id), id);
}

void partition_remove(geometry::SectorPartition& part, const NodeId& id) {
  for (auto& s : part.sectors) {
    auto it = std::lower_bound(s.members.begin(), s.members.end(), id);
    if (it != s.members.end() && *it == id) {
      s.members.erase(it);
      return;
    }
  }
}

struct Dsu {
  std::map<NodeId, NodeId> parent;

  NodeId find(const NodeId& x) {
    NodeId r = x;
    while (parent[r] != r) r = parent[r];
    return r;
  }

  bool unite(const NodeId& a, const NodeId& b) {
    NodeId ra = find(a), rb = find(b);
    if (ra == rb) return false;
    parent[ra] = rb;
    return true;
  }
};

void rebuild_mst(MeshTopology& t) {
  std::vector<std::size_t> order(t.edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    const auto& x = t.edges[i];
    const auto& y = t.edges[j];
    return std::tie(x.distance_km, x.a, x.b) < std::tie(y.distance_km, y.a, y.b);
  });
  Dsu dsu;
  for (const auto& [id, node] : t.nodes) dsu.parent[id] = id;
  t.mst_edges.clear();
  for (std::size_t i : order) {
    const auto& e = t.edges[i];
    if (dsu.unite(e.a, e.b)) t.mst_edges.push_back({e.a, e.b});
  }
  std::sort(t.mst_edges.begin(), t.mst_edges.end());
}

void update_gap_reachability(MeshTopology& t) {
  geometry::CartesianPoint gap{t.params.gap_x_km, t.params.gap_y_km};
  for (auto& [id, node] : t.nodes) {
    node.reachable_from_gap =
        geometry::distance(t.positions.at(id), gap) <= t.params.gap_range_km;
  }
}

// Elections, roles, link probabilities, MST and health flags; runs after any
// change to the node set, positions or partition.
void finalize(MeshTopology& t) {
  protocol::elect_all_leaders(t);
  protocol::assign_roles_and_priorities(t);
  refresh_link_probabilities(t);
  rebuild_mst(t);
  t.subcritical = t.mean_degree() < t.params.percolation_degree_threshold;
  update_gap_reachability(t);
}

// Sectors whose member set or leader changed, restricted to non-empty new
// sectors. A full repartition notifies every non-empty sector.
std::vector<int> affected_sectors(const geometry::SectorPartition& before,
                                  const geometry::SectorPartition& after,
                                  bool repartitioned) {
  std::vector<int> out;
  for (const auto& s : after.sectors) {
    if (s.members.empty()) continue;
    if (repartitioned) {
      out.push_back(s.index);
      continue;
    }
    const auto& old = before.sectors[s.index];
    if (old.members != s.members || old.leader != s.leader) out.push_back(s.index);
  }
  return out;
}

}  // namespace

std::vector<NodeId> discover_neighbors(const MeshTopology& topo, const NodeId& id,
                                       double radio_range_km, double density_threshold) {
  if (!topo.nodes.count(id)) throw UnknownNode("unknown node id: " + id);
  return discover_impl(topo.nodes, topo.positions, id, radio_range_km, density_threshold,
                       topo.params.d_min_km);
}

std::map<NodeId, int> bfs_hops(const std::map<NodeId, std::vector<NodeId>>& adjacency,
                               const NodeId& start) {
  std::map<NodeId, int> dist;
  dist[start] = 0;
  std::deque<NodeId> queue{start};
  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop_front();
    auto it = adjacency.find(u);
    if (it == adjacency.end()) continue;
    for (const auto& v : it->second) {
      if (!dist.count(v)) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

void refresh_link_probabilities(MeshTopology& topo) {
  for (auto& e : topo.edges) {
    e.failure_probability = routing::link_failure_probability(topo.nodes.at(e.a),
                                                              topo.nodes.at(e.b),
                                                              topo.params.link);
  }
}

MeshTopology build_mesh(const std::vector<BalloonNode>& nodes, const MeshParams& params) {
  params.validate();
  if (nodes.empty()) throw std::invalid_argument("build_mesh needs at least one node");
  MeshTopology t;
  t.params = params;
  for (const auto& n : nodes) {
    n.validate();
    if (!t.nodes.emplace(n.id, n).second) {
      throw DuplicateNode("duplicate node id: " + n.id);
    }
  }
  for (const auto& [id, n] : t.nodes) t.positions[id] = geometry::to_cartesian(n.position);
  rebuild_edges(t);
  rebuild_hull_full(t);
  rebuild_partition_full(t);
  finalize(t);
  return t;
}

const char* churn_case_name(ChurnCase c) {
  switch (c) {
    case ChurnCase::InteriorAdd: return "interior_add";
    case ChurnCase::ExteriorAdd: return "exterior_add";
    case ChurnCase::InteriorRemove: return "interior_remove";
    case ChurnCase::HullVertexRemove: return "hull_vertex_remove";
    case ChurnCase::InteriorDrift: return "interior_drift";
    case ChurnCase::BoundaryDrift: return "boundary_drift";
  }
  return "unknown";
}

TransitionResult add_node(const MeshTopology& topo, const BalloonNode& node) {
  node.validate();
  if (topo.nodes.count(node.id)) throw DuplicateNode("duplicate node id: " + node.id);

  MeshTopology t = topo;
  ReconfigReport rep;
  auto before = t.partition;
  auto pos = geometry::to_cartesian(node.position);
  bool interior = !t.hull_degenerate && t.hull.strictly_inside(pos);
  rep.churn_case = interior ? ChurnCase::InteriorAdd : ChurnCase::ExteriorAdd;

  t.nodes.emplace(node.id, node);
  t.positions[node.id] = pos;
  rebuild_edges(t);

  if (!interior) {
    rebuild_hull_full(t);
    rep.hull_recomputed = true;
    rebuild_partition_full(t);
    rep.repartitioned = true;
  } else {
    auto sc = geometry::sector_angle(static_cast<int>(t.nodes.size()),
                                     static_cast<int>(t.hull.vertices.size()),
                                     t.params.t_max, t.params.h_max);
    if (sc.sector_count != t.partition.sector_count) {
      rebuild_partition_full(t);
      rep.repartitioned = true;
    } else {
      partition_insert(t.partition, node.id, pos);
    }
  }
  finalize(t);
  rep.notified_sectors = affected_sectors(before, t.partition, rep.repartitioned);
  return {std::move(t), std::move(rep)};
}

TransitionResult remove_node(const MeshTopology& topo, const NodeId& id) {
  if (!topo.nodes.count(id)) throw UnknownNode("unknown node id: " + id);

  MeshTopology t = topo;
  ReconfigReport rep;
  auto before = t.partition;
  bool full = t.hull_degenerate || t.hull.is_vertex(id);
  rep.churn_case = full ? ChurnCase::HullVertexRemove : ChurnCase::InteriorRemove;

  t.nodes.erase(id);
  t.positions.erase(id);
  rebuild_edges(t);

  if (full) {
    rebuild_hull_full(t);
    rep.hull_recomputed = true;
    rebuild_partition_full(t);
    rep.repartitioned = true;
  } else {
    auto sc = geometry::sector_angle(static_cast<int>(t.nodes.size()),
                                     static_cast<int>(t.hull.vertices.size()),
                                     t.params.t_max, t.params.h_max);
    if (sc.sector_count != t.partition.sector_count) {
      rebuild_partition_full(t);
      rep.repartitioned = true;
    } else {
      partition_remove(t.partition, id);
    }
  }
  finalize(t);
  rep.notified_sectors = affected_sectors(before, t.partition, rep.repartitioned);
  return {std::move(t), std::move(rep)};
}

TransitionResult move_node(const MeshTopology& topo, const NodeId& id,
                           const geometry::PolarPosition& new_position) {
  if (!topo.nodes.count(id)) throw UnknownNode("unknown node id: " + id);

  MeshTopology t = topo;
  ReconfigReport rep;
  auto before = t.partition;
  auto pos = geometry::to_cartesian(new_position);
  bool full = t.hull_degenerate || t.hull.is_vertex(id) || !t.hull.strictly_inside(pos);
  rep.churn_case = full ? ChurnCase::BoundaryDrift : ChurnCase::InteriorDrift;

  t.nodes.at(id).position = new_position;
  t.positions.at(id) = pos;
  rebuild_edges(t);

  if (full) {
    rebuild_hull_full(t);
    rep.hull_recomputed = true;
    rebuild_partition_full(t);
    rep.repartitioned = true;
  } else {
    // Node count and hull are unchanged, so S is too; only the wedge the
    // node occupies may differ.
    int old_sector = t.partition.sector_index_of(id).value();
    int new_sector = t.partition.sector_of(pos);
    if (old_sector != new_sector) {
      partition_remove(t.partition, id);
      partition_insert(t.partition, id, pos);
    }
  }
  finalize(t);
  rep.notified_sectors = affected_sectors(before, t.partition, rep.repartitioned);
  return {std::move(t), std::move(rep)};
}

}  // namespace loonmesh::topology
