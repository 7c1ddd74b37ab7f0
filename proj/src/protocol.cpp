#include "loonmesh/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "loonmesh/errors.hpp"

namespace loonmesh::protocol {

namespace {

std::vector<NodeId> hull_vertices_in_sector(const geometry::Sector& sector,
                                            const topology::MeshTopology& topo) {
  std::vector<NodeId> out;
  for (const auto& m : sector.members) {
    if (topo.is_hull_vertex(m)) out.push_back(m);
  }
  return out;
}

// Highest degree, ties to the smallest id. Members are sorted, so a strict
// comparison keeps the first maximum.
NodeId highest_degree_member(const geometry::Sector& sector,
                             const topology::MeshTopology& topo) {
  NodeId winner = sector.members.front();
  int best = topo.degree(winner);
  for (const auto& m : sector.members) {
    int d = topo.degree(m);
    if (d > best) {
      best = d;
      winner = m;
    }
  }
  return winner;
}

double leader_radius(const topology::MeshTopology& topo, const NodeId& id) {
  return topo.radial_distance(id);
}

}  // namespace

std::vector<NodeId> leader_candidates(const geometry::Sector& sector,
                                      const topology::MeshTopology& topo) {
  auto hull_members = hull_vertices_in_sector(sector, topo);
  std::vector<std::map<NodeId, int>> hop_maps;
  hop_maps.reserve(hull_members.size());
  for (const auto& h : hull_members) hop_maps.push_back(topology::bfs_hops(topo.adjacency, h));

  std::vector<NodeId> out;
  for (const auto& m : sector.members) {
    if (topo.is_hull_vertex(m)) continue;
    bool ok = true;
    for (const auto& hops : hop_maps) {
      auto it = hops.find(m);
      if (it == hops.end() || it->second > topo.params.max_hop) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(m);
  }
  return out;
}

std::optional<NodeId> elect_leader(const geometry::Sector& sector,
                                   const topology::MeshTopology& topo) {
  if (sector.members.empty()) return std::nullopt;
  auto candidates = leader_candidates(sector, topo);
  if (candidates.empty()) return highest_degree_member(sector, topo);
  NodeId winner = candidates.front();
  double best = topo.radial_distance(winner);
  for (const auto& c : candidates) {
    double r = topo.radial_distance(c);
    if (r > best) {
      best = r;
      winner = c;
    }
  }
  return winner;
}

std::optional<NodeId> elect_leader_no_boundary(const geometry::Sector& sector,
                                               const geometry::SectorPartition& partition,
                                               const topology::MeshTopology& topo) {
  if (sector.members.empty()) return std::nullopt;

  int s = partition.sector_count;
  std::set<int> neighbors{(sector.index + 1) % s, (sector.index - 1 + s) % s};
  neighbors.erase(sector.index);

  std::vector<double> radii;
  for (int k : neighbors) {
    const auto& leader = partition.sectors[k].leader;
    if (leader) radii.push_back(leader_radius(topo, *leader));
  }
  if (radii.empty()) {
    for (const auto& sec : partition.sectors) {
      if (sec.leader) radii.push_back(leader_radius(topo, *sec.leader));
    }
  }
  double estimate = 0.0;
  if (!radii.empty()) {
    for (double r : radii) estimate += r;
    estimate /= static_cast<double>(radii.size());
  }

  NodeId winner = sector.members.front();
  double best = std::abs(topo.radial_distance(winner) - estimate);
  for (const auto& m : sector.members) {
    double diff = std::abs(topo.radial_distance(m) - estimate);
    if (diff < best) {
      best = diff;
      winner = m;
    }
  }
  return winner;
}

void elect_all_leaders(topology::MeshTopology& topo) {
  auto& part = topo.partition;
  for (auto& sector : part.sectors) sector.leader.reset();

  if (topo.hull_degenerate) {
    for (auto& sector : part.sectors) {
      if (!sector.members.empty()) sector.leader = highest_degree_member(sector, topo);
    }
    return;
  }

  for (auto& sector : part.sectors) {
    if (!sector.members.empty() && !hull_vertices_in_sector(sector, topo).empty()) {
      sector.leader = elect_leader(sector, topo);
    }
  }
  for (auto& sector : part.sectors) {
    if (!sector.members.empty() && !sector.leader) {
      sector.leader = elect_leader_no_boundary(sector, part, topo);
    }
  }
}

void assign_roles_and_priorities(topology::MeshTopology& topo) {
  std::set<NodeId> leaders;
  for (const auto& sector : topo.partition.sectors) {
    if (sector.leader) leaders.insert(*sector.leader);
  }
  for (auto& [id, node] : topo.nodes) {
    if (leaders.count(id)) {
      node.role = topology::NodeRole::CoreActive;
      node.priority_level = 0;
    } else if (topo.is_hull_vertex(id)) {
      node.role = topology::NodeRole::Passive;
      node.priority_level = 2;
    } else {
      node.role = topology::NodeRole::Ordinary;
      node.priority_level = 1;
    }
  }
}

LeaderDirectory build_directory(const topology::MeshTopology& topo) {
  LeaderDirectory dir;
  for (const auto& sector : topo.partition.sectors) {
    if (!sector.leader) continue;
    dir.leader_by_sector[sector.index] = *sector.leader;
    auto& table = dir.members_by_leader[*sector.leader];
    for (const auto& m : sector.members) {
      table.push_back({m, topo.positions.at(m), sector.index});
    }
  }
  return dir;
}

std::optional<InfoGatheringTrace> gather_destination_info(
    const NodeId& src, const NodeId& dst, const LeaderDirectory& directory,
    const geometry::SectorPartition& partition, const topology::MeshTopology& topo) {
  if (!topo.nodes.count(src)) throw UnknownNode("unknown node id: " + src);
  if (!topo.nodes.count(dst)) throw UnknownNode("unknown node id: " + dst);

  bool found = false;
  for (const auto& [leader, table] : directory.members_by_leader) {
    for (const auto& rec : table) {
      if (rec.id == dst) {
        found = true;
        break;
      }
    }
    if (found) break;
  }
  if (!found) return std::nullopt;

  int s_src = partition.sector_index_of(src).value();
  int s_dst = partition.sector_index_of(dst).value();
  int s = partition.sector_count;

  InfoGatheringTrace trace;
  trace.control_hops = geometry::angular_distance(s_src, s_dst, s);

  int step = geometry::angular_direction(s_src, s_dst, s) == geometry::Direction::CW ? -1 : 1;
  trace.query_path.push_back(src);
  int k = s_src;
  while (true) {
    auto it = directory.leader_by_sector.find(k);
    if (it != directory.leader_by_sector.end() && it->second != trace.query_path.back()) {
      trace.query_path.push_back(it->second);
    }
    if (k == s_dst) break;
    k = (k + step + s) % s;
  }
  trace.reply_path.assign(trace.query_path.rbegin(), trace.query_path.rend());
  return trace;
}

}  // namespace loonmesh::protocol
