#pragma once

#include <map>
#include <optional>
#include <vector>

#include "loonmesh/topology.hpp"

namespace loonmesh::protocol {

// Non-hull members of the sector within max_hop of every hull vertex that
// lies in the sector; sorted by id.
std::vector<NodeId> leader_candidates(const geometry::Sector& sector,
                                      const topology::MeshTopology& topo);

// Winner among candidates by maximum radial distance from the sector origin,
// ties to the smallest id. Falls back to the highest-degree member when no
// candidate qualifies. nullopt for an empty sector.
std::optional<NodeId> elect_leader(const geometry::Sector& sector,
                                   const topology::MeshTopology& topo);

// For a sector with no hull vertex: estimate a target radius from the leaders
// of the two angularly adjacent sectors (one if only one exists, the mean
// radius of all current leaders if neither does) and pick the member whose
// radius is closest, ties to the smallest id.
std::optional<NodeId> elect_leader_no_boundary(const geometry::Sector& sector,
                                               const geometry::SectorPartition& partition,
                                               const topology::MeshTopology& topo);

// Two-pass election over all sectors: hull-bearing sectors first, then the
// hull-free ones in index order. Degenerate topologies take the single-sector
// fallback (highest degree, ties to smallest id).
void elect_all_leaders(topology::MeshTopology& topo);

// Leaders -> (CoreActive, 0); non-leader hull vertices -> (Passive, 2);
// everyone else -> (Ordinary, 1).
void assign_roles_and_priorities(topology::MeshTopology& topo);

struct MemberRecord {
  NodeId id;
  geometry::CartesianPoint position;
  int sector = 0;
};

struct LeaderDirectory {
  std::map<int, NodeId> leader_by_sector;
  std::map<NodeId, std::vector<MemberRecord>> members_by_leader;
};

LeaderDirectory build_directory(const topology::MeshTopology& topo);

struct InfoGatheringTrace {
  int control_hops = 0;  // inter-leader forwards between the two sectors
  std::vector<NodeId> query_path;
  std::vector<NodeId> reply_path;

  // Query plus reply transmissions.
  std::size_t message_count() const {
    return (query_path.size() - 1) + (reply_path.size() - 1);
  }
};

// Source asks its sector leader; the query forwards leader-to-leader through
// angularly consecutive sectors (shorter rotational direction, empty sectors
// skipped) until the leader holding dst answers. nullopt when dst appears in
// no member table (stale directory).
std::optional<InfoGatheringTrace> gather_destination_info(
    const NodeId& src, const NodeId& dst, const LeaderDirectory& directory,
    const geometry::SectorPartition& partition, const topology::MeshTopology& topo);

}  // namespace loonmesh::protocol
