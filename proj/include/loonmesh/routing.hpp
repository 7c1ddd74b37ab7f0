#pragma once

#include <optional>
#include <vector>

#include "loonmesh/link_params.hpp"
#include "loonmesh/topology.hpp"

namespace loonmesh::routing {

// p = clamp(alpha*min(1, d/R)^2 + beta*mean load fraction
//           + gamma*(level_u + level_v)/4, p_floor, p_ceil)
double link_failure_probability(const topology::BalloonNode& u,
                                const topology::BalloonNode& v,
                                const LinkProbabilityParams& params);

struct RouteResult {
  std::vector<NodeId> path;  // src first, dst last
  double reliability = 0.0;  // product of (1 - p) over path edges
  int hop_count = 0;
};

// Maximizes the product of effective probabilities over paths whose interior
// nodes are not Passive; shortest path under weight -ln(1 - p). Ties break by
// fewer hops, then the lexicographically smallest id sequence. nullopt means
// no admissible route exists.
std::optional<RouteResult> best_path(const topology::MeshTopology& topo,
                                     const NodeId& src, const NodeId& dst);

// Fewest-hops baseline under the same admissibility rule; ties break by the
// lexicographically smallest id sequence.
std::optional<RouteResult> min_hop_path(const topology::MeshTopology& topo,
                                        const NodeId& src, const NodeId& dst);

// Product of (1 - p) over the path's edges. Throws NotAPath when a
// consecutive pair has no edge or the path has fewer than 2 nodes.
double path_reliability(const topology::MeshTopology& topo,
                        const std::vector<NodeId>& path);

}  // namespace loonmesh::routing
