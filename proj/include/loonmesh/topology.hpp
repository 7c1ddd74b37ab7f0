#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "loonmesh/geometry.hpp"
#include "loonmesh/link_params.hpp"

namespace loonmesh::topology {

enum class NodeRole { CoreActive, Passive, Ordinary };

struct BalloonNode {
  NodeId id;
  geometry::PolarPosition position;
  int load = 0;
  int max_load = 10;
  double bandwidth_mbps = 54.0;
  double signal_power = 1.0;
  bool reachable_from_gap = false;
  int priority_level = 1;  // 0 core-active, 1 ordinary, 2 passive
  NodeRole role = NodeRole::Ordinary;

  void validate() const;  // throws std::invalid_argument
};

struct LinkEdge {
  NodeId a, b;  // a < b
  double distance_km = 0.0;
  double failure_probability = 0.0;

  double effective_probability() const { return 1.0 - failure_probability; }
};

struct MeshParams {
  double radio_range_km = 40.0;
  double density_threshold = 0.000625;  // unit transmit power at 40 km
  double d_min_km = 0.1;
  int t_max = 8;
  int h_max = 3;
  int max_hop = 2;
  routing::LinkProbabilityParams link;
  double gap_x_km = 0.0;
  double gap_y_km = 0.0;
  double gap_range_km = 40.0;
  double percolation_degree_threshold = 4.0;

  void validate() const;  // throws std::invalid_argument
};

struct MeshTopology {
  MeshParams params;
  std::map<NodeId, BalloonNode> nodes;
  std::map<NodeId, geometry::CartesianPoint> positions;
  std::vector<LinkEdge> edges;  // sorted by (a, b)
  std::map<NodeId, std::vector<NodeId>> adjacency;
  bool hull_degenerate = false;
  geometry::ConvexHull hull;  // empty when degenerate
  geometry::SectorPartition partition;
  std::vector<std::pair<NodeId, NodeId>> mst_edges;
  bool subcritical = false;

  const LinkEdge* find_edge(const NodeId& a, const NodeId& b) const;
  int degree(const NodeId& id) const;
  bool is_hull_vertex(const NodeId& id) const;
  double radial_distance(const NodeId& id) const;  // from partition origin
  double mean_degree() const;
  void rebuild_adjacency();
};

double power_density(double transmit_power, double distance_km, double d_min_km);

// Peers within radio range whose received power density meets the threshold,
// plus the single strongest in-range transmitter regardless of threshold
// (ties go to the smallest id). An empty result marks the node isolated.
std::vector<NodeId> discover_neighbors(const MeshTopology& topo, const NodeId& id,
                                       double radio_range_km, double density_threshold);

// Unweighted hop distances from start; unreachable nodes are absent.
std::map<NodeId, int> bfs_hops(const std::map<NodeId, std::vector<NodeId>>& adjacency,
                               const NodeId& start);

MeshTopology build_mesh(const std::vector<BalloonNode>& nodes, const MeshParams& params);

// Recomputes every edge's failure probability from current node state.
void refresh_link_probabilities(MeshTopology& topo);

enum class ChurnCase {
  InteriorAdd,
  ExteriorAdd,
  InteriorRemove,
  HullVertexRemove,
  InteriorDrift,
  BoundaryDrift,
};

const char* churn_case_name(ChurnCase c);

struct ReconfigReport {
  ChurnCase churn_case = ChurnCase::InteriorAdd;
  bool hull_recomputed = false;
  bool repartitioned = false;  // full re-sector
  // Sectors whose member set or leader changed; each non-empty one costs one
  // notification to its leader.
  std::vector<int> notified_sectors;

  std::size_t control_messages() const { return notified_sectors.size(); }
};

struct TransitionResult {
  MeshTopology topo;
  ReconfigReport report;
};

TransitionResult add_node(const MeshTopology& topo, const BalloonNode& node);
TransitionResult remove_node(const MeshTopology& topo, const NodeId& id);
TransitionResult move_node(const MeshTopology& topo, const NodeId& id,
                           const geometry::PolarPosition& new_position);

}  // namespace loonmesh::topology
