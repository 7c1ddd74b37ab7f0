#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace loonmesh {

using NodeId = std::string;

namespace geometry {

inline constexpr double kTwoPi = 6.283185307179586476925287;

// Absolute tolerance for positional comparisons, in km.
inline constexpr double kTolKm = 1e-9;

// Wraps an angle into [0, 2*pi).
double normalize_angle(double rad);

struct PolarPosition {
  double radius_km = 0.0;
  double angle_rad = 0.0;  // kept normalized to [0, 2*pi)
  double altitude_km = 0.0;

  PolarPosition() = default;
  PolarPosition(double radius_km, double angle_rad, double altitude_km);
};

struct CartesianPoint {
  double x = 0.0;
  double y = 0.0;
};

// Horizontal projection; altitude is dropped.
CartesianPoint to_cartesian(const PolarPosition& p);

double distance(const CartesianPoint& a, const CartesianPoint& b);

struct ConvexHull {
  std::vector<NodeId> vertices;         // counterclockwise
  std::vector<CartesianPoint> polygon;  // positions matching `vertices`
  CartesianPoint centroid;              // mean of hull vertex positions

  bool is_vertex(const NodeId& id) const;
  bool contains(const CartesianPoint& p, double tol = kTolKm) const;
  bool strictly_inside(const CartesianPoint& p, double tol = kTolKm) const;
};

// Strict hull: collinear boundary points are not vertices. Coincident input
// points are collapsed to the smallest id before the scan. Throws
// DegenerateInput for fewer than 3 distinct points or an all-collinear set.
ConvexHull compute_convex_hull(const std::map<NodeId, CartesianPoint>& points);

struct Sector {
  int index = 0;
  std::vector<NodeId> members;  // sorted by id
  std::optional<NodeId> leader;
};

struct SectorPartition {
  int sector_count = 1;
  double sector_angle = kTwoPi;
  CartesianPoint origin;
  std::vector<Sector> sectors;

  // Half-open wedges [k*angle, (k+1)*angle); the origin itself maps to 0.
  int sector_of(const CartesianPoint& p) const;
  std::optional<int> sector_index_of(const NodeId& id) const;
};

struct SectorCount {
  int sector_count = 1;
  double sector_angle = kTwoPi;
};

// S = max(1, ceil(n_total / t_max), ceil(n_hull / h_max)), theta = 2*pi / S.
SectorCount sector_angle(int n_total, int n_hull, int t_max, int h_max);

SectorPartition partition_sectors(const std::map<NodeId, CartesianPoint>& nodes,
                                  const ConvexHull& hull, int sector_count);

// Fallback partition for topologies too small to carry a hull. Origin is the
// mean of all node positions.
SectorPartition single_sector_partition(const std::map<NodeId, CartesianPoint>& nodes);

enum class Direction { CW, CCW, None };

// Shorter rotational direction from src to dst; ties go CCW.
Direction angular_direction(int src_sector, int dst_sector, int sector_count);

// min(cw, ccw) sector hop distance.
int angular_distance(int a, int b, int sector_count);

}  // namespace geometry
}  // namespace loonmesh
