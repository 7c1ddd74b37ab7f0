#include "loonmesh/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "loonmesh/errors.hpp"

namespace loonmesh::geometry {

double normalize_angle(double rad) {
  double a = std::fmod(rad, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

PolarPosition::PolarPosition(double r, double theta, double alt)
    : radius_km(r), angle_rad(normalize_angle(theta)), altitude_km(alt) {
  if (!std::isfinite(r) || !std::isfinite(theta) || !std::isfinite(alt)) {
    throw std::invalid_argument("polar position components must be finite");
  }
  if (r < 0.0) throw std::invalid_argument("radius_km must be >= 0");
  if (alt < 0.0) throw std::invalid_argument("altitude_km must be >= 0");
}

CartesianPoint to_cartesian(const PolarPosition& p) {
  return {p.radius_km * std::cos(p.angle_rad), p.radius_km * std::sin(p.angle_rad)};
}

double distance(const CartesianPoint& a, const CartesianPoint& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

namespace {

double cross(const CartesianPoint& o, const CartesianPoint& a, const CartesianPoint& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Signed distance of p from the directed edge a->b; positive on the left.
double edge_signed_distance(const CartesianPoint& a, const CartesianPoint& b,
                            const CartesianPoint& p) {
  double len = distance(a, b);
  return cross(a, b, p) / len;
}

}  // namespace

bool ConvexHull::is_vertex(const NodeId& id) const {
  return std::find(vertices.begin(), vertices.end(), id) != vertices.end();
}

bool ConvexHull::contains(const CartesianPoint& p, double tol) const {
  if (polygon.size() < 3) return false;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const auto& a = polygon[i];
    const auto& b = polygon[(i + 1) % polygon.size()];
    if (edge_signed_distance(a, b, p) < -tol) return false;
  }
  return true;
}

bool ConvexHull::strictly_inside(const CartesianPoint& p, double tol) const {
  if (polygon.size() < 3) return false;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const auto& a = polygon[i];
    const auto& b = polygon[(i + 1) % polygon.size()];
    if (edge_signed_distance(a, b, p) <= tol) return false;
  }
  return true;
}

ConvexHull compute_convex_hull(const std::map<NodeId, CartesianPoint>& points) {
  if (points.size() < 3) {
    throw DegenerateInput("convex hull needs at least 3 points");
  }

  struct Entry {
    double x, y;
    NodeId id;
  };
  std::vector<Entry> pts;
  pts.reserve(points.size());
  for (const auto& [id, c] : points) {
    if (!std::isfinite(c.x) || !std::isfinite(c.y)) {
      throw std::invalid_argument("hull input coordinates must be finite");
    }
    pts.push_back({c.x, c.y, id});
  }
  std::sort(pts.begin(), pts.end(), [](const Entry& a, const Entry& b) {
    return std::tie(a.x, a.y, a.id) < std::tie(b.x, b.y, b.id);
  });
  // Collapse coincident points; the smallest id represents the location.
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Entry& a, const Entry& b) {
                          return a.x == b.x && a.y == b.y;
                        }),
            pts.end());
  if (pts.size() < 3) {
    throw DegenerateInput("convex hull needs at least 3 distinct points");
  }

  auto turn = [](const Entry& o, const Entry& a, const Entry& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
  };

  // Monotone chain keeping only strict left turns.
  std::vector<Entry> lower;
  for (const auto& p : pts) {
    while (lower.size() >= 2 && turn(lower[lower.size() - 2], lower.back(), p) <= 0.0) {
      lower.pop_back();
    }
    lower.push_back(p);
  }
  std::vector<Entry> upper;
  for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
    while (upper.size() >= 2 && turn(upper[upper.size() - 2], upper.back(), *it) <= 0.0) {
      upper.pop_back();
    }
    upper.push_back(*it);
  }

  std::vector<Entry> ring;
  ring.insert(ring.end(), lower.begin(), lower.end() - 1);
  ring.insert(ring.end(), upper.begin(), upper.end() - 1);
  if (ring.size() < 3) {
    throw DegenerateInput("all points are collinear");
  }

  ConvexHull hull;
  hull.vertices.reserve(ring.size());
  hull.polygon.reserve(ring.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& e : ring) {
    hull.vertices.push_back(e.id);
    hull.polygon.push_back({e.x, e.y});
    sx += e.x;
    sy += e.y;
  }
  hull.centroid = {sx / static_cast<double>(ring.size()),
                   sy / static_cast<double>(ring.size())};
  return hull;
}

SectorCount sector_angle(int n_total, int n_hull, int t_max, int h_max) {
  if (n_total < 1) throw std::invalid_argument("n_total must be >= 1");
  if (n_hull < 0) throw std::invalid_argument("n_hull must be >= 0");
  if (t_max < 1) throw std::invalid_argument("t_max must be >= 1");
  if (h_max < 1) throw std::invalid_argument("h_max must be >= 1");
  int by_total = (n_total + t_max - 1) / t_max;
  int by_hull = (n_hull + h_max - 1) / h_max;
  int s = std::max({1, by_total, by_hull});
  return {s, kTwoPi / static_cast<double>(s)};
}

int SectorPartition::sector_of(const CartesianPoint& p) const {
  double dx = p.x - origin.x;
  double dy = p.y - origin.y;
  if (std::hypot(dx, dy) <= kTolKm) return 0;
  double phi = normalize_angle(std::atan2(dy, dx));
  int k = static_cast<int>(std::floor(phi / sector_angle));
  return std::min(k, sector_count - 1);
}

std::optional<int> SectorPartition::sector_index_of(const NodeId& id) const {
  for (const auto& s : sectors) {
    if (std::binary_search(s.members.begin(), s.members.end(), id)) return s.index;
  }
  return std::nullopt;
}

SectorPartition partition_sectors(const std::map<NodeId, CartesianPoint>& nodes,
                                  const ConvexHull& hull, int sector_count) {
  if (sector_count < 1) throw std::invalid_argument("sector_count must be >= 1");
  SectorPartition part;
  part.sector_count = sector_count;
  part.sector_angle = kTwoPi / static_cast<double>(sector_count);
  part.origin = hull.centroid;
  part.sectors.resize(sector_count);
  for (int k = 0; k < sector_count; ++k) part.sectors[k].index = k;
  for (const auto& [id, pos] : nodes) {
    part.sectors[part.sector_of(pos)].members.push_back(id);
  }
  return part;
}

SectorPartition single_sector_partition(const std::map<NodeId, CartesianPoint>& nodes) {
  SectorPartition part;
  part.sector_count = 1;
  part.sector_angle = kTwoPi;
  part.sectors.resize(1);
  part.sectors[0].index = 0;
  double sx = 0.0, sy = 0.0;
  for (const auto& [id, pos] : nodes) {
    part.sectors[0].members.push_back(id);
    sx += pos.x;
    sy += pos.y;
  }
  if (!nodes.empty()) {
    part.origin = {sx / static_cast<double>(nodes.size()),
                   sy / static_cast<double>(nodes.size())};
  }
  return part;
}

Direction angular_direction(int src_sector, int dst_sector, int sector_count) {
  if (sector_count < 1) throw std::invalid_argument("sector_count must be >= 1");
  if (src_sector < 0 || src_sector >= sector_count || dst_sector < 0 ||
      dst_sector >= sector_count) {
    throw std::invalid_argument("sector index out of range");
  }
  if (src_sector == dst_sector) return Direction::None;
  int d_ccw = (dst_sector - src_sector + sector_count) % sector_count;
  int d_cw = (src_sector - dst_sector + sector_count) % sector_count;
  return d_ccw <= d_cw ? Direction::CCW : Direction::CW;
}

int angular_distance(int a, int b, int sector_count) {
  int d_ccw = (b - a + sector_count) % sector_count;
  int d_cw = (a - b + sector_count) % sector_count;
  return std::min(d_ccw, d_cw);
}

}  // namespace loonmesh::geometry
