#include "loonmesh/routing.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

#include "loonmesh/errors.hpp"

namespace loonmesh::routing {

void LinkProbabilityParams::validate() const {
  if (alpha < 0.0 || beta < 0.0 || gamma < 0.0) {
    throw std::invalid_argument("link weights must be non-negative");
  }
  if (std::abs(alpha + beta + gamma - 1.0) > 1e-12) {
    throw std::invalid_argument("alpha + beta + gamma must equal 1");
  }
  if (!(p_floor > 0.0 && p_floor < p_ceil && p_ceil < 1.0)) {
    throw std::invalid_argument("need 0 < p_floor < p_ceil < 1");
  }
  if (!(radio_range_km > 0.0)) throw std::invalid_argument("radio_range_km must be > 0");
}

double link_failure_probability(const topology::BalloonNode& u,
                                const topology::BalloonNode& v,
                                const LinkProbabilityParams& params) {
  if (u.id == v.id) throw std::invalid_argument("link endpoints must differ");
  params.validate();
  double d = geometry::distance(geometry::to_cartesian(u.position),
                                geometry::to_cartesian(v.position));
  double dn = std::min(1.0, d / params.radio_range_km);
  double load_term = (static_cast<double>(u.load) / u.max_load +
                      static_cast<double>(v.load) / v.max_load) / 2.0;
  double priority_term = static_cast<double>(u.priority_level + v.priority_level) / 4.0;
  double raw = params.alpha * dn * dn + params.beta * load_term + params.gamma * priority_term;
  return std::clamp(raw, params.p_floor, params.p_ceil);
}

namespace {

struct Label {
  double cost = 0.0;  // sum of per-edge weights
  int hops = 0;
  std::vector<NodeId> path;
};

// Smaller cost, then fewer hops, then lexicographically smaller id sequence.
bool better(const Label& a, const Label& b) {
  if (a.cost != b.cost) return a.cost < b.cost;
  if (a.hops != b.hops) return a.hops < b.hops;
  return a.path < b.path;
}

// Label-correcting search over admissible paths: Passive nodes never relay,
// so only the source and non-passive nodes expand. Edge weights are strictly
// positive, which keeps optimal labels simple paths.
template <typename WeightFn>
std::optional<RouteResult> find_path(const topology::MeshTopology& topo, const NodeId& src,
                                     const NodeId& dst, WeightFn&& weight) {
  if (src == dst) throw std::invalid_argument("src and dst must differ");
  if (!topo.nodes.count(src)) throw UnknownNode("unknown node id: " + src);
  if (!topo.nodes.count(dst)) throw UnknownNode("unknown node id: " + dst);

  std::map<NodeId, Label> best;
  best[src] = Label{0.0, 0, {src}};
  std::deque<NodeId> queue{src};
  std::set<NodeId> queued{src};

  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop_front();
    queued.erase(u);
    if (u != src && topo.nodes.at(u).role == topology::NodeRole::Passive) continue;
    Label base = best.at(u);
    auto adj = topo.adjacency.find(u);
    if (adj == topo.adjacency.end()) continue;
    for (const auto& v : adj->second) {
      const auto* e = topo.find_edge(u, v);
      Label cand;
      cand.cost = base.cost + weight(*e);
      cand.hops = base.hops + 1;
      cand.path = base.path;
      cand.path.push_back(v);
      auto it = best.find(v);
      if (it == best.end() || better(cand, it->second)) {
        best[v] = std::move(cand);
        if (queued.insert(v).second) queue.push_back(v);
      }
    }
  }

  auto it = best.find(dst);
  if (it == best.end()) return std::nullopt;
  RouteResult result;
  result.path = it->second.path;
  result.hop_count = it->second.hops;
  result.reliability = path_reliability(topo, result.path);
  return result;
}

}  // namespace

std::optional<RouteResult> best_path(const topology::MeshTopology& topo, const NodeId& src,
                                     const NodeId& dst) {
  return find_path(topo, src, dst,
                   [](const topology::LinkEdge& e) {
                     return -std::log(e.effective_probability());
                   });
}

std::optional<RouteResult> min_hop_path(const topology::MeshTopology& topo, const NodeId& src,
                                        const NodeId& dst) {
  return find_path(topo, src, dst, [](const topology::LinkEdge&) { return 1.0; });
}

double path_reliability(const topology::MeshTopology& topo, const std::vector<NodeId>& path) {
  if (path.size() < 2) throw NotAPath("a path needs at least 2 nodes");
  double product = 1.0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const auto* e = topo.find_edge(path[i], path[i + 1]);
    if (e == nullptr) {
      throw NotAPath("no edge between " + path[i] + " and " + path[i + 1]);
    }
    product *= e->effective_probability();
  }
  return product;
}

}  // namespace loonmesh::routing
