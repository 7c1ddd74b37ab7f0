#include "loonmesh/simulation.hpp"

#include <algorithm>
#include <set>

#include "loonmesh/errors.hpp"
#include "loonmesh/rng.hpp"

namespace loonmesh::simulation {

namespace {

enum class RunMode { Dcb, AllActive, MinHop };

struct EventVisitor {
  const char* kind(const AddEvent&) const { return "add"; }
  const char* kind(const RemoveEvent&) const { return "remove"; }
  const char* kind(const DriftEvent&) const { return "drift"; }
  const char* kind(const SendEvent&) const { return "send"; }
};

void strip_roles(topology::MeshTopology& topo) {
  for (auto& [id, node] : topo.nodes) {
    node.role = topology::NodeRole::Ordinary;
    node.priority_level = 1;
  }
  topology::refresh_link_probabilities(topo);
}

geometry::PolarPosition drift_target(const DriftEvent& ev,
                                     const topology::BalloonNode& node) {
  double alt = ev.altitude_km.value_or(node.position.altitude_km);
  return geometry::PolarPosition(ev.radius_km, ev.angle_rad, alt);
}

MetricsReport run_impl(const ScenarioConfig& config, RunMode mode) {
  if (auto fault = validate_scenario(config)) {
    throw InvalidScenario(fault->event_index, fault->message);
  }

  auto topo = topology::build_mesh(config.initial_nodes, config.params);
  if (mode == RunMode::AllActive) strip_roles(topo);

  MetricsReport report;
  if (topo.subcritical) ++report.subcritical_ticks;

  std::uint64_t routed_sends = 0;
  std::uint64_t total_hops = 0;
  std::map<std::int64_t, std::uint64_t> rank_at_time;

  for (std::size_t i = 0; i < config.events.size(); ++i) {
    const auto& ev = config.events[i];
    EventStream stream(config.rng_seed, ev.time, rank_at_time[ev.time]++);

    EventRecord rec;
    rec.index = static_cast<int>(i);
    rec.time = ev.time;
    rec.kind = std::visit([](const auto& body) { return EventVisitor{}.kind(body); },
                          ev.body);

    auto apply_churn = [&](topology::TransitionResult&& result) {
      topo = std::move(result.topo);
      if (mode == RunMode::AllActive) strip_roles(topo);
      rec.churn_case = topology::churn_case_name(result.report.churn_case);
      rec.hull_recomputed = result.report.hull_recomputed;
      rec.repartitioned = result.report.repartitioned;
      if (result.report.hull_recomputed) ++report.hull_recomputes;
      if (result.report.repartitioned) ++report.sector_reconfigs;
      if (mode != RunMode::AllActive) {
        rec.notifications = result.report.control_messages();
        report.control_messages += rec.notifications;
      }
    };

    if (const auto* add = std::get_if<AddEvent>(&ev.body)) {
      apply_churn(topology::add_node(topo, add->node));
    } else if (const auto* rem = std::get_if<RemoveEvent>(&ev.body)) {
      apply_churn(topology::remove_node(topo, rem->id));
    } else if (const auto* drift = std::get_if<DriftEvent>(&ev.body)) {
      apply_churn(topology::move_node(topo, drift->id,
                                      drift_target(*drift, topo.nodes.at(drift->id))));
    } else {
      const auto& send = std::get<SendEvent>(ev.body);
      rec.src = send.src;
      rec.dst = send.dst;
      ++report.packets_sent;

      std::optional<routing::RouteResult> route;
      if (mode == RunMode::AllActive) {
        rec.notifications = topo.nodes.size();  // flooded lookup
        report.control_messages += rec.notifications;
        route = routing::best_path(topo, send.src, send.dst);
      } else {
        auto directory = protocol::build_directory(topo);
        auto trace = protocol::gather_destination_info(send.src, send.dst, directory,
                                                       topo.partition, topo);
        if (trace) {
          rec.control_hops = trace->control_hops;
          rec.notifications = trace->message_count();
          report.control_messages += rec.notifications;
          route = mode == RunMode::MinHop ? routing::min_hop_path(topo, send.src, send.dst)
                                          : routing::best_path(topo, send.src, send.dst);
        }
      }

      if (!route) {
        ++report.packets_failed_no_route;
      } else {
        rec.route_found = true;
        rec.hop_count = static_cast<std::uint64_t>(route->hop_count);
        rec.reliability = route->reliability;
        ++routed_sends;
        total_hops += rec.hop_count;
        bool ok = true;
        for (std::size_t h = 0; h + 1 < route->path.size(); ++h) {
          const auto* e = topo.find_edge(route->path[h], route->path[h + 1]);
          if (stream.uniform01() >= e->effective_probability()) ok = false;
        }
        if (ok) {
          rec.delivered = true;
          ++report.packets_delivered;
        } else {
          ++report.packets_dropped_link_failure;
        }
      }
    }

    rec.subcritical = topo.subcritical;
    if (topo.subcritical) ++report.subcritical_ticks;
    report.event_log.push_back(std::move(rec));
  }

  if (report.packets_sent > 0) {
    report.pdr = static_cast<double>(report.packets_delivered) /
                 static_cast<double>(report.packets_sent);
  }
  if (routed_sends > 0) {
    report.mean_hops = static_cast<double>(total_hops) / static_cast<double>(routed_sends);
  }
  return report;
}

}  // namespace

std::optional<ScenarioFault> validate_scenario(const ScenarioConfig& config) {
  try {
    config.params.validate();
  } catch (const std::exception& e) {
    return ScenarioFault{-1, std::string("params: ") + e.what()};
  }
  if (config.initial_nodes.empty()) {
    return ScenarioFault{-1, "scenario needs at least one initial node"};
  }
  std::set<NodeId> ids;
  for (const auto& n : config.initial_nodes) {
    try {
      n.validate();
    } catch (const std::exception& e) {
      return ScenarioFault{-1, "node " + n.id + ": " + e.what()};
    }
    if (!ids.insert(n.id).second) {
      return ScenarioFault{-1, "duplicate initial node id: " + n.id};
    }
  }

  std::int64_t last_time = 0;
  for (std::size_t i = 0; i < config.events.size(); ++i) {
    const auto& ev = config.events[i];
    int idx = static_cast<int>(i);
    if (i > 0 && ev.time < last_time) {
      return ScenarioFault{idx, "event timestamps must be non-decreasing"};
    }
    last_time = ev.time;

    if (const auto* add = std::get_if<AddEvent>(&ev.body)) {
      try {
        add->node.validate();
      } catch (const std::exception& e) {
        return ScenarioFault{idx, "add node " + add->node.id + ": " + e.what()};
      }
      if (!ids.insert(add->node.id).second) {
        return ScenarioFault{idx, "add of existing node id: " + add->node.id};
      }
    } else if (const auto* rem = std::get_if<RemoveEvent>(&ev.body)) {
      if (!ids.erase(rem->id)) {
        return ScenarioFault{idx, "remove of unknown node id: " + rem->id};
      }
    } else if (const auto* drift = std::get_if<DriftEvent>(&ev.body)) {
      if (!ids.count(drift->id)) {
        return ScenarioFault{idx, "drift of unknown node id: " + drift->id};
      }
      if (!(drift->radius_km >= 0.0)) {
        return ScenarioFault{idx, "drift radius_km must be >= 0"};
      }
      if (drift->altitude_km && !(*drift->altitude_km >= 0.0)) {
        return ScenarioFault{idx, "drift altitude_km must be >= 0"};
      }
    } else {
      const auto& send = std::get<SendEvent>(ev.body);
      if (send.src == send.dst) {
        return ScenarioFault{idx, "send src and dst must differ"};
      }
      if (!ids.count(send.src)) {
        return ScenarioFault{idx, "send from unknown node id: " + send.src};
      }
      if (!ids.count(send.dst)) {
        return ScenarioFault{idx, "send to unknown node id: " + send.dst};
      }
    }
  }
  return std::nullopt;
}

MetricsReport run_scenario(const ScenarioConfig& config) {
  return run_impl(config, RunMode::Dcb);
}

MetricsReport run_baseline(const ScenarioConfig& config, BaselineMode mode) {
  return run_impl(config, mode == BaselineMode::AllActive ? RunMode::AllActive
                                                          : RunMode::MinHop);
}

}  // namespace loonmesh::simulation
