#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "loonmesh/protocol.hpp"
#include "loonmesh/routing.hpp"
#include "loonmesh/topology.hpp"

namespace loonmesh::simulation {

struct AddEvent {
  topology::BalloonNode node;
};

struct RemoveEvent {
  NodeId id;
};

struct DriftEvent {
  NodeId id;
  double radius_km = 0.0;
  double angle_rad = 0.0;
  std::optional<double> altitude_km;  // absent keeps the node's altitude
};

struct SendEvent {
  NodeId src, dst;
};

struct SimEvent {
  std::int64_t time = 0;
  std::variant<AddEvent, RemoveEvent, DriftEvent, SendEvent> body;
};

struct ScenarioConfig {
  std::vector<topology::BalloonNode> initial_nodes;
  topology::MeshParams params;
  std::vector<SimEvent> events;
  std::uint64_t rng_seed = 0;
};

enum class BaselineMode { AllActive, MinHop };

struct EventRecord {
  int index = 0;
  std::int64_t time = 0;
  std::string kind;  // "add" | "remove" | "drift" | "send"
  // churn fields
  std::string churn_case;
  bool hull_recomputed = false;
  bool repartitioned = false;
  std::uint64_t notifications = 0;
  // send fields
  NodeId src, dst;
  int control_hops = -1;
  bool route_found = false;
  std::uint64_t hop_count = 0;
  double reliability = 0.0;
  bool delivered = false;
  // post-event state
  bool subcritical = false;
};

struct MetricsReport {
  std::uint64_t packets_sent = 0;
  std::uint64_t packets_delivered = 0;
  std::uint64_t packets_dropped_link_failure = 0;
  std::uint64_t packets_failed_no_route = 0;
  std::optional<double> pdr;  // absent when packets_sent == 0
  std::uint64_t control_messages = 0;
  double mean_hops = 0.0;  // over sends that found a route
  std::uint64_t hull_recomputes = 0;
  std::uint64_t sector_reconfigs = 0;
  std::uint64_t subcritical_ticks = 0;  // initial build plus each event
  std::vector<EventRecord> event_log;
};

struct ScenarioFault {
  int event_index = -1;  // -1 = config-level fault
  std::string message;
};

// Static and reference validation; nullopt when the scenario is runnable.
std::optional<ScenarioFault> validate_scenario(const ScenarioConfig& config);

// Applies events in order. SEND runs leader-based info gathering, then
// best-path selection, then one Bernoulli trial per path edge from the
// event's stream; no retransmission. Throws InvalidScenario on a fault.
MetricsReport run_scenario(const ScenarioConfig& config);

// ALL_ACTIVE: every node Ordinary/level 1, lookups flood (one message per
// node), no reconfiguration notices. MIN_HOP: DCB roles kept, paths by fewest
// hops. Both consume the same per-event streams as run_scenario.
MetricsReport run_baseline(const ScenarioConfig& config, BaselineMode mode);

}  // namespace loonmesh::simulation
