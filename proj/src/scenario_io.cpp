#include "loonmesh/scenario_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <sstream>

#include "json.hpp"
#include "loonmesh/errors.hpp"

namespace loonmesh::io {

namespace {

using json = nlohmann::ordered_json;

// Nearest double to the value printed with 12 significant digits.
double canon12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
}

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                         const std::string& path) {
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw SchemaError(path + "/" + key, "unknown key");
  }
}

const json* find(const json& j, const std::string& key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

double get_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "expected a number");
  double v = j.get<double>();
  if (!std::isfinite(v)) throw SchemaError(path, "expected a finite number");
  return v;
}

int get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
  return j.get<int>();
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaError(path, "expected a string");
  return j.get<std::string>();
}

std::uint64_t get_u64(const json& j, const std::string& path) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(j.get<std::int64_t>());
  }
  throw SchemaError(path, "expected a non-negative integer");
}

topology::BalloonNode parse_node(const json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown_keys(j,
                      {"id", "radius_km", "angle_rad", "altitude_km", "load", "max_load",
                       "bandwidth_mbps", "signal_power"},
                      path);
  topology::BalloonNode node;
  const json* id = find(j, "id");
  if (!id) throw SchemaError(path, "missing required key \"id\"");
  node.id = get_string(*id, path + "/id");
  if (node.id.empty()) throw SchemaError(path + "/id", "id must be non-empty");

  const json* radius = find(j, "radius_km");
  if (!radius) throw SchemaError(path, "missing required key \"radius_km\"");
  double r = get_number(*radius, path + "/radius_km");
  if (r < 0.0) throw SchemaError(path + "/radius_km", "must be >= 0");

  const json* angle = find(j, "angle_rad");
  if (!angle) throw SchemaError(path, "missing required key \"angle_rad\"");
  double theta = get_number(*angle, path + "/angle_rad");

  double altitude = 20.0;
  if (const json* alt = find(j, "altitude_km")) {
    altitude = get_number(*alt, path + "/altitude_km");
    if (altitude < 0.0) throw SchemaError(path + "/altitude_km", "must be >= 0");
  }
  node.position = geometry::PolarPosition(r, theta, altitude);

  if (const json* load = find(j, "load")) {
    node.load = get_int(*load, path + "/load");
    if (node.load < 0) throw SchemaError(path + "/load", "must be >= 0");
  }
  if (const json* max_load = find(j, "max_load")) {
    node.max_load = get_int(*max_load, path + "/max_load");
    if (node.max_load < 1) throw SchemaError(path + "/max_load", "must be >= 1");
  }
  if (node.load > node.max_load) throw SchemaError(path + "/load", "must be <= max_load");
  if (const json* bw = find(j, "bandwidth_mbps")) {
    node.bandwidth_mbps = get_number(*bw, path + "/bandwidth_mbps");
    if (!(node.bandwidth_mbps > 0.0)) throw SchemaError(path + "/bandwidth_mbps", "must be > 0");
  }
  if (const json* sp = find(j, "signal_power")) {
    node.signal_power = get_number(*sp, path + "/signal_power");
    if (!(node.signal_power > 0.0)) throw SchemaError(path + "/signal_power", "must be > 0");
  }
  return node;
}

topology::MeshParams parse_params(const json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown_keys(j,
                      {"radio_range_km", "density_threshold", "d_min_km", "t_max", "h_max",
                       "max_hop", "alpha", "beta", "gamma", "p_floor", "p_ceil", "gap_x_km",
                       "gap_y_km", "gap_range_km", "percolation_degree_threshold"},
                      path);
  topology::MeshParams p;
  auto num = [&](const char* key, double& out) {
    if (const json* v = find(j, key)) out = get_number(*v, path + "/" + key);
  };
  auto integer = [&](const char* key, int& out) {
    if (const json* v = find(j, key)) out = get_int(*v, path + "/" + key);
  };
  num("radio_range_km", p.radio_range_km);
  num("density_threshold", p.density_threshold);
  num("d_min_km", p.d_min_km);
  integer("t_max", p.t_max);
  integer("h_max", p.h_max);
  integer("max_hop", p.max_hop);
  num("alpha", p.link.alpha);
  num("beta", p.link.beta);
  num("gamma", p.link.gamma);
  num("p_floor", p.link.p_floor);
  num("p_ceil", p.link.p_ceil);
  num("gap_x_km", p.gap_x_km);
  num("gap_y_km", p.gap_y_km);
  num("gap_range_km", p.gap_range_km);
  num("percolation_degree_threshold", p.percolation_degree_threshold);
  p.link.radio_range_km = p.radio_range_km;
  try {
    p.validate();
  } catch (const std::exception& e) {
    throw SchemaError(path, e.what());
  }
  return p;
}

simulation::SimEvent parse_event(const json& j, const std::string& path) {
  require_object(j, path);
  const json* time = find(j, "time");
  if (!time) throw SchemaError(path, "missing required key \"time\"");
  if (!time->is_number_integer()) throw SchemaError(path + "/time", "expected an integer");
  const json* kind = find(j, "kind");
  if (!kind) throw SchemaError(path, "missing required key \"kind\"");
  std::string k = get_string(*kind, path + "/kind");

  simulation::SimEvent ev;
  ev.time = time->get<std::int64_t>();

  if (k == "add") {
    reject_unknown_keys(j, {"time", "kind", "node"}, path);
    const json* node = find(j, "node");
    if (!node) throw SchemaError(path, "add event needs key \"node\"");
    ev.body = simulation::AddEvent{parse_node(*node, path + "/node")};
  } else if (k == "remove") {
    reject_unknown_keys(j, {"time", "kind", "id"}, path);
    const json* id = find(j, "id");
    if (!id) throw SchemaError(path, "remove event needs key \"id\"");
    ev.body = simulation::RemoveEvent{get_string(*id, path + "/id")};
  } else if (k == "drift") {
    reject_unknown_keys(j, {"time", "kind", "id", "radius_km", "angle_rad", "altitude_km"},
                        path);
    simulation::DriftEvent drift;
    const json* id = find(j, "id");
    if (!id) throw SchemaError(path, "drift event needs key \"id\"");
    drift.id = get_string(*id, path + "/id");
    const json* radius = find(j, "radius_km");
    if (!radius) throw SchemaError(path, "drift event needs key \"radius_km\"");
    drift.radius_km = get_number(*radius, path + "/radius_km");
    if (drift.radius_km < 0.0) throw SchemaError(path + "/radius_km", "must be >= 0");
    const json* angle = find(j, "angle_rad");
    if (!angle) throw SchemaError(path, "drift event needs key \"angle_rad\"");
    drift.angle_rad = get_number(*angle, path + "/angle_rad");
    if (const json* alt = find(j, "altitude_km")) {
      double a = get_number(*alt, path + "/altitude_km");
      if (a < 0.0) throw SchemaError(path + "/altitude_km", "must be >= 0");
      drift.altitude_km = a;
    }
    ev.body = drift;
  } else if (k == "send") {
    reject_unknown_keys(j, {"time", "kind", "src", "dst"}, path);
    const json* src = find(j, "src");
    if (!src) throw SchemaError(path, "send event needs key \"src\"");
    const json* dst = find(j, "dst");
    if (!dst) throw SchemaError(path, "send event needs key \"dst\"");
    ev.body = simulation::SendEvent{get_string(*src, path + "/src"),
                                    get_string(*dst, path + "/dst")};
  } else {
    throw SchemaError(path + "/kind", "expected one of add, remove, drift, send");
  }
  return ev;
}

json node_to_json(const topology::BalloonNode& n) {
  json j;
  j["id"] = n.id;
  j["radius_km"] = n.position.radius_km;
  j["angle_rad"] = n.position.angle_rad;
  j["altitude_km"] = n.position.altitude_km;
  j["load"] = n.load;
  j["max_load"] = n.max_load;
  j["bandwidth_mbps"] = n.bandwidth_mbps;
  j["signal_power"] = n.signal_power;
  return j;
}

json params_to_json(const topology::MeshParams& p, bool canonical) {
  auto d = [&](double x) { return canonical ? canon12(x) : x; };
  json j;
  j["radio_range_km"] = d(p.radio_range_km);
  j["density_threshold"] = d(p.density_threshold);
  j["d_min_km"] = d(p.d_min_km);
  j["t_max"] = p.t_max;
  j["h_max"] = p.h_max;
  j["max_hop"] = p.max_hop;
  j["alpha"] = d(p.link.alpha);
  j["beta"] = d(p.link.beta);
  j["gamma"] = d(p.link.gamma);
  j["p_floor"] = d(p.link.p_floor);
  j["p_ceil"] = d(p.link.p_ceil);
  j["gap_x_km"] = d(p.gap_x_km);
  j["gap_y_km"] = d(p.gap_y_km);
  j["gap_range_km"] = d(p.gap_range_km);
  j["percolation_degree_threshold"] = d(p.percolation_degree_threshold);
  return j;
}

json event_to_json(const simulation::SimEvent& ev) {
  json j;
  j["time"] = ev.time;
  if (const auto* add = std::get_if<simulation::AddEvent>(&ev.body)) {
    j["kind"] = "add";
    j["node"] = node_to_json(add->node);
  } else if (const auto* rem = std::get_if<simulation::RemoveEvent>(&ev.body)) {
    j["kind"] = "remove";
    j["id"] = rem->id;
  } else if (const auto* drift = std::get_if<simulation::DriftEvent>(&ev.body)) {
    j["kind"] = "drift";
    j["id"] = drift->id;
    j["radius_km"] = drift->radius_km;
    j["angle_rad"] = drift->angle_rad;
    if (drift->altitude_km) j["altitude_km"] = *drift->altitude_km;
  } else {
    const auto& send = std::get<simulation::SendEvent>(ev.body);
    j["kind"] = "send";
    j["src"] = send.src;
    j["dst"] = send.dst;
  }
  return j;
}

}  // namespace

simulation::ScenarioConfig parse_scenario(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SchemaError("/", std::string("not valid JSON: ") + e.what());
  }
  require_object(doc, "/");
  reject_unknown_keys(doc, {"spec_version", "seed", "nodes", "params", "events"}, "");

  const json* version = find(doc, "spec_version");
  if (!version) throw SchemaError("/", "missing required key \"spec_version\"");
  if (!version->is_number_integer() || version->get<int>() != 1) {
    throw SchemaError("/spec_version", "expected spec_version 1");
  }

  simulation::ScenarioConfig config;
  if (const json* seed = find(doc, "seed")) config.rng_seed = get_u64(*seed, "/seed");

  const json* nodes = find(doc, "nodes");
  if (!nodes) throw SchemaError("/", "missing required key \"nodes\"");
  if (!nodes->is_array()) throw SchemaError("/nodes", "expected an array");
  if (nodes->empty()) throw SchemaError("/nodes", "needs at least one node");
  std::set<NodeId> seen;
  for (std::size_t i = 0; i < nodes->size(); ++i) {
    std::string path = "/nodes/" + std::to_string(i);
    auto node = parse_node((*nodes)[i], path);
    if (!seen.insert(node.id).second) throw SchemaError(path + "/id", "duplicate node id");
    config.initial_nodes.push_back(std::move(node));
  }

  if (const json* params = find(doc, "params")) {
    config.params = parse_params(*params, "/params");
  } else {
    config.params.link.radio_range_km = config.params.radio_range_km;
  }

  if (const json* events = find(doc, "events")) {
    if (!events->is_array()) throw SchemaError("/events", "expected an array");
    std::int64_t last_time = 0;
    for (std::size_t i = 0; i < events->size(); ++i) {
      std::string path = "/events/" + std::to_string(i);
      auto ev = parse_event((*events)[i], path);
      if (i > 0 && ev.time < last_time) {
        throw SchemaError(path + "/time", "event timestamps must be non-decreasing");
      }
      last_time = ev.time;
      config.events.push_back(std::move(ev));
    }
  }
  return config;
}

std::string serialize_scenario(const simulation::ScenarioConfig& config) {
  json doc;
  doc["spec_version"] = 1;
  doc["seed"] = config.rng_seed;
  doc["nodes"] = json::array();
  for (const auto& n : config.initial_nodes) doc["nodes"].push_back(node_to_json(n));
  doc["params"] = params_to_json(config.params, false);
  doc["events"] = json::array();
  for (const auto& ev : config.events) doc["events"].push_back(event_to_json(ev));
  return doc.dump(2) + "\n";
}

std::string serialize_metrics(const simulation::MetricsReport& report,
                              const simulation::ScenarioConfig& config) {
  json doc;
  doc["spec_version"] = 1;
  doc["seed"] = config.rng_seed;
  doc["params"] = params_to_json(config.params, true);

  json m;
  m["packets_sent"] = report.packets_sent;
  m["packets_delivered"] = report.packets_delivered;
  m["packets_dropped_link_failure"] = report.packets_dropped_link_failure;
  m["packets_failed_no_route"] = report.packets_failed_no_route;
  if (report.pdr) m["pdr"] = canon12(*report.pdr);
  m["control_messages"] = report.control_messages;
  m["mean_hops"] = canon12(report.mean_hops);
  m["hull_recomputes"] = report.hull_recomputes;
  m["sector_reconfigs"] = report.sector_reconfigs;
  m["subcritical_ticks"] = report.subcritical_ticks;
  doc["metrics"] = m;

  doc["events"] = json::array();
  for (const auto& rec : report.event_log) {
    json e;
    e["index"] = rec.index;
    e["time"] = rec.time;
    e["kind"] = rec.kind;
    if (rec.kind == "send") {
      e["src"] = rec.src;
      e["dst"] = rec.dst;
      e["control_hops"] = rec.control_hops;
      e["lookup_messages"] = rec.notifications;
      e["route_found"] = rec.route_found;
      if (rec.route_found) {
        e["hop_count"] = rec.hop_count;
        e["reliability"] = canon12(rec.reliability);
        e["delivered"] = rec.delivered;
      }
    } else {
      e["case"] = rec.churn_case;
      e["hull_recomputed"] = rec.hull_recomputed;
      e["repartitioned"] = rec.repartitioned;
      e["notifications"] = rec.notifications;
    }
    e["subcritical"] = rec.subcritical;
    doc["events"].push_back(std::move(e));
  }
  return doc.dump(2) + "\n";
}

std::string metrics_event_csv(const simulation::MetricsReport& report) {
  std::ostringstream out;
  out << "index,time,kind,case,hull_recomputed,repartitioned,notifications,"
         "src,dst,control_hops,route_found,hop_count,reliability,delivered,subcritical\n";
  for (const auto& rec : report.event_log) {
    char reliability[40] = "";
    if (rec.route_found) {
      std::snprintf(reliability, sizeof reliability, "%.12g", rec.reliability);
    }
    out << rec.index << ',' << rec.time << ',' << rec.kind << ',' << rec.churn_case << ','
        << int(rec.hull_recomputed) << ',' << int(rec.repartitioned) << ','
        << rec.notifications << ',' << rec.src << ',' << rec.dst << ','
        << (rec.control_hops < 0 ? std::string() : std::to_string(rec.control_hops)) << ','
        << int(rec.route_found) << ',' << rec.hop_count << ',' << reliability << ','
        << int(rec.delivered) << ',' << int(rec.subcritical) << '\n';
  }
  return out.str();
}

}  // namespace loonmesh::io
