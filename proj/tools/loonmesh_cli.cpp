// Command-line front end: scenario runs, hull/sector inspection, route
// queries and scenario validation. Machine-readable output is JSON on stdout;
// diagnostics go to stderr (LOONMESH_LOG = error | info | debug).

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "loonmesh/errors.hpp"
#include "loonmesh/protocol.hpp"
#include "loonmesh/routing.hpp"
#include "loonmesh/scenario_io.hpp"
#include "loonmesh/simulation.hpp"
#include "loonmesh/topology.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace loonmesh;

constexpr int kExitOk = 0;
constexpr int kExitFile = 2;
constexpr int kExitSchema = 3;
constexpr int kExitRuntime = 4;
constexpr int kExitDegenerate = 5;
constexpr int kExitNoRoute = 6;
constexpr int kExitUnknownId = 7;

int log_level() {
  static int level = [] {
    const char* env = std::getenv("LOONMESH_LOG");
    if (env == nullptr) return 0;
    std::string v(env);
    if (v == "debug") return 2;
    if (v == "info") return 1;
    return 0;
  }();
  return level;
}

void log_info(const std::string& msg) {
  if (log_level() >= 1) std::fprintf(stderr, "info: %s\n", msg.c_str());
}

void log_debug(const std::string& msg) {
  if (log_level() >= 2) std::fprintf(stderr, "debug: %s\n", msg.c_str());
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  if (!in.good() && !in.eof()) return std::nullopt;
  return buf.str();
}

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << content;
  return out.good();
}

// Exits via return code; nullopt result means the caller already failed.
std::optional<simulation::ScenarioConfig> load_scenario(const std::string& path, int& exit_code) {
  auto text = read_file(path);
  if (!text) {
    std::fprintf(stderr, "error: cannot read scenario file: %s\n", path.c_str());
    exit_code = kExitFile;
    return std::nullopt;
  }
  try {
    auto config = io::parse_scenario(*text);
    log_debug("parsed scenario with " + std::to_string(config.initial_nodes.size()) +
              " nodes, " + std::to_string(config.events.size()) + " events");
    return config;
  } catch (const SchemaError& e) {
    std::fprintf(stderr, "error: schema violation at %s: %s\n", e.path().c_str(), e.what());
    exit_code = kExitSchema;
    return std::nullopt;
  }
}

double canon12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

int cmd_run(const std::string& scenario_path, std::optional<std::uint64_t> seed_override,
            const std::string& baseline, const std::string& out_path,
            const std::string& csv_path) {
  int exit_code = kExitOk;
  auto config = load_scenario(scenario_path, exit_code);
  if (!config) return exit_code;
  if (seed_override) config->rng_seed = *seed_override;

  simulation::MetricsReport report;
  try {
    if (baseline.empty()) {
      report = simulation::run_scenario(*config);
    } else if (baseline == "all_active") {
      report = simulation::run_baseline(*config, simulation::BaselineMode::AllActive);
    } else {
      report = simulation::run_baseline(*config, simulation::BaselineMode::MinHop);
    }
  } catch (const InvalidScenario& e) {
    std::fprintf(stderr, "error: invalid scenario (event %d): %s\n", e.event_index(),
                 e.what());
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: simulation failed: %s\n", e.what());
    return kExitRuntime;
  }

  std::string metrics = io::serialize_metrics(report, *config);
  if (!write_file(out_path, metrics)) {
    std::fprintf(stderr, "error: cannot write metrics file: %s\n", out_path.c_str());
    return kExitFile;
  }
  if (!csv_path.empty() && !write_file(csv_path, io::metrics_event_csv(report))) {
    std::fprintf(stderr, "error: cannot write csv file: %s\n", csv_path.c_str());
    return kExitFile;
  }
  log_info("metrics written to " + out_path);

  json summary;
  if (report.pdr) {
    summary["pdr"] = canon12(*report.pdr);
  } else {
    summary["pdr"] = nullptr;
  }
  summary["control_messages"] = report.control_messages;
  summary["mean_hops"] = canon12(report.mean_hops);
  std::printf("%s\n", summary.dump().c_str());
  return kExitOk;
}

int cmd_hull(const std::string& scenario_path) {
  int exit_code = kExitOk;
  auto config = load_scenario(scenario_path, exit_code);
  if (!config) return exit_code;

  topology::MeshTopology topo;
  try {
    topo = topology::build_mesh(config->initial_nodes, config->params);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
  if (topo.hull_degenerate) {
    std::fprintf(stderr, "error: degenerate topology: fewer than 3 distinct"
                 " non-collinear nodes, no hull\n");
    return kExitDegenerate;
  }

  json doc;
  doc["hull"] = topo.hull.vertices;
  doc["centroid"] = {{"x_km", canon12(topo.hull.centroid.x)},
                     {"y_km", canon12(topo.hull.centroid.y)}};
  doc["sector_count"] = topo.partition.sector_count;
  doc["sector_angle_rad"] = canon12(topo.partition.sector_angle);
  doc["sectors"] = json::array();
  for (const auto& s : topo.partition.sectors) {
    json sector;
    sector["index"] = s.index;
    if (s.leader) {
      sector["leader"] = *s.leader;
    } else {
      sector["leader"] = nullptr;
    }
    sector["members"] = s.members;
    doc["sectors"].push_back(std::move(sector));
  }
  std::printf("%s\n", doc.dump(2).c_str());
  return kExitOk;
}

int cmd_route(const std::string& scenario_path, const std::string& src,
              const std::string& dst) {
  int exit_code = kExitOk;
  auto config = load_scenario(scenario_path, exit_code);
  if (!config) return exit_code;

  if (src == dst) {
    std::fprintf(stderr, "error: src and dst must differ\n");
    return kExitUnknownId;
  }
  topology::MeshTopology topo;
  try {
    topo = topology::build_mesh(config->initial_nodes, config->params);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
  if (!topo.nodes.count(src) || !topo.nodes.count(dst)) {
    std::fprintf(stderr, "error: unknown node id: %s\n",
                 topo.nodes.count(src) ? dst.c_str() : src.c_str());
    return kExitUnknownId;
  }

  auto directory = protocol::build_directory(topo);
  auto trace = protocol::gather_destination_info(src, dst, directory, topo.partition, topo);
  auto route = routing::best_path(topo, src, dst);
  if (!route) {
    std::fprintf(stderr, "error: no admissible route from %s to %s\n", src.c_str(),
                 dst.c_str());
    return kExitNoRoute;
  }

  json doc;
  doc["path"] = route->path;
  doc["reliability"] = canon12(route->reliability);
  doc["hop_count"] = route->hop_count;
  doc["control_hops"] = trace ? trace->control_hops : -1;
  std::printf("%s\n", doc.dump(2).c_str());
  return kExitOk;
}

int cmd_validate(const std::string& scenario_path) {
  int exit_code = kExitOk;
  auto config = load_scenario(scenario_path, exit_code);
  if (!config) return exit_code;
  if (auto fault = simulation::validate_scenario(*config)) {
    std::fprintf(stderr, "error: invalid scenario (event %d): %s\n", fault->event_index,
                 fault->message.c_str());
    return kExitRuntime;
  }
  std::printf("{\"valid\":true}\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"balloon-to-balloon mesh network simulator"};
  app.require_subcommand(1);

  std::string scenario_path, out_path, csv_path, baseline, src, dst;
  std::uint64_t seed = 0;
  bool seed_set = false;

  auto* run = app.add_subcommand("run", "run a scenario and write a metrics file");
  run->add_option("--scenario", scenario_path, "scenario JSON file")->required();
  run->add_option("--seed", seed, "override the scenario seed")
      ->each([&](const std::string&) { seed_set = true; });
  run->add_option("--baseline", baseline, "baseline mode instead of DCB")
      ->check(CLI::IsMember({"all_active", "min_hop"}));
  run->add_option("--out", out_path, "metrics output file")->required();
  run->add_option("--csv", csv_path, "optional per-event CSV log");

  auto* hull = app.add_subcommand("hull", "print hull, sectors and leaders");
  hull->add_option("--scenario", scenario_path, "scenario JSON file")->required();

  auto* route = app.add_subcommand("route", "print the best route between two nodes");
  route->add_option("--scenario", scenario_path, "scenario JSON file")->required();
  route->add_option("--src", src, "source node id")->required();
  route->add_option("--dst", dst, "destination node id")->required();

  auto* validate = app.add_subcommand("validate", "validate a scenario file");
  validate->add_option("--scenario", scenario_path, "scenario JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    return cmd_run(scenario_path,
                   seed_set ? std::optional<std::uint64_t>(seed) : std::nullopt, baseline,
                   out_path, csv_path);
  }
  if (hull->parsed()) return cmd_hull(scenario_path);
  if (route->parsed()) return cmd_route(scenario_path, src, dst);
  return cmd_validate(scenario_path);
}
