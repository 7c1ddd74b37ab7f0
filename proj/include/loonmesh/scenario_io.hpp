#pragma once

#include <string>

#include "loonmesh/simulation.hpp"

namespace loonmesh::io {

// Strict parse of a scenario document: unknown keys are rejected, params may
// be partial (defaults fill in), angles are radians. Throws SchemaError with
// a JSON pointer to the first offending element.
simulation::ScenarioConfig parse_scenario(const std::string& json_text);

// Canonical full-document form; parse_scenario(serialize_scenario(c)) == c.
std::string serialize_scenario(const simulation::ScenarioConfig& config);

// MetricsFile document: metrics plus an echo of seed and effective params.
// Doubles are canonicalized to 12 significant digits for byte-stable output.
std::string serialize_metrics(const simulation::MetricsReport& report,
                              const simulation::ScenarioConfig& config);

// Per-event log as CSV, one row per event.
std::string metrics_event_csv(const simulation::MetricsReport& report);

}  // namespace loonmesh::io
