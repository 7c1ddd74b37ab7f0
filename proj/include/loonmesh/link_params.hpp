#pragma once

namespace loonmesh::routing {

// Convex weights over distance, load and priority terms of the per-link
// failure probability, with clamp bounds.
struct LinkProbabilityParams {
  double alpha = 0.5;
  double beta = 0.3;
  double gamma = 0.2;
  double p_floor = 0.01;
  double p_ceil = 0.99;
  double radio_range_km = 40.0;

  // Throws std::invalid_argument unless alpha+beta+gamma == 1 (tol 1e-12),
  // weights are non-negative and 0 < p_floor < p_ceil < 1.
  void validate() const;
};

}  // namespace loonmesh::routing
