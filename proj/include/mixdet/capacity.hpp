#pragma once

#include <optional>

#include "mixdet/core.hpp"

namespace mixdet {

struct SolverConfig {
  double tolerance = 1e-10;      // KKT gap in nats
  int max_iterations = 10000;
  std::optional<WeightVector> initial_weights;  // default: uniform
};

struct SolverResult {
  WeightVector weights;
  double capacity = 0.0;  // nats
  int iterations = 0;
  bool converged = false;
  double final_gap = 0.0;  // max_k KL(row_k || marginal) - capacity
};

/// Maximizes I(Omega; Z) over the simplex by the classical
/// multiplicative-update capacity iteration:
///   q = marginal(w), D_k = KL(row_k || q), w_k <- w_k * exp(D_k) / Z.
/// Terminates when max_k D_k - sum_k w_k D_k <= tolerance.
SolverResult solve_capacity(const Channel& channel, const SolverConfig& config = {});

/// Exhaustive lattice search over the simplex, coordinates in
/// {0, 1/R, ..., 1}. Ties broken by lexicographically smallest weights.
/// Independent check for solve_capacity; K <= 4 only.
SolverResult grid_oracle(const Channel& channel, int resolution);

}  // namespace mixdet
