#pragma once

#include "mixdet/capacity.hpp"
#include "mixdet/core.hpp"

namespace mixdet {

/// Output of the aggregated soft-detector for one input sample.
struct MixtureScore {
  double p_adversarial = 0.0;  // marginal probability of z=1 at optimal weights
  WeightVector weights;
  double capacity = 0.0;  // nats
};

/// Optimal-weight mixture: solves the capacity problem, then mixes the
/// detectors' z=1 probabilities with the resulting weights.
MixtureScore aggregate(const Channel& channel, const SolverConfig& config = {});

/// Hard decision: true iff p_adversarial > gamma (strict).
bool detect(const MixtureScore& score, double gamma);

/// aggregate() on the channel built from a record's detector scores.
MixtureScore score_record(const ScoreRecord& record, const SolverConfig& config = {});

}  // namespace mixdet
