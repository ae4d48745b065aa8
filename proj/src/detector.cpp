#include "mixdet/detector.hpp"

#include "mixdet/infotheory.hpp"

namespace mixdet {

MixtureScore aggregate(const Channel& channel, const SolverConfig& config) {
  SolverResult result = solve_capacity(channel, config);
  const BinaryDist mix = marginal(result.weights, channel);
  return {mix[1], std::move(result.weights), result.capacity};
}

bool detect(const MixtureScore& score, double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw GammaOutOfRange("gamma must lie in [0,1]");
  return score.p_adversarial > gamma;
}

MixtureScore score_record(const ScoreRecord& record, const SolverConfig& config) {
  record.check();
  return aggregate(record.to_channel(), config);
}

}  // namespace mixdet
