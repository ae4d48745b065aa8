#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "mixdet/core.hpp"

namespace mixdet {

/// Beta(alpha, beta) parameters.
struct BetaParams {
  double alpha = 1.0;
  double beta = 1.0;
};

/// Detector k fires high (on-specialty draws) for attack variants crafted
/// with its specialty loss and low otherwise; loss-free attacks are
/// off-specialty for every detector.
struct DetectorProfile {
  LossTag specialty = LossTag::ACE;
  BetaParams on{8.0, 2.0};
  BetaParams off{2.0, 8.0};
};

struct SyntheticConfig {
  std::uint64_t seed = 0;
  std::size_t n_natural = 1;
  std::size_t n_adversarial_per_attack = 1;
  std::vector<DetectorProfile> detector_profiles;
  BetaParams natural{2.0, 8.0};
  double fool_rate = 1.0;
  std::vector<AttackGroup> groups;

  void check() const;
};

/// Four specialists (one per loss), on Beta(8,2), off Beta(2,8),
/// naturals Beta(2,8).
SyntheticConfig make_specialist_config(std::vector<AttackGroup> groups,
                                       std::uint64_t seed, std::size_t n_natural,
                                       std::size_t n_adversarial_per_attack,
                                       double fool_rate);

/// JSON config: seed, n_natural, n_adversarial_per_attack, fool_rate,
/// natural {alpha,beta}, detectors [{specialty,on:{alpha,beta},off:{...}}],
/// cells (same schema as the groups file).
SyntheticConfig read_synth_config(const std::filesystem::path& path);

/// Deterministic for a fixed seed. Draws come from mt19937_64; Beta
/// variates via two Marsaglia-Tsang gamma draws (Box-Muller normals),
/// uniform doubles from the top 53 bits.
std::vector<ScoreRecord> generate_synthetic(const SyntheticConfig& config);

/// One-line provenance note (seed + generator) for score-file headers.
std::string synth_header_comment(const SyntheticConfig& config);

}  // namespace mixdet
