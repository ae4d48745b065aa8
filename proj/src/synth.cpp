#include "mixdet/synth.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>

#include <json.hpp>

#include "mixdet/errors.hpp"

namespace mixdet {

namespace {

// Self-contained sampler with fully pinned-down draw order, so a fixed
// seed reproduces the same dataset everywhere.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  double uniform() {  // [0, 1), top 53 bits
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform() < p; }

  double normal() {  // Box-Muller, cosine branch only
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  // Marsaglia-Tsang; the a < 1 case boosts via Gamma(a+1) * U^(1/a).
  double gamma(double a) {
    if (a < 1.0) {
      double u = uniform();
      while (u <= 0.0) u = uniform();
      return gamma(a + 1.0) * std::pow(u, 1.0 / a);
    }
    const double d = a - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
        return d * v;
    }
  }

  double beta(const BetaParams& p) {
    const double x = gamma(p.alpha);
    const double y = gamma(p.beta);
    return x / (x + y);
  }

 private:
  std::mt19937_64 engine_;
};

std::string sample_name(const char* prefix, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s_%05zu", prefix, i);
  return buf;
}

}  // namespace

void SyntheticConfig::check() const {
  if (detector_profiles.empty())
    throw ValidationError("synthetic config needs at least one detector profile");
  if (n_natural < 1 || n_adversarial_per_attack < 1)
    throw ValidationError("synthetic counts must be >= 1");
  if (!(fool_rate >= 0.0 && fool_rate <= 1.0))
    throw ValidationError("fool_rate must lie in [0,1]");
  auto check_beta = [](const BetaParams& p) {
    if (!(p.alpha > 0.0 && p.beta > 0.0))
      throw ValidationError("Beta parameters must be positive");
  };
  check_beta(natural);
  for (const auto& prof : detector_profiles) {
    check_beta(prof.on);
    check_beta(prof.off);
  }
  if (groups.empty())
    throw ValidationError("synthetic config needs at least one attack group");
}

SyntheticConfig make_specialist_config(std::vector<AttackGroup> groups,
                                       std::uint64_t seed, std::size_t n_natural,
                                       std::size_t n_adversarial_per_attack,
                                       double fool_rate) {
  SyntheticConfig cfg;
  cfg.seed = seed;
  cfg.n_natural = n_natural;
  cfg.n_adversarial_per_attack = n_adversarial_per_attack;
  cfg.fool_rate = fool_rate;
  cfg.groups = std::move(groups);
  for (LossTag l : {LossTag::ACE, LossTag::KL, LossTag::FR, LossTag::Gini}) {
    DetectorProfile prof;
    prof.specialty = l;
    cfg.detector_profiles.push_back(prof);
  }
  return cfg;
}

SyntheticConfig read_synth_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string(), 0, e.what());
  }

  SyntheticConfig cfg;
  try {
    cfg.seed = doc.at("seed").get<std::uint64_t>();
    cfg.n_natural = doc.at("n_natural").get<std::size_t>();
    cfg.n_adversarial_per_attack = doc.at("n_adversarial_per_attack").get<std::size_t>();
    cfg.fool_rate = doc.at("fool_rate").get<double>();
    cfg.natural = {doc.at("natural").at("alpha").get<double>(),
                   doc.at("natural").at("beta").get<double>()};
    for (const auto& det : doc.at("detectors")) {
      DetectorProfile prof;
      prof.specialty = loss_from_string(det.at("specialty").get<std::string>());
      prof.on = {det.at("on").at("alpha").get<double>(),
                 det.at("on").at("beta").get<double>()};
      prof.off = {det.at("off").at("alpha").get<double>(),
                  det.at("off").at("beta").get<double>()};
      cfg.detector_profiles.push_back(prof);
    }
    for (const auto& cell : doc.at("cells")) {
      GroupCell gc;
      gc.norm = norm_from_string(cell.at("norm").get<std::string>());
      if (cell.contains("epsilon") && !cell["epsilon"].is_null())
        gc.epsilon = cell["epsilon"].get<double>();
      for (const auto& alg : cell.at("algorithms")) {
        CellAlgorithm ca;
        ca.tag = alg.at("tag").get<std::string>();
        if (alg.contains("starred")) ca.starred = alg["starred"].get<bool>();
        gc.algorithms.push_back(std::move(ca));
      }
      cfg.groups.push_back(expand_group(gc));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string(), 0, e.what());
  }
  cfg.check();
  return cfg;
}

std::vector<ScoreRecord> generate_synthetic(const SyntheticConfig& config) {
  config.check();
  Sampler rng(config.seed);
  std::vector<ScoreRecord> records;

  for (std::size_t i = 0; i < config.n_natural; ++i) {
    ScoreRecord rec;
    rec.sample_id = sample_name("nat", i);
    rec.role = Role::natural;
    for (const auto& prof : config.detector_profiles) {
      (void)prof;
      rec.scores.push_back(rng.beta(config.natural));
    }
    records.push_back(std::move(rec));
  }

  for (std::size_t i = 0; i < config.n_adversarial_per_attack; ++i) {
    const std::string sample_id = sample_name("adv", i);
    for (const AttackGroup& group : config.groups) {
      for (const AttackKey& attack : group.members) {
        ScoreRecord rec;
        rec.sample_id = sample_id;
        rec.role = Role::adversarial;
        rec.attack = attack;
        rec.fooled = rng.bernoulli(config.fool_rate);
        for (const auto& prof : config.detector_profiles) {
          const bool on = attack.loss && *attack.loss == prof.specialty;
          rec.scores.push_back(rng.beta(on ? prof.on : prof.off));
        }
        records.push_back(std::move(rec));
      }
    }
  }
  return records;
}

std::string synth_header_comment(const SyntheticConfig& config) {
  return "synthetic scores; prng=mt19937_64 seed=" + std::to_string(config.seed) +
         " beta=marsaglia-tsang uniform=top53bits normal=box-muller-cos";
}

}  // namespace mixdet
