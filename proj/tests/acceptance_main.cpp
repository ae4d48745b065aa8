// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria are property-based plus oracle equivalence; every
// tolerance is pinned here.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "mixdet/capacity.hpp"
#include "mixdet/detector.hpp"
#include "mixdet/infotheory.hpp"
#include "mixdet/io.hpp"
#include "mixdet/losses.hpp"
#include "mixdet/mead.hpp"
#include "mixdet/synth.hpp"

using namespace mixdet;
using Clock = std::chrono::steady_clock;

namespace {

const std::filesystem::path kDataDir = MIXDET_DATA_DIR;

Channel random_channel(std::mt19937& rng, std::size_t k) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<BinaryDist> rows;
  for (std::size_t i = 0; i < k; ++i) {
    const double p = unif(rng);
    rows.push_back({1.0 - p, p});
  }
  return Channel::validate(std::move(rows));
}

WeightVector random_weights(std::mt19937& rng, std::size_t k) {
  std::exponential_distribution<double> expd(1.0);
  std::vector<double> w(k);
  double sum = 0.0;
  for (auto& v : w) sum += (v = expd(rng));
  for (auto& v : w) v /= sum;
  return WeightVector::validate(std::move(w));
}

bool approx(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// 1. Solver-oracle agreement on 200 fixed-seed random channels.
bool criterion_solver_oracle(std::string& detail) {
  const auto start = Clock::now();
  std::mt19937 rng(1001);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t k = 2 + i % 3;
    const int resolution = k == 2 ? 200 : (k == 3 ? 60 : 30);
    const Channel c = random_channel(rng, k);
    const double solver_cap = solve_capacity(c).capacity;
    const double oracle_cap = grid_oracle(c, resolution).capacity;
    worst = std::max(worst, std::abs(solver_cap - oracle_cap));
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  std::ostringstream os;
  os << "max |solver - oracle| = " << worst << " nats, " << secs << " s";
  detail = os.str();
  return worst <= 1e-3 && secs < 10.0;
}

// 2. Decomposition identity on 1000 random triples.
bool criterion_decomposition(std::string& detail) {
  std::mt19937 rng(1002);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double worst_identity = 0.0, worst_gap_at_marginal = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t k = 2 + i % 4;
    const Channel c = random_channel(rng, k);
    const WeightVector w = random_weights(rng, k);
    const double p = unif(rng);
    const auto r = regret_decomposition(w, c, {1.0 - p, p});
    worst_identity = std::max(worst_identity,
                              std::abs(r.expected_regret - (r.mi + r.gap)));
    const auto at_marginal = regret_decomposition(w, c, marginal(w, c));
    worst_gap_at_marginal = std::max(worst_gap_at_marginal, at_marginal.gap);
  }
  std::ostringstream os;
  os << "max identity residual = " << worst_identity
     << ", max gap at marginal = " << worst_gap_at_marginal;
  detail = os.str();
  return worst_identity <= 1e-10 && worst_gap_at_marginal <= 1e-12;
}

// 3. Capacity bounds and per-iteration monotonicity.
bool criterion_bounds_monotonic(std::string& detail) {
  std::mt19937 rng(1003);
  for (int i = 0; i < 100; ++i) {
    const std::size_t k = 2 + i % 4;
    const Channel c = random_channel(rng, k);
    double prev = -1.0;
    for (int t = 1; t <= 20; ++t) {
      SolverConfig cfg;
      cfg.max_iterations = t;
      const double cap = solve_capacity(c, cfg).capacity;
      if (!(cap >= 0.0 && cap <= std::numbers::ln2 + 1e-12)) {
        detail = "capacity out of [0, ln 2]";
        return false;
      }
      if (cap < prev - 1e-12) {
        detail = "capacity estimate decreased between iterations";
        return false;
      }
      prev = cap;
    }
  }
  detail = "100 channels, 20 iteration prefixes each";
  return true;
}

// 4. Closed-form symmetric channel.
bool criterion_closed_form(std::string& detail) {
  const double hb = -0.1 * std::log(0.1) - 0.9 * std::log(0.9);
  const double expected = std::numbers::ln2 - hb;
  const SolverResult r = solve_capacity(validate_channel({{0.9, 0.1}, {0.1, 0.9}}));
  std::ostringstream os;
  os << "capacity = " << r.capacity << " (expected " << expected << "), weights = ("
     << r.weights[0] << ", " << r.weights[1] << ")";
  detail = os.str();
  return approx(r.capacity, expected, 1e-8) && approx(r.weights[0], 0.5, 1e-6) &&
         approx(r.weights[1], 0.5, 1e-6);
}

double trapezoid_auroc(const std::vector<double>& pos, const std::vector<double>& neg) {
  std::vector<double> thresholds = pos;
  thresholds.insert(thresholds.end(), neg.begin(), neg.end());
  std::sort(thresholds.begin(), thresholds.end(), std::greater<>());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                   thresholds.end());
  thresholds.push_back(thresholds.back() - 1.0);
  double area = 0.0, prev_fpr = 0.0, prev_tpr = 0.0;
  for (double gamma : thresholds) {
    double tp = 0.0, fp = 0.0;
    for (double p : pos) tp += p > gamma;
    for (double n : neg) fp += n > gamma;
    const double tpr = tp / pos.size(), fpr = fp / neg.size();
    area += (fpr - prev_fpr) * (tpr + prev_tpr) / 2.0;
    prev_fpr = fpr;
    prev_tpr = tpr;
  }
  return area;
}

// 5. Metric equivalence: Mann-Whitney vs trapezoid, min-aggregation vs
// brute-force all-detected counting.
bool criterion_metric_equivalence(std::string& detail) {
  std::mt19937 rng(1005);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_int_distribution<int> grid(0, 9);
  std::uniform_int_distribution<int> count(1, 50);

  for (int i = 0; i < 100; ++i) {
    std::vector<double> pos(count(rng)), neg(count(rng));
    for (auto& v : pos) v = grid(rng) / 10.0;
    for (auto& v : neg) v = grid(rng) / 10.0;
    if (std::abs(auroc(pos, neg) - trapezoid_auroc(pos, neg)) > 1e-12) {
      detail = "Mann-Whitney and trapezoid AUROC disagree";
      return false;
    }
  }

  GroupCell cell;
  cell.norm = Norm::Linf;
  cell.epsilon = 0.125;
  cell.algorithms = {{"PGDi", true}, {"FGSM", true}, {"BIM", true}, {"SA", false}};
  const AttackGroup group = expand_group(cell);

  for (int trial = 0; trial < 10; ++trial) {
    const int n_samples = 1 + static_cast<int>(unif(rng) * 19);
    const int n_attacks = 1 + static_cast<int>(unif(rng) * 12);
    std::vector<ScoreRecord> records;
    std::vector<double> scores;
    for (int s = 0; s < n_samples; ++s) {
      for (int a = 0; a < n_attacks; ++a) {
        ScoreRecord rec;
        rec.sample_id = "s" + std::to_string(s);
        rec.role = Role::adversarial;
        rec.attack = group.members[a];
        rec.fooled = unif(rng) < 0.8;
        rec.scores = {unif(rng)};
        scores.push_back(rec.scores[0]);
        records.push_back(std::move(rec));
      }
    }
    const auto grouped = build_groups(records, {group}, scores);
    for (int t = 0; t < 50; ++t) {
      const double gamma = unif(rng);
      std::size_t via_min = 0;
      for (const auto& [id, v] : grouped[0].positives) via_min += v > gamma;
      std::size_t brute = 0;
      for (int s = 0; s < n_samples; ++s) {
        const std::string id = "s" + std::to_string(s);
        bool any = false, all = true;
        for (std::size_t i = 0; i < records.size(); ++i) {
          if (records[i].sample_id != id || !records[i].fooled) continue;
          any = true;
          if (!(scores[i] > gamma)) all = false;
        }
        brute += any && all;
      }
      if (via_min != brute) {
        detail = "min-aggregation count differs from brute force";
        return false;
      }
    }
  }
  detail = "100 AUROC sets, 10 instances x 50 thresholds";
  return true;
}

// 6. Paper arithmetic of the shipped attack-cell config.
bool criterion_paper_arithmetic(std::string& detail) {
  const auto groups = read_groups(kDataDir / "mead_groups.json");
  std::size_t total = 0;
  std::size_t linf_0125 = 0;
  for (const auto& g : groups) {
    total += g.members.size();
    if (g.norm == Norm::Linf && g.epsilon == 0.125) linf_0125 = g.members.size();
  }
  std::ostringstream os;
  os << "total variants = " << total << ", (Linf, 0.125) members = " << linf_0125;
  detail = os.str();
  return total == 134 && linf_0125 == 13;
}

// 7. Loss formulas: pinned examples plus symmetry/asymmetry properties.
bool criterion_losses(std::string& detail) {
  auto dist = [](std::vector<double> p) {
    return ClassDistribution::validate(std::move(p));
  };
  const struct {
    double actual, expected;
  } cases[] = {
      {ace_loss(dist({1.0, 0.0}), dist({1.0, 0.0})), 0.0},
      {ace_loss(dist({1.0, 0.0}), dist({0.5, 0.5})), std::numbers::ln2},
      {ace_loss(dist({0.5, 0.5}), dist({0.25, 0.75})), 0.8369882167858357},
      {kl_loss(dist({0.3, 0.7}), dist({0.3, 0.7})), 0.0},
      {kl_loss(dist({1.0, 0.0}), dist({0.5, 0.5})), std::numbers::ln2},
      {kl_loss(dist({0.9, 0.1}), dist({0.1, 0.9})), 1.7577796618689758},
      {fr_loss(dist({0.3, 0.7}), dist({0.3, 0.7})), 0.0},
      {fr_loss(dist({1.0, 0.0}), dist({0.0, 1.0})), std::numbers::pi},
      // 2*arccos(sqrt(0.45) + sqrt(0.05))
      {fr_loss(dist({0.5, 0.5}), dist({0.9, 0.1})), 0.9272952180016123},
      {gini_loss(dist({1.0, 0.0})), 0.0},
      {gini_loss(dist(std::vector<double>(10, 0.1))), 0.683772233983162},
      {gini_loss(dist({0.5, 0.5})), 0.29289321881345254},
  };
  for (const auto& c : cases) {
    if (!approx(c.actual, c.expected, 1e-9)) {
      std::ostringstream os;
      os << "loss example: got " << c.actual << ", expected " << c.expected;
      detail = os.str();
      return false;
    }
  }

  std::mt19937 rng(1007);
  std::exponential_distribution<double> expd(1.0);
  bool kl_asymmetric = false;
  for (int i = 0; i < 100; ++i) {
    const std::size_t c = 3 + i % 4;
    std::vector<double> a(c), b(c);
    double sa = 0.0, sb = 0.0;
    for (auto& v : a) sa += (v = expd(rng));
    for (auto& v : b) sb += (v = expd(rng));
    for (auto& v : a) v /= sa;
    for (auto& v : b) v /= sb;
    const auto p = dist(a), q = dist(b);
    if (!approx(fr_loss(p, q), fr_loss(q, p), 1e-12)) {
      detail = "fr_loss is not symmetric";
      return false;
    }
    if (std::abs(kl_loss(p, q) - kl_loss(q, p)) > 1e-9) kl_asymmetric = true;
  }
  if (!kl_asymmetric) {
    detail = "kl_loss looked symmetric on every random pair";
    return false;
  }
  detail = "12 pinned examples, 100 random pairs";
  return true;
}

// 8. Mixture beats every specialist on the simultaneous group.
bool criterion_mixture_dominates(std::string& detail) {
  const auto start = Clock::now();
  const auto groups = read_groups(kDataDir / "linf0125_group.json");
  const auto cfg = make_specialist_config(groups, 42, 500, 500, 0.9);
  const auto records = generate_synthetic(cfg);

  const EvaluationReport mixture = evaluate(records, cfg.groups);
  const double mixture_auroc = mixture.groups.at(0).auroc;

  double best_individual = 0.0;
  for (std::size_t d = 0; d < 4; ++d) {
    EvaluateOptions opts;
    opts.fixed_weights = WeightVector::one_hot(4, d);
    const EvaluationReport r = evaluate(records, cfg.groups, opts);
    best_individual = std::max(best_individual, r.groups.at(0).auroc);
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  std::ostringstream os;
  os << "mixture AUROC = " << mixture_auroc << ", best individual = "
     << best_individual << ", " << secs << " s";
  detail = os.str();
  return mixture_auroc > best_individual + 0.05 && secs < 30.0;
}

// 9. Byte-identical synth -> evaluate pipeline.
bool criterion_determinism(std::string& detail) {
  const auto tmp = std::filesystem::temp_directory_path();
  const auto groups = read_groups(kDataDir / "linf0125_group.json");
  const auto cfg = make_specialist_config(groups, 97, 60, 60, 0.9);

  auto read_file = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
  };

  std::string scores[2], reports[2];
  for (int run = 0; run < 2; ++run) {
    const auto scores_path = tmp / ("mixdet_acc_scores_" + std::to_string(run) + ".csv");
    const auto report_path = tmp / ("mixdet_acc_report_" + std::to_string(run) + ".json");
    const auto records = generate_synthetic(cfg);
    write_scores(scores_path, records, ScoreFormat::csv_wide,
                 synth_header_comment(cfg));
    const auto loaded = read_scores(scores_path, ScoreFormat::csv_wide);
    write_report(report_path, evaluate(loaded, cfg.groups));
    scores[run] = read_file(scores_path);
    reports[run] = read_file(report_path);
    std::filesystem::remove(scores_path);
    std::filesystem::remove(report_path);
  }
  detail = "two seeded runs compared byte for byte";
  return !scores[0].empty() && scores[0] == scores[1] && reports[0] == reports[1];
}

}  // namespace

int main() {
  const struct {
    const char* name;
    std::function<bool(std::string&)> run;
  } criteria[] = {
      {"1 solver-oracle agreement (<= 1e-3 nats, < 10 s)", criterion_solver_oracle},
      {"2 regret decomposition identity (<= 1e-10; gap <= 1e-12 at marginal)",
       criterion_decomposition},
      {"3 capacity bounds and monotone iterates (<= 1e-12 slack)",
       criterion_bounds_monotonic},
      {"4 closed-form symmetric channel (1e-8 capacity, 1e-6 weights)",
       criterion_closed_form},
      {"5 metric equivalence (AUROC 1e-12; min-aggregation exact)",
       criterion_metric_equivalence},
      {"6 attack census: 134 variants, 13 in the (Linf, 0.125) cell",
       criterion_paper_arithmetic},
      {"7 loss formulas (1e-9) and symmetry properties", criterion_losses},
      {"8 mixture beats every specialist by >= 5 AUROC points (< 30 s)",
       criterion_mixture_dominates},
      {"9 byte-identical seeded pipeline", criterion_determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.name;
    if (!detail.empty()) std::cout << " -- " << detail;
    std::cout << "\n";
    failures += !ok;
  }
  return failures == 0 ? 0 : 1;
}
