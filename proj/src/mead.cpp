#include "mixdet/mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <unordered_map>

#include "mixdet/detector.hpp"
#include "mixdet/infotheory.hpp"

namespace mixdet {

namespace {

// Index of the unique group containing the key.
std::size_t find_group(const std::vector<AttackGroup>& groups, const AttackKey& key) {
  for (std::size_t g = 0; g < groups.size(); ++g)
    if (groups[g].contains(key)) return g;
  throw UnknownAttack("attack '" + key.label() + "' matches no configured group");
}

std::vector<double> sorted(std::span<const double> xs) {
  std::vector<double> out(xs.begin(), xs.end());
  std::sort(out.begin(), out.end());
  return out;
}

// #{x : x > threshold} on an ascending-sorted vector.
std::size_t count_above(const std::vector<double>& asc, double threshold) {
  return asc.end() - std::upper_bound(asc.begin(), asc.end(), threshold);
}

}  // namespace

std::vector<GroupedScores> build_groups(const std::vector<ScoreRecord>& records,
                                        const std::vector<AttackGroup>& groups,
                                        std::span<const double> record_scores) {
  if (records.size() != record_scores.size())
    throw LengthMismatch("record scores not aligned with records");

  std::vector<GroupedScores> out(groups.size());
  for (std::size_t g = 0; g < groups.size(); ++g) out[g].group = groups[g];

  // per group: sample_id -> index into positives, preserving first-seen order
  std::vector<std::unordered_map<std::string, std::size_t>> pos_index(groups.size());
  std::set<std::pair<std::string, AttackKey>> seen;

  for (std::size_t i = 0; i < records.size(); ++i) {
    const ScoreRecord& rec = records[i];
    rec.check();
    if (rec.role == Role::natural) {
      for (auto& gs : out) gs.negatives.emplace_back(rec.sample_id, record_scores[i]);
      continue;
    }
    if (!seen.insert({rec.sample_id, *rec.attack}).second)
      throw DuplicateRecord("duplicate record for sample '" + rec.sample_id +
                            "', attack '" + rec.attack->label() + "'");
    const std::size_t g = find_group(groups, *rec.attack);
    if (!rec.fooled) continue;  // non-fooling perturbations are discarded
    auto [it, inserted] = pos_index[g].try_emplace(rec.sample_id, out[g].positives.size());
    if (inserted) {
      out[g].positives.emplace_back(rec.sample_id, record_scores[i]);
    } else {
      double& score = out[g].positives[it->second].second;
      score = std::min(score, record_scores[i]);
    }
  }
  return out;
}

double auroc(std::span<const double> positives, std::span<const double> negatives) {
  if (positives.empty() || negatives.empty())
    throw EmptyClass("auroc needs both positives and negatives");

  // Midrank formulation of the Mann-Whitney statistic.
  std::vector<std::pair<double, bool>> all;  // (score, is_positive)
  all.reserve(positives.size() + negatives.size());
  for (double p : positives) all.emplace_back(p, true);
  for (double n : negatives) all.emplace_back(n, false);
  std::sort(all.begin(), all.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  double rank_sum_pos = 0.0;
  std::size_t i = 0;
  while (i < all.size()) {
    std::size_t j = i;
    while (j < all.size() && all[j].first == all[i].first) ++j;
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);  // 1-based
    for (std::size_t t = i; t < j; ++t)
      if (all[t].second) rank_sum_pos += midrank;
    i = j;
  }
  const double np = static_cast<double>(positives.size());
  const double nn = static_cast<double>(negatives.size());
  return (rank_sum_pos - np * (np + 1.0) / 2.0) / (np * nn);
}

FprResult fpr_at_tpr(std::span<const double> positives,
                     std::span<const double> negatives, double target_tpr) {
  if (positives.empty() || negatives.empty())
    throw EmptyClass("fpr_at_tpr needs both positives and negatives");
  if (!(target_tpr > 0.0 && target_tpr <= 1.0))
    throw ValidationError("target TPR must lie in (0, 1]");

  const std::vector<double> pos = sorted(positives);
  const std::vector<double> neg = sorted(negatives);

  std::vector<double> candidates = pos;
  candidates.insert(candidates.end(), neg.begin(), neg.end());
  std::sort(candidates.begin(), candidates.end(), std::greater<>());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());
  // Stand-in for the minus-infinity candidate: below every observed score,
  // everything is detected.
  candidates.push_back(candidates.back() - 1.0);

  const double np = static_cast<double>(pos.size());
  for (double gamma : candidates) {
    const double tpr = static_cast<double>(count_above(pos, gamma)) / np;
    if (tpr >= target_tpr) {
      const double fpr =
          static_cast<double>(count_above(neg, gamma)) / static_cast<double>(neg.size());
      return {fpr, gamma};
    }
  }
  throw Error("unreachable: the below-all threshold detects everything");
}

std::vector<RocPoint> roc_points(std::span<const double> positives,
                                 std::span<const double> negatives) {
  if (positives.empty() || negatives.empty())
    throw EmptyClass("roc_points needs both positives and negatives");
  const std::vector<double> pos = sorted(positives);
  const std::vector<double> neg = sorted(negatives);

  std::vector<double> thresholds = pos;
  thresholds.insert(thresholds.end(), neg.begin(), neg.end());
  std::sort(thresholds.begin(), thresholds.end(), std::greater<>());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                   thresholds.end());
  thresholds.push_back(thresholds.back() - 1.0);

  std::vector<RocPoint> out;
  out.reserve(thresholds.size());
  for (double gamma : thresholds) {
    out.push_back({gamma,
                   static_cast<double>(count_above(neg, gamma)) / neg.size(),
                   static_cast<double>(count_above(pos, gamma)) / pos.size()});
  }
  return out;
}

namespace {

struct RecordScore {
  double p_adversarial;
  double capacity;
};

std::vector<RecordScore> score_all(const std::vector<ScoreRecord>& records,
                                   const EvaluateOptions& options) {
  std::vector<RecordScore> out;
  out.reserve(records.size());
  for (const ScoreRecord& rec : records) {
    if (options.fixed_weights) {
      rec.check();
      const Channel channel = rec.to_channel();
      const BinaryDist mix = marginal(*options.fixed_weights, channel);
      out.push_back({mix[1], mutual_information(*options.fixed_weights, channel)});
    } else {
      const MixtureScore score = score_record(rec, options.solver);
      out.push_back({score.p_adversarial, score.capacity});
    }
  }
  return out;
}

}  // namespace

std::vector<GroupedScores> grouped_scores(const std::vector<ScoreRecord>& records,
                                          const std::vector<AttackGroup>& groups,
                                          const EvaluateOptions& options) {
  const auto scores = score_all(records, options);
  std::vector<double> ps;
  ps.reserve(scores.size());
  for (const auto& s : scores) ps.push_back(s.p_adversarial);
  return build_groups(records, groups, ps);
}

EvaluationReport evaluate(const std::vector<ScoreRecord>& records,
                          const std::vector<AttackGroup>& groups,
                          const EvaluateOptions& options) {
  const auto scores = score_all(records, options);
  std::vector<double> ps;
  ps.reserve(scores.size());
  for (const auto& s : scores) ps.push_back(s.p_adversarial);
  const auto grouped = build_groups(records, groups, ps);

  // Capacity diagnostics over the fooling member records of each group.
  std::vector<double> cap_sum(groups.size(), 0.0);
  std::vector<std::size_t> cap_count(groups.size(), 0);
  for (std::size_t i = 0; i < records.size(); ++i) {
    const ScoreRecord& rec = records[i];
    if (rec.role != Role::adversarial || !rec.fooled) continue;
    const std::size_t g = find_group(groups, *rec.attack);
    cap_sum[g] += scores[i].capacity;
    ++cap_count[g];
  }

  EvaluationReport report;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto& gs = grouped[g];
    std::vector<double> pos, neg;
    for (const auto& [id, s] : gs.positives) pos.push_back(s);
    for (const auto& [id, s] : gs.negatives) neg.push_back(s);

    GroupReport gr;
    gr.label = groups[g].label();
    gr.norm = groups[g].norm;
    gr.epsilon = groups[g].epsilon;
    gr.n_positives = pos.size();
    gr.n_negatives = neg.size();
    gr.mean_capacity = cap_count[g] ? cap_sum[g] / cap_count[g] : 0.0;
    gr.auroc = auroc(pos, neg);
    const FprResult fr = fpr_at_tpr(pos, neg, 0.95);
    gr.fpr_at_95_tpr = fr.fpr;
    gr.threshold_at_95 = fr.threshold;
    report.groups.push_back(std::move(gr));
  }

  for (const auto& gr : report.groups) {
    report.mean_auroc += gr.auroc;
    report.mean_fpr_at_95_tpr += gr.fpr_at_95_tpr;
  }
  if (!report.groups.empty()) {
    report.mean_auroc /= report.groups.size();
    report.mean_fpr_at_95_tpr /= report.groups.size();
  }
  return report;
}

}  // namespace mixdet
