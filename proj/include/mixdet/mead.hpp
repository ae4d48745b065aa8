#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mixdet/capacity.hpp"
#include "mixdet/core.hpp"

namespace mixdet {

/// Scores collapsed to one scalar per (sample, group): positives carry the
/// min over the sample's fooling member attacks, so min > gamma holds
/// exactly when every included attack is detected at gamma.
struct GroupedScores {
  AttackGroup group;
  std::vector<std::pair<std::string, double>> positives;
  std::vector<std::pair<std::string, double>> negatives;
};

struct GroupReport {
  std::string label;
  Norm norm = Norm::none;
  std::optional<double> epsilon;
  double auroc = 0.0;
  double fpr_at_95_tpr = 0.0;
  double threshold_at_95 = 0.0;
  std::size_t n_positives = 0;
  std::size_t n_negatives = 0;
  double mean_capacity = 0.0;  // nats, over the group's scored adversarial records
};

struct EvaluationReport {
  std::vector<GroupReport> groups;
  double mean_auroc = 0.0;
  double mean_fpr_at_95_tpr = 0.0;
};

struct RocPoint {
  double threshold;
  double fpr;
  double tpr;
};

/// Groups per-record mixture probabilities by attack cell. `record_scores`
/// is aligned with `records`; natural entries feed every group's negatives.
/// Throws UnknownAttack / DuplicateRecord.
std::vector<GroupedScores> build_groups(const std::vector<ScoreRecord>& records,
                                        const std::vector<AttackGroup>& groups,
                                        std::span<const double> record_scores);

/// Mann-Whitney statistic: P(pos > neg) + 0.5 * P(pos = neg).
double auroc(std::span<const double> positives, std::span<const double> negatives);

struct FprResult {
  double fpr;
  double threshold;
};

/// Largest observed-score threshold still detecting >= target_tpr of the
/// positives (strict >), and the false-positive rate there. Falls back to
/// a below-all-scores threshold when no observed score reaches the target.
FprResult fpr_at_tpr(std::span<const double> positives,
                     std::span<const double> negatives, double target_tpr = 0.95);

/// Empirical ROC over all distinct observed thresholds, plus the
/// everything-detected endpoint.
std::vector<RocPoint> roc_points(std::span<const double> positives,
                                 std::span<const double> negatives);

struct EvaluateOptions {
  SolverConfig solver;
  // When set, skip the per-sample optimization and mix with these fixed
  // weights instead (one-hot gives an individual-detector baseline).
  std::optional<WeightVector> fixed_weights;
};

EvaluationReport evaluate(const std::vector<ScoreRecord>& records,
                          const std::vector<AttackGroup>& groups,
                          const EvaluateOptions& options = {});

/// The grouped scores behind a report, for ROC dumps.
std::vector<GroupedScores> grouped_scores(const std::vector<ScoreRecord>& records,
                                          const std::vector<AttackGroup>& groups,
                                          const EvaluateOptions& options = {});

}  // namespace mixdet
