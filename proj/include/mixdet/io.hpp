#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "mixdet/core.hpp"
#include "mixdet/mead.hpp"

namespace mixdet {

enum class ScoreFormat { csv_wide, jsonl };

ScoreFormat score_format_from_string(const std::string& s);

/// Reads a score matrix. csv_wide columns:
///   sample_id,role,algorithm,loss,norm,epsilon,fooled,det_0..det_{K-1}
/// with empty strings for absent optional fields; jsonl carries one object
/// per line with the same field names (absent fields omitted).
/// Lines starting with '#' are skipped in both formats.
std::vector<ScoreRecord> read_scores(const std::filesystem::path& path,
                                     ScoreFormat format);

/// Inverse of read_scores; an optional comment line goes first.
void write_scores(const std::filesystem::path& path,
                  const std::vector<ScoreRecord>& records, ScoreFormat format,
                  const std::string& header_comment = "");

/// Attack-cell config: JSON {"cells": [{"norm": "...", "epsilon": <number
/// or absent>, "algorithms": [{"tag": "...", "starred": <bool>}, ...]}]}.
/// Cells are expanded via expand_group.
std::vector<AttackGroup> read_groups(const std::filesystem::path& path);

std::string report_to_json(const EvaluationReport& report);
void write_report(const std::filesystem::path& path, const EvaluationReport& report);
void print_report(std::ostream& os, const EvaluationReport& report);

void write_roc_points(const std::filesystem::path& path,
                      const std::vector<RocPoint>& points);

// Shortest round-trip decimal representation; used everywhere a double is
// serialized so identical values always print identically.
std::string format_double(double v);

}  // namespace mixdet
