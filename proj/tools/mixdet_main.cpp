#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mixdet/capacity.hpp"
#include "mixdet/core.hpp"
#include "mixdet/detector.hpp"
#include "mixdet/io.hpp"
#include "mixdet/losses.hpp"
#include "mixdet/mead.hpp"
#include "mixdet/synth.hpp"

namespace {

using namespace mixdet;

std::vector<double> parse_vector(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ',')) {
    try {
      out.push_back(std::stod(field));
    } catch (const std::exception&) {
      throw ParseError("bad number '" + field + "' in '" + text + "'");
    }
  }
  if (out.empty()) throw ParseError("empty vector '" + text + "'");
  return out;
}

// "a,b;c,d" -> rows [[a,b],[c,d]]
std::vector<BinaryDist> parse_inline_rows(const std::string& text) {
  std::vector<BinaryDist> rows;
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, ';')) {
    const auto vals = parse_vector(row);
    if (vals.size() != 2)
      throw ParseError("row '" + row + "' must have exactly two probabilities");
    rows.push_back({vals[0], vals[1]});
  }
  return rows;
}

std::vector<BinaryDist> read_channel_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  std::vector<BinaryDist> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto vals = parse_vector(line);
    if (vals.size() != 2)
      throw ParseError(path.string(), line_no, "expected two probabilities");
    rows.push_back({vals[0], vals[1]});
  }
  return rows;
}

Channel load_channel(const std::string& channel_file, const std::string& inline_rows) {
  if (!inline_rows.empty()) return validate_channel(parse_inline_rows(inline_rows));
  if (!channel_file.empty()) return validate_channel(read_channel_file(channel_file));
  throw ParseError("need --channel or --rows");
}

std::vector<double> load_distribution(const std::string& inline_text,
                                      const std::string& file) {
  if (!inline_text.empty()) return parse_vector(inline_text);
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw ParseError(file, 0, "cannot open file");
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r'))
      text.pop_back();
    return parse_vector(text);
  }
  throw ParseError("missing probability vector");
}

void print_weights(const WeightVector& w) {
  std::cout << "weights:";
  for (double v : w.values()) std::cout << ' ' << format_double(v);
  std::cout << "\n";
}

void print_solver_result(const SolverResult& r, bool bits) {
  const double scale = bits ? 1.0 / std::numbers::ln2 : 1.0;
  const char* unit = bits ? "bits" : "nats";
  print_weights(r.weights);
  std::cout << "capacity: " << format_double(r.capacity * scale) << ' ' << unit
            << "\n"
            << "iterations: " << r.iterations << "\n"
            << "converged: " << (r.converged ? "true" : "false") << "\n"
            << "gap: " << format_double(r.final_gap * scale) << ' ' << unit
            << "\n";
}

int cmd_capacity(const std::string& channel_file, const std::string& rows,
                 double tol, int max_iter, bool bits) {
  SolverConfig cfg;
  cfg.tolerance = tol;
  cfg.max_iterations = max_iter;
  print_solver_result(solve_capacity(load_channel(channel_file, rows), cfg), bits);
  return 0;
}

int cmd_aggregate(const std::string& channel_file, const std::string& rows,
                  double tol, int max_iter, double gamma) {
  SolverConfig cfg;
  cfg.tolerance = tol;
  cfg.max_iterations = max_iter;
  const Channel channel = load_channel(channel_file, rows);
  const MixtureScore score = aggregate(channel, cfg);
  print_weights(score.weights);
  std::cout << "capacity: " << format_double(score.capacity) << " nats\n"
            << "p_adversarial: " << format_double(score.p_adversarial) << "\n"
            << "detected(gamma=" << format_double(gamma)
            << "): " << (detect(score, gamma) ? "true" : "false") << "\n";
  return 0;
}

int cmd_evaluate(const std::string& scores_path, const std::string& groups_path,
                 const std::string& format, const std::string& out,
                 const std::string& roc_dir, bool baselines, double tol,
                 int max_iter) {
  const auto records = read_scores(scores_path, score_format_from_string(format));
  const auto groups = read_groups(groups_path);

  EvaluateOptions options;
  options.solver.tolerance = tol;
  options.solver.max_iterations = max_iter;

  const EvaluationReport report = evaluate(records, groups, options);
  std::cout << "== mixture ==\n";
  print_report(std::cout, report);
  if (!out.empty()) write_report(out, report);

  if (!roc_dir.empty()) {
    std::filesystem::create_directories(roc_dir);
    const auto grouped = grouped_scores(records, groups, options);
    for (std::size_t g = 0; g < grouped.size(); ++g) {
      std::vector<double> pos, neg;
      for (const auto& [id, s] : grouped[g].positives) pos.push_back(s);
      for (const auto& [id, s] : grouped[g].negatives) neg.push_back(s);
      const auto points = roc_points(pos, neg);
      write_roc_points(std::filesystem::path(roc_dir) /
                           ("roc_group_" + std::to_string(g) + ".csv"),
                       points);
    }
  }

  if (baselines) {
    const std::size_t k = records.empty() ? 0 : records.front().scores.size();
    for (std::size_t d = 0; d < k; ++d) {
      EvaluateOptions base = options;
      base.fixed_weights = WeightVector::one_hot(k, d);
      const EvaluationReport br = evaluate(records, groups, base);
      std::cout << "== detector " << d << " baseline ==\n";
      print_report(std::cout, br);
      if (!out.empty()) {
        std::filesystem::path p(out);
        p.replace_extension(".det" + std::to_string(d) + p.extension().string());
        write_report(p, br);
      }
    }
  }
  return 0;
}

int cmd_losses(const std::string& loss, const std::string& clean_text,
               const std::string& clean_file, const std::string& adv_text,
               const std::string& adv_file) {
  const auto adv = ClassDistribution::validate(load_distribution(adv_text, adv_file));
  double value = 0.0;
  if (loss == "gini") {
    value = gini_loss(adv);
  } else {
    const auto clean =
        ClassDistribution::validate(load_distribution(clean_text, clean_file));
    if (loss == "ace")
      value = ace_loss(clean, adv);
    else if (loss == "kl")
      value = kl_loss(clean, adv);
    else if (loss == "fr")
      value = fr_loss(clean, adv);
    else
      throw ParseError("unknown loss '" + loss + "'");
  }
  std::cout << loss << ": " << format_double(value) << "\n";
  return 0;
}

int cmd_synth(const std::string& config_path, const std::string& out,
              const std::string& format, std::int64_t seed_override) {
  SyntheticConfig cfg = read_synth_config(config_path);
  if (seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(seed_override);
  const auto records = generate_synthetic(cfg);
  write_scores(out, records, score_format_from_string(format),
               synth_header_comment(cfg));
  std::cout << "wrote " << records.size() << " records to " << out << "\n";
  return 0;
}

int cmd_groups_check(const std::string& groups_path) {
  const auto groups = read_groups(groups_path);
  std::size_t total = 0;
  for (const auto& g : groups) {
    std::cout << g.label() << ": " << g.members.size() << " members\n";
    total += g.members.size();
  }
  std::cout << "cells: " << groups.size() << "\n";
  std::cout << "total attack variants: " << total << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal mixture aggregation of adversarial-example detectors "
               "with simultaneous-attack (multi-armed) evaluation"};
  app.require_subcommand(1);

  std::string channel_file, rows, scores_path, groups_path, out, roc_dir;
  std::string format = "csv_wide";
  std::string loss, clean_text, clean_file, adv_text, adv_file, config_path;
  double tol = 1e-10, gamma = 0.5;
  int max_iter = 10000;
  bool bits = false, baselines = false;
  std::int64_t seed_override = -1;

  auto* cap = app.add_subcommand("capacity", "Optimal weights for one channel");
  cap->add_option("--channel", channel_file, "file with one 'p0,p1' row per line");
  cap->add_option("--rows", rows, "inline rows, e.g. '0.9,0.1;0.1,0.9'");
  cap->add_option("--tol", tol, "convergence gap in nats");
  cap->add_option("--max-iter", max_iter, "iteration cap");
  cap->add_flag("--bits", bits, "display bits instead of nats");

  auto* agg = app.add_subcommand("aggregate", "Mixture score for one channel");
  agg->add_option("--channel", channel_file, "file with one 'p0,p1' row per line");
  agg->add_option("--rows", rows, "inline rows");
  agg->add_option("--tol", tol, "convergence gap in nats");
  agg->add_option("--max-iter", max_iter, "iteration cap");
  agg->add_option("--gamma", gamma, "decision threshold (default 0.5, arbitrary)");

  auto* eval = app.add_subcommand("evaluate", "Grouped simultaneous-attack metrics");
  eval->add_option("--scores", scores_path, "score matrix file")->required();
  eval->add_option("--groups", groups_path, "attack-cell config")->required();
  eval->add_option("--format", format, "csv_wide or jsonl");
  eval->add_option("--out", out, "write report JSON here");
  eval->add_option("--roc-dump", roc_dir, "write per-group ROC points here");
  eval->add_flag("--baselines", baselines, "also evaluate each detector alone");
  eval->add_option("--tol", tol, "solver gap in nats");
  eval->add_option("--max-iter", max_iter, "solver iteration cap");

  auto* los = app.add_subcommand("losses", "Evaluate an attacker objective loss");
  los->add_option("--loss", loss, "ace | kl | fr | gini")->required();
  los->add_option("--clean", clean_text, "clean/truth distribution, e.g. '0.5,0.5'");
  los->add_option("--clean-file", clean_file, "file with the clean distribution");
  los->add_option("--adv", adv_text, "adversarial distribution");
  los->add_option("--adv-file", adv_file, "file with the adversarial distribution");

  auto* synth = app.add_subcommand("synth", "Generate a synthetic score matrix");
  synth->add_option("--config", config_path, "synthetic config JSON")->required();
  synth->add_option("--out", out, "output score file")->required();
  synth->add_option("--format", format, "csv_wide or jsonl");
  synth->add_option("--seed", seed_override, "override the config seed");

  auto* gc = app.add_subcommand("groups-check", "Census of an attack-cell config");
  gc->add_option("--groups", groups_path, "attack-cell config")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cap->parsed()) return cmd_capacity(channel_file, rows, tol, max_iter, bits);
    if (agg->parsed()) return cmd_aggregate(channel_file, rows, tol, max_iter, gamma);
    if (eval->parsed())
      return cmd_evaluate(scores_path, groups_path, format, out, roc_dir,
                          baselines, tol, max_iter);
    if (los->parsed())
      return cmd_losses(loss, clean_text, clean_file, adv_text, adv_file);
    if (synth->parsed()) return cmd_synth(config_path, out, format, seed_override);
    if (gc->parsed()) return cmd_groups_check(groups_path);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NonStochasticRow& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const OutOfRangeEntry& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const EmptyCell& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const GammaOutOfRange& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
