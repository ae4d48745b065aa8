#include "mixdet/io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace mixdet {

namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& s, const std::string& where, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError(where, line, "bad number '" + s + "'");
  return v;
}

bool parse_bool(const std::string& s, const std::string& where, std::size_t line) {
  if (s == "1" || s == "true") return true;
  if (s == "0" || s == "false") return false;
  throw ParseError(where, line, "bad boolean '" + s + "'");
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);  // binary: no newline translation
  if (!out) throw Error("cannot write file: " + path.string());
  return out;
}

constexpr std::size_t kFixedColumns = 7;  // before det_0

ScoreRecord record_from_csv(const std::vector<std::string>& fields,
                            std::size_t n_detectors, const std::string& where,
                            std::size_t line) {
  if (fields.size() != kFixedColumns + n_detectors)
    throw ParseError(where, line, "wrong column count");
  ScoreRecord rec;
  rec.sample_id = fields[0];
  rec.role = role_from_string(fields[1]);
  if (!fields[2].empty()) {
    AttackKey key;
    key.algorithm = fields[2];
    if (!fields[3].empty()) key.loss = loss_from_string(fields[3]);
    key.norm = norm_from_string(fields[4].empty() ? "none" : fields[4]);
    if (!fields[5].empty()) key.epsilon = parse_double(fields[5], where, line);
    rec.attack = std::move(key);
  }
  if (!fields[6].empty()) rec.fooled = parse_bool(fields[6], where, line);
  for (std::size_t k = 0; k < n_detectors; ++k)
    rec.scores.push_back(parse_double(fields[kFixedColumns + k], where, line));
  return rec;
}

ScoreRecord record_from_json(const ordered_json& obj, const std::string& where,
                             std::size_t line) {
  ScoreRecord rec;
  try {
    rec.sample_id = obj.at("sample_id").get<std::string>();
    rec.role = role_from_string(obj.at("role").get<std::string>());
    if (obj.contains("algorithm") && !obj["algorithm"].is_null()) {
      AttackKey key;
      key.algorithm = obj["algorithm"].get<std::string>();
      if (obj.contains("loss") && !obj["loss"].is_null())
        key.loss = loss_from_string(obj["loss"].get<std::string>());
      if (obj.contains("norm") && !obj["norm"].is_null())
        key.norm = norm_from_string(obj["norm"].get<std::string>());
      if (obj.contains("epsilon") && !obj["epsilon"].is_null())
        key.epsilon = obj["epsilon"].get<double>();
      rec.attack = std::move(key);
    }
    if (obj.contains("fooled") && !obj["fooled"].is_null())
      rec.fooled = obj["fooled"].get<bool>();
    for (std::size_t k = 0;; ++k) {
      const std::string col = "det_" + std::to_string(k);
      if (!obj.contains(col)) break;
      rec.scores.push_back(obj[col].get<double>());
    }
  } catch (const ordered_json::exception& e) {
    throw ParseError(where, line, e.what());
  }
  return rec;
}

}  // namespace

ScoreFormat score_format_from_string(const std::string& s) {
  if (s == "csv_wide" || s == "csv") return ScoreFormat::csv_wide;
  if (s == "jsonl") return ScoreFormat::jsonl;
  throw ValidationError("unknown score format '" + s + "'");
}

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::vector<ScoreRecord> read_scores(const std::filesystem::path& path,
                                     ScoreFormat format) {
  std::ifstream in = open_input(path);
  const std::string where = path.string();
  std::vector<ScoreRecord> records;
  std::string line;
  std::size_t line_no = 0;
  std::size_t n_detectors = 0;
  bool saw_header = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (format == ScoreFormat::csv_wide) {
      const auto fields = split_csv(line);
      if (!saw_header) {
        if (fields.size() < kFixedColumns + 1 || fields[0] != "sample_id")
          throw ParseError(where, line_no, "bad csv header");
        n_detectors = fields.size() - kFixedColumns;
        saw_header = true;
        continue;
      }
      records.push_back(record_from_csv(fields, n_detectors, where, line_no));
    } else {
      ordered_json obj;
      try {
        obj = ordered_json::parse(line);
      } catch (const ordered_json::exception& e) {
        throw ParseError(where, line_no, e.what());
      }
      records.push_back(record_from_json(obj, where, line_no));
    }
    try {
      records.back().check();
    } catch (const Error& e) {
      throw ValidationError(where + ":" + std::to_string(line_no) + ": " + e.what());
    }
    if (n_detectors == 0) n_detectors = records.back().scores.size();
    if (records.back().scores.size() != n_detectors)
      throw ValidationError(where + ":" + std::to_string(line_no) +
                            ": inconsistent detector count");
  }
  if (format == ScoreFormat::csv_wide && !saw_header)
    throw ParseError(where, line_no, "missing csv header");
  return records;
}

void write_scores(const std::filesystem::path& path,
                  const std::vector<ScoreRecord>& records, ScoreFormat format,
                  const std::string& header_comment) {
  std::ofstream out = open_output(path);
  if (!header_comment.empty()) out << "# " << header_comment << "\n";

  const std::size_t n_detectors = records.empty() ? 0 : records.front().scores.size();
  if (format == ScoreFormat::csv_wide) {
    out << "sample_id,role,algorithm,loss,norm,epsilon,fooled";
    for (std::size_t k = 0; k < n_detectors; ++k) out << ",det_" << k;
    out << "\n";
  }
  for (const ScoreRecord& rec : records) {
    if (format == ScoreFormat::csv_wide) {
      out << rec.sample_id << ',' << to_string(rec.role) << ',';
      if (rec.attack) {
        out << rec.attack->algorithm << ','
            << (rec.attack->loss ? to_string(*rec.attack->loss) : "") << ','
            << to_string(rec.attack->norm) << ','
            << (rec.attack->epsilon ? format_double(*rec.attack->epsilon) : "")
            << ',' << (rec.fooled ? '1' : '0');
      } else {
        out << ",,,,";
      }
      for (double s : rec.scores) out << ',' << format_double(s);
      out << "\n";
    } else {
      ordered_json obj;
      obj["sample_id"] = rec.sample_id;
      obj["role"] = to_string(rec.role);
      if (rec.attack) {
        obj["algorithm"] = rec.attack->algorithm;
        if (rec.attack->loss) obj["loss"] = to_string(*rec.attack->loss);
        obj["norm"] = to_string(rec.attack->norm);
        if (rec.attack->epsilon) obj["epsilon"] = *rec.attack->epsilon;
        obj["fooled"] = rec.fooled;
      }
      for (std::size_t k = 0; k < rec.scores.size(); ++k)
        obj["det_" + std::to_string(k)] = rec.scores[k];
      out << obj.dump() << "\n";
    }
  }
}

std::vector<AttackGroup> read_groups(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const ordered_json::exception& e) {
    throw ParseError(path.string(), 0, e.what());
  }
  if (!doc.contains("cells") || !doc["cells"].is_array() || doc["cells"].empty())
    throw ParseError(path.string(), 0, "config needs a nonempty 'cells' array");

  std::vector<AttackGroup> groups;
  for (const auto& cell : doc["cells"]) {
    GroupCell gc;
    try {
      gc.norm = norm_from_string(cell.at("norm").get<std::string>());
      if (cell.contains("epsilon") && !cell["epsilon"].is_null())
        gc.epsilon = cell["epsilon"].get<double>();
      for (const auto& alg : cell.at("algorithms")) {
        CellAlgorithm ca;
        ca.tag = alg.at("tag").get<std::string>();
        if (alg.contains("starred")) ca.starred = alg["starred"].get<bool>();
        gc.algorithms.push_back(std::move(ca));
      }
    } catch (const ordered_json::exception& e) {
      throw ParseError(path.string(), 0, e.what());
    }
    groups.push_back(expand_group(gc));
  }
  return groups;
}

namespace {

ordered_json report_json(const EvaluationReport& report) {
  ordered_json doc;
  doc["groups"] = ordered_json::array();
  for (const GroupReport& gr : report.groups) {
    ordered_json g;
    g["label"] = gr.label;
    g["norm"] = to_string(gr.norm);
    if (gr.epsilon)
      g["epsilon"] = *gr.epsilon;
    else
      g["epsilon"] = nullptr;
    g["auroc"] = gr.auroc;
    g["fpr_at_95_tpr"] = gr.fpr_at_95_tpr;
    g["threshold_at_95"] = gr.threshold_at_95;
    g["n_positives"] = gr.n_positives;
    g["n_negatives"] = gr.n_negatives;
    g["mean_capacity"] = gr.mean_capacity;
    doc["groups"].push_back(std::move(g));
  }
  doc["mean_auroc"] = report.mean_auroc;
  doc["mean_fpr_at_95_tpr"] = report.mean_fpr_at_95_tpr;
  return doc;
}

}  // namespace

std::string report_to_json(const EvaluationReport& report) {
  return report_json(report).dump(2) + "\n";
}

void write_report(const std::filesystem::path& path, const EvaluationReport& report) {
  open_output(path) << report_to_json(report);
}

void print_report(std::ostream& os, const EvaluationReport& report) {
  os << std::left << std::setw(18) << "group" << std::right << std::setw(9)
     << "auroc" << std::setw(10) << "fpr@95" << std::setw(7) << "pos"
     << std::setw(7) << "neg" << std::setw(11) << "mean_cap" << "\n";
  os << std::fixed << std::setprecision(4);
  for (const GroupReport& gr : report.groups) {
    os << std::left << std::setw(18) << gr.label << std::right << std::setw(9)
       << gr.auroc << std::setw(10) << gr.fpr_at_95_tpr << std::setw(7)
       << gr.n_positives << std::setw(7) << gr.n_negatives << std::setw(11)
       << gr.mean_capacity << "\n";
  }
  os << std::left << std::setw(18) << "mean" << std::right << std::setw(9)
     << report.mean_auroc << std::setw(10) << report.mean_fpr_at_95_tpr << "\n";
  os.unsetf(std::ios::fixed);
}

void write_roc_points(const std::filesystem::path& path,
                      const std::vector<RocPoint>& points) {
  std::ofstream out = open_output(path);
  out << "threshold,fpr,tpr\n";
  for (const RocPoint& p : points)
    out << format_double(p.threshold) << ',' << format_double(p.fpr) << ','
        << format_double(p.tpr) << "\n";
}

}  // namespace mixdet
