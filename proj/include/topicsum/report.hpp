#ifndef TOPICSUM_REPORT_HPP
#define TOPICSUM_REPORT_HPP

#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "topicsum/errors.hpp"
#include "topicsum/rouge.hpp"
#include "topicsum/text.hpp"

namespace topicsum {

struct ReportRow {
  std::string system;
  std::string mode;
  double rouge1 = 0.0;  // mean F1 over the corpus
  double rouge2 = 0.0;
  double rougeL = 0.0;
  int instance_count = 0;
};

struct SummaryEntry {
  std::string id;
  std::string topic;
  std::string text;
};

struct ReferenceEntry {
  std::string id;
  std::string topic;
  std::string text;
};

// Pairs summaries with references by (id, topic) and reports unweighted mean
// F1 over the corpus, under the repo tokenizer.
inline ReportRow evaluate_corpus(const std::vector<SummaryEntry>& summaries,
                                 const std::vector<ReferenceEntry>& references,
                                 std::string system, std::string mode) {
  if (summaries.empty()) throw DataError("evaluate_corpus: no summaries");
  std::map<std::pair<std::string, std::string>, const ReferenceEntry*> by_key;
  for (const ReferenceEntry& r : references) by_key[{r.id, r.topic}] = &r;

  ReportRow row;
  row.system = std::move(system);
  row.mode = std::move(mode);
  double sum1 = 0.0, sum2 = 0.0, sumL = 0.0;
  for (const SummaryEntry& s : summaries) {
    auto it = by_key.find({s.id, s.topic});
    if (it == by_key.end()) {
      throw DataError("evaluate_corpus: no reference for (id=" + s.id + ", topic=" + s.topic + ")");
    }
    const std::vector<std::string> cand = tokenize(s.text);
    const std::vector<std::string> ref = tokenize(it->second->text);
    sum1 += rouge_n(cand, ref, 1).f1;
    sum2 += rouge_n(cand, ref, 2).f1;
    sumL += rouge_l(cand, ref).f1;
  }
  row.instance_count = static_cast<int>(summaries.size());
  row.rouge1 = sum1 / row.instance_count;
  row.rouge2 = sum2 / row.instance_count;
  row.rougeL = sumL / row.instance_count;
  return row;
}

inline nlohmann::ordered_json report_to_json(const std::vector<ReportRow>& rows) {
  nlohmann::ordered_json out;
  out["rows"] = nlohmann::ordered_json::array();
  for (const ReportRow& r : rows) {
    out["rows"].push_back({{"system", r.system},
                           {"mode", r.mode},
                           {"r1", r.rouge1},
                           {"r2", r.rouge2},
                           {"rl", r.rougeL},
                           {"n", r.instance_count}});
  }
  return out;
}

inline std::vector<ReportRow> report_from_json(const nlohmann::json& j) {
  std::vector<ReportRow> rows;
  for (const auto& item : j.at("rows")) {
    ReportRow r;
    r.system = item.at("system").get<std::string>();
    r.mode = item.at("mode").get<std::string>();
    r.rouge1 = item.at("r1").get<double>();
    r.rouge2 = item.at("r2").get<double>();
    r.rougeL = item.at("rl").get<double>();
    r.instance_count = item.at("n").get<int>();
    rows.push_back(std::move(r));
  }
  return rows;
}

namespace detail {

inline std::string format_cell(double value, bool is_max) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(4) << value;
  std::string s = ss.str();
  return is_max ? "**" + s + "**" : s;
}

}  // namespace detail

// Fixed-width table in caller order; the column maximum of each ROUGE column
// is marked bold.
inline std::string render_report_table(const std::vector<ReportRow>& rows) {
  if (rows.empty()) throw DataError("render_report_table: no rows");
  double max1 = rows[0].rouge1, max2 = rows[0].rouge2, maxL = rows[0].rougeL;
  size_t name_width = 6;  // "system"
  for (const ReportRow& r : rows) {
    max1 = std::max(max1, r.rouge1);
    max2 = std::max(max2, r.rouge2);
    maxL = std::max(maxL, r.rougeL);
    name_width = std::max(name_width, r.system.size());
  }
  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(name_width) + 2) << "system"
      << std::setw(14) << "mode" << std::setw(12) << "rouge1" << std::setw(12) << "rouge2"
      << std::setw(12) << "rougeL" << "n" << '\n';
  for (const ReportRow& r : rows) {
    out << std::left << std::setw(static_cast<int>(name_width) + 2) << r.system
        << std::setw(14) << r.mode
        << std::setw(12) << detail::format_cell(r.rouge1, r.rouge1 == max1)
        << std::setw(12) << detail::format_cell(r.rouge2, r.rouge2 == max2)
        << std::setw(12) << detail::format_cell(r.rougeL, r.rougeL == maxL)
        << r.instance_count << '\n';
  }
  return out.str();
}

}  // namespace topicsum

#endif
