#ifndef TOPICSUM_ALIGNMENT_HPP
#define TOPICSUM_ALIGNMENT_HPP

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "topicsum/corpus.hpp"
#include "topicsum/errors.hpp"

namespace topicsum {

enum class LabelSource { reference, qa };

struct ExtractiveLabels {
  std::string doc_id;
  std::vector<int> labels;  // one {0,1} per sentence
  LabelSource source = LabelSource::reference;
};

namespace detail {

using TokenCounts = std::unordered_map<std::string, int>;

inline TokenCounts count_tokens(const std::vector<std::string>& tokens) {
  TokenCounts counts;
  for (const std::string& t : tokens) ++counts[t];
  return counts;
}

// Clipped unigram gain of adding `sentence` given what the selection already
// covers of the target.
inline int coverage_gain(const TokenCounts& sentence, const TokenCounts& target,
                         const TokenCounts& covered) {
  int gain = 0;
  for (const auto& [tok, cnt] : sentence) {
    auto t = target.find(tok);
    if (t == target.end()) continue;
    auto c = covered.find(tok);
    const int already = c == covered.end() ? 0 : c->second;
    const int need = t->second - already;
    if (need > 0) gain += std::min(cnt, need);
  }
  return gain;
}

}  // namespace detail

// Greedy alignment of an abstractive target to document sentences: repeatedly
// select the sentence whose addition maximizes ROUGE-1 recall of the selected
// set, ties broken toward the lower index. After the first pick, a step that
// cannot strictly increase recall stops the loop. The first pick is always
// made for a non-empty target so the labels are never all zero in that case.
inline ExtractiveLabels greedy_align(const Document& doc, std::string_view target_text,
                                     int max_select,
                                     LabelSource source = LabelSource::reference) {
  if (max_select < 1) throw DataError("greedy_align: max_select must be >= 1");

  ExtractiveLabels out;
  out.doc_id = doc.id;
  out.labels.assign(doc.sentences.size(), 0);
  out.source = source;

  const std::vector<std::string> target_tokens = tokenize(target_text);
  if (target_tokens.empty()) return out;

  const detail::TokenCounts target = detail::count_tokens(target_tokens);
  std::vector<detail::TokenCounts> sentence_counts;
  sentence_counts.reserve(doc.sentences.size());
  for (const Sentence& s : doc.sentences) sentence_counts.push_back(detail::count_tokens(s.tokens));

  detail::TokenCounts covered;
  int selected = 0;
  while (selected < max_select) {
    int best = -1;
    int best_gain = 0;
    for (size_t i = 0; i < doc.sentences.size(); ++i) {
      if (out.labels[i]) continue;
      const int gain = detail::coverage_gain(sentence_counts[i], target, covered);
      if (gain > best_gain || (best < 0 && selected == 0)) {
        best = static_cast<int>(i);
        best_gain = gain;
      }
    }
    if (best < 0 || (selected > 0 && best_gain == 0)) break;
    out.labels[static_cast<size_t>(best)] = 1;
    ++selected;
    for (const auto& [tok, cnt] : sentence_counts[static_cast<size_t>(best)]) {
      auto t = target.find(tok);
      if (t == target.end()) continue;
      int& c = covered[tok];
      c = std::min(t->second, c + cnt);
    }
    if (best_gain == 0) break;  // forced first pick on a disjoint target
  }
  return out;
}

// A QA answer is a span of the context, so it aligns to a single sentence by
// default; max_select is a knob for QA systems that emit longer answers.
inline ExtractiveLabels qa_labels(const Document& doc, std::string_view answer_text,
                                  int max_select = 1) {
  return greedy_align(doc, answer_text, max_select, LabelSource::qa);
}

}  // namespace topicsum

#endif
