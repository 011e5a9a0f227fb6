#ifndef TOPICSUM_SIGNALS_HPP
#define TOPICSUM_SIGNALS_HPP

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "topicsum/alignment.hpp"
#include "topicsum/corpus.hpp"
#include "topicsum/embeddings.hpp"
#include "topicsum/errors.hpp"

namespace topicsum {

inline constexpr std::array<const char*, 7> kSignalNames = {
    "ext", "rule", "word_sim", "topic_sent", "ref_sent", "sent_sent", "qa"};

inline std::set<std::string> all_signal_names() {
  return {kSignalNames.begin(), kSignalNames.end()};
}

inline bool is_signal_name(const std::string& name) {
  return std::find_if(kSignalNames.begin(), kSignalNames.end(),
                      [&](const char* s) { return name == s; }) != kSignalNames.end();
}

// Per-sentence values in [0,1] for each supervision source present on one
// (document, topic) instance. `ext` and `qa` hold binary values.
struct SignalMatrix {
  std::string doc_id;
  std::string topic_text;
  int n = 0;
  std::map<std::string, std::vector<double>> values;

  bool has(const std::string& name) const { return values.count(name) > 0; }
};

struct SignalConfig {
  std::set<std::string> enabled = all_signal_names();
  int ext_max_select = 3;
  int qa_max_select = 1;
};

// Keywords of a topic: its entities when it has any, otherwise its tokens
// minus stopwords. Each keyword is kept as a (possibly multi-token) lowercase
// token sequence.
inline std::vector<std::vector<std::string>> topic_keywords(const TopicInstance& topic) {
  std::vector<std::vector<std::string>> keywords;
  if (!topic.topic_entities.empty()) {
    for (const std::string& e : topic.topic_entities) {
      std::vector<std::string> toks = tokenize(e);
      if (!toks.empty()) keywords.push_back(std::move(toks));
    }
  } else {
    for (std::string& t : tokenize(topic.topic_text)) {
      if (!stopwords().count(t)) keywords.push_back({std::move(t)});
    }
  }
  return keywords;
}

namespace detail {

inline bool contains_subsequence(const std::vector<std::string>& haystack,
                                 const std::vector<std::string>& needle) {
  if (needle.empty() || needle.size() > haystack.size()) return false;
  for (size_t i = 0; i + needle.size() <= haystack.size(); ++i) {
    bool match = true;
    for (size_t k = 0; k < needle.size(); ++k) {
      if (haystack[i + k] != needle[k]) {
        match = false;
        break;
      }
    }
    if (match) return true;
  }
  return false;
}

inline double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

inline double clamped_cosine(const SentenceVector& a, const SentenceVector& b) {
  if (a.is_zero || b.is_zero) return 0.0;
  return clamp01(cosine(a.vec, b.vec));
}

}  // namespace detail

// Indicator: 1 when any topic keyword appears as a contiguous token
// subsequence of the sentence.
inline std::vector<int> rule_signal(const Document& doc, const TopicInstance& topic) {
  const std::vector<std::vector<std::string>> keywords = topic_keywords(topic);
  if (keywords.empty()) {
    throw EmptyTopicError("topic '" + topic.topic_text + "' has no keywords after normalization");
  }
  std::vector<int> out(doc.sentences.size(), 0);
  for (const Sentence& s : doc.sentences) {
    for (const auto& kw : keywords) {
      if (detail::contains_subsequence(s.tokens, kw)) {
        out[static_cast<size_t>(s.index)] = 1;
        break;
      }
    }
  }
  return out;
}

// Max clamped cosine between any sentence entity and any topic entity.
// Multi-token entities are embedded as the mean of their token vectors.
inline std::vector<double> word_sim_signal(const Document& doc,
                                           const std::vector<EntitySpan>& doc_entities,
                                           const TopicInstance& topic,
                                           const EmbeddingTable& table) {
  if (topic.topic_entities.empty()) {
    throw DataError("word_sim_signal: topic '" + topic.topic_text + "' has no entities");
  }
  std::vector<SentenceVector> topic_vecs;
  topic_vecs.reserve(topic.topic_entities.size());
  for (const std::string& e : topic.topic_entities) {
    topic_vecs.push_back(mean_vector(tokenize(e), table));
  }

  std::vector<double> out(doc.sentences.size(), 0.0);
  for (const EntitySpan& span : doc_entities) {
    const SentenceVector ev = mean_vector(tokenize(span.surface), table);
    double best = 0.0;
    for (const SentenceVector& tv : topic_vecs) {
      best = std::max(best, detail::clamped_cosine(ev, tv));
    }
    double& cell = out[static_cast<size_t>(span.sentence_index)];
    cell = std::max(cell, best);
  }
  return out;
}

// Relevance of each sentence to the topic: max(0, cos(b_topic, b_i)).
inline std::vector<double> topic_sent_signal(const Document& doc, const TopicInstance& topic,
                                             const SentenceVectorProvider& provider) {
  const SentenceVector tv = provider.topic(doc, topic);
  std::vector<double> out(doc.sentences.size(), 0.0);
  for (const Sentence& s : doc.sentences) {
    out[static_cast<size_t>(s.index)] = detail::clamped_cosine(tv, provider.sentence(doc, s.index));
  }
  return out;
}

// Relevance of each sentence to the abstractive reference: max(0, cos(b_r, b_i)).
inline std::vector<double> ref_sent_signal(const Document& doc, const ReferenceSummary& ref,
                                           const SentenceVectorProvider& provider) {
  const SentenceVector rv = provider.reference(doc, ref);
  std::vector<double> out(doc.sentences.size(), 0.0);
  for (const Sentence& s : doc.sentences) {
    out[static_cast<size_t>(s.index)] = detail::clamped_cosine(rv, provider.sentence(doc, s.index));
  }
  return out;
}

// Centrality: mean clamped cosine of a sentence to all other sentences.
// A single-sentence document is defined to score [0].
inline std::vector<double> sent_sent_signal(const Document& doc,
                                            const SentenceVectorProvider& provider) {
  const size_t n = doc.sentences.size();
  std::vector<double> out(n, 0.0);
  if (n < 2) return out;
  std::vector<SentenceVector> vecs;
  vecs.reserve(n);
  for (size_t i = 0; i < n; ++i) vecs.push_back(provider.sentence(doc, static_cast<int>(i)));
  for (size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      sum += detail::clamped_cosine(vecs[i], vecs[j]);
    }
    out[i] = detail::clamp01(sum / static_cast<double>(n - 1));
  }
  return out;
}

// General-summarization extractive labels via greedy alignment of the
// reference abstract.
inline std::vector<int> ext_signal(const Document& doc, const ReferenceSummary& ref,
                                   int max_select = 3) {
  return greedy_align(doc, ref.text, max_select).labels;
}

// Supervision induced by an external QA model's answer text.
inline std::vector<int> qa_signal(const Document& doc, std::string_view answer_text,
                                  int max_select = 1) {
  return qa_labels(doc, answer_text, max_select).labels;
}

struct SignalInputs {
  const Document* doc = nullptr;
  const TopicInstance* topic = nullptr;
  const ReferenceSummary* reference = nullptr;    // optional
  const std::string* qa_answer = nullptr;         // optional
  const std::vector<EntitySpan>* doc_entities = nullptr;
};

namespace detail {

inline std::vector<double> to_real(const std::vector<int>& v) {
  return std::vector<double>(v.begin(), v.end());
}

}  // namespace detail

// Computes every enabled signal that its inputs allow. Signals whose inputs
// are absent (no reference, no QA answer, topic without entities) are omitted
// so that fusion can renormalize over what is present.
inline SignalMatrix build_matrix(const SignalInputs& in, const SentenceVectorProvider& provider,
                                 const EmbeddingTable& table, const SignalConfig& cfg) {
  const Document& doc = *in.doc;
  const TopicInstance& topic = *in.topic;
  SignalMatrix m;
  m.doc_id = doc.id;
  m.topic_text = topic.topic_text;
  m.n = static_cast<int>(doc.sentences.size());

  const auto enabled = [&](const char* name) { return cfg.enabled.count(name) > 0; };

  if (enabled("rule")) {
    m.values["rule"] = detail::to_real(rule_signal(doc, topic));
  }
  if (enabled("word_sim") && !topic.topic_entities.empty()) {
    std::vector<EntitySpan> local;
    const std::vector<EntitySpan>* ents = in.doc_entities;
    if (!ents) {
      local = extract_entities(doc);
      ents = &local;
    }
    m.values["word_sim"] = word_sim_signal(doc, *ents, topic, table);
  }
  if (enabled("topic_sent")) {
    m.values["topic_sent"] = topic_sent_signal(doc, topic, provider);
  }
  if (enabled("sent_sent")) {
    m.values["sent_sent"] = sent_sent_signal(doc, provider);
  }
  if (in.reference) {
    if (enabled("ext")) {
      m.values["ext"] = detail::to_real(ext_signal(doc, *in.reference, cfg.ext_max_select));
    }
    if (enabled("ref_sent")) {
      m.values["ref_sent"] = ref_sent_signal(doc, *in.reference, provider);
    }
  }
  if (in.qa_answer && enabled("qa")) {
    m.values["qa"] = detail::to_real(qa_signal(doc, *in.qa_answer, cfg.qa_max_select));
  }

  if (m.values.empty()) {
    throw DataError("no signals present for (id=" + m.doc_id + ", topic=" + m.topic_text + ")");
  }
  for (const auto& [name, vals] : m.values) {
    if (static_cast<int>(vals.size()) != m.n) {
      throw DataError("signal '" + name + "' has wrong length for id=" + m.doc_id);
    }
    for (double v : vals) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw DataError("signal '" + name + "' out of [0,1] for id=" + m.doc_id);
      }
    }
  }
  return m;
}

}  // namespace topicsum

#endif
