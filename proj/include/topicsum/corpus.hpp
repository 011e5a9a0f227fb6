#ifndef TOPICSUM_CORPUS_HPP
#define TOPICSUM_CORPUS_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "topicsum/errors.hpp"
#include "topicsum/text.hpp"

namespace topicsum {

struct Sentence {
  int index = 0;
  std::string text;
  std::vector<std::string> tokens;  // deterministic tokenization of text
};

struct Document {
  std::string id;
  std::vector<Sentence> sentences;
  std::string source_path;
};

struct ReferenceSummary {
  std::string doc_id;
  std::string text;
  std::vector<std::string> tokens;
};

enum class TopicOrigin { provided, generated };

struct TopicInstance {
  std::string doc_id;
  std::string topic_text;
  std::vector<std::string> topic_entities;  // may be empty for provided topics
  TopicOrigin origin = TopicOrigin::provided;
};

struct EntitySpan {
  int sentence_index = 0;
  int token_start = 0;
  int token_len = 1;
  std::string surface;  // original-case tokens joined by single spaces
};

// Segments, tokenizes and truncates raw text into a Document. Sentences that
// tokenize to nothing are dropped; a document with no surviving sentences is
// rejected.
inline Document make_document(std::string id, std::string_view raw_text,
                              std::string source_path = "", int max_sentences = 50) {
  Document doc;
  doc.id = std::move(id);
  doc.source_path = std::move(source_path);
  for (std::string& piece : split_sentences(raw_text)) {
    if (static_cast<int>(doc.sentences.size()) >= max_sentences) break;
    std::vector<std::string> tokens = tokenize(piece);
    if (tokens.empty()) continue;
    Sentence s;
    s.index = static_cast<int>(doc.sentences.size());
    s.text = std::move(piece);
    s.tokens = std::move(tokens);
    doc.sentences.push_back(std::move(s));
  }
  if (doc.sentences.empty()) {
    throw DataError("document '" + doc.id + "' has no sentences after tokenization");
  }
  return doc;
}

inline std::optional<ReferenceSummary> make_reference(const std::string& doc_id,
                                                      std::string_view text) {
  ReferenceSummary ref;
  ref.doc_id = doc_id;
  ref.text = std::string(text);
  ref.tokens = tokenize(text);
  if (ref.tokens.empty()) return std::nullopt;
  return ref;
}

namespace detail {

inline bool is_capitalized_token(const std::string& original_case_token) {
  return !original_case_token.empty() && is_ascii_upper(original_case_token[0]);
}

}  // namespace detail

// Heuristic entity extraction: maximal runs of capitalized tokens. A run that
// begins the sentence only counts when it spans at least two tokens, since the
// first word of an English sentence is capitalized regardless.
inline std::vector<EntitySpan> extract_entities(const Document& doc) {
  std::vector<EntitySpan> spans;
  for (const Sentence& s : doc.sentences) {
    std::vector<std::string> orig = tokenize_preserve_case(s.text);
    const int n = static_cast<int>(orig.size());
    int i = 0;
    while (i < n) {
      if (!detail::is_capitalized_token(orig[i])) {
        ++i;
        continue;
      }
      int j = i;
      while (j < n && detail::is_capitalized_token(orig[j])) ++j;
      const int len = j - i;
      if (i > 0 || len >= 2) {
        EntitySpan span;
        span.sentence_index = s.index;
        span.token_start = i;
        span.token_len = len;
        std::string surface = orig[i];
        for (int k = i + 1; k < j; ++k) {
          surface += ' ';
          surface += orig[k];
        }
        span.surface = std::move(surface);
        spans.push_back(std::move(span));
      }
      i = j;
    }
  }
  return spans;
}

// Entities for a topic given as free text: capitalized runs of any length,
// including at the start, since a topic string is a noun phrase rather than a
// sentence. An all-lowercase topic yields no entities.
inline std::vector<std::string> entities_from_topic_text(std::string_view topic_text) {
  std::vector<std::string> entities;
  std::vector<std::string> orig = tokenize_preserve_case(topic_text);
  const int n = static_cast<int>(orig.size());
  int i = 0;
  while (i < n) {
    if (!detail::is_capitalized_token(orig[i])) {
      ++i;
      continue;
    }
    int j = i;
    std::string surface = orig[i];
    while (++j < n && detail::is_capitalized_token(orig[j])) {
      surface += ' ';
      surface += orig[j];
    }
    entities.push_back(std::move(surface));
    i = j;
  }
  return entities;
}

inline TopicInstance make_provided_topic(const std::string& doc_id,
                                         std::string_view topic_text) {
  TopicInstance topic;
  topic.doc_id = doc_id;
  topic.topic_text = std::string(topic_text);
  topic.topic_entities = entities_from_topic_text(topic_text);
  topic.origin = TopicOrigin::provided;
  return topic;
}

// One topic per distinct entity surface (case-insensitive), ordered by
// frequency then first occurrence, truncated to max_topics.
inline std::vector<TopicInstance> generate_topics(const Document& doc, int max_topics) {
  if (max_topics < 1) throw ConfigError("max_topics must be >= 1");
  struct Entry {
    std::string surface;  // first-seen original casing
    int count = 0;
    int first_seen = 0;
  };
  std::map<std::string, Entry> by_norm;
  int order = 0;
  for (const EntitySpan& span : extract_entities(doc)) {
    std::string norm = to_lower(span.surface);
    auto [it, inserted] = by_norm.emplace(std::move(norm), Entry{});
    if (inserted) {
      it->second.surface = span.surface;
      it->second.first_seen = order;
    }
    ++it->second.count;
    ++order;
  }
  std::vector<Entry> entries;
  entries.reserve(by_norm.size());
  for (auto& [norm, entry] : by_norm) entries.push_back(std::move(entry));
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.first_seen < b.first_seen;
  });
  if (static_cast<int>(entries.size()) > max_topics) entries.resize(max_topics);

  std::vector<TopicInstance> topics;
  topics.reserve(entries.size());
  for (Entry& e : entries) {
    TopicInstance topic;
    topic.doc_id = doc.id;
    topic.topic_text = e.surface;
    topic.topic_entities = {std::move(e.surface)};
    topic.origin = TopicOrigin::generated;
    topics.push_back(std::move(topic));
  }
  return topics;
}

}  // namespace topicsum

#endif
