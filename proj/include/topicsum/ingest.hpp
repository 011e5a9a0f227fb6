#ifndef TOPICSUM_INGEST_HPP
#define TOPICSUM_INGEST_HPP

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "topicsum/corpus.hpp"
#include "topicsum/errors.hpp"

namespace topicsum {

enum class CorpusFormat { stories, jsonl };

inline CorpusFormat parse_corpus_format(const std::string& name) {
  if (name == "stories") return CorpusFormat::stories;
  if (name == "jsonl") return CorpusFormat::jsonl;
  throw ConfigError("unknown corpus format: " + name);
}

struct IngestRecord {
  Document doc;
  std::optional<ReferenceSummary> reference;
  std::optional<TopicInstance> topic;
};

struct IngestOptions {
  CorpusFormat format = CorpusFormat::stories;
  int max_sentences = 50;
  std::ostream* diagnostics = &std::cerr;
};

struct IngestStats {
  int yielded = 0;
  int skipped = 0;
};

namespace detail {

inline void log_skip(const IngestOptions& opts, const std::string& what) {
  if (opts.diagnostics) *opts.diagnostics << "ingest: skipping " << what << '\n';
}

// CNN/DM story convention: article body, then `@highlight` markers each
// followed by one reference sentence.
inline bool parse_story_file(const std::filesystem::path& path, std::string& body,
                             std::vector<std::string>& highlights) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open story file: " + path.string());
  std::string line;
  bool in_highlights = false;
  bool expecting_text = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view trimmed = detail::trim(line);
    if (trimmed == "@highlight") {
      in_highlights = true;
      expecting_text = true;
      continue;
    }
    if (!in_highlights) {
      body += line;
      body += '\n';
    } else if (expecting_text && !trimmed.empty()) {
      highlights.emplace_back(trimmed);
      expecting_text = false;
    }
  }
  return !body.empty();
}

inline std::string join_highlights(const std::vector<std::string>& highlights) {
  std::string out;
  for (const std::string& h : highlights) {
    if (!out.empty()) out += ". ";
    out += h;
  }
  return out;
}

}  // namespace detail

using IngestSink = std::function<void(IngestRecord&&)>;

inline IngestStats ingest_stories(const std::filesystem::path& dir, const IngestOptions& opts,
                                  const IngestSink& sink) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  IngestStats stats;
  for (const auto& path : files) {
    std::string body;
    std::vector<std::string> highlights;
    detail::parse_story_file(path, body, highlights);
    const std::string id = path.stem().string();
    try {
      IngestRecord rec;
      rec.doc = make_document(id, body, path.string(), opts.max_sentences);
      rec.reference = make_reference(id, detail::join_highlights(highlights));
      sink(std::move(rec));
      ++stats.yielded;
    } catch (const DataError& e) {
      detail::log_skip(opts, path.string() + ": " + e.what());
      ++stats.skipped;
    }
  }
  return stats;
}

// JSON lines: {"id": str, "document": str, "reference": str?, "topic": str?}
inline IngestStats ingest_jsonl(const std::filesystem::path& file, const IngestOptions& opts,
                                const IngestSink& sink) {
  std::ifstream in(file);
  if (!in) throw DataError("cannot open corpus file: " + file.string());

  IngestStats stats;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const std::string where = file.string() + ":" + std::to_string(line_no);
    try {
      nlohmann::json j = nlohmann::json::parse(line);
      const std::string id = j.at("id").get<std::string>();
      const std::string document = j.at("document").get<std::string>();
      IngestRecord rec;
      rec.doc = make_document(id, document, where, opts.max_sentences);
      if (j.contains("reference") && !j["reference"].is_null()) {
        rec.reference = make_reference(id, j["reference"].get<std::string>());
      }
      if (j.contains("topic") && !j["topic"].is_null()) {
        const std::string topic_text = j["topic"].get<std::string>();
        if (!tokenize(topic_text).empty()) {
          rec.topic = make_provided_topic(id, topic_text);
        }
      }
      sink(std::move(rec));
      ++stats.yielded;
    } catch (const nlohmann::json::exception& e) {
      detail::log_skip(opts, where + ": " + e.what());
      ++stats.skipped;
    } catch (const DataError& e) {
      detail::log_skip(opts, where + ": " + e.what());
      ++stats.skipped;
    }
  }
  return stats;
}

// A corpus path is a directory of story files or a single JSON-lines file.
inline IngestStats ingest(const std::filesystem::path& corpus_path, const IngestOptions& opts,
                          const IngestSink& sink) {
  if (!std::filesystem::exists(corpus_path)) {
    throw DataError("corpus path does not exist: " + corpus_path.string());
  }
  if (opts.format == CorpusFormat::stories) return ingest_stories(corpus_path, opts, sink);
  return ingest_jsonl(corpus_path, opts, sink);
}

// Precomputed entity override: JSON lines
// {"id": str, "entities": [{"sentence": int, "start": int, "len": int, "surface": str}]}
inline std::map<std::string, std::vector<EntitySpan>> load_entity_overrides(
    const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw DataError("cannot open entity file: " + file.string());
  std::map<std::string, std::vector<EntitySpan>> by_id;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    try {
      nlohmann::json j = nlohmann::json::parse(line);
      const std::string id = j.at("id").get<std::string>();
      std::vector<EntitySpan>& spans = by_id[id];
      for (const auto& e : j.at("entities")) {
        EntitySpan span;
        span.sentence_index = e.at("sentence").get<int>();
        span.token_start = e.at("start").get<int>();
        span.token_len = e.at("len").get<int>();
        span.surface = e.at("surface").get<std::string>();
        if (span.token_len < 1 || span.token_start < 0 || span.sentence_index < 0) {
          throw DataError("invalid entity span bounds");
        }
        spans.push_back(std::move(span));
      }
    } catch (const nlohmann::json::exception& e) {
      throw DataError(file.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return by_id;
}

// Offline QA output: JSON lines {"id": str, "topic": str, "answer": str},
// keyed case-insensitively on topic.
inline std::map<std::pair<std::string, std::string>, std::string> load_qa_answers(
    const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw DataError("cannot open QA answers file: " + file.string());
  std::map<std::pair<std::string, std::string>, std::string> answers;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    try {
      nlohmann::json j = nlohmann::json::parse(line);
      answers[{j.at("id").get<std::string>(), to_lower(j.at("topic").get<std::string>())}] =
          j.at("answer").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw DataError(file.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return answers;
}

// Validates override spans against a document before use.
inline void validate_entity_spans(const Document& doc, const std::vector<EntitySpan>& spans) {
  for (const EntitySpan& span : spans) {
    if (span.sentence_index >= static_cast<int>(doc.sentences.size())) {
      throw DataError("entity span sentence index out of range for doc " + doc.id);
    }
    const Sentence& s = doc.sentences[static_cast<size_t>(span.sentence_index)];
    if (span.token_start + span.token_len > static_cast<int>(s.tokens.size())) {
      throw DataError("entity span token range out of bounds for doc " + doc.id);
    }
  }
}

}  // namespace topicsum

#endif
