#ifndef TOPICSUM_JSONIO_HPP
#define TOPICSUM_JSONIO_HPP

#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "topicsum/corpus.hpp"
#include "topicsum/embeddings.hpp"
#include "topicsum/errors.hpp"

namespace topicsum {

// All stage outputs go through a temp file plus rename so readers never see a
// partial file.
inline void atomic_write(const std::filesystem::path& path, const std::string& contents) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write: " + tmp.string());
    out << contents;
    if (!out) throw DataError("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline void for_each_jsonl(const std::filesystem::path& path,
                           const std::function<void(const nlohmann::json&, int)>& fn) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open: " + path.string());
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    try {
      fn(nlohmann::json::parse(line), line_no);
    } catch (const nlohmann::json::parse_error& e) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

// Canonical document-store record, the output of the ingest stage.
struct StoredDocument {
  Document doc;
  std::vector<std::vector<EntitySpan>> entities_by_sentence;  // one list per sentence
  std::optional<ReferenceSummary> reference;
  std::vector<TopicInstance> topics;
};

inline nlohmann::ordered_json stored_document_to_json(const StoredDocument& sd) {
  nlohmann::ordered_json j;
  j["id"] = sd.doc.id;
  j["source"] = sd.doc.source_path;
  nlohmann::ordered_json sentences = nlohmann::ordered_json::array();
  for (size_t i = 0; i < sd.doc.sentences.size(); ++i) {
    const Sentence& s = sd.doc.sentences[i];
    nlohmann::ordered_json ents = nlohmann::ordered_json::array();
    if (i < sd.entities_by_sentence.size()) {
      for (const EntitySpan& e : sd.entities_by_sentence[i]) {
        ents.push_back({{"start", e.token_start}, {"len", e.token_len}, {"surface", e.surface}});
      }
    }
    sentences.push_back({{"text", s.text}, {"tokens", s.tokens}, {"entities", std::move(ents)}});
  }
  j["sentences"] = std::move(sentences);
  if (sd.reference) j["reference"] = sd.reference->text;
  nlohmann::ordered_json topics = nlohmann::ordered_json::array();
  for (const TopicInstance& t : sd.topics) {
    topics.push_back({{"text", t.topic_text},
                      {"entities", t.topic_entities},
                      {"origin", t.origin == TopicOrigin::generated ? "generated" : "provided"}});
  }
  j["topics"] = std::move(topics);
  return j;
}

inline StoredDocument stored_document_from_json(const nlohmann::json& j) {
  StoredDocument sd;
  sd.doc.id = j.at("id").get<std::string>();
  sd.doc.source_path = j.value("source", "");
  int index = 0;
  for (const auto& sj : j.at("sentences")) {
    Sentence s;
    s.index = index++;
    s.text = sj.at("text").get<std::string>();
    s.tokens = sj.at("tokens").get<std::vector<std::string>>();
    std::vector<EntitySpan> ents;
    for (const auto& ej : sj.value("entities", nlohmann::json::array())) {
      EntitySpan e;
      e.sentence_index = s.index;
      e.token_start = ej.at("start").get<int>();
      e.token_len = ej.at("len").get<int>();
      e.surface = ej.at("surface").get<std::string>();
      ents.push_back(std::move(e));
    }
    sd.doc.sentences.push_back(std::move(s));
    sd.entities_by_sentence.push_back(std::move(ents));
  }
  if (sd.doc.sentences.empty()) {
    throw DataError("stored document '" + sd.doc.id + "' has no sentences");
  }
  if (j.contains("reference")) {
    sd.reference = make_reference(sd.doc.id, j.at("reference").get<std::string>());
  }
  for (const auto& tj : j.value("topics", nlohmann::json::array())) {
    TopicInstance t;
    t.doc_id = sd.doc.id;
    t.topic_text = tj.at("text").get<std::string>();
    t.topic_entities = tj.value("entities", std::vector<std::string>{});
    t.origin = tj.value("origin", "provided") == std::string("generated") ? TopicOrigin::generated
                                                                          : TopicOrigin::provided;
    sd.topics.push_back(std::move(t));
  }
  return sd;
}

inline std::vector<StoredDocument> load_document_store(const std::filesystem::path& path) {
  std::vector<StoredDocument> docs;
  for_each_jsonl(path, [&](const nlohmann::json& j, int) {
    docs.push_back(stored_document_from_json(j));
  });
  return docs;
}

// Loads the precomputed sentence/topic/reference vector records.
inline PrecomputedVectorProvider load_precomputed_vectors(const std::filesystem::path& path) {
  PrecomputedVectorProvider provider;
  for_each_jsonl(path, [&](const nlohmann::json& j, int line_no) {
    const std::string id = j.at("id").get<std::string>();
    if (j.contains("vec")) {
      provider.add_sentence(id, j.at("sentence").get<int>(), j.at("vec").get<std::vector<double>>());
    } else if (j.contains("topic_vec")) {
      provider.add_topic(id, j.at("topic_vec").get<std::vector<double>>());
    } else if (j.contains("ref_vec")) {
      provider.add_reference(id, j.at("ref_vec").get<std::vector<double>>());
    } else {
      throw DataError(path.string() + ":" + std::to_string(line_no) +
                      ": record has none of vec/topic_vec/ref_vec");
    }
  });
  return provider;
}

}  // namespace topicsum

#endif
