#ifndef TOPICSUM_PIPELINE_HPP
#define TOPICSUM_PIPELINE_HPP

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "topicsum/corpus.hpp"
#include "topicsum/embeddings.hpp"
#include "topicsum/errors.hpp"
#include "topicsum/fusion.hpp"
#include "topicsum/ingest.hpp"
#include "topicsum/jsonio.hpp"
#include "topicsum/report.hpp"
#include "topicsum/scorer.hpp"
#include "topicsum/signals.hpp"

namespace topicsum {

struct RunConfig {
  std::string corpus;
  std::string format = "stories";
  std::string embeddings;
  std::string sentence_vectors;  // optional: precomputed vector file
  std::string entities;          // optional: entity override file
  std::string qa_answers;        // optional: offline QA output
  std::string out = "out";

  std::vector<std::string> enabled_signals{kSignalNames.begin(), kSignalNames.end()};
  std::map<std::string, double> weights;  // empty means equal weights over enabled

  TrainConfig train;
  std::string mode = "one_sentence";
  int max_topics = 5;
  int max_sentences = 50;
  int ext_max_select = 3;
  int qa_max_select = 1;
};

inline nlohmann::ordered_json run_config_to_json(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["corpus"] = cfg.corpus;
  j["format"] = cfg.format;
  j["embeddings"] = cfg.embeddings;
  if (!cfg.sentence_vectors.empty()) j["sentence_vectors"] = cfg.sentence_vectors;
  if (!cfg.entities.empty()) j["entities"] = cfg.entities;
  if (!cfg.qa_answers.empty()) j["qa_answers"] = cfg.qa_answers;
  j["out"] = cfg.out;
  j["signals"] = cfg.enabled_signals;
  if (!cfg.weights.empty()) j["weights"] = cfg.weights;
  j["train"] = {{"learning_rate", cfg.train.learning_rate}, {"epochs", cfg.train.epochs},
                {"l2", cfg.train.l2},                       {"seed", cfg.train.seed},
                {"clamp_eps", cfg.train.clamp_eps},         {"batch_size", cfg.train.batch_size}};
  j["mode"] = cfg.mode;
  j["max_topics"] = cfg.max_topics;
  j["max_sentences"] = cfg.max_sentences;
  j["ext_max_select"] = cfg.ext_max_select;
  j["qa_max_select"] = cfg.qa_max_select;
  return j;
}

inline RunConfig run_config_from_json(const nlohmann::json& j) {
  RunConfig cfg;
  try {
    cfg.corpus = j.value("corpus", "");
    cfg.format = j.value("format", "stories");
    cfg.embeddings = j.value("embeddings", "");
    cfg.sentence_vectors = j.value("sentence_vectors", "");
    cfg.entities = j.value("entities", "");
    cfg.qa_answers = j.value("qa_answers", "");
    cfg.out = j.value("out", "out");
    if (j.contains("signals")) cfg.enabled_signals = j["signals"].get<std::vector<std::string>>();
    if (j.contains("weights")) cfg.weights = j["weights"].get<std::map<std::string, double>>();
    if (j.contains("train")) {
      const auto& t = j["train"];
      cfg.train.learning_rate = t.value("learning_rate", cfg.train.learning_rate);
      cfg.train.epochs = t.value("epochs", cfg.train.epochs);
      cfg.train.l2 = t.value("l2", cfg.train.l2);
      cfg.train.seed = t.value("seed", cfg.train.seed);
      cfg.train.clamp_eps = t.value("clamp_eps", cfg.train.clamp_eps);
      cfg.train.batch_size = t.value("batch_size", cfg.train.batch_size);
    }
    cfg.mode = j.value("mode", "one_sentence");
    cfg.max_topics = j.value("max_topics", 5);
    cfg.max_sentences = j.value("max_sentences", 50);
    cfg.ext_max_select = j.value("ext_max_select", 3);
    cfg.qa_max_select = j.value("qa_max_select", 1);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad run config: ") + e.what());
  }
  return cfg;
}

inline void validate_run_config(const RunConfig& cfg) {
  for (const std::string& name : cfg.enabled_signals) {
    if (!is_signal_name(name)) throw ConfigError("unknown signal name in config: " + name);
  }
  for (const auto& [name, w] : cfg.weights) {
    if (!is_signal_name(name)) throw ConfigError("unknown signal name in weights: " + name);
    if (w < 0.0) throw ConfigError("negative fusion weight for " + name);
  }
  if (cfg.enabled_signals.empty()) throw ConfigError("no signals enabled");
  parse_corpus_format(cfg.format);
  parse_budget_mode(cfg.mode);
  if (cfg.train.learning_rate <= 0.0) throw ConfigError("learning_rate must be > 0");
  if (cfg.train.epochs < 0) throw ConfigError("epochs must be >= 0");
  if (cfg.train.l2 < 0.0) throw ConfigError("l2 must be >= 0");
  if (cfg.max_topics < 1) throw ConfigError("max_topics must be >= 1");
  if (cfg.max_sentences < 1) throw ConfigError("max_sentences must be >= 1");
  if (cfg.ext_max_select < 1) throw ConfigError("ext_max_select must be >= 1");
  if (cfg.qa_max_select < 1) throw ConfigError("qa_max_select must be >= 1");
}

inline RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  RunConfig cfg = run_config_from_json(j);
  validate_run_config(cfg);
  return cfg;
}

// ---- artifact locations -----------------------------------------------------

inline std::filesystem::path documents_path(const RunConfig& cfg) {
  return std::filesystem::path(cfg.out) / "documents.jsonl";
}
inline std::filesystem::path signals_path(const RunConfig& cfg) {
  return std::filesystem::path(cfg.out) / "signals.jsonl";
}

// Display name of a fusion configuration, e.g. "all" or "all-{ext,qa}".
inline std::string system_name_for_drop(const std::set<std::string>& drop) {
  if (drop.empty()) return "all";
  std::string inner;
  for (const char* name : kSignalNames) {
    if (!drop.count(name)) continue;
    if (!inner.empty()) inner += ',';
    inner += name;
  }
  return "all-{" + inner + "}";
}

// Filesystem-safe stem for the same configuration, e.g. "all" or "all_drop_ext_qa".
inline std::string file_stem_for_drop(const std::set<std::string>& drop) {
  if (drop.empty()) return "all";
  std::string stem = "all_drop";
  for (const char* name : kSignalNames) {
    if (drop.count(name)) {
      stem += '_';
      stem += name;
    }
  }
  return stem;
}

inline std::filesystem::path labels_path(const RunConfig& cfg, const std::string& stem) {
  return std::filesystem::path(cfg.out) / ("labels_" + stem + ".jsonl");
}
inline std::filesystem::path model_path(const RunConfig& cfg, const std::string& stem) {
  return std::filesystem::path(cfg.out) / ("model_" + stem + ".json");
}
inline std::filesystem::path summaries_path(const RunConfig& cfg, const std::string& stem) {
  return std::filesystem::path(cfg.out) / ("summaries_" + stem + ".jsonl");
}

namespace detail {

inline std::filesystem::path meta_path(const std::filesystem::path& artifact) {
  std::filesystem::path p = artifact;
  p.replace_extension();
  p += ".meta.json";
  return p;
}

inline void write_meta(const std::filesystem::path& artifact, const std::string& system) {
  nlohmann::ordered_json j;
  j["system"] = system;
  atomic_write(meta_path(artifact), j.dump() + "\n");
}

inline std::string read_meta_system(const std::filesystem::path& artifact,
                                    const std::string& fallback) {
  std::ifstream in(meta_path(artifact));
  if (!in) return fallback;
  try {
    nlohmann::json j;
    in >> j;
    return j.value("system", fallback);
  } catch (const nlohmann::json::exception&) {
    return fallback;
  }
}

inline std::string artifact_stem(const std::filesystem::path& artifact,
                                 const std::string& prefix) {
  std::string stem = artifact.stem().string();
  if (stem.rfind(prefix, 0) == 0) stem = stem.substr(prefix.size());
  return stem.empty() ? artifact.stem().string() : stem;
}

inline void write_resolved_config(const RunConfig& cfg, const std::string& stage,
                                  nlohmann::ordered_json extras = {}) {
  nlohmann::ordered_json j = run_config_to_json(cfg);
  if (!extras.empty()) j["stage_args"] = std::move(extras);
  atomic_write(std::filesystem::path(cfg.out) / (stage + ".resolved.json"), j.dump(2) + "\n");
}

inline void require_exists(const std::string& path, const std::string& what) {
  if (path.empty()) throw ConfigError(what + " path is not set in the config");
  if (!std::filesystem::exists(path)) throw ConfigError(what + " path does not exist: " + path);
}

}  // namespace detail

// ---- stages -----------------------------------------------------------------

struct IngestSummary {
  int documents = 0;
  int skipped = 0;
  int topics = 0;
};

inline IngestSummary cmd_ingest(const RunConfig& cfg, std::ostream& log = std::cout) {
  detail::require_exists(cfg.corpus, "corpus");
  std::filesystem::create_directories(cfg.out);
  detail::write_resolved_config(cfg, "ingest");

  std::map<std::string, std::vector<EntitySpan>> overrides;
  if (!cfg.entities.empty()) {
    detail::require_exists(cfg.entities, "entities");
    overrides = load_entity_overrides(cfg.entities);
  }

  IngestOptions opts;
  opts.format = parse_corpus_format(cfg.format);
  opts.max_sentences = cfg.max_sentences;

  std::ostringstream body;
  IngestSummary summary;
  IngestStats stats = ingest(cfg.corpus, opts, [&](IngestRecord&& rec) {
    StoredDocument sd;
    sd.doc = std::move(rec.doc);

    std::vector<EntitySpan> spans;
    auto ov = overrides.find(sd.doc.id);
    if (ov != overrides.end()) {
      validate_entity_spans(sd.doc, ov->second);
      spans = ov->second;
    } else {
      spans = extract_entities(sd.doc);
    }
    sd.entities_by_sentence.assign(sd.doc.sentences.size(), {});
    for (EntitySpan& span : spans) {
      sd.entities_by_sentence[static_cast<size_t>(span.sentence_index)].push_back(std::move(span));
    }

    sd.reference = std::move(rec.reference);
    if (rec.topic) {
      sd.topics.push_back(std::move(*rec.topic));
    } else {
      sd.topics = generate_topics(sd.doc, cfg.max_topics);
    }
    summary.topics += static_cast<int>(sd.topics.size());
    body << stored_document_to_json(sd).dump() << '\n';
  });
  summary.documents = stats.yielded;
  summary.skipped = stats.skipped;

  atomic_write(documents_path(cfg), body.str());
  log << "ingest: " << summary.documents << " documents, " << summary.skipped << " skipped, "
      << summary.topics << " topics\n";
  return summary;
}

struct SignalsSummary {
  int instances = 0;
  int skipped = 0;
};

inline SignalsSummary cmd_signals(const RunConfig& cfg, std::ostream& log = std::cout) {
  detail::require_exists(documents_path(cfg).string(), "document store (run ingest first)");
  detail::require_exists(cfg.embeddings, "embeddings");
  detail::write_resolved_config(cfg, "signals");

  const std::vector<StoredDocument> docs = load_document_store(documents_path(cfg));
  const EmbeddingTable table = load_embeddings(cfg.embeddings);

  MeanVectorProvider mean_provider(table);
  std::optional<PrecomputedVectorProvider> precomputed;
  if (!cfg.sentence_vectors.empty()) {
    detail::require_exists(cfg.sentence_vectors, "sentence_vectors");
    precomputed = load_precomputed_vectors(cfg.sentence_vectors);
  }
  const SentenceVectorProvider& provider =
      precomputed ? static_cast<const SentenceVectorProvider&>(*precomputed)
                  : static_cast<const SentenceVectorProvider&>(mean_provider);

  std::map<std::pair<std::string, std::string>, std::string> qa;
  if (!cfg.qa_answers.empty()) {
    detail::require_exists(cfg.qa_answers, "qa_answers");
    qa = load_qa_answers(cfg.qa_answers);
  }

  SignalConfig sig_cfg;
  sig_cfg.enabled = {cfg.enabled_signals.begin(), cfg.enabled_signals.end()};
  sig_cfg.ext_max_select = cfg.ext_max_select;
  sig_cfg.qa_max_select = cfg.qa_max_select;

  struct Stat {
    double sum = 0.0, mn = 1.0, mx = 0.0;
    long count = 0;
  };
  std::map<std::string, Stat> stats;

  std::ostringstream body;
  SignalsSummary summary;
  for (const StoredDocument& sd : docs) {
    std::vector<EntitySpan> flat;
    for (const auto& per_sentence : sd.entities_by_sentence) {
      flat.insert(flat.end(), per_sentence.begin(), per_sentence.end());
    }
    for (const TopicInstance& topic : sd.topics) {
      SignalInputs inputs;
      inputs.doc = &sd.doc;
      inputs.topic = &topic;
      inputs.reference = sd.reference ? &*sd.reference : nullptr;
      inputs.doc_entities = &flat;
      auto qa_it = qa.find({sd.doc.id, to_lower(topic.topic_text)});
      inputs.qa_answer = qa_it == qa.end() ? nullptr : &qa_it->second;
      try {
        SignalMatrix m = build_matrix(inputs, provider, table, sig_cfg);
        nlohmann::ordered_json j;
        j["id"] = m.doc_id;
        j["topic"] = m.topic_text;
        j["signals"] = nlohmann::ordered_json::object();
        for (const char* name : kSignalNames) {
          if (!m.has(name)) continue;
          j["signals"][name] = m.values.at(name);
          Stat& st = stats[name];
          for (double v : m.values.at(name)) {
            st.sum += v;
            st.mn = std::min(st.mn, v);
            st.mx = std::max(st.mx, v);
            ++st.count;
          }
        }
        body << j.dump() << '\n';
        ++summary.instances;
      } catch (const EmptyTopicError& e) {
        log << "signals: skipping (id=" << sd.doc.id << ", topic=" << topic.topic_text
            << "): " << e.what() << '\n';
        ++summary.skipped;
      }
    }
  }

  atomic_write(signals_path(cfg), body.str());
  log << "signals: " << summary.instances << " instances, " << summary.skipped << " skipped\n";
  char line_buf[160];
  for (const auto& [name, st] : stats) {
    std::snprintf(line_buf, sizeof(line_buf), "  %s: mean %.6f min %.6f max %.6f\n", name.c_str(),
                  st.count ? st.sum / st.count : 0.0, st.count ? st.mn : 0.0,
                  st.count ? st.mx : 0.0);
    log << line_buf;
  }
  return summary;
}

inline SignalMatrix signal_matrix_from_json(const nlohmann::json& j) {
  SignalMatrix m;
  m.doc_id = j.at("id").get<std::string>();
  m.topic_text = j.at("topic").get<std::string>();
  for (const auto& [name, vals] : j.at("signals").items()) {
    if (!is_signal_name(name)) throw DataError("unknown signal in file: " + name);
    m.values[name] = vals.get<std::vector<double>>();
  }
  if (m.values.empty()) throw DataError("signal record with no signals for id=" + m.doc_id);
  m.n = static_cast<int>(m.values.begin()->second.size());
  for (const auto& [name, vals] : m.values) {
    if (static_cast<int>(vals.size()) != m.n) {
      throw DataError("ragged signal lengths for id=" + m.doc_id);
    }
  }
  return m;
}

inline std::vector<SignalMatrix> load_signal_matrices(const std::filesystem::path& path) {
  std::vector<SignalMatrix> out;
  for_each_jsonl(path, [&](const nlohmann::json& j, int) {
    out.push_back(signal_matrix_from_json(j));
  });
  return out;
}

// Applies fusion (optionally with dropped signals) to every matrix and writes
// the soft labels plus a sidecar naming the configuration.
inline std::filesystem::path cmd_fuse(const RunConfig& cfg, const std::set<std::string>& drop,
                                      std::ostream& log = std::cout) {
  detail::require_exists(signals_path(cfg).string(), "signals file (run signals first)");
  for (const std::string& name : drop) {
    if (!is_signal_name(name)) throw ConfigError("unknown signal in --drop: " + name);
  }
  nlohmann::ordered_json extras;
  extras["drop"] = std::vector<std::string>(drop.begin(), drop.end());
  detail::write_resolved_config(cfg, "fuse", extras);

  FusionConfig fusion = cfg.weights.empty()
                            ? FusionConfig::equal_weights(
                                  {cfg.enabled_signals.begin(), cfg.enabled_signals.end()})
                            : FusionConfig{cfg.weights};
  fusion = ablate(std::move(fusion), drop);

  const std::string name = system_name_for_drop(drop);
  const std::string stem = file_stem_for_drop(drop);

  std::ostringstream body;
  int count = 0;
  for_each_jsonl(signals_path(cfg), [&](const nlohmann::json& j, int) {
    const SignalMatrix m = signal_matrix_from_json(j);
    const FusedLabels fused = fuse(m, fusion);
    nlohmann::ordered_json line;
    line["id"] = fused.doc_id;
    line["topic"] = fused.topic_text;
    line["targets"] = fused.targets;
    body << line.dump() << '\n';
    ++count;
  });

  const std::filesystem::path path = labels_path(cfg, stem);
  atomic_write(path, body.str());
  detail::write_meta(path, name);
  log << "fuse: " << count << " instances -> " << path.string() << " (system " << name << ")\n";
  return path;
}

// Builds per-sentence training examples by joining the document store, the
// signal matrices and the fused labels, then fits the scorer.
inline std::filesystem::path cmd_train(const RunConfig& cfg,
                                       const std::filesystem::path& labels_file,
                                       std::ostream& log = std::cout) {
  detail::require_exists(documents_path(cfg).string(), "document store (run ingest first)");
  detail::require_exists(signals_path(cfg).string(), "signals file (run signals first)");
  detail::require_exists(labels_file.string(), "labels file (run fuse first)");
  nlohmann::ordered_json extras;
  extras["labels"] = labels_file.string();
  detail::write_resolved_config(cfg, "train", extras);

  std::map<std::string, StoredDocument> docs;
  for (StoredDocument& sd : load_document_store(documents_path(cfg))) {
    std::string id = sd.doc.id;
    docs.emplace(std::move(id), std::move(sd));
  }
  std::map<std::pair<std::string, std::string>, SignalMatrix> matrices;
  for (SignalMatrix& m : load_signal_matrices(signals_path(cfg))) {
    matrices.emplace(std::make_pair(m.doc_id, m.topic_text), std::move(m));
  }

  std::vector<TrainExample> examples;
  for_each_jsonl(labels_file, [&](const nlohmann::json& j, int line_no) {
    const std::string id = j.at("id").get<std::string>();
    const std::string topic_text = j.at("topic").get<std::string>();
    const std::vector<double> targets = j.at("targets").get<std::vector<double>>();
    auto doc_it = docs.find(id);
    auto mat_it = matrices.find({id, topic_text});
    if (doc_it == docs.end() || mat_it == matrices.end()) {
      throw DataError(labels_file.string() + ":" + std::to_string(line_no) +
                      ": no matching document/signals for (id=" + id + ", topic=" + topic_text + ")");
    }
    TopicInstance topic;
    topic.doc_id = id;
    topic.topic_text = topic_text;
    const std::vector<std::vector<double>> features =
        featurize(doc_it->second.doc, topic, mat_it->second);
    if (targets.size() != features.size()) {
      throw DataError(labels_file.string() + ":" + std::to_string(line_no) +
                      ": target length mismatch for id=" + id);
    }
    for (size_t i = 0; i < features.size(); ++i) {
      examples.push_back({features[i], targets[i]});
    }
  });

  std::vector<EpochLog> epochs;
  const LinearScorer scorer = train(examples, cfg.train, &epochs);
  for (const EpochLog& e : epochs) {
    log << "train: epoch " << e.epoch << " loss " << e.loss << '\n';
  }

  nlohmann::ordered_json model;
  model["version"] = 1;
  model["feature_names"] = std::vector<std::string>(kFeatureNames.begin(), kFeatureNames.end());
  model["weights"] = scorer.weights;

  const std::string stem = detail::artifact_stem(labels_file, "labels_");
  const std::filesystem::path path = model_path(cfg, stem);
  atomic_write(path, model.dump() + "\n");
  detail::write_meta(path, detail::read_meta_system(labels_file, stem));
  log << "train: " << examples.size() << " examples -> " << path.string() << '\n';
  return path;
}

inline LinearScorer load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open model: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  if (j.value("version", 0) != 1) throw DataError("unsupported model version in " + path.string());
  LinearScorer scorer;
  scorer.weights = j.at("weights").get<std::vector<double>>();
  const auto names = j.at("feature_names").get<std::vector<std::string>>();
  if (names.size() != scorer.weights.size() ||
      names.size() != static_cast<size_t>(kFeatureCount)) {
    throw DataError("model feature layout mismatch in " + path.string());
  }
  return scorer;
}

// Ranks sentences with the trained scorer (or replays extractive labels with
// --oracle) and writes budget-constrained summaries.
inline std::filesystem::path cmd_summarize(const RunConfig& cfg,
                                           const std::filesystem::path& model_file, bool oracle,
                                           std::ostream& log = std::cout) {
  detail::require_exists(documents_path(cfg).string(), "document store (run ingest first)");
  const BudgetMode mode = parse_budget_mode(cfg.mode);
  nlohmann::ordered_json extras;
  extras["oracle"] = oracle;
  if (!oracle) extras["model"] = model_file.string();
  detail::write_resolved_config(cfg, "summarize", extras);

  const std::vector<StoredDocument> docs = load_document_store(documents_path(cfg));

  std::ostringstream body;
  int count = 0, skipped = 0;
  std::string system, stem;

  if (oracle) {
    system = "ORACLE";
    stem = "oracle";
    for (const StoredDocument& sd : docs) {
      if (!sd.reference) {
        skipped += static_cast<int>(sd.topics.size());
        continue;
      }
      for (const TopicInstance& topic : sd.topics) {
        const ExtractiveLabels labels =
            greedy_align(sd.doc, sd.reference->text, cfg.ext_max_select);
        const std::string summary =
            oracle_summary(sd.doc, labels.labels, sd.reference->tokens, mode);
        nlohmann::ordered_json line;
        line["id"] = sd.doc.id;
        line["topic"] = topic.topic_text;
        line["summary"] = summary;
        line["mode"] = budget_mode_name(mode);
        body << line.dump() << '\n';
        ++count;
      }
    }
  } else {
    detail::require_exists(signals_path(cfg).string(), "signals file (run signals first)");
    detail::require_exists(model_file.string(), "model file (run train first)");
    const LinearScorer scorer = load_model(model_file);
    std::map<std::string, const StoredDocument*> by_id;
    for (const StoredDocument& sd : docs) by_id[sd.doc.id] = &sd;

    stem = detail::artifact_stem(model_file, "model_");
    system = detail::read_meta_system(model_file, stem);

    for_each_jsonl(signals_path(cfg), [&](const nlohmann::json& j, int line_no) {
      const SignalMatrix m = signal_matrix_from_json(j);
      auto it = by_id.find(m.doc_id);
      if (it == by_id.end()) {
        throw DataError(signals_path(cfg).string() + ":" + std::to_string(line_no) +
                        ": unknown document id " + m.doc_id);
      }
      const Document& doc = it->second->doc;
      TopicInstance topic;
      topic.doc_id = m.doc_id;
      topic.topic_text = m.topic_text;
      const std::vector<int> ranking = rank(scorer, doc, topic, m);
      nlohmann::ordered_json line;
      line["id"] = m.doc_id;
      line["topic"] = m.topic_text;
      line["summary"] = select_summary(ranking, doc, mode);
      line["mode"] = budget_mode_name(mode);
      body << line.dump() << '\n';
      ++count;
    });
  }

  const std::filesystem::path path = summaries_path(cfg, stem);
  atomic_write(path, body.str());
  detail::write_meta(path, system);
  log << "summarize: " << count << " summaries";
  if (skipped) log << " (" << skipped << " skipped without reference)";
  log << " -> " << path.string() << '\n';
  return path;
}

// Scores one or more summaries files against the stored references and renders
// the ablation table.
inline std::vector<ReportRow> cmd_eval(const RunConfig& cfg,
                                       const std::vector<std::filesystem::path>& summaries_files,
                                       std::ostream& log = std::cout) {
  detail::require_exists(documents_path(cfg).string(), "document store (run ingest first)");
  if (summaries_files.empty()) throw ConfigError("eval needs at least one summaries file");
  for (const auto& f : summaries_files) {
    detail::require_exists(f.string(), "summaries file");
  }
  nlohmann::ordered_json extras;
  extras["summaries"] = nlohmann::ordered_json::array();
  for (const auto& f : summaries_files) extras["summaries"].push_back(f.string());
  detail::write_resolved_config(cfg, "eval", extras);

  std::vector<ReferenceEntry> references;
  for (const StoredDocument& sd : load_document_store(documents_path(cfg))) {
    if (!sd.reference) continue;
    for (const TopicInstance& topic : sd.topics) {
      references.push_back({sd.doc.id, topic.topic_text, sd.reference->text});
    }
  }

  std::vector<ReportRow> rows;
  for (const auto& file : summaries_files) {
    std::vector<SummaryEntry> entries;
    std::string mode;
    for_each_jsonl(file, [&](const nlohmann::json& j, int line_no) {
      SummaryEntry e;
      e.id = j.at("id").get<std::string>();
      e.topic = j.at("topic").get<std::string>();
      e.text = j.at("summary").get<std::string>();
      const std::string line_mode = j.value("mode", cfg.mode);
      if (mode.empty()) {
        mode = line_mode;
      } else if (mode != line_mode) {
        throw DataError(file.string() + ":" + std::to_string(line_no) + ": mixed budget modes");
      }
      entries.push_back(std::move(e));
    });
    const std::string fallback = detail::artifact_stem(file, "summaries_");
    rows.push_back(evaluate_corpus(entries, references,
                                   detail::read_meta_system(file, fallback),
                                   mode.empty() ? cfg.mode : mode));
  }

  const std::string table = render_report_table(rows);
  log << table;
  atomic_write(std::filesystem::path(cfg.out) / "report.txt", table);
  atomic_write(std::filesystem::path(cfg.out) / "report.json", report_to_json(rows).dump(2) + "\n");
  return rows;
}

}  // namespace topicsum

#endif
