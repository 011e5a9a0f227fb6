#ifndef TOPICSUM_SCORER_HPP
#define TOPICSUM_SCORER_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "topicsum/corpus.hpp"
#include "topicsum/errors.hpp"
#include "topicsum/rouge.hpp"
#include "topicsum/signals.hpp"

namespace topicsum {

// Feature layout. The four signal features are the ones computable at
// inference time (no reference or QA answer needed); each gets a companion
// presence flag so the vector length stays fixed when a signal is absent.
inline constexpr std::array<const char*, 12> kFeatureNames = {
    "position",     "length",          "rule",
    "word_sim",     "topic_sent",      "sent_sent",
    "topic_overlap", "bias",           "rule_present",
    "word_sim_present", "topic_sent_present", "sent_sent_present"};

inline constexpr int kFeatureCount = static_cast<int>(kFeatureNames.size());
inline constexpr size_t kBiasIndex = 7;  // kFeatureNames[7] == "bias"

struct LinearScorer {
  std::vector<double> weights;  // length kFeatureCount

  static LinearScorer zeros() {
    LinearScorer s;
    s.weights.assign(kFeatureCount, 0.0);
    return s;
  }
};

struct TrainConfig {
  double learning_rate = 0.1;
  int epochs = 20;
  double l2 = 1e-4;
  unsigned int seed = 0;
  double clamp_eps = 1e-7;
  int batch_size = 32;
};

struct TrainExample {
  std::vector<double> features;
  double target = 0.0;  // soft label in [0,1]
};

// Deterministic per-sentence features from structure plus the
// inference-available signals of the matrix.
inline std::vector<std::vector<double>> featurize(const Document& doc,
                                                  const TopicInstance& topic,
                                                  const SignalMatrix& matrix) {
  const size_t n = doc.sentences.size();
  if (matrix.n != static_cast<int>(n)) {
    throw DataError("featurize: matrix does not cover document " + doc.id);
  }
  const std::vector<std::string> topic_tokens = tokenize(topic.topic_text);
  const std::unordered_set<std::string> topic_set(topic_tokens.begin(), topic_tokens.end());

  const std::array<const char*, 4> signal_feats = {"rule", "word_sim", "topic_sent", "sent_sent"};

  std::vector<std::vector<double>> features;
  features.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    const Sentence& s = doc.sentences[i];
    std::vector<double> f(kFeatureCount, 0.0);
    f[0] = static_cast<double>(i) / static_cast<double>(n);
    f[1] = std::min(1.0, static_cast<double>(s.tokens.size()) / 30.0);
    for (size_t k = 0; k < signal_feats.size(); ++k) {
      if (matrix.has(signal_feats[k])) {
        f[2 + k] = matrix.values.at(signal_feats[k])[i];
        f[8 + k] = 1.0;
      }
    }
    int in_topic = 0;
    for (const std::string& t : s.tokens) in_topic += topic_set.count(t) ? 1 : 0;
    f[6] = s.tokens.empty() ? 0.0 : static_cast<double>(in_topic) / s.tokens.size();
    f[7] = 1.0;
    features.push_back(std::move(f));
  }
  return features;
}

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

inline double predict(const LinearScorer& scorer, std::span<const double> features) {
  if (scorer.weights.size() != features.size()) {
    throw DataError("predict: feature length mismatch");
  }
  double z = 0.0;
  for (size_t i = 0; i < features.size(); ++i) z += scorer.weights[i] * features[i];
  return sigmoid(z);
}

// Mean soft-target cross-entropy with clamped probabilities, plus an L2 term
// (bias weight excluded).
inline double loss(const LinearScorer& scorer, std::span<const TrainExample> batch,
                   const TrainConfig& cfg = {}) {
  if (batch.empty()) throw DataError("loss: empty batch");
  double total = 0.0;
  for (const TrainExample& ex : batch) {
    if (!(ex.target >= 0.0 && ex.target <= 1.0)) {
      throw DataError("loss: target outside [0,1]");
    }
    double p = predict(scorer, ex.features);
    p = std::min(1.0 - cfg.clamp_eps, std::max(cfg.clamp_eps, p));
    total += -ex.target * std::log(p) - (1.0 - ex.target) * std::log(1.0 - p);
  }
  double reg = 0.0;
  for (size_t i = 0; i < scorer.weights.size(); ++i) {
    if (i == kBiasIndex) continue;
    reg += scorer.weights[i] * scorer.weights[i];
  }
  return total / batch.size() + 0.5 * cfg.l2 * reg;
}

// Analytic gradient of loss() above. In the clamped region the cross-entropy
// term is constant in the weights, so its contribution is zero there.
inline std::vector<double> loss_gradient(const LinearScorer& scorer,
                                         std::span<const TrainExample> batch,
                                         const TrainConfig& cfg = {}) {
  if (batch.empty()) throw DataError("loss_gradient: empty batch");
  std::vector<double> grad(scorer.weights.size(), 0.0);
  for (const TrainExample& ex : batch) {
    const double p = predict(scorer, ex.features);
    if (p < cfg.clamp_eps || p > 1.0 - cfg.clamp_eps) continue;
    const double delta = p - ex.target;
    for (size_t i = 0; i < grad.size(); ++i) grad[i] += delta * ex.features[i];
  }
  for (double& g : grad) g /= static_cast<double>(batch.size());
  for (size_t i = 0; i < grad.size(); ++i) {
    if (i == kBiasIndex) continue;
    grad[i] += cfg.l2 * scorer.weights[i];
  }
  return grad;
}

struct EpochLog {
  int epoch = 0;
  double loss = 0.0;
};

// Mini-batch gradient descent from zero weights with a seed-fixed shuffle
// order. Identical inputs and seed reproduce identical weights bit for bit.
inline LinearScorer train(std::span<const TrainExample> examples, const TrainConfig& cfg,
                          std::vector<EpochLog>* epoch_log = nullptr) {
  if (examples.empty()) throw DataError("train: no examples");
  for (const TrainExample& ex : examples) {
    if (ex.features.size() != static_cast<size_t>(kFeatureCount)) {
      throw DataError("train: feature length mismatch");
    }
  }
  LinearScorer scorer = LinearScorer::zeros();
  std::vector<size_t> order(examples.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937 rng(cfg.seed);

  const int batch_size = std::max(1, cfg.batch_size);
  std::vector<TrainExample> batch;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (size_t begin = 0; begin < order.size(); begin += batch_size) {
      const size_t end = std::min(order.size(), begin + batch_size);
      batch.assign(end - begin, {});
      for (size_t k = begin; k < end; ++k) batch[k - begin] = examples[order[k]];
      const std::vector<double> grad = loss_gradient(scorer, batch, cfg);
      for (size_t i = 0; i < scorer.weights.size(); ++i) {
        scorer.weights[i] -= cfg.learning_rate * grad[i];
      }
    }
    const double epoch_loss = loss(scorer, examples, cfg);
    if (std::isnan(epoch_loss)) {
      throw DataError("train: NaN loss at epoch " + std::to_string(epoch));
    }
    if (epoch_log) epoch_log->push_back({epoch, epoch_loss});
  }
  return scorer;
}

// Sentence indices sorted by predicted probability, descending; ties go to the
// lower index.
inline std::vector<int> rank(const LinearScorer& scorer,
                             const std::vector<std::vector<double>>& features) {
  std::vector<double> probs(features.size());
  for (size_t i = 0; i < features.size(); ++i) probs[i] = predict(scorer, features[i]);
  std::vector<int> order(features.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return probs[static_cast<size_t>(a)] > probs[static_cast<size_t>(b)];
  });
  return order;
}

inline std::vector<int> rank(const LinearScorer& scorer, const Document& doc,
                             const TopicInstance& topic, const SignalMatrix& matrix) {
  return rank(scorer, featurize(doc, topic, matrix));
}

enum class BudgetMode { one_sentence, twenty_words };

inline std::string budget_mode_name(BudgetMode mode) {
  return mode == BudgetMode::one_sentence ? "one_sentence" : "twenty_words";
}

inline BudgetMode parse_budget_mode(const std::string& name) {
  if (name == "one_sentence") return BudgetMode::one_sentence;
  if (name == "twenty_words") return BudgetMode::twenty_words;
  throw ConfigError("unknown budget mode: " + name);
}

namespace detail {

// Appends words of `text` until `budget` more tokens have been emitted.
// Words that tokenize to nothing do not count against the budget.
inline void append_word_budget(std::string& out, const std::string& text, int budget) {
  int taken = 0;
  size_t i = 0;
  const size_t n = text.size();
  while (i < n && taken < budget) {
    while (i < n && is_ascii_space(text[i])) ++i;
    size_t start = i;
    while (i < n && !is_ascii_space(text[i])) ++i;
    if (i == start) break;
    std::string_view word(text.data() + start, i - start);
    if (strip_outer_punct(word).empty()) continue;  // keeps position, costs nothing
    if (!out.empty()) out += ' ';
    out += word;
    ++taken;
  }
}

}  // namespace detail

inline constexpr int kWordBudget = 20;

// one_sentence: the top-ranked sentence verbatim. twenty_words: take sentences
// in rank order until the token budget is met, emit them in document order,
// and cut the output at exactly 20 tokens.
inline std::string select_summary(const std::vector<int>& ranking, const Document& doc,
                                  BudgetMode mode) {
  if (ranking.empty()) throw DataError("select_summary: empty ranking");
  if (mode == BudgetMode::one_sentence) {
    return doc.sentences.at(static_cast<size_t>(ranking[0])).text;
  }

  std::vector<int> chosen;
  int total = 0;
  for (int idx : ranking) {
    chosen.push_back(idx);
    total += static_cast<int>(doc.sentences.at(static_cast<size_t>(idx)).tokens.size());
    if (total >= kWordBudget) break;
  }
  std::sort(chosen.begin(), chosen.end());

  std::string out;
  int remaining = kWordBudget;
  for (int idx : chosen) {
    if (remaining <= 0) break;
    const Sentence& s = doc.sentences.at(static_cast<size_t>(idx));
    const int len = static_cast<int>(s.tokens.size());
    if (len <= remaining) {
      if (!out.empty()) out += ' ';
      out += s.text;
      remaining -= len;
    } else {
      std::string partial;
      detail::append_word_budget(partial, s.text, remaining);
      if (!partial.empty()) {
        if (!out.empty()) out += ' ';
        out += partial;
      }
      remaining = 0;
    }
  }
  return out;
}

namespace detail {

inline double unigram_recall(const std::vector<std::string>& cand,
                             const std::vector<std::string>& ref) {
  if (ref.empty()) return 0.0;
  return rouge_n(cand, ref, 1).recall;
}

}  // namespace detail

// Ceiling system: label-1 sentences form the ranking prefix. For one_sentence
// with several labeled sentences the one with the best ROUGE-1 F1 against the
// reference wins. All-zero labels fall back to ranking every sentence by its
// unigram recall against the reference, so the output is never empty.
inline std::string oracle_summary(const Document& doc, const std::vector<int>& ext_labels,
                                  const std::vector<std::string>& ref_tokens, BudgetMode mode) {
  if (ext_labels.size() != doc.sentences.size()) {
    throw DataError("oracle_summary: label length mismatch for " + doc.id);
  }
  std::vector<int> positives, negatives;
  for (size_t i = 0; i < ext_labels.size(); ++i) {
    (ext_labels[i] ? positives : negatives).push_back(static_cast<int>(i));
  }

  if (positives.empty()) {
    std::vector<int> order(doc.sentences.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return detail::unigram_recall(doc.sentences[static_cast<size_t>(a)].tokens, ref_tokens) >
             detail::unigram_recall(doc.sentences[static_cast<size_t>(b)].tokens, ref_tokens);
    });
    return select_summary(order, doc, mode);
  }

  if (mode == BudgetMode::one_sentence && positives.size() > 1) {
    int best = positives[0];
    double best_f1 = -1.0;
    for (int idx : positives) {
      const double f1 = rouge_n(doc.sentences[static_cast<size_t>(idx)].tokens, ref_tokens, 1).f1;
      if (f1 > best_f1) {
        best_f1 = f1;
        best = idx;
      }
    }
    return doc.sentences[static_cast<size_t>(best)].text;
  }

  std::vector<int> ranking = positives;
  ranking.insert(ranking.end(), negatives.begin(), negatives.end());
  return select_summary(ranking, doc, mode);
}

}  // namespace topicsum

#endif
