#ifndef TOPICSUM_EMBEDDINGS_HPP
#define TOPICSUM_EMBEDDINGS_HPP

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "topicsum/corpus.hpp"
#include "topicsum/errors.hpp"

namespace topicsum {

struct EmbeddingTable {
  int dim = 0;
  std::unordered_map<std::string, std::vector<double>> entries;

  const std::vector<double>* find(const std::string& token) const {
    auto it = entries.find(token);
    return it == entries.end() ? nullptr : &it->second;
  }
};

struct SentenceVector {
  std::vector<double> vec;
  bool is_zero = true;
};

namespace detail {

inline bool parse_double(const std::string& field, double& out) {
  const char* begin = field.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  return end == begin + field.size() && field.size() > 0 && std::isfinite(out);
}

inline bool parse_int_field(const std::string& field) {
  if (field.empty()) return false;
  size_t i = (field[0] == '-' || field[0] == '+') ? 1 : 0;
  if (i == field.size()) return false;
  for (; i < field.size(); ++i) {
    if (field[i] < '0' || field[i] > '9') return false;
  }
  return true;
}

inline std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream ss(line);
  std::string f;
  while (ss >> f) fields.push_back(std::move(f));
  return fields;
}

}  // namespace detail

// Text format: one `token v1 v2 ... vd` entry per line. A first line with
// exactly two integer fields is treated as a `COUNT DIM` header and skipped.
// Dimension is inferred from the first entry; duplicates keep the first value.
inline EmbeddingTable load_embeddings(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open embeddings file: " + path);

  EmbeddingTable table;
  std::string line;
  int line_no = 0;
  bool first_content_line = true;
  while (std::getline(in, line)) {
    ++line_no;
    std::vector<std::string> fields = detail::split_fields(line);
    if (fields.empty()) continue;
    if (first_content_line && fields.size() == 2 &&
        detail::parse_int_field(fields[0]) && detail::parse_int_field(fields[1])) {
      first_content_line = false;
      continue;  // COUNT DIM header
    }
    if (fields.size() < 2) {
      throw DataError(path + ":" + std::to_string(line_no) + ": embedding entry needs a token and at least one component");
    }
    const int dim = static_cast<int>(fields.size()) - 1;
    if (table.dim == 0) {
      table.dim = dim;
    } else if (dim != table.dim) {
      throw DataError(path + ":" + std::to_string(line_no) + ": dimension mismatch, expected " +
                      std::to_string(table.dim) + " got " + std::to_string(dim));
    }
    std::vector<double> vec(dim);
    for (int i = 0; i < dim; ++i) {
      if (!detail::parse_double(fields[i + 1], vec[i])) {
        throw DataError(path + ":" + std::to_string(line_no) + ": non-numeric component '" + fields[i + 1] + "'");
      }
    }
    table.entries.emplace(std::move(fields[0]), std::move(vec));
    first_content_line = false;
  }
  return table;
}

// Zero-norm inputs are defined to return 0 so OOV sentences compose neutrally
// with the max(0, .) clamp used by the similarity signals.
inline double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw DataError("cosine: length mismatch " + std::to_string(u.size()) + " vs " + std::to_string(v.size()));
  }
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return dot / (std::sqrt(nu) * std::sqrt(nv));
}

// Arithmetic mean of in-vocabulary token vectors; all-OOV input gives the zero
// vector with is_zero set.
inline SentenceVector mean_vector(const std::vector<std::string>& tokens,
                                  const EmbeddingTable& table) {
  SentenceVector sv;
  sv.vec.assign(static_cast<size_t>(table.dim), 0.0);
  int hits = 0;
  for (const std::string& t : tokens) {
    if (const std::vector<double>* v = table.find(t)) {
      for (int i = 0; i < table.dim; ++i) sv.vec[i] += (*v)[i];
      ++hits;
    }
  }
  if (hits == 0) return sv;
  for (double& x : sv.vec) x /= hits;
  sv.is_zero = true;
  for (double x : sv.vec) {
    if (x != 0.0) {
      sv.is_zero = false;
      break;
    }
  }
  return sv;
}

class SentenceVectorProvider {
 public:
  virtual ~SentenceVectorProvider() = default;
  virtual SentenceVector sentence(const Document& doc, int sentence_index) const = 0;
  virtual SentenceVector topic(const Document& doc, const TopicInstance& topic) const = 0;
  virtual SentenceVector reference(const Document& doc, const ReferenceSummary& ref) const = 0;
};

// Default provider: mean of word vectors.
class MeanVectorProvider final : public SentenceVectorProvider {
 public:
  explicit MeanVectorProvider(const EmbeddingTable& table) : table_(&table) {}

  SentenceVector sentence(const Document& doc, int sentence_index) const override {
    return mean_vector(doc.sentences.at(static_cast<size_t>(sentence_index)).tokens, *table_);
  }
  SentenceVector topic(const Document&, const TopicInstance& topic) const override {
    return mean_vector(tokenize(topic.topic_text), *table_);
  }
  SentenceVector reference(const Document&, const ReferenceSummary& ref) const override {
    return mean_vector(ref.tokens, *table_);
  }

 private:
  const EmbeddingTable* table_;
};

// Provider backed by vectors exported offline, e.g. from a transformer
// encoder. File format is JSON lines with three record shapes:
//   {"id": str, "sentence": int, "vec": [..]}
//   {"id": str, "topic_vec": [..]}
//   {"id": str, "ref_vec": [..]}
class PrecomputedVectorProvider final : public SentenceVectorProvider {
 public:
  SentenceVector sentence(const Document& doc, int sentence_index) const override {
    auto it = sentence_vecs_.find({doc.id, sentence_index});
    if (it == sentence_vecs_.end()) {
      throw DataError("precomputed sentence vector missing for (id=" + doc.id +
                      ", sentence=" + std::to_string(sentence_index) + ")");
    }
    return as_sentence_vector(it->second);
  }
  SentenceVector topic(const Document& doc, const TopicInstance&) const override {
    auto it = topic_vecs_.find(doc.id);
    if (it == topic_vecs_.end()) {
      throw DataError("precomputed topic vector missing for id=" + doc.id);
    }
    return as_sentence_vector(it->second);
  }
  SentenceVector reference(const Document& doc, const ReferenceSummary&) const override {
    auto it = ref_vecs_.find(doc.id);
    if (it == ref_vecs_.end()) {
      throw DataError("precomputed reference vector missing for id=" + doc.id);
    }
    return as_sentence_vector(it->second);
  }

  void add_sentence(const std::string& id, int index, std::vector<double> vec) {
    sentence_vecs_[{id, index}] = std::move(vec);
  }
  void add_topic(const std::string& id, std::vector<double> vec) { topic_vecs_[id] = std::move(vec); }
  void add_reference(const std::string& id, std::vector<double> vec) { ref_vecs_[id] = std::move(vec); }

 private:
  static SentenceVector as_sentence_vector(const std::vector<double>& v) {
    SentenceVector sv;
    sv.vec = v;
    sv.is_zero = true;
    for (double x : v) {
      if (x != 0.0) {
        sv.is_zero = false;
        break;
      }
    }
    return sv;
  }

  std::map<std::pair<std::string, int>, std::vector<double>> sentence_vecs_;
  std::map<std::string, std::vector<double>> topic_vecs_;
  std::map<std::string, std::vector<double>> ref_vecs_;
};

}  // namespace topicsum

#endif
