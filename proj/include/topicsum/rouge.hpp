#ifndef TOPICSUM_ROUGE_HPP
#define TOPICSUM_ROUGE_HPP

#include <algorithm>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "topicsum/errors.hpp"

namespace topicsum {

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

namespace detail {

inline double f1_of(double p, double r) {
  return (p + r) == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

// n-grams as '\x1f'-joined keys; counts per distinct n-gram.
inline std::unordered_map<std::string, int> ngram_counts(std::span<const std::string> tokens, int n) {
  std::unordered_map<std::string, int> counts;
  if (static_cast<int>(tokens.size()) < n) return counts;
  for (size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key = tokens[i];
    for (int k = 1; k < n; ++k) {
      key += '\x1f';
      key += tokens[i + k];
    }
    ++counts[key];
  }
  return counts;
}

}  // namespace detail

// Clipped n-gram overlap; precision over candidate n-grams, recall over
// reference n-grams, zero components when the respective count is zero.
inline RougeScore rouge_n(std::span<const std::string> candidate,
                          std::span<const std::string> reference, int n) {
  if (n < 1) throw DataError("rouge_n: n must be >= 1");
  auto cand = detail::ngram_counts(candidate, n);
  auto ref = detail::ngram_counts(reference, n);
  long cand_total = 0, ref_total = 0, overlap = 0;
  for (const auto& [gram, c] : cand) cand_total += c;
  for (const auto& [gram, c] : ref) {
    ref_total += c;
    auto it = cand.find(gram);
    if (it != cand.end()) overlap += std::min(c, it->second);
  }
  RougeScore s;
  s.precision = cand_total == 0 ? 0.0 : static_cast<double>(overlap) / cand_total;
  s.recall = ref_total == 0 ? 0.0 : static_cast<double>(overlap) / ref_total;
  s.f1 = detail::f1_of(s.precision, s.recall);
  return s;
}

namespace detail {

// Rolling two-row LCS table.
inline int lcs_length(std::span<const std::string> a, std::span<const std::string> b) {
  const size_t m = a.size(), n = b.size();
  if (m == 0 || n == 0) return 0;
  std::vector<int> prev(n + 1, 0), cur(n + 1, 0);
  for (size_t i = 1; i <= m; ++i) {
    for (size_t j = 1; j <= n; ++j) {
      if (a[i - 1] == b[j - 1]) {
        cur[j] = prev[j - 1] + 1;
      } else {
        cur[j] = std::max(prev[j], cur[j - 1]);
      }
    }
    std::swap(prev, cur);
  }
  return prev[n];
}

}  // namespace detail

// Sentence-level ROUGE-L: LCS over the full token sequences, beta = 1.
inline RougeScore rouge_l(std::span<const std::string> candidate,
                          std::span<const std::string> reference) {
  RougeScore s;
  if (candidate.empty() || reference.empty()) return s;
  const int lcs = detail::lcs_length(candidate, reference);
  s.precision = static_cast<double>(lcs) / candidate.size();
  s.recall = static_cast<double>(lcs) / reference.size();
  s.f1 = detail::f1_of(s.precision, s.recall);
  return s;
}

}  // namespace topicsum

#endif
