#ifndef TOPICSUM_TEXT_HPP
#define TOPICSUM_TEXT_HPP

#include <algorithm>
#include <cctype>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace topicsum {

inline bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline bool is_ascii_punct(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return u < 128 && std::ispunct(u) != 0;
}

inline bool is_ascii_upper(char c) {
  return c >= 'A' && c <= 'Z';
}

inline std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

// Removes leading/trailing ASCII punctuation. Internal punctuation (hyphens,
// apostrophes, dots as in "u.s") is kept. Bytes outside ASCII are never stripped.
inline std::string_view strip_outer_punct(std::string_view w) {
  size_t b = 0;
  size_t e = w.size();
  while (b < e && is_ascii_punct(w[b])) ++b;
  while (e > b && is_ascii_punct(w[e - 1])) --e;
  return w.substr(b, e - b);
}

namespace detail {

template <typename Emit>
inline void scan_tokens(std::string_view text, Emit&& emit) {
  size_t i = 0;
  const size_t n = text.size();
  while (i < n) {
    while (i < n && is_ascii_space(text[i])) ++i;
    size_t start = i;
    while (i < n && !is_ascii_space(text[i])) ++i;
    if (i > start) {
      std::string_view token = strip_outer_punct(text.substr(start, i - start));
      if (!token.empty()) emit(token);
    }
  }
}

}  // namespace detail

// Deterministic tokenization: whitespace split, outer punctuation stripped,
// lowercased, empty tokens dropped.
inline std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  detail::scan_tokens(text, [&](std::string_view t) { out.push_back(to_lower(t)); });
  return out;
}

// Same splits as tokenize() but keeps the original casing. The two outputs are
// always index-aligned.
inline std::vector<std::string> tokenize_preserve_case(std::string_view text) {
  std::vector<std::string> out;
  detail::scan_tokens(text, [&](std::string_view t) { out.emplace_back(t); });
  return out;
}

inline std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

inline const std::set<std::string>& default_abbreviations() {
  static const std::set<std::string> abbrev = {"mr", "mrs", "dr", "st", "u.s"};
  return abbrev;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && is_ascii_space(s[b])) ++b;
  while (e > b && is_ascii_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

inline bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }

}  // namespace detail

// Rule-based splitter: a sentence ends at a run of [.!?] followed by whitespace
// and an uppercase letter, or at end of text. A single '.' preceded by a word in
// the abbreviation set does not end a sentence.
inline std::vector<std::string> split_sentences(
    std::string_view text,
    const std::set<std::string>& abbreviations = default_abbreviations()) {
  std::vector<std::string> out;
  const size_t n = text.size();
  size_t start = 0;
  while (start < n && is_ascii_space(text[start])) ++start;

  size_t i = start;
  while (i < n) {
    if (!detail::is_terminator(text[i])) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j < n && detail::is_terminator(text[j])) ++j;

    bool abbrev = false;
    if (j - i == 1 && text[i] == '.') {
      size_t k = i;
      while (k > start && !is_ascii_space(text[k - 1])) --k;
      std::string word = to_lower(text.substr(k, i - k));
      abbrev = abbreviations.count(word) > 0;
    }

    if (!abbrev) {
      size_t k = j;
      while (k < n && is_ascii_space(text[k])) ++k;
      bool boundary = (k == n) || (k > j && is_ascii_upper(text[k]));
      if (boundary) {
        std::string_view piece = detail::trim(text.substr(start, j - start));
        if (!piece.empty()) out.emplace_back(piece);
        start = k;
        i = k;
        continue;
      }
    }
    i = j;
  }

  std::string_view tail = detail::trim(text.substr(start));
  if (!tail.empty()) out.emplace_back(tail);
  return out;
}

// Small function-word list used when a topic has no entities and its tokens
// must be filtered down to keywords.
inline const std::unordered_set<std::string>& stopwords() {
  static const std::unordered_set<std::string> words = {
      "a",   "an",  "and", "are", "as",   "at",   "be",   "by",   "for", "from",
      "has", "he",  "in",  "is",  "it",   "its",  "of",   "on",   "or",  "she",
      "that", "the", "to",  "was", "were", "will", "with", "this", "they"};
  return words;
}

}  // namespace topicsum

#endif
