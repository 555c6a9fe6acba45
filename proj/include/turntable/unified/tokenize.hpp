#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "turntable/detail/utf8.hpp"

namespace turntable {

/// Word segmenter hook: text in, tokens out. Languages written without
/// spaces plug their own segmenter in here.
using Segmenter = std::function<std::vector<std::string>(std::string_view)>;

namespace tokenize_detail {

inline bool is_word_joiner(char32_t cp) { return cp == U'\'' || cp == U'-' || cp == 0x2019 || cp == 0x2010; }

inline std::u32string strip_edge_punctuation(std::u32string token) {
  if (token.size() >= 3 && token.front() == U'[' && token.back() == U']') {
    bool tag = true;
    for (std::size_t i = 1; i + 1 < token.size(); ++i)
      if (token[i] == U'[' || token[i] == U']') tag = false;
    if (tag) return token;
  }
  std::size_t b = 0, e = token.size();
  while (b < e && detail::is_punctuation(token[b])) ++b;
  while (e > b && detail::is_punctuation(token[e - 1])) --e;
  return token.substr(b, e - b);
}

}  // namespace tokenize_detail

/// Splits on Unicode whitespace and trims punctuation from both ends of each
/// token. Bracketed tags ("[laugh]") stay whole; apostrophes and hyphens
/// inside a word are kept.
inline std::vector<std::string> whitespace_segmenter(std::string_view text) {
  std::vector<std::string> tokens;
  const std::u32string cps = detail::decode_utf8(text);
  std::u32string current;
  const auto flush = [&] {
    if (current.empty()) return;
    std::u32string stripped = tokenize_detail::strip_edge_punctuation(std::move(current));
    if (!stripped.empty()) tokens.push_back(detail::encode_utf8(stripped));
    current.clear();
  };
  for (const char32_t cp : cps) {
    if (detail::is_unicode_space(cp)) flush();
    else current.push_back(cp);
  }
  flush();
  return tokens;
}

struct TokenizeOptions {
  bool lowercase = false;
};

inline std::vector<std::string> tokenize(std::string_view utterance, TokenizeOptions opts = {},
                                         const Segmenter& segmenter = whitespace_segmenter) {
  std::vector<std::string> tokens = segmenter(utterance);
  std::erase_if(tokens, [](const std::string& t) { return t.empty(); });
  if (opts.lowercase)
    for (auto& t : tokens) t = detail::lowercase(t);
  return tokens;
}

}  // namespace turntable
