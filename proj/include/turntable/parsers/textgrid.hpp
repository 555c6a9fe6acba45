#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "turntable/detail/text.hpp"
#include "turntable/detail/utf8.hpp"
#include "turntable/error.hpp"
#include "turntable/parsers/document.hpp"

namespace turntable::parsers {

namespace textgrid_detail {

struct Token {
  enum class Kind { string, number, flag } kind;
  std::string text;
};

// Long and short text forms differ only in labels ("xmin =", "intervals [3]:"),
// so both reduce to the same stream of strings, numbers and <flags>.
inline std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  const auto fail = [](const std::string& what) { throw Error(ErrorCode::malformed_textgrid, what); };
  while (i < s.size()) {
    const char c = s[i];
    if (detail::is_ascii_space(c) || c == '=' || c == ':') {
      ++i;
    } else if (c == '"') {
      std::string value;
      ++i;
      for (;;) {
        if (i >= s.size()) fail("unterminated string");
        if (s[i] == '"') {
          if (i + 1 < s.size() && s[i + 1] == '"') {
            value.push_back('"');
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        value.push_back(s[i++]);
      }
      out.push_back({Token::Kind::string, std::move(value)});
    } else if (c == '!') {
      while (i < s.size() && s[i] != '\n') ++i;
    } else if (c == '[') {
      const std::size_t close = s.find(']', i);
      if (close == std::string_view::npos) fail("unterminated index bracket");
      i = close + 1;
    } else if (c == '<') {
      const std::size_t close = s.find('>', i);
      if (close == std::string_view::npos) fail("unterminated flag");
      out.push_back({Token::Kind::flag, std::string(s.substr(i, close - i + 1))});
      i = close + 1;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.') {
      const std::size_t start = i;
      while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.' || s[i] == 'e' ||
                              s[i] == 'E' || s[i] == '-' || s[i] == '+'))
        ++i;
      out.push_back({Token::Kind::number, std::string(s.substr(start, i - start))});
    } else {
      while (i < s.size() && !detail::is_ascii_space(s[i]) && s[i] != '=' && s[i] != ':' && s[i] != '"' &&
             s[i] != '[')
        ++i;
    }
  }
  return out;
}

class TokenCursor {
 public:
  explicit TokenCursor(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& take(Token::Kind kind, const char* what) {
    if (pos_ >= tokens_.size() || tokens_[pos_].kind != kind)
      throw Error(ErrorCode::malformed_textgrid, std::string("expected ") + what + " at token " + std::to_string(pos_));
    return tokens_[pos_++];
  }

  std::string string(const char* what) { return take(Token::Kind::string, what).text; }

  std::int64_t ms(const char* what) {
    const std::string& text = take(Token::Kind::number, what).text;
    const auto value = detail::seconds_text_to_ms(text);
    if (!value) throw Error(ErrorCode::malformed_textgrid, std::string("bad ") + what + " '" + text + "'");
    return *value;
  }

  std::int64_t count(const char* what) {
    const std::string& text = take(Token::Kind::number, what).text;
    const auto value = detail::parse_int(text);
    if (!value || *value < 0) throw Error(ErrorCode::malformed_textgrid, std::string("bad ") + what + " '" + text + "'");
    return *value;
  }

  std::string flag() { return take(Token::Kind::flag, "flag").text; }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace textgrid_detail

/// Reads a Praat TextGrid in long or short text form (UTF-8 or UTF-16 with
/// BOM). Interval tiers become tiers; point tiers are skipped and counted
/// under metadata "skipped_point_tiers". Empty intervals are not emitted.
inline ParsedDocument parse_textgrid(std::string_view bytes, std::string source_id) {
  using textgrid_detail::TokenCursor;
  TokenCursor cur(textgrid_detail::tokenize(detail::to_utf8_text(bytes)));

  ParsedDocument doc;
  doc.source_id = std::move(source_id);
  doc.format = Format::textgrid;

  if (cur.string("file type") != "ooTextFile") throw Error(ErrorCode::malformed_textgrid, "not an ooTextFile");
  if (cur.string("object class") != "TextGrid") throw Error(ErrorCode::malformed_textgrid, "object is not a TextGrid");
  cur.ms("xmin");
  cur.ms("xmax");
  const std::string tiers_flag = cur.flag();
  const std::int64_t n_tiers = tiers_flag == "<exists>" ? cur.count("tier count") : 0;

  std::int64_t skipped = 0;
  for (std::int64_t t = 0; t < n_tiers; ++t) {
    const std::string tier_class = cur.string("tier class");
    const std::string name = cur.string("tier name");
    cur.ms("tier xmin");
    cur.ms("tier xmax");
    const std::int64_t n = cur.count("item count");

    if (tier_class == "TextTier") {
      for (std::int64_t k = 0; k < n; ++k) {
        cur.ms("point time");
        cur.string("point mark");
      }
      ++skipped;
      continue;
    }
    if (tier_class != "IntervalTier")
      throw Error(ErrorCode::malformed_textgrid, "unknown tier class '" + tier_class + "'");

    std::string tier_id = name;
    for (int suffix = 2; doc.find_tier(tier_id); ++suffix) tier_id = name + "#" + std::to_string(suffix);
    const std::size_t tier_index = doc.tiers.size();
    doc.tiers.push_back(RawTier{tier_id, name, "IntervalTier", std::nullopt});

    std::int64_t prev_end = INT64_MIN;
    for (std::int64_t k = 0; k < n; ++k) {
      const std::int64_t begin = cur.ms("interval xmin");
      const std::int64_t end = cur.ms("interval xmax");
      std::string text = cur.string("interval text");
      if (begin > end || begin < 0)
        throw Error(ErrorCode::malformed_textgrid, "interval " + std::to_string(k + 1) + " of tier " + name + " is inverted");
      if (prev_end != INT64_MIN && begin < prev_end - 1)
        throw Error(ErrorCode::non_monotone_intervals,
                    "tier " + name + " interval " + std::to_string(k + 1) + " starts before the previous one ends");
      prev_end = end;
      if (detail::trim(text).empty()) continue;
      RawAnnotation a;
      a.begin_ms = begin;
      a.end_ms = end;
      a.text = std::move(text);
      a.tier = tier_index;
      doc.annotations.push_back(std::move(a));
    }
  }
  doc.metadata["skipped_point_tiers"] = std::to_string(skipped);
  return doc;
}

}  // namespace turntable::parsers
