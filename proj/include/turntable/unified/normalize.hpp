#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "turntable/detail/utf8.hpp"
#include "turntable/unified/types.hpp"

namespace turntable {

namespace normalize_detail {

inline bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

// &amp; &lt; &gt; &quot; &apos; &nbsp; and numeric references.
inline std::string decode_entities(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    if (s[i] == '&') {
      const std::size_t semi = s.find(';', i + 1);
      if (semi != std::string_view::npos && semi - i <= 10) {
        const std::string_view name = s.substr(i + 1, semi - i - 1);
        char32_t cp = 0;
        if (name == "amp") cp = '&';
        else if (name == "lt") cp = '<';
        else if (name == "gt") cp = '>';
        else if (name == "quot") cp = '"';
        else if (name == "apos") cp = '\'';
        else if (name == "nbsp") cp = 0xA0;
        else if (name.size() > 1 && name[0] == '#') {
          const bool hex = name[1] == 'x' || name[1] == 'X';
          const std::string_view digits = name.substr(hex ? 2 : 1);
          std::uint32_t v = 0;
          bool ok = !digits.empty() && digits.size() <= 7;
          for (const char c : digits) {
            if (!ok) break;
            const int d = hex ? (std::isxdigit(static_cast<unsigned char>(c))
                                     ? (std::isdigit(static_cast<unsigned char>(c)) ? c - '0' : (std::tolower(c) - 'a' + 10))
                                     : -1)
                              : (std::isdigit(static_cast<unsigned char>(c)) ? c - '0' : -1);
            if (d < 0) ok = false;
            else v = v * (hex ? 16 : 10) + static_cast<std::uint32_t>(d);
          }
          if (ok && v > 0 && v <= 0x10FFFF && !(v >= 0xD800 && v <= 0xDFFF)) cp = v;
        }
        if (cp != 0) {
          detail::append_utf8(out, cp);
          i = semi + 1;
          continue;
        }
      }
    }
    out.push_back(s[i++]);
  }
  return out;
}

// Removes things that look like XML element tags: <name>, </name>, <name/>,
// and <name attr="...">. Angle-bracketed prose without an attribute
// assignment ("<I want>") is left alone.
inline std::string strip_tags(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    if (s[i] == '<') {
      std::size_t j = i + 1;
      if (j < s.size() && s[j] == '/') ++j;
      const std::size_t name_start = j;
      if (j < s.size() && std::isalpha(static_cast<unsigned char>(s[j]))) {
        while (j < s.size() && (is_alnum(s[j]) || s[j] == '_' || s[j] == ':' || s[j] == '.' || s[j] == '-')) ++j;
        const std::size_t close = s.find('>', j);
        const std::size_t reopen = s.find('<', j);
        if (j > name_start && close != std::string_view::npos && (reopen == std::string_view::npos || reopen > close)) {
          std::string_view rest = s.substr(j, close - j);
          while (!rest.empty() && detail::is_ascii_space(rest.back())) rest.remove_suffix(1);
          if (!rest.empty() && rest.back() == '/') rest.remove_suffix(1);
          const bool bare = detail::trim(rest).empty();
          const bool with_attrs = !rest.empty() && detail::is_ascii_space(rest.front()) && rest.find('=') != rest.npos;
          if (bare || with_attrs) {
            out.push_back(' ');
            i = close + 1;
            continue;
          }
        }
      }
    }
    out.push_back(s[i++]);
  }
  return out;
}

// A bracketed tag: "[" + non-space, non-bracket run + "]".
inline std::size_t bracket_tag_length(std::string_view s, std::size_t at) {
  if (s[at] != '[') return 0;
  for (std::size_t j = at + 1; j < s.size(); ++j) {
    if (s[j] == ']') return j > at + 1 ? j - at + 1 : 0;
    if (s[j] == '[' || detail::is_ascii_space(s[j])) return 0;
  }
  return 0;
}

inline bool boundary_before(std::string_view s, std::size_t at, std::string_view key) {
  if (at == 0 || !is_alnum(key.front())) return true;
  return !is_alnum(s[at - 1]) && s[at - 1] != '&' && static_cast<unsigned char>(s[at - 1]) < 0x80;
}

inline bool boundary_after(std::string_view s, std::size_t end, std::string_view key) {
  if (end >= s.size() || !is_alnum(key.back())) return true;
  return !is_alnum(s[end]) && static_cast<unsigned char>(s[end]) < 0x80;
}

inline std::string apply_canonical_map(std::string_view s, const TagPolicy& tags) {
  if (tags.canonical_map.empty()) return std::string(s);
  std::vector<const std::pair<const std::string, std::string>*> rules;
  for (const auto& rule : tags.canonical_map) rules.push_back(&rule);
  std::stable_sort(rules.begin(), rules.end(), [](auto* a, auto* b) { return a->first.size() > b->first.size(); });

  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    if (const std::size_t len = bracket_tag_length(s, i)) {
      out.append(s.substr(i, len));
      i += len;
      continue;
    }
    bool replaced = false;
    for (const auto* rule : rules) {
      const std::string& key = rule->first;
      if (s.compare(i, key.size(), key) == 0 && boundary_before(s, i, key) &&
          boundary_after(s, i + key.size(), key)) {
        out += rule->second;
        i += key.size();
        replaced = true;
        break;
      }
    }
    if (!replaced) out.push_back(s[i++]);
  }
  return out;
}

inline std::string tag_body(std::string_view inner) {
  std::string body;
  bool pending_space = false;
  for (const char c : detail::trim(inner)) {
    if (detail::is_ascii_space(c)) {
      pending_space = true;
      continue;
    }
    if (c == '[' || c == ']') continue;
    if (pending_space && !body.empty()) body.push_back('_');
    pending_space = false;
    body.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return body.empty() ? std::string("unk") : body;
}

// "((coughs))" -> "[coughs]", "&=claps" -> "[claps]".
inline std::string bracket_unknown(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    if (s.compare(i, 2, "((") == 0) {
      const std::size_t close = s.find("))", i + 2);
      if (close != std::string_view::npos && s.substr(i + 2, close - i - 2).find("((") == std::string_view::npos) {
        out += '[' + tag_body(s.substr(i + 2, close - i - 2)) + ']';
        i = close + 2;
        continue;
      }
    }
    if (s.compare(i, 2, "&=") == 0 && boundary_before(s, i, "&")) {
      std::size_t j = i + 2;
      while (j < s.size() && (is_alnum(s[j]) || s[j] == '_' || s[j] == ':' || s[j] == '-')) ++j;
      if (j > i + 2) {
        out += '[' + tag_body(s.substr(i + 2, j - i - 2)) + ']';
        i = j;
        continue;
      }
    }
    out.push_back(s[i++]);
  }
  return out;
}

inline std::string collapse_whitespace(std::string_view s) {
  const std::u32string cps = detail::decode_utf8(s);
  std::string out;
  out.reserve(s.size());
  bool pending = false;
  for (const char32_t cp : cps) {
    if (detail::is_unicode_space(cp)) {
      pending = true;
      continue;
    }
    if (pending && !out.empty()) out.push_back(' ');
    pending = false;
    detail::append_utf8(out, cp);
  }
  return out;
}

}  // namespace normalize_detail

/// Cleans one utterance: decodes XML entities, maps known non-verbal markers
/// to canonical tags, brackets other marked conduct (when enabled), strips
/// residual XML tags, and collapses whitespace. Text in any script is kept
/// as is. Repeats until nothing changes, so the result is a fixpoint.
inline std::string normalize_utterance_text(std::string_view raw, const TagPolicy& tags) {
  namespace nd = normalize_detail;
  std::string current(raw);
  for (int round = 0; round < 64; ++round) {
    std::string next = nd::decode_entities(current);
    next = nd::apply_canonical_map(next, tags);
    if (tags.bracket_unknown) next = nd::bracket_unknown(next);
    next = nd::strip_tags(next);
    next = nd::collapse_whitespace(next);
    if (next == current) break;
    current = std::move(next);
  }
  return current;
}

}  // namespace turntable
