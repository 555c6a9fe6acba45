#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "turntable/detail/text.hpp"
#include "turntable/detail/utf8.hpp"
#include "turntable/error.hpp"
#include "turntable/parsers/document.hpp"

namespace turntable::parsers {

namespace cha_detail {

inline constexpr char bullet = '\x15';

struct Bullets {
  std::string text;  // line content with bullets removed
  std::optional<std::int64_t> begin_ms, end_ms;
};

// Removes every NAK-delimited `begin_end` bullet. With several bullets on one
// line the span runs from the first begin to the last end.
inline Bullets strip_bullets(std::string_view content) {
  Bullets out;
  std::size_t pos = 0;
  while (pos < content.size()) {
    const std::size_t open = content.find(bullet, pos);
    if (open == std::string_view::npos) {
      out.text.append(content.substr(pos));
      break;
    }
    out.text.append(content.substr(pos, open - pos));
    const std::size_t close = content.find(bullet, open + 1);
    if (close == std::string_view::npos) throw Error(ErrorCode::malformed_time_bullet, "unterminated time bullet");
    const std::string_view body = content.substr(open + 1, close - open - 1);
    const std::size_t sep = body.find('_');
    const auto begin = sep == std::string_view::npos ? std::nullopt : detail::parse_int(body.substr(0, sep));
    const auto end = sep == std::string_view::npos ? std::nullopt : detail::parse_int(body.substr(sep + 1));
    if (!begin || !end || *begin < 0 || *begin > *end)
      throw Error(ErrorCode::malformed_time_bullet, "bad time bullet '" + std::string(body) + "'");
    if (!out.begin_ms) out.begin_ms = *begin;
    out.end_ms = *end;
    pos = close + 1;
  }
  out.text = std::string(detail::trim_right(out.text));
  return out;
}

inline std::string_view after_colon(std::string_view line, std::size_t colon) {
  std::string_view rest = line.substr(colon + 1);
  while (!rest.empty() && detail::is_ascii_space(rest.front())) rest.remove_prefix(1);
  return rest;
}

}  // namespace cha_detail

/// Reads a CHAT transcript. Main lines become annotations on one tier per
/// speaker code; dependent lines go to one tier per %-code and inherit the
/// span of the main line they follow. Main lines without a bullet get a
/// zero-length span at the end of the previous timed line and `untimed` set.
inline ParsedDocument parse_cha(std::string_view bytes, std::string source_id) {
  const std::string text = detail::to_utf8_text(bytes);

  ParsedDocument doc;
  doc.source_id = std::move(source_id);
  doc.format = Format::cha;

  std::vector<std::string> logical;
  for (std::string_view line : detail::split_lines(text)) {
    if (!line.empty() && line.front() == '\t' && !logical.empty()) {
      std::string& prev = logical.back();
      prev = std::string(detail::trim_right(prev));
      prev += ' ';
      prev += detail::trim(line);
    } else {
      logical.emplace_back(line);
    }
  }

  const auto tier_for = [&doc](const std::string& id, const std::string& participant,
                               const char* category) -> std::size_t {
    if (auto idx = doc.find_tier(id)) return *idx;
    doc.tiers.push_back(RawTier{id, participant, category, std::nullopt});
    return doc.tiers.size() - 1;
  };

  bool begun = false;
  std::optional<std::size_t> last_main;
  std::int64_t last_timed_end = 0;
  for (const std::string& line_str : logical) {
    const std::string_view line = line_str;
    if (line.empty()) continue;
    const char lead = line.front();
    if (lead == '@') {
      const std::size_t colon = line.find(':');
      const std::string key(detail::trim(line.substr(1, colon == std::string_view::npos ? line.npos : colon - 1)));
      if (key == "Begin") begun = true;
      if (key == "End") break;
      if (colon == std::string_view::npos) continue;
      const std::string value(detail::trim(line.substr(colon + 1)));
      if (key == "ID") {
        std::vector<std::string_view> fields;
        std::string_view rest = value;
        for (std::size_t bar; (bar = rest.find('|')) != std::string_view::npos; rest.remove_prefix(bar + 1))
          fields.push_back(rest.substr(0, bar));
        fields.push_back(rest);
        const std::string speaker = fields.size() > 2 ? std::string(fields[2]) : std::string();
        doc.metadata["ID." + speaker] = value;
        continue;
      }
      if (key == "Media") {
        const std::string media(detail::trim(std::string_view(value).substr(0, value.find(','))));
        if (!media.empty()) doc.media_refs.push_back(media);
      }
      auto [it, inserted] = doc.metadata.emplace(key, value);
      if (!inserted) it->second += "; " + value;
      continue;
    }
    if (!begun) continue;
    const std::size_t colon = line.find(':');
    if (colon == std::string_view::npos || colon < 2) continue;

    if (lead == '*') {
      const std::string code(line.substr(1, colon - 1));
      auto parsed = cha_detail::strip_bullets(cha_detail::after_colon(line, colon));
      RawAnnotation a;
      a.tier = tier_for(code, code, "main");
      a.participant_hint = code;
      a.text = std::move(parsed.text);
      if (parsed.begin_ms) {
        a.begin_ms = *parsed.begin_ms;
        a.end_ms = *parsed.end_ms;
        last_timed_end = a.end_ms;
      } else {
        a.begin_ms = a.end_ms = last_timed_end;
        a.untimed = true;
      }
      last_main = doc.annotations.size();
      doc.annotations.push_back(std::move(a));
    } else if (lead == '%') {
      const std::string code(line.substr(0, colon));
      auto parsed = cha_detail::strip_bullets(cha_detail::after_colon(line, colon));
      RawAnnotation a;
      a.tier = tier_for(code, "", "dependent");
      a.text = std::move(parsed.text);
      if (last_main) {
        const RawAnnotation& parent = doc.annotations[*last_main];
        a.begin_ms = parent.begin_ms;
        a.end_ms = parent.end_ms;
        a.untimed = parent.untimed;
        a.participant_hint = parent.participant_hint;
        a.parent = last_main;
      } else {
        a.untimed = true;
      }
      doc.annotations.push_back(std::move(a));
    }
  }
  if (!begun) throw Error(ErrorCode::missing_header, "@Begin header not found");
  return doc;
}

}  // namespace turntable::parsers
