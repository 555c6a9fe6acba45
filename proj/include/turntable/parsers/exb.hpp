#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "turntable/detail/text.hpp"
#include "turntable/detail/xml.hpp"
#include "turntable/error.hpp"
#include "turntable/parsers/document.hpp"

namespace turntable::parsers {

namespace exb_detail {

/// Fills untimed timeline points by even spacing between the nearest timed
/// neighbours in timeline order. Points before the first or after the last
/// timed point stay unresolved.
inline std::vector<std::optional<std::int64_t>> interpolate_timeline(std::vector<std::optional<std::int64_t>> times) {
  std::optional<std::size_t> last_anchor;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!times[i]) continue;
    if (last_anchor && i - *last_anchor > 1) {
      const std::int64_t from = *times[*last_anchor];
      const std::int64_t to = *times[i];
      const auto steps = static_cast<std::int64_t>(i - *last_anchor);
      for (std::size_t k = *last_anchor + 1; k < i; ++k)
        times[k] = from + detail::round_div(static_cast<std::int64_t>(k - *last_anchor) * (to - from), steps);
    }
    last_anchor = i;
  }
  return times;
}

}  // namespace exb_detail

/// Reads an EXMARaLDA basic transcription. Timeline points are converted
/// from seconds to milliseconds; events keep their tier and are not merged.
inline ParsedDocument parse_exb(std::string_view bytes, std::string source_id) {
  using detail::XmlNode;
  const XmlNode xml = detail::parse_xml(bytes);
  const XmlNode* root = detail::child(xml, "basic-transcription");
  if (!root) throw Error(ErrorCode::malformed_xml, "missing basic-transcription root");

  ParsedDocument doc;
  doc.source_id = std::move(source_id);
  doc.format = Format::exb;

  if (const XmlNode* head = detail::child(*root, "head")) {
    if (const XmlNode* meta = detail::child(*head, "meta-information")) {
      for (const auto& [name, node] : *meta) {
        if (name == "referenced-file") {
          const std::string url = detail::attribute_or(node, "url");
          if (!url.empty()) doc.media_refs.push_back(detail::file_name_of(url));
        } else if (name == "project-name" || name == "transcription-name") {
          doc.metadata[name] = detail::text_of(node);
        } else if (name == "ud-meta-information") {
          for (const auto& [ud_name, ud] : node)
            if (ud_name == "ud-information") doc.metadata[detail::attribute_or(ud, "attribute-name")] = ud.data();
        }
      }
    }
    if (const XmlNode* speakers = detail::child(*head, "speakertable")) {
      for (const auto& [name, node] : *speakers) {
        if (name != "speaker") continue;
        const XmlNode* abbr = detail::child(node, "abbreviation");
        doc.metadata["speaker." + detail::attribute_or(node, "id")] = abbr ? detail::text_of(*abbr) : std::string();
      }
    }
  }

  const XmlNode* body = detail::child(*root, "basic-body");
  if (!body) throw Error(ErrorCode::malformed_xml, "missing basic-body");

  std::unordered_map<std::string, std::size_t> tli_index;
  std::vector<std::optional<std::int64_t>> times;
  if (const XmlNode* timeline = detail::child(*body, "common-timeline")) {
    for (const auto& [name, node] : *timeline) {
      if (name != "tli") continue;
      const std::string id = detail::attribute_or(node, "id");
      if (id.empty()) throw Error(ErrorCode::malformed_xml, "tli without id");
      std::optional<std::int64_t> ms;
      if (auto raw = detail::attribute(node, "time")) {
        ms = detail::seconds_text_to_ms(*raw);
        if (!ms || *ms < 0) throw Error(ErrorCode::malformed_xml, "bad tli time '" + *raw + "' on " + id);
      }
      if (!tli_index.emplace(id, times.size()).second) throw Error(ErrorCode::malformed_xml, "duplicate tli " + id);
      times.push_back(ms);
    }
  }
  times = exb_detail::interpolate_timeline(std::move(times));

  const auto time_of = [&](const XmlNode& event, const char* attr) -> std::int64_t {
    const std::string ref = detail::attribute_or(event, attr);
    const auto it = tli_index.find(ref);
    if (it == tli_index.end()) throw Error(ErrorCode::dangling_tli_ref, "undeclared timeline point '" + ref + "'");
    const auto& t = times[it->second];
    if (!t) throw Error(ErrorCode::unresolvable_time, "timeline point " + ref + " has no timed neighbour");
    return *t;
  };

  for (const auto& [name, tier_node] : *body) {
    if (name != "tier") continue;
    RawTier tier;
    tier.tier_id = detail::attribute_or(tier_node, "id");
    if (tier.tier_id.empty()) throw Error(ErrorCode::malformed_xml, "tier without id");
    if (doc.find_tier(tier.tier_id)) throw Error(ErrorCode::malformed_xml, "duplicate tier " + tier.tier_id);
    tier.participant = detail::attribute_or(tier_node, "speaker");
    tier.category = detail::attribute_or(tier_node, "category");
    const std::size_t tier_index = doc.tiers.size();
    doc.tiers.push_back(std::move(tier));

    for (const auto& [event_name, event] : tier_node) {
      if (event_name != "event") continue;
      RawAnnotation a;
      a.begin_ms = time_of(event, "start");
      a.end_ms = time_of(event, "end");
      if (a.begin_ms > a.end_ms)
        throw Error(ErrorCode::malformed_xml, "event on tier " + doc.tiers[tier_index].tier_id + " ends before it starts");
      a.text = detail::text_of(event);
      a.tier = tier_index;
      doc.annotations.push_back(std::move(a));
    }
  }
  return doc;
}

}  // namespace turntable::parsers
