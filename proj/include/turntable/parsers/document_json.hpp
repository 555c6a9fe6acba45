#pragma once

#include <json.hpp>

#include "turntable/parsers/document.hpp"

namespace turntable::parsers {

/// Canonical JSON rendering used for golden files and `inspect --json`.
inline nlohmann::ordered_json to_json(const ParsedDocument& doc) {
  nlohmann::ordered_json j;
  j["source_id"] = doc.source_id;
  j["format"] = std::string(to_string(doc.format));
  j["media_refs"] = doc.media_refs;
  j["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : doc.metadata) j["metadata"][k] = v;
  j["tiers"] = nlohmann::ordered_json::array();
  for (const auto& t : doc.tiers) {
    nlohmann::ordered_json jt;
    jt["tier_id"] = t.tier_id;
    jt["participant"] = t.participant;
    jt["category"] = t.category;
    jt["parent_tier"] = t.parent_tier ? nlohmann::ordered_json(*t.parent_tier) : nlohmann::ordered_json(nullptr);
    j["tiers"].push_back(std::move(jt));
  }
  j["annotations"] = nlohmann::ordered_json::array();
  for (const auto& a : doc.annotations) {
    nlohmann::ordered_json ja;
    ja["tier"] = doc.tiers.at(a.tier).tier_id;
    ja["begin_ms"] = a.begin_ms;
    ja["end_ms"] = a.end_ms;
    ja["text"] = a.text;
    ja["participant_hint"] = a.participant_hint;
    ja["parent"] = a.parent ? nlohmann::ordered_json(*a.parent) : nlohmann::ordered_json(nullptr);
    ja["untimed"] = a.untimed;
    j["annotations"].push_back(std::move(ja));
  }
  return j;
}

}  // namespace turntable::parsers
