#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "turntable/error.hpp"

namespace turntable::parsers {

enum class Format { eaf, cha, textgrid, exb };

constexpr std::string_view to_string(Format f) noexcept {
  switch (f) {
    case Format::eaf: return "EAF";
    case Format::cha: return "CHA";
    case Format::textgrid: return "TEXTGRID";
    case Format::exb: return "EXB";
  }
  return "?";
}

struct RawTier {
  std::string tier_id;
  std::string participant;
  std::string category;
  std::optional<std::string> parent_tier;

  bool operator==(const RawTier&) const = default;
};

/// One time-anchored annotation. Times are resolved milliseconds; `tier`
/// indexes ParsedDocument::tiers and `parent` (when set) indexes
/// ParsedDocument::annotations.
struct RawAnnotation {
  std::int64_t begin_ms = 0;
  std::int64_t end_ms = 0;
  std::string text;
  std::string participant_hint;
  std::size_t tier = 0;
  std::optional<std::size_t> parent;
  // CHAT main line without a time bullet; span is a zero-length placeholder.
  bool untimed = false;

  bool operator==(const RawAnnotation&) const = default;
};

struct ParsedDocument {
  std::string source_id;
  Format format = Format::eaf;
  std::vector<RawTier> tiers;
  std::vector<RawAnnotation> annotations;
  std::vector<std::string> media_refs;
  std::map<std::string, std::string> metadata;

  std::optional<std::size_t> find_tier(std::string_view id) const {
    for (std::size_t i = 0; i < tiers.size(); ++i)
      if (tiers[i].tier_id == id) return i;
    return std::nullopt;
  }

  std::size_t annotation_count(std::size_t tier) const {
    std::size_t n = 0;
    for (const auto& a : annotations) n += (a.tier == tier);
    return n;
  }

  bool operator==(const ParsedDocument&) const = default;
};

/// Checks the structural invariants every parser guarantees; throws
/// std::logic_error naming the first violation.
inline void check_invariants(const ParsedDocument& doc) {
  if (doc.source_id.empty()) throw std::logic_error("empty source_id");
  for (std::size_t i = 0; i < doc.tiers.size(); ++i) {
    for (std::size_t j = i + 1; j < doc.tiers.size(); ++j)
      if (doc.tiers[i].tier_id == doc.tiers[j].tier_id)
        throw std::logic_error("duplicate tier id " + doc.tiers[i].tier_id);
    if (doc.tiers[i].parent_tier && !doc.find_tier(*doc.tiers[i].parent_tier))
      throw std::logic_error("unknown parent tier " + *doc.tiers[i].parent_tier);
  }
  for (const auto& a : doc.annotations) {
    if (a.tier >= doc.tiers.size()) throw std::logic_error("annotation tier index out of range");
    if (a.begin_ms < 0 || a.begin_ms > a.end_ms) throw std::logic_error("annotation span invalid");
    if (a.parent && *a.parent >= doc.annotations.size()) throw std::logic_error("parent index out of range");
  }
}

}  // namespace turntable::parsers
