#pragma once

#include <cstdint>
#include <map>
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

namespace eaf_detail {

struct TimeSlot {
  std::string id;
  std::optional<std::int64_t> value;
};

struct PendingAnnotation {
  std::string id;
  std::size_t tier = 0;
  std::string text;
  // alignable annotations
  std::optional<std::size_t> slot1, slot2;
  // reference annotations
  std::string ref;
};

// Unanchored slots are placed evenly between the nearest anchored slots that
// precede and follow them along the chain of adjacent annotations on one
// tier (an annotation ending at slot s continues into the one starting at s).
class ChainResolver {
 public:
  ChainResolver(const std::vector<TimeSlot>& slots, const std::vector<PendingAnnotation>& pending)
      : slots_(slots), resolved_(slots.size()) {
    for (std::size_t i = 0; i < slots.size(); ++i) resolved_[i] = slots[i].value;
    for (const auto& p : pending) {
      if (!p.slot1) continue;
      auto& chain = chains_[p.tier];
      chain.next.emplace(*p.slot1, *p.slot2);
      chain.prev.emplace(*p.slot2, *p.slot1);
    }
  }

  std::int64_t resolve(std::size_t tier, std::size_t slot) {
    if (resolved_[slot]) return *resolved_[slot];
    const auto& chain = chains_.at(tier);
    const std::size_t limit = chain.next.size() + 1;

    std::size_t back = 0, cur = slot;
    while (!slots_[cur].value) {
      const auto it = chain.prev.find(cur);
      if (it == chain.prev.end() || ++back > limit)
        throw Error(ErrorCode::unresolvable_time, "no anchored slot before " + slots_[slot].id);
      cur = it->second;
    }
    const std::int64_t from = *slots_[cur].value;

    std::size_t fwd = 0;
    cur = slot;
    while (!slots_[cur].value) {
      const auto it = chain.next.find(cur);
      if (it == chain.next.end() || ++fwd > limit)
        throw Error(ErrorCode::unresolvable_time, "no anchored slot after " + slots_[slot].id);
      cur = it->second;
    }
    const std::int64_t to = *slots_[cur].value;

    const auto steps = static_cast<std::int64_t>(back + fwd);
    const std::int64_t value = from + detail::round_div(static_cast<std::int64_t>(back) * (to - from), steps);
    resolved_[slot] = value;
    return value;
  }

 private:
  struct Chain {
    std::map<std::size_t, std::size_t> next, prev;
  };
  const std::vector<TimeSlot>& slots_;
  std::vector<std::optional<std::int64_t>> resolved_;
  std::map<std::size_t, Chain> chains_;
};

}  // namespace eaf_detail

/// Reads an ELAN annotation document. Alignable annotations take their span
/// from time slots; reference annotations inherit the full span of the
/// annotation they point at.
inline ParsedDocument parse_eaf(std::string_view bytes, std::string source_id) {
  using detail::XmlNode;
  using eaf_detail::PendingAnnotation;
  using eaf_detail::TimeSlot;

  const XmlNode xml = detail::parse_xml(bytes);
  const XmlNode* root = detail::child(xml, "ANNOTATION_DOCUMENT");
  if (!root) throw Error(ErrorCode::malformed_xml, "missing ANNOTATION_DOCUMENT root");

  ParsedDocument doc;
  doc.source_id = std::move(source_id);
  doc.format = Format::eaf;

  if (const auto attrs = root->get_child_optional("<xmlattr>")) {
    for (const auto& [name, value] : *attrs)
      if (name.find(':') == std::string::npos && name != "xmlns") doc.metadata[name] = value.data();
  }

  if (const XmlNode* header = detail::child(*root, "HEADER")) {
    if (auto units = detail::attribute(*header, "TIME_UNITS")) doc.metadata["TIME_UNITS"] = *units;
    for (const auto& [name, node] : *header) {
      if (name == "MEDIA_DESCRIPTOR") {
        const std::string url = detail::attribute_or(node, "MEDIA_URL");
        if (!url.empty()) doc.media_refs.push_back(detail::file_name_of(url));
      } else if (name == "PROPERTY") {
        if (auto key = detail::attribute(node, "NAME")) doc.metadata[*key] = detail::text_of(node);
      }
    }
  }

  std::vector<TimeSlot> slots;
  std::unordered_map<std::string, std::size_t> slot_index;
  if (const XmlNode* order = detail::child(*root, "TIME_ORDER")) {
    for (const auto& [name, node] : *order) {
      if (name != "TIME_SLOT") continue;
      TimeSlot slot;
      slot.id = detail::attribute_or(node, "TIME_SLOT_ID");
      if (slot.id.empty()) throw Error(ErrorCode::malformed_xml, "TIME_SLOT without TIME_SLOT_ID");
      if (auto raw = detail::attribute(node, "TIME_VALUE")) {
        slot.value = detail::parse_int(*raw);
        if (!slot.value || *slot.value < 0)
          throw Error(ErrorCode::malformed_xml, "bad TIME_VALUE '" + *raw + "' on " + slot.id);
      }
      if (!slot_index.emplace(slot.id, slots.size()).second)
        throw Error(ErrorCode::malformed_xml, "duplicate time slot " + slot.id);
      slots.push_back(std::move(slot));
    }
  }

  std::vector<PendingAnnotation> pending;
  const auto slot_ref = [&](const XmlNode& node, const char* attr) -> std::size_t {
    const std::string ref = detail::attribute_or(node, attr);
    const auto it = slot_index.find(ref);
    if (it == slot_index.end()) throw Error(ErrorCode::dangling_time_slot_ref, "undeclared time slot '" + ref + "'");
    return it->second;
  };

  for (const auto& [name, tier_node] : *root) {
    if (name != "TIER") continue;
    RawTier tier;
    tier.tier_id = detail::attribute_or(tier_node, "TIER_ID");
    if (tier.tier_id.empty()) throw Error(ErrorCode::malformed_xml, "TIER without TIER_ID");
    if (doc.find_tier(tier.tier_id)) throw Error(ErrorCode::malformed_xml, "duplicate tier " + tier.tier_id);
    tier.participant = detail::attribute_or(tier_node, "PARTICIPANT");
    tier.category = detail::attribute_or(tier_node, "LINGUISTIC_TYPE_REF");
    if (auto parent = detail::attribute(tier_node, "PARENT_REF"); parent && !parent->empty())
      tier.parent_tier = *parent;
    const std::size_t tier_index = doc.tiers.size();
    doc.tiers.push_back(std::move(tier));

    for (const auto& [ann_name, ann] : tier_node) {
      if (ann_name != "ANNOTATION") continue;
      for (const auto& [kind, body] : ann) {
        if (kind != "ALIGNABLE_ANNOTATION" && kind != "REF_ANNOTATION") continue;
        PendingAnnotation p;
        p.id = detail::attribute_or(body, "ANNOTATION_ID");
        p.tier = tier_index;
        if (const XmlNode* value = detail::child(body, "ANNOTATION_VALUE")) p.text = detail::text_of(*value);
        if (kind == "ALIGNABLE_ANNOTATION") {
          p.slot1 = slot_ref(body, "TIME_SLOT_REF1");
          p.slot2 = slot_ref(body, "TIME_SLOT_REF2");
        } else {
          p.ref = detail::attribute_or(body, "ANNOTATION_REF");
        }
        pending.push_back(std::move(p));
      }
    }
  }

  for (const auto& tier : doc.tiers) {
    if (tier.parent_tier && !doc.find_tier(*tier.parent_tier))
      throw Error(ErrorCode::malformed_xml, "tier " + tier.tier_id + " names unknown parent " + *tier.parent_tier);
  }

  std::unordered_map<std::string, std::size_t> by_id;
  for (std::size_t i = 0; i < pending.size(); ++i) {
    if (!pending[i].id.empty() && !by_id.emplace(pending[i].id, i).second)
      throw Error(ErrorCode::malformed_xml, "duplicate annotation id " + pending[i].id);
  }

  eaf_detail::ChainResolver resolver(slots, pending);
  doc.annotations.resize(pending.size());
  std::vector<bool> done(pending.size(), false);
  for (std::size_t i = 0; i < pending.size(); ++i) {
    const auto& p = pending[i];
    auto& a = doc.annotations[i];
    a.tier = p.tier;
    a.text = p.text;
    if (!p.slot1) continue;
    a.begin_ms = resolver.resolve(p.tier, *p.slot1);
    a.end_ms = resolver.resolve(p.tier, *p.slot2);
    if (a.begin_ms > a.end_ms)
      throw Error(ErrorCode::malformed_xml, "annotation " + p.id + " ends before it begins");
    done[i] = true;
  }

  // Reference chains may nest (a ref of a ref); resolve each by walking up.
  for (std::size_t i = 0; i < pending.size(); ++i) {
    if (done[i]) continue;
    std::vector<std::size_t> path{i};
    std::size_t cur = i;
    while (!done[cur]) {
      const auto it = by_id.find(pending[cur].ref);
      if (it == by_id.end())
        throw Error(ErrorCode::dangling_annotation_ref,
                    "annotation " + pending[cur].id + " references unknown '" + pending[cur].ref + "'");
      doc.annotations[cur].parent = it->second;
      cur = it->second;
      if (path.size() > pending.size())
        throw Error(ErrorCode::malformed_xml, "cyclic annotation references at " + pending[i].id);
      path.push_back(cur);
    }
    for (const std::size_t k : path) {
      doc.annotations[k].begin_ms = doc.annotations[cur].begin_ms;
      doc.annotations[k].end_ms = doc.annotations[cur].end_ms;
      done[k] = true;
    }
  }
  return doc;
}

}  // namespace turntable::parsers
