#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "turntable/detail/text.hpp"
#include "turntable/error.hpp"
#include "turntable/parsers/document.hpp"
#include "turntable/unified/normalize.hpp"
#include "turntable/unified/types.hpp"

namespace turntable {

/// A translation or extra-layer annotation with no utterance turn of the
/// same span on a related tier. Kept out of the turn table.
struct UnmatchedAnnotation {
  std::string source;
  std::string tier_id;
  std::string column;
  std::int64_t begin_ms = 0;
  std::int64_t end_ms = 0;
  std::string text;

  bool operator==(const UnmatchedAnnotation&) const = default;
};

struct UnifyResult {
  CorpusTable table;
  std::vector<UnmatchedAnnotation> unmatched;
};

inline const std::vector<std::string>& core_columns() {
  static const std::vector<std::string> cols{"begin", "end", "participant", "utterance", "source", "uid", "utterance_raw"};
  return cols;
}

namespace unify_detail {

inline bool matches(const std::string& pattern, const parsers::RawTier& tier) {
  return detail::glob_match(pattern, tier.tier_id) || (!tier.category.empty() && detail::glob_match(pattern, tier.category));
}

inline std::string id_prefix(const std::string& tier_id) {
  const std::size_t cut = tier_id.find_first_of("-_. @");
  if (cut == 0 || cut == std::string::npos) return tier_id;
  return tier_id.substr(0, cut);
}

inline std::string uid_for(const std::string& source_id, std::size_t ordinal, std::size_t total) {
  std::string digits = std::to_string(ordinal);
  const std::size_t width = std::max<std::size_t>(4, std::to_string(total).size());
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return source_id + "-" + digits;
}

}  // namespace unify_detail

/// Resolves the role each tier plays under `cfg`. Index-aligned with doc.tiers.
inline std::vector<Role> resolve_roles(const parsers::ParsedDocument& doc, const TierMapConfig& cfg) {
  std::vector<bool> dependent(doc.tiers.size(), false);
  for (std::size_t i = 0; i < doc.tiers.size(); ++i) dependent[i] = doc.tiers[i].parent_tier.has_value();
  for (const auto& a : doc.annotations)
    if (a.parent) dependent[a.tier] = true;

  std::vector<Role> roles;
  roles.reserve(doc.tiers.size());
  for (std::size_t i = 0; i < doc.tiers.size(); ++i) {
    const auto& tier = doc.tiers[i];
    const bool included = cfg.include_patterns.empty() ||
                          std::any_of(cfg.include_patterns.begin(), cfg.include_patterns.end(),
                                      [&](const std::string& p) { return unify_detail::matches(p, tier); });
    Role role;
    if (included) {
      for (const auto& [pattern, r] : cfg.role_map) {
        if (unify_detail::matches(pattern, tier)) {
          role = r;
          break;
        }
      }
    }
    if (cfg.top_level_only && dependent[i] && role.kind == Role::Kind::utterance) {
      std::string name = tier.tier_id;
      if (!name.empty() && name.front() == '%') name.erase(0, 1);
      role = Role{Role::Kind::extra, name};
    }
    roles.push_back(std::move(role));
  }
  return roles;
}

/// Converts a parsed document into turn rows. Utterance-tier annotations
/// become turns; translation and extra layers attach to the turn with the
/// same span on their parent tier (or the same participant when the format
/// has no tier hierarchy). Unattached layers are returned separately.
inline UnifyResult unify_detailed(const parsers::ParsedDocument& doc, const TierMapConfig& cfg, const TagPolicy& tags) {
  cfg.validate();
  tags.validate();
  const std::vector<Role> roles = resolve_roles(doc, cfg);

  const bool any_included = std::any_of(doc.tiers.begin(), doc.tiers.end(), [&](const parsers::RawTier& tier) {
    return cfg.include_patterns.empty() || std::any_of(cfg.include_patterns.begin(), cfg.include_patterns.end(),
                                                       [&](const std::string& p) { return unify_detail::matches(p, tier); });
  });
  if (!any_included) throw Error(ErrorCode::empty_selection, "no tier of " + doc.source_id + " matches the include patterns");
  if (std::none_of(roles.begin(), roles.end(), [](const Role& r) { return r.kind == Role::Kind::utterance; }))
    throw Error(ErrorCode::no_utterance_tier, "no utterance tier selected in " + doc.source_id);

  for (const Role& r : roles) {
    if (r.kind != Role::Kind::extra) continue;
    const auto& core = core_columns();
    if (std::find(core.begin(), core.end(), r.name) != core.end())
      throw Error(ErrorCode::invalid_config, "extra column '" + r.name + "' collides with a core column");
  }

  const std::string source = doc.media_refs.empty() ? doc.source_id : doc.media_refs.front();

  UnifyResult result;
  CorpusTable& table = result.table;
  table.corpus_id = doc.source_id;

  std::vector<std::size_t> turn_annotation;
  std::vector<std::optional<std::size_t>> turn_of_annotation(doc.annotations.size());
  for (std::size_t i = 0; i < doc.annotations.size(); ++i) {
    const auto& a = doc.annotations[i];
    if (roles[a.tier].kind != Role::Kind::utterance) continue;
    const auto& tier = doc.tiers[a.tier];
    Turn t;
    t.begin_ms = a.begin_ms;
    t.end_ms = a.end_ms;
    if (cfg.participant_from == ParticipantFrom::tier_id_prefix) {
      t.participant = unify_detail::id_prefix(tier.tier_id);
    } else {
      t.participant = !tier.participant.empty() ? tier.participant : a.participant_hint;
    }
    if (t.participant.empty()) t.participant = tier.tier_id;
    t.utterance_raw = a.text;
    t.utterance = normalize_utterance_text(a.text, tags);
    if (t.utterance.empty()) t.utterance = std::string(unk_token);
    t.source = source;
    if (a.untimed) t.extra["untimed"] = "1";
    turn_of_annotation[i] = table.turns.size();
    turn_annotation.push_back(i);
    table.turns.push_back(std::move(t));
  }

  for (std::size_t i = 0; i < doc.annotations.size(); ++i) {
    const auto& a = doc.annotations[i];
    const Role& role = roles[a.tier];
    if (role.kind != Role::Kind::translation && role.kind != Role::Kind::extra) continue;
    const std::string column = role.kind == Role::Kind::translation ? "translation" : role.name;
    const std::string value = normalize_utterance_text(a.text, tags);
    if (value.empty()) continue;

    std::optional<std::size_t> target;
    if (a.parent && turn_of_annotation[*a.parent]) {
      const auto& parent = doc.annotations[*a.parent];
      if (parent.begin_ms == a.begin_ms && parent.end_ms == a.end_ms) target = turn_of_annotation[*a.parent];
    }
    if (!target) {
      const auto& tier = doc.tiers[a.tier];
      for (std::size_t k = 0; k < turn_annotation.size() && !target; ++k) {
        const auto& u = doc.annotations[turn_annotation[k]];
        if (u.begin_ms != a.begin_ms || u.end_ms != a.end_ms) continue;
        const auto& utier = doc.tiers[u.tier];
        const bool related = tier.parent_tier ? *tier.parent_tier == utier.tier_id
                                              : (!tier.participant.empty() && tier.participant == utier.participant);
        if (related) target = k;
      }
    }
    if (!target) {
      result.unmatched.push_back({source, doc.tiers[a.tier].tier_id, column, a.begin_ms, a.end_ms, value});
      continue;
    }
    auto& slot = table.turns[*target].extra[column];
    slot = slot.empty() ? value : slot + " / " + value;
  }

  // Order, then number turns in that order so uids follow the table.
  std::vector<std::size_t> order(table.turns.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const Turn& a = table.turns[x];
    const Turn& b = table.turns[y];
    return std::tie(a.begin_ms, a.end_ms, a.participant) < std::tie(b.begin_ms, b.end_ms, b.participant);
  });
  std::vector<Turn> sorted;
  sorted.reserve(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    Turn t = std::move(table.turns[order[k]]);
    t.uid = unify_detail::uid_for(doc.source_id, k + 1, order.size());
    sorted.push_back(std::move(t));
  }
  table.turns = std::move(sorted);
  table.refresh_extra_columns();
  return result;
}

inline CorpusTable unify(const parsers::ParsedDocument& doc, const TierMapConfig& cfg, const TagPolicy& tags) {
  return unify_detailed(doc, cfg, tags).table;
}

/// Concatenates per-document tables into one corpus table.
inline CorpusTable merge_tables(std::vector<CorpusTable> parts, std::string corpus_id, std::string language = {}) {
  CorpusTable merged;
  merged.corpus_id = std::move(corpus_id);
  merged.language = std::move(language);
  std::set<std::string> uids;
  for (auto& part : parts) {
    for (auto& t : part.turns) {
      if (!uids.insert(t.uid).second) throw Error(ErrorCode::schema_mismatch, "duplicate uid " + t.uid + " across inputs");
      merged.turns.push_back(std::move(t));
    }
  }
  merged.sort();
  merged.refresh_extra_columns();
  return merged;
}

}  // namespace turntable
