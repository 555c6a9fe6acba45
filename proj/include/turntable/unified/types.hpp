#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "turntable/error.hpp"

namespace turntable {

/// One participant turn: a row of the unified table.
struct Turn {
  std::string uid;
  std::int64_t begin_ms = 0;
  std::int64_t end_ms = 0;
  std::string participant;
  std::string utterance;
  std::string utterance_raw;
  std::string source;
  std::map<std::string, std::string> extra;

  bool untimed() const {
    const auto it = extra.find("untimed");
    return it != extra.end() && it->second == "1";
  }
  std::int64_t duration_ms() const noexcept { return end_ms - begin_ms; }

  bool operator==(const Turn&) const = default;
};

inline constexpr std::string_view unk_token = "[unk]";

/// Table order: source, begin, end, participant, then uid.
inline bool turn_order(const Turn& a, const Turn& b) {
  return std::tie(a.source, a.begin_ms, a.end_ms, a.participant, a.uid) <
         std::tie(b.source, b.begin_ms, b.end_ms, b.participant, b.uid);
}

struct CorpusTable {
  std::string corpus_id;
  std::string language;
  std::vector<Turn> turns;
  std::vector<std::string> extra_columns;

  void sort() { std::stable_sort(turns.begin(), turns.end(), turn_order); }

  /// Recomputes extra_columns as the sorted union of extra keys.
  void refresh_extra_columns() {
    std::set<std::string> names;
    for (const auto& t : turns)
      for (const auto& [k, v] : t.extra) names.insert(k);
    extra_columns.assign(names.begin(), names.end());
  }

  bool operator==(const CorpusTable&) const = default;
};

/// Checks Turn and CorpusTable invariants; throws std::logic_error.
inline void check_invariants(const CorpusTable& table) {
  std::set<std::string_view> uids;
  for (std::size_t i = 0; i < table.turns.size(); ++i) {
    const Turn& t = table.turns[i];
    if (t.begin_ms < 0 || t.begin_ms > t.end_ms) throw std::logic_error("turn " + t.uid + " has an invalid span");
    if (t.participant.empty()) throw std::logic_error("turn " + t.uid + " has no participant");
    if (t.utterance.empty()) throw std::logic_error("turn " + t.uid + " has an empty utterance");
    if (!uids.insert(t.uid).second) throw std::logic_error("duplicate uid " + t.uid);
    if (i > 0 && turn_order(t, table.turns[i - 1])) throw std::logic_error("turns out of order at " + t.uid);
  }
}

struct Role {
  enum class Kind { utterance, translation, ignore, extra };
  Kind kind = Kind::ignore;
  std::string name;  // column name for Kind::extra

  static Role parse(std::string_view text) {
    if (text == "utterance") return {Kind::utterance, {}};
    if (text == "translation") return {Kind::translation, {}};
    if (text == "ignore") return {Kind::ignore, {}};
    if (text.substr(0, 6) == "extra:" && text.size() > 6) return {Kind::extra, std::string(text.substr(6))};
    throw Error(ErrorCode::invalid_config, "unknown tier role '" + std::string(text) + "'");
  }

  std::string str() const {
    switch (kind) {
      case Kind::utterance: return "utterance";
      case Kind::translation: return "translation";
      case Kind::ignore: return "ignore";
      case Kind::extra: return "extra:" + name;
    }
    return "ignore";
  }

  bool operator==(const Role&) const = default;
};

enum class ParticipantFrom { tier_attribute, tier_id_prefix };

/// Selects which tiers carry turns. Patterns are globs (`*`, `?`) tested
/// against both tier_id and tier category; the first matching role rule wins
/// and tiers matching no rule are ignored.
struct TierMapConfig {
  std::vector<std::string> include_patterns{"*"};
  std::vector<std::pair<std::string, Role>> role_map;
  ParticipantFrom participant_from = ParticipantFrom::tier_attribute;
  // Dependent tiers (a parent tier, or per-annotation parents as in CHAT)
  // that resolve to `utterance` are demoted to an extra column.
  bool top_level_only = true;

  void validate() const {
    const bool has_utterance = std::any_of(role_map.begin(), role_map.end(), [](const auto& rule) {
      return rule.second.kind == Role::Kind::utterance;
    });
    if (!has_utterance) throw Error(ErrorCode::invalid_config, "tier map has no utterance rule");
  }
};

inline TierMapConfig default_tier_map() {
  TierMapConfig cfg;
  cfg.role_map = {
      {"%eng", Role{Role::Kind::translation, {}}},
      {"%tra", Role{Role::Kind::translation, {}}},
      {"%xtra", Role{Role::Kind::translation, {}}},
      {"*", Role{Role::Kind::utterance, {}}},
  };
  return cfg;
}

/// Canonical forms for non-verbal markers. Values are bracketed lowercase
/// ASCII tokens such as "[laugh]".
struct TagPolicy {
  std::map<std::string, std::string> canonical_map;
  bool bracket_unknown = true;

  void validate() const {
    for (const auto& [raw, canon] : canonical_map) {
      const bool ok = canon.size() >= 3 && canon.front() == '[' && canon.back() == ']' &&
                      std::all_of(canon.begin() + 1, canon.end() - 1, [](char c) {
                        return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
                      });
      if (!ok) throw Error(ErrorCode::invalid_config, "canonical tag '" + canon + "' is not a bracketed lowercase token");
      if (raw.empty()) throw Error(ErrorCode::invalid_config, "empty raw tag");
    }
  }
};

inline TagPolicy default_tag_policy() {
  TagPolicy p;
  p.canonical_map = {
      {"((laughs))", "[laugh]"},   {"((laughter))", "[laugh]"}, {"((laughing))", "[laugh]"},
      {"&=laughs", "[laugh]"},     {"&=laugh", "[laugh]"},      {"<laugh>", "[laugh]"},
      {"((breath))", "[breath]"},  {"((breathes))", "[breath]"}, {"&=breathes", "[breath]"},
      {"((coughs))", "[cough]"},   {"((cough))", "[cough]"},    {"&=coughs", "[cough]"},
      {"((sighs))", "[sigh]"},     {"&=sighs", "[sigh]"},       {"xxx", "[unk]"},
  };
  return p;
}

}  // namespace turntable
