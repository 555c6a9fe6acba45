#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "turntable/detail/utf8.hpp"
#include "turntable/error.hpp"
#include "turntable/unified/tokenize.hpp"
#include "turntable/unified/types.hpp"

namespace turntable::mining {

struct MiningConfig {
  double similarity_threshold = 0.20;    // near-copy when distance < threshold
  std::int64_t recurrent_min_count = 5;  // a format recurs at this count or more
  std::int64_t unique_max_count = 2;     // a flank is near-unique at this count or less
  std::size_t min_format_length = 1;     // code points
  std::size_t max_intervening = 5;       // turns allowed between a format and a flank
  std::int64_t max_gap_ms = 30000;

  void validate() const {
    if (!(similarity_threshold >= 0.0 && similarity_threshold <= 1.0))
      throw Error(ErrorCode::invalid_config, "similarity threshold must lie in [0, 1]");
    if (recurrent_min_count < 2) throw Error(ErrorCode::invalid_config, "recurrent min count must be at least 2");
    if (unique_max_count < 1) throw Error(ErrorCode::invalid_config, "unique max count must be at least 1");
    if (unique_max_count >= recurrent_min_count)
      throw Error(ErrorCode::invalid_config, "unique max count must be below the recurrent min count");
    if (min_format_length < 1) throw Error(ErrorCode::invalid_config, "min format length must be at least 1");
  }
};

struct TurnFormat {
  std::string normalized_form;
  std::int64_t count = 0;
  std::vector<std::string> example_uids;

  bool operator==(const TurnFormat&) const = default;
};

inline constexpr std::size_t max_example_uids = 5;

/// Lowercased tokens with bracketed tags removed, joined by single spaces.
/// Empty for "[unk]" and for turns consisting only of tags or punctuation.
inline std::string normalized_form(std::string_view utterance) {
  std::string form;
  for (const auto& tok : tokenize(utterance, {.lowercase = true})) {
    if (tok.size() >= 2 && tok.front() == '[' && tok.back() == ']') continue;
    if (!form.empty()) form.push_back(' ');
    form += tok;
  }
  return form;
}

inline std::vector<std::string> normalized_forms(const CorpusTable& table) {
  std::vector<std::string> forms;
  forms.reserve(table.turns.size());
  for (const Turn& t : table.turns) forms.push_back(normalized_form(t.utterance));
  return forms;
}

inline std::map<std::string, std::int64_t> form_counts(const std::vector<std::string>& forms) {
  std::map<std::string, std::int64_t> counts;
  for (const auto& f : forms)
    if (!f.empty()) ++counts[f];
  return counts;
}

/// Formats occurring at least recurrent_min_count times, most frequent
/// first (ties alphabetical).
inline std::vector<TurnFormat> recurrent_formats(const CorpusTable& table, const MiningConfig& cfg) {
  cfg.validate();
  const auto forms = normalized_forms(table);
  const auto counts = form_counts(forms);
  std::vector<TurnFormat> out;
  for (const auto& [form, count] : counts) {
    if (count < cfg.recurrent_min_count) continue;
    if (detail::count_code_points(form) < cfg.min_format_length) continue;
    out.push_back({form, count, {}});
  }
  std::stable_sort(out.begin(), out.end(), [](const TurnFormat& a, const TurnFormat& b) { return a.count > b.count; });
  for (auto& f : out) {
    for (std::size_t i = 0; i < forms.size() && f.example_uids.size() < max_example_uids; ++i)
      if (forms[i] == f.normalized_form) f.example_uids.push_back(table.turns[i].uid);
  }
  return out;
}

}  // namespace turntable::mining
