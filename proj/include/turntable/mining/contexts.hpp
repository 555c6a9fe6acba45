#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "turntable/mining/formats.hpp"
#include "turntable/mining/levenshtein.hpp"
#include "turntable/unified/types.hpp"

namespace turntable::mining {

enum class CandidateLabel { continuer, repair_initiator, ambiguous };

constexpr std::string_view to_string(CandidateLabel l) noexcept {
  switch (l) {
    case CandidateLabel::continuer: return "continuer";
    case CandidateLabel::repair_initiator: return "repair_initiator";
    case CandidateLabel::ambiguous: return "ambiguous";
  }
  return "ambiguous";
}

struct CandidateScore {
  TurnFormat format;
  std::int64_t continuer_contexts = 0;
  std::int64_t repair_contexts = 0;
  double continuer_rate = 0.0;
  double repair_rate = 0.0;
  CandidateLabel label = CandidateLabel::ambiguous;

  bool operator==(const CandidateScore&) const = default;
};

/// The flanking pair around one occurrence: the nearest earlier turn by
/// another participant (t1) and the nearest later turn by that same
/// participant (t3), each within the intervening-turn and gap bounds.
struct Flanks {
  std::size_t before = 0;
  std::size_t after = 0;
};

inline std::optional<Flanks> find_flanks(const CorpusTable& table, std::size_t at, const MiningConfig& cfg) {
  const auto& turns = table.turns;
  const Turn& mid = turns[at];
  std::optional<std::size_t> before;
  for (std::size_t step = 1; step <= cfg.max_intervening + 1 && step <= at; ++step) {
    const Turn& t = turns[at - step];
    if (t.source != mid.source) break;
    if (t.participant != mid.participant) {
      before = at - step;
      break;
    }
  }
  if (!before || mid.begin_ms - turns[*before].end_ms > cfg.max_gap_ms) return std::nullopt;

  const std::string& other = turns[*before].participant;
  for (std::size_t step = 1; step <= cfg.max_intervening + 1 && at + step < turns.size(); ++step) {
    const Turn& t = turns[at + step];
    if (t.source != mid.source) break;
    if (t.participant == other) {
      if (t.begin_ms - mid.end_ms > cfg.max_gap_ms) return std::nullopt;
      return Flanks{*before, at + step};
    }
  }
  return std::nullopt;
}

inline CandidateLabel label_for(double continuer_rate, double repair_rate) {
  if (continuer_rate > 0 && continuer_rate >= 2 * repair_rate) return CandidateLabel::continuer;
  if (repair_rate > 0 && repair_rate >= 2 * continuer_rate) return CandidateLabel::repair_initiator;
  return CandidateLabel::ambiguous;
}

/// Scores every occurrence of each recurrent format by its sequential
/// context. With both flanks near-unique, a near-copy (distance below the
/// threshold) across the format marks a repair context; otherwise it is a
/// continuer context. Occurrences without qualifying flanks count for
/// neither.
inline std::vector<CandidateScore> classify_contexts(const CorpusTable& table, const std::vector<TurnFormat>& formats,
                                                     const MiningConfig& cfg) {
  cfg.validate();
  const auto forms = normalized_forms(table);
  const auto counts = form_counts(forms);
  const auto near_unique = [&](std::size_t i) {
    if (forms[i].empty()) return false;
    return counts.at(forms[i]) <= cfg.unique_max_count;
  };

  std::map<std::string_view, std::size_t> index;
  std::vector<CandidateScore> scores;
  scores.reserve(formats.size());
  for (const auto& f : formats) {
    index.emplace(f.normalized_form, scores.size());
    scores.push_back(CandidateScore{f, 0, 0, 0.0, 0.0, CandidateLabel::ambiguous});
  }

  for (std::size_t i = 0; i < forms.size(); ++i) {
    const auto hit = index.find(forms[i]);
    if (hit == index.end()) continue;
    const auto flanks = find_flanks(table, i, cfg);
    if (!flanks || !near_unique(flanks->before) || !near_unique(flanks->after)) continue;
    const double d = normalized_levenshtein(forms[flanks->before], forms[flanks->after]);
    auto& s = scores[hit->second];
    if (d < cfg.similarity_threshold) ++s.repair_contexts;
    else ++s.continuer_contexts;
  }

  for (auto& s : scores) {
    const double n = static_cast<double>(std::max<std::int64_t>(s.format.count, 1));
    s.continuer_rate = static_cast<double>(s.continuer_contexts) / n;
    s.repair_rate = static_cast<double>(s.repair_contexts) / n;
    s.label = label_for(s.continuer_rate, s.repair_rate);
  }
  return scores;
}

struct CandidateRanking {
  std::vector<CandidateScore> continuers;
  std::vector<CandidateScore> repair_initiators;
};

/// Splits by label and orders each list by its own context count
/// (descending, ties alphabetical), keeping the first top_n.
inline CandidateRanking rank_candidates(const std::vector<CandidateScore>& scores, std::size_t top_n) {
  CandidateRanking out;
  for (const auto& s : scores) {
    if (s.label == CandidateLabel::continuer) out.continuers.push_back(s);
    else if (s.label == CandidateLabel::repair_initiator) out.repair_initiators.push_back(s);
  }
  const auto order = [](auto key) {
    return [key](const CandidateScore& a, const CandidateScore& b) {
      if (key(a) != key(b)) return key(a) > key(b);
      return a.format.normalized_form < b.format.normalized_form;
    };
  };
  std::sort(out.continuers.begin(), out.continuers.end(), order([](const CandidateScore& s) { return s.continuer_contexts; }));
  std::sort(out.repair_initiators.begin(), out.repair_initiators.end(),
            order([](const CandidateScore& s) { return s.repair_contexts; }));
  if (out.continuers.size() > top_n) out.continuers.resize(top_n);
  if (out.repair_initiators.size() > top_n) out.repair_initiators.resize(top_n);
  return out;
}

}  // namespace turntable::mining
