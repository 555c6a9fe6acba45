#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "turntable/qc/common.hpp"
#include "turntable/unified/types.hpp"

namespace turntable::qc {

struct TransitionRecord {
  std::string source;
  std::string prev_uid;
  std::string next_uid;
  std::int64_t fto_ms = 0;  // next.begin - prev.end; negative is overlap
  std::int64_t prev_duration_ms = 0;
  std::int64_t next_duration_ms = 0;
  bool dyadic = false;

  bool operator==(const TransitionRecord&) const = default;
};

inline constexpr std::int64_t dyadic_context_ms = 10000;

/// Speaker changes between onset-adjacent turns of one recording. Untimed
/// turns are skipped. A record is dyadic when exactly two participants have
/// turns overlapping [prev.begin - context, next.end + context].
inline std::vector<TransitionRecord> compute_transitions(const CorpusTable& table,
                                                         std::int64_t context_ms = dyadic_context_ms) {
  std::vector<TransitionRecord> out;
  for (const SourceGroup& group : timed_groups(table)) {
    const auto& turns = group.turns;
    std::int64_t longest = 0;
    for (const Turn* t : turns) longest = std::max(longest, t->duration_ms());

    for (std::size_t k = 1; k < turns.size(); ++k) {
      const Turn& prev = *turns[k - 1];
      const Turn& next = *turns[k];
      if (prev.participant == next.participant) continue;

      const std::int64_t lo = prev.begin_ms - context_ms;
      const std::int64_t hi = next.end_ms + context_ms;
      // Turns are ordered by onset, so nothing starting before lo - longest can reach lo.
      auto it = std::lower_bound(turns.begin(), turns.end(), lo - longest,
                                 [](const Turn* t, std::int64_t v) { return t->begin_ms < v; });
      std::string_view first, second;
      bool crowded = false;
      for (; it != turns.end() && (*it)->begin_ms <= hi; ++it) {
        if ((*it)->end_ms < lo) continue;
        const std::string_view p = (*it)->participant;
        if (first.empty() || p == first) first = p;
        else if (second.empty() || p == second) second = p;
        else {
          crowded = true;
          break;
        }
      }

      TransitionRecord r;
      r.source = std::string(group.source);
      r.prev_uid = prev.uid;
      r.next_uid = next.uid;
      r.fto_ms = next.begin_ms - prev.end_ms;
      r.prev_duration_ms = prev.duration_ms();
      r.next_duration_ms = next.duration_ms();
      r.dyadic = !crowded && !second.empty();
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace turntable::qc
