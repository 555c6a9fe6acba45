#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "turntable/qc/common.hpp"
#include "turntable/rng.hpp"
#include "turntable/unified/types.hpp"

namespace turntable::qc {

struct DyadicSample {
  std::string source;
  std::int64_t start_ms = 0;
  std::int64_t end_ms = 0;
  std::array<std::string, 2> participants;
  std::vector<Turn> turns;

  bool operator==(const DyadicSample&) const = default;
};

struct SampleSet {
  std::vector<DyadicSample> samples;
  bool shortfall = false;
  std::size_t candidates = 0;
};

namespace sampling_detail {

inline bool in_window(const Turn& t, std::int64_t lo, std::int64_t hi) {
  return t.begin_ms < hi && (t.end_ms > lo || t.begin_ms >= lo);
}

}  // namespace sampling_detail

/// All windows [onset, onset + window_ms) starting at a turn onset in which
/// exactly two participants speak and at least two turns fall.
inline std::vector<DyadicSample> dyadic_candidates(const CorpusTable& table, std::int64_t window_ms = 10000) {
  std::vector<DyadicSample> out;
  for (const SourceGroup& group : timed_groups(table)) {
    const auto& turns = group.turns;
    std::int64_t longest = 0;
    for (const Turn* t : turns) longest = std::max(longest, t->duration_ms());
    std::int64_t last_start = INT64_MIN;
    for (const Turn* anchor : turns) {
      const std::int64_t lo = anchor->begin_ms;
      if (lo == last_start) continue;
      last_start = lo;
      const std::int64_t hi = lo + window_ms;
      auto it = std::lower_bound(turns.begin(), turns.end(), lo - longest,
                                 [](const Turn* t, std::int64_t v) { return t->begin_ms < v; });
      DyadicSample s;
      s.source = std::string(group.source);
      s.start_ms = lo;
      s.end_ms = hi;
      bool crowded = false;
      for (; it != turns.end() && (*it)->begin_ms < hi; ++it) {
        const Turn& t = **it;
        if (!sampling_detail::in_window(t, lo, hi)) continue;
        auto& [p0, p1] = s.participants;
        if (p0.empty() || p0 == t.participant) p0 = t.participant;
        else if (p1.empty() || p1 == t.participant) p1 = t.participant;
        else {
          crowded = true;
          break;
        }
        s.turns.push_back(t);
      }
      if (crowded || s.participants[1].empty() || s.turns.size() < 2) continue;
      std::sort(s.participants.begin(), s.participants.end());
      out.push_back(std::move(s));
    }
  }
  return out;
}

/// Draws n candidate windows without replacement (partial Fisher-Yates over
/// the candidate list driven by Lcg64(seed)). Fewer candidates than n
/// returns all of them with `shortfall` set.
inline SampleSet sample_dyadic_stretches(const CorpusTable& table, std::size_t n = 3, std::int64_t window_ms = 10000,
                                         std::uint64_t seed = 1) {
  std::vector<DyadicSample> pool = dyadic_candidates(table, window_ms);
  SampleSet result;
  result.candidates = pool.size();
  result.shortfall = pool.size() < n;
  const std::size_t take = std::min(n, pool.size());
  Lcg64 rng(seed);
  for (std::size_t i = 0; i < take; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
    std::swap(pool[i], pool[j]);
    result.samples.push_back(pool[i]);
  }
  return result;
}

}  // namespace turntable::qc
