#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "turntable/error.hpp"
#include "turntable/qc/common.hpp"
#include "turntable/unified/types.hpp"

namespace turntable::qc {

/// Length of the union of [begin, end) intervals, per recording, summed.
inline std::int64_t annotated_union_ms(const CorpusTable& table) {
  std::int64_t total = 0;
  for (const SourceGroup& group : timed_groups(table)) {
    std::vector<std::pair<std::int64_t, std::int64_t>> spans;
    spans.reserve(group.turns.size());
    for (const Turn* t : group.turns)
      if (t->end_ms > t->begin_ms) spans.emplace_back(t->begin_ms, t->end_ms);
    std::sort(spans.begin(), spans.end());
    std::int64_t cur_begin = 0, cur_end = 0;
    bool open = false;
    for (const auto& [b, e] : spans) {
      if (open && b <= cur_end) {
        cur_end = std::max(cur_end, e);
        continue;
      }
      if (open) total += cur_end - cur_begin;
      cur_begin = b;
      cur_end = e;
      open = true;
    }
    if (open) total += cur_end - cur_begin;
  }
  return total;
}

struct AnnotationDensity {
  double density = 0.0;  // clamped to [0, 1]
  double raw_ratio = 0.0;
  bool over_density = false;
  double turns_per_minute = 0.0;
  std::int64_t annotated_ms = 0;
};

inline AnnotationDensity annotation_density(const CorpusTable& table, std::int64_t recording_ms) {
  if (recording_ms <= 0) throw Error(ErrorCode::zero_recording, "recording length must be positive");
  AnnotationDensity d;
  d.annotated_ms = annotated_union_ms(table);
  d.raw_ratio = static_cast<double>(d.annotated_ms) / static_cast<double>(recording_ms);
  d.over_density = d.raw_ratio > 1.0;
  d.density = std::clamp(d.raw_ratio, 0.0, 1.0);
  d.turns_per_minute = static_cast<double>(table.turns.size()) / (static_cast<double>(recording_ms) / 60000.0);
  return d;
}

}  // namespace turntable::qc
