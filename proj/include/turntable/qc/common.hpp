#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "turntable/unified/types.hpp"

namespace turntable::qc {

/// Timed turns of one recording, in table order.
struct SourceGroup {
  std::string_view source;
  std::vector<const Turn*> turns;
};

inline std::vector<SourceGroup> timed_groups(const CorpusTable& table) {
  std::vector<SourceGroup> groups;
  for (const Turn& t : table.turns) {
    if (t.untimed()) continue;
    if (groups.empty() || groups.back().source != t.source) groups.push_back({t.source, {}});
    groups.back().turns.push_back(&t);
  }
  return groups;
}

}  // namespace turntable::qc
