#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "turntable/unified/types.hpp"

namespace turntable {

using Transliterator = std::function<std::string(std::string_view)>;

inline std::string identity_transliterator(std::string_view s) { return std::string(s); }

/// Romanization hook. The utterance is replaced by f(utterance) and the text
/// it replaced is kept in extra["original_script"]; an existing
/// original_script value is never overwritten, so repeated application keeps
/// the first original.
inline Turn transliterate_hook(Turn turn, const Transliterator& f = identity_transliterator) {
  turn.extra.try_emplace("original_script", turn.utterance);
  turn.utterance = f(turn.utterance);
  return turn;
}

inline CorpusTable transliterate_table(CorpusTable table, const Transliterator& f = identity_transliterator) {
  for (auto& t : table.turns) t = transliterate_hook(std::move(t), f);
  table.refresh_extra_columns();
  return table;
}

}  // namespace turntable
