#pragma once

#include <algorithm>
#include <cstddef>
#include <string_view>
#include <vector>

#include "turntable/detail/utf8.hpp"

namespace turntable::mining {

/// Unit-cost edit distance (insert, delete, substitute) over code points.
inline std::size_t edit_distance(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({up + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

/// Edit distance divided by the longer length, in [0, 1]; 0 for two empty
/// strings. Lengths count Unicode scalar values, not bytes.
inline double normalized_levenshtein(std::string_view a, std::string_view b) {
  const std::u32string ca = detail::decode_utf8(a);
  const std::u32string cb = detail::decode_utf8(b);
  const std::size_t longest = std::max(ca.size(), cb.size());
  if (longest == 0) return 0.0;
  return static_cast<double>(edit_distance(ca, cb)) / static_cast<double>(longest);
}

}  // namespace turntable::mining
