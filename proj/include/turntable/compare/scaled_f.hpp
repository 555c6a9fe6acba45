#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "turntable/error.hpp"
#include "turntable/unified/tokenize.hpp"
#include "turntable/unified/types.hpp"

namespace turntable::compare {

struct TokenAssociation {
  std::string token;
  std::int64_t count_a = 0;
  std::int64_t count_b = 0;
  double score = 0.0;  // > 0 leans towards corpus A

  bool operator==(const TokenAssociation&) const = default;
};

/// Lowercased token counts, skipping [unk] and other bracketed tags.
inline std::map<std::string, std::int64_t> association_counts(const CorpusTable& table,
                                                              const Segmenter& segmenter = whitespace_segmenter) {
  std::map<std::string, std::int64_t> counts;
  for (const Turn& t : table.turns) {
    for (auto& tok : tokenize(t.utterance, {.lowercase = true}, segmenter)) {
      if (tok.size() >= 2 && tok.front() == '[' && tok.back() == ']') continue;
      ++counts[tok];
    }
  }
  return counts;
}

/// rank / (n + 1) with ascending ranks; tied values share their average rank.
inline std::vector<double> rank_normalize(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) out[order[k]] = avg / static_cast<double>(n + 1);
    i = j + 1;
  }
  return out;
}

namespace scaled_f_detail {

// F for the "own" side: harmonic mean of rank-normalized precision and
// rank-normalized frequency share.
inline std::vector<double> side_f(const std::vector<std::int64_t>& own, const std::vector<std::int64_t>& other,
                                  std::int64_t own_total) {
  std::vector<double> precision(own.size()), share(own.size());
  for (std::size_t i = 0; i < own.size(); ++i) {
    precision[i] = static_cast<double>(own[i]) / static_cast<double>(own[i] + other[i]);
    share[i] = static_cast<double>(own[i]) / static_cast<double>(own_total);
  }
  const auto p = rank_normalize(precision);
  const auto f = rank_normalize(share);
  std::vector<double> out(own.size());
  for (std::size_t i = 0; i < own.size(); ++i) out[i] = 2.0 * p[i] * f[i] / (p[i] + f[i]);
  return out;
}

}  // namespace scaled_f_detail

inline std::vector<TokenAssociation> scaled_f_from_counts(const std::map<std::string, std::int64_t>& a,
                                                          const std::map<std::string, std::int64_t>& b,
                                                          std::int64_t min_count = 5) {
  std::int64_t total_a = 0, total_b = 0;
  for (const auto& [t, c] : a) total_a += c;
  for (const auto& [t, c] : b) total_b += c;
  if (total_a < min_count || total_b < min_count || total_a == 0 || total_b == 0)
    throw Error(ErrorCode::corpus_too_small, "each corpus needs at least " + std::to_string(min_count) + " tokens");

  std::map<std::string, std::pair<std::int64_t, std::int64_t>> joint;
  for (const auto& [t, c] : a) joint[t].first = c;
  for (const auto& [t, c] : b) joint[t].second = c;

  std::vector<TokenAssociation> out;
  std::vector<std::int64_t> ca, cb;
  for (const auto& [t, c] : joint) {
    if (c.first + c.second < min_count) continue;
    out.push_back({t, c.first, c.second, 0.0});
    ca.push_back(c.first);
    cb.push_back(c.second);
  }
  if (out.empty()) return out;
  const auto fa = scaled_f_detail::side_f(ca, cb, total_a);
  const auto fb = scaled_f_detail::side_f(cb, ca, total_b);
  for (std::size_t i = 0; i < out.size(); ++i) out[i].score = fa[i] - fb[i];
  std::stable_sort(out.begin(), out.end(),
                   [](const TokenAssociation& x, const TokenAssociation& y) { return x.score > y.score; });
  return out;
}

inline std::vector<TokenAssociation> scaled_f_score(const CorpusTable& a, const CorpusTable& b, std::int64_t min_count = 5,
                                                    const Segmenter& segmenter = whitespace_segmenter) {
  return scaled_f_from_counts(association_counts(a, segmenter), association_counts(b, segmenter), min_count);
}

}  // namespace turntable::compare
