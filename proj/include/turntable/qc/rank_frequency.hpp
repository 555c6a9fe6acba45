#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "turntable/error.hpp"
#include "turntable/unified/tokenize.hpp"
#include "turntable/unified/types.hpp"

namespace turntable::qc {

struct RankedToken {
  std::int64_t rank = 0;
  std::string token;
  std::int64_t count = 0;

  bool operator==(const RankedToken&) const = default;
};

struct RankFrequency {
  std::vector<RankedToken> series;
  double zipf_slope = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares of y on x; returns {slope, r^2}. A flat response
/// fits perfectly (r^2 = 1).
inline std::pair<double, double> ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  const double slope = sxx > 0 ? sxy / sxx : 0.0;
  const double r2 = syy > 0 && sxx > 0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return {slope, r2};
}

/// Ranks counted tokens by descending count (ties alphabetical) and fits
/// log10(count) against log10(rank) over all ranks.
inline RankFrequency rank_counts(const std::map<std::string, std::int64_t>& counts) {
  if (counts.size() < 2) throw Error(ErrorCode::too_few_tokens, "need at least two distinct tokens");
  RankFrequency rf;
  for (const auto& [token, count] : counts) rf.series.push_back({0, token, count});
  std::stable_sort(rf.series.begin(), rf.series.end(),
                   [](const RankedToken& a, const RankedToken& b) { return a.count > b.count; });
  std::vector<double> x, y;
  for (std::size_t i = 0; i < rf.series.size(); ++i) {
    rf.series[i].rank = static_cast<std::int64_t>(i + 1);
    x.push_back(std::log10(static_cast<double>(i + 1)));
    y.push_back(std::log10(static_cast<double>(rf.series[i].count)));
  }
  std::tie(rf.zipf_slope, rf.r_squared) = ols_slope(x, y);
  return rf;
}

inline std::map<std::string, std::int64_t> count_tokens(const CorpusTable& table,
                                                        const Segmenter& segmenter = whitespace_segmenter) {
  std::map<std::string, std::int64_t> counts;
  for (const Turn& t : table.turns) {
    if (t.utterance == unk_token) continue;
    for (auto& tok : tokenize(t.utterance, {.lowercase = true}, segmenter))
      if (tok != unk_token) ++counts[tok];
  }
  return counts;
}

inline RankFrequency rank_frequency(const CorpusTable& table, const Segmenter& segmenter = whitespace_segmenter) {
  return rank_counts(count_tokens(table, segmenter));
}

}  // namespace turntable::qc
