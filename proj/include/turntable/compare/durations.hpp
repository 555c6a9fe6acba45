#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "turntable/detail/utf8.hpp"
#include "turntable/error.hpp"
#include "turntable/histogram.hpp"
#include "turntable/unified/tokenize.hpp"
#include "turntable/unified/types.hpp"

namespace turntable::compare {

struct DurationDistribution {
  std::int64_t n = 0;
  double mean_ms = 0.0;
  double sd_ms = 0.0;
  bool sd_defined = false;  // false when n == 1
  double median_ms = 0.0;
  std::int64_t modal_ms = 0;
  HistogramSeries histogram;
  double mean_words = 0.0;
  double mean_chars = 0.0;
};

/// Centre of the most populated bin; the lowest such bin wins ties.
inline std::int64_t modal_center(const HistogramSeries& h) {
  std::int64_t best_bin = 0, best = -1;
  for (const auto& [bin, c] : h.counts) {
    if (c > best) {
      best = c;
      best_bin = bin;
    }
  }
  return h.bin_start(best_bin) + h.bin_width_ms / 2;
}

/// Untimed turns carry no duration and are left out.
inline DurationDistribution duration_distribution(const CorpusTable& table, std::int64_t bin_width_ms = 100,
                                                  const Segmenter& segmenter = whitespace_segmenter) {
  if (bin_width_ms <= 0) throw Error(ErrorCode::invalid_config, "bin width must be positive");
  std::vector<std::int64_t> durations;
  double words = 0, chars = 0;
  for (const Turn& t : table.turns) {
    if (t.untimed()) continue;
    durations.push_back(t.duration_ms());
    words += static_cast<double>(tokenize(t.utterance, {}, segmenter).size());
    chars += static_cast<double>(detail::count_code_points(t.utterance));
  }
  if (durations.empty()) throw Error(ErrorCode::empty_table, "corpus " + table.corpus_id + " has no timed turns");

  DurationDistribution d;
  d.n = static_cast<std::int64_t>(durations.size());
  const double n = static_cast<double>(d.n);
  double sum = 0;
  for (const auto v : durations) sum += static_cast<double>(v);
  d.mean_ms = sum / n;
  if (d.n > 1) {
    double ss = 0;
    for (const auto v : durations) ss += (static_cast<double>(v) - d.mean_ms) * (static_cast<double>(v) - d.mean_ms);
    d.sd_ms = std::sqrt(ss / (n - 1));
    d.sd_defined = true;
  }
  d.histogram = make_histogram(durations, bin_width_ms, 0);
  std::sort(durations.begin(), durations.end());
  const std::size_t mid = durations.size() / 2;
  d.median_ms = durations.size() % 2 ? static_cast<double>(durations[mid])
                                     : (static_cast<double>(durations[mid - 1]) + static_cast<double>(durations[mid])) / 2;
  d.modal_ms = modal_center(d.histogram);
  d.mean_words = words / n;
  d.mean_chars = chars / n;
  return d;
}

/// Sum over bins of min(p_i, q_i) with both histograms normalized to 1.
/// Evaluated as one integer ratio so identical shapes give exactly 1.
inline double overlap_coefficient(const HistogramSeries& a, const HistogramSeries& b) {
  if (a.bin_width_ms != b.bin_width_ms || a.origin_ms != b.origin_ms)
    throw Error(ErrorCode::invalid_config, "histograms use different bins");
  const std::int64_t na = a.total(), nb = b.total();
  if (na == 0 || nb == 0) return 0.0;
  std::int64_t shared = 0;
  for (const auto& [bin, ca] : a.counts) {
    const auto it = b.counts.find(bin);
    if (it != b.counts.end()) shared += std::min(ca * nb, it->second * na);
  }
  if (shared == na * nb) return 1.0;
  return static_cast<double>(shared) / (static_cast<double>(na) * static_cast<double>(nb));
}

}  // namespace turntable::compare
