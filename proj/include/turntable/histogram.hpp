#pragma once

#include <cstdint>
#include <map>
#include <span>

namespace turntable {

/// Fixed-width histogram over integer milliseconds. Bin k covers
/// [origin_ms + k * bin_width_ms, origin_ms + (k + 1) * bin_width_ms).
struct HistogramSeries {
  std::int64_t bin_width_ms = 50;
  std::int64_t origin_ms = 0;
  std::map<std::int64_t, std::int64_t> counts;

  std::int64_t bin_of(std::int64_t value) const noexcept {
    const std::int64_t offset = value - origin_ms;
    // floor division for negative offsets
    std::int64_t q = offset / bin_width_ms;
    if (offset % bin_width_ms != 0 && offset < 0) --q;
    return q;
  }

  std::int64_t bin_start(std::int64_t bin) const noexcept { return origin_ms + bin * bin_width_ms; }

  double bin_center(std::int64_t bin) const noexcept {
    return static_cast<double>(bin_start(bin)) + static_cast<double>(bin_width_ms) / 2.0;
  }

  void add(std::int64_t value) { ++counts[bin_of(value)]; }

  std::int64_t total() const noexcept {
    std::int64_t n = 0;
    for (const auto& [bin, c] : counts) n += c;
    return n;
  }

  bool operator==(const HistogramSeries&) const = default;
};

inline HistogramSeries make_histogram(std::span<const std::int64_t> values, std::int64_t bin_width_ms,
                                      std::int64_t origin_ms = 0) {
  HistogramSeries h{bin_width_ms, origin_ms, {}};
  for (const std::int64_t v : values) h.add(v);
  return h;
}

/// Histogram centred on zero: bin 0 covers [-w/2, w/2).
inline HistogramSeries make_centered_histogram(std::span<const std::int64_t> values, std::int64_t bin_width_ms) {
  return make_histogram(values, bin_width_ms, -(bin_width_ms / 2));
}

}  // namespace turntable
