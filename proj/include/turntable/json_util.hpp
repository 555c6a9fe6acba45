#pragma once

#include <string>

#include <json.hpp>

#include "turntable/histogram.hpp"

namespace turntable {

using Json = nlohmann::ordered_json;

/// Stable text rendering: two-space indent, invalid UTF-8 replaced rather
/// than thrown on, trailing newline.
inline std::string dump_json(const Json& j) {
  return j.dump(2, ' ', false, nlohmann::ordered_json::error_handler_t::replace) + "\n";
}

inline Json to_json(const HistogramSeries& h) {
  Json j;
  j["bin_width_ms"] = h.bin_width_ms;
  j["origin_ms"] = h.origin_ms;
  Json counts = Json::object();
  for (const auto& [bin, c] : h.counts) counts[std::to_string(bin)] = c;
  j["counts"] = std::move(counts);
  return j;
}

}  // namespace turntable
