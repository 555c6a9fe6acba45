#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "turntable/compare/compare.hpp"
#include "turntable/detail/text.hpp"
#include "turntable/error.hpp"
#include "turntable/json_util.hpp"
#include "turntable/mining/formats.hpp"
#include "turntable/qc/report.hpp"
#include "turntable/unified/types.hpp"

namespace turntable::cli {

// Config file: one JSON object. Key paths
//   tier_map.include, tier_map.roles ([[pattern, role], ...]),
//   tier_map.participant_from, tier_map.top_level_only,
//   tag_policy.canonical_map, tag_policy.bracket_unknown,
//   mining.*, qc.*, compare.*, io.inputs, io.media_dir, io.out
// Missing keys keep their defaults; unknown keys are rejected.
struct IoConfig {
  std::vector<std::string> inputs;
  std::string media_dir;
  std::string out;
};

struct RunConfig {
  TierMapConfig tier_map = default_tier_map();
  TagPolicy tag_policy = default_tag_policy();
  mining::MiningConfig mining;
  qc::ReportOptions qc;
  compare::CompareConfig compare;
  IoConfig io;

  void validate() const {
    tier_map.validate();
    tag_policy.validate();
    mining.validate();
    compare.validate();
    if (qc.fto_bin_ms <= 0 || qc.duration_bin_ms <= 0 || qc.sample_window_ms <= 0)
      throw Error(ErrorCode::invalid_config, "qc bin widths and window must be positive");
  }
};

namespace config_detail {

[[noreturn]] inline void bad(const std::string& what) { throw Error(ErrorCode::invalid_config, what); }

inline void check_keys(const Json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) bad(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) bad("unknown config key " + where + "." + key);
  }
}

template <typename T>
void read(const Json& obj, const char* key, T& target, const std::string& where) {
  if (!obj.contains(key)) return;
  try {
    target = obj.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    bad("bad value for " + where + "." + key);
  }
}

}  // namespace config_detail

inline TierMapConfig tier_map_from_json(const Json& j) {
  using namespace config_detail;
  check_keys(j, {"include", "roles", "participant_from", "top_level_only"}, "tier_map");
  TierMapConfig cfg = default_tier_map();
  read(j, "include", cfg.include_patterns, "tier_map");
  if (j.contains("roles")) {
    const Json& roles = j.at("roles");
    if (!roles.is_array()) bad("tier_map.roles must be a list of [pattern, role] pairs");
    cfg.role_map.clear();
    for (const auto& rule : roles) {
      if (!rule.is_array() || rule.size() != 2 || !rule[0].is_string() || !rule[1].is_string())
        bad("tier_map.roles entries must be [pattern, role]");
      cfg.role_map.emplace_back(rule[0].get<std::string>(), Role::parse(rule[1].get<std::string>()));
    }
  }
  if (j.contains("participant_from")) {
    const std::string v = j.at("participant_from").is_string() ? j.at("participant_from").get<std::string>() : "";
    if (v == "tier_attribute") cfg.participant_from = ParticipantFrom::tier_attribute;
    else if (v == "tier_id_prefix") cfg.participant_from = ParticipantFrom::tier_id_prefix;
    else bad("tier_map.participant_from must be tier_attribute or tier_id_prefix");
  }
  read(j, "top_level_only", cfg.top_level_only, "tier_map");
  return cfg;
}

inline Json to_json(const TierMapConfig& cfg) {
  Json j;
  j["include"] = cfg.include_patterns;
  Json roles = Json::array();
  for (const auto& [pattern, role] : cfg.role_map) roles.push_back(Json::array({pattern, role.str()}));
  j["roles"] = std::move(roles);
  j["participant_from"] = cfg.participant_from == ParticipantFrom::tier_attribute ? "tier_attribute" : "tier_id_prefix";
  j["top_level_only"] = cfg.top_level_only;
  return j;
}

inline Json to_json(const RunConfig& c) {
  Json j;
  j["tier_map"] = to_json(c.tier_map);
  j["tag_policy"] = {{"canonical_map", c.tag_policy.canonical_map}, {"bracket_unknown", c.tag_policy.bracket_unknown}};
  j["mining"] = {{"similarity_threshold", c.mining.similarity_threshold},
                 {"recurrent_min_count", c.mining.recurrent_min_count},
                 {"unique_max_count", c.mining.unique_max_count},
                 {"min_format_length", c.mining.min_format_length},
                 {"max_intervening", c.mining.max_intervening},
                 {"max_gap_ms", c.mining.max_gap_ms}};
  j["qc"] = {{"fto_bin_ms", c.qc.fto_bin_ms},
             {"duration_bin_ms", c.qc.duration_bin_ms},
             {"samples", c.qc.samples},
             {"sample_window_ms", c.qc.sample_window_ms},
             {"seed", c.qc.seed}};
  j["compare"] = {{"bin_width_ms", c.compare.bin_width_ms},
                  {"min_count", c.compare.min_count},
                  {"top_k", c.compare.top_k}};
  j["io"] = {{"inputs", c.io.inputs}, {"media_dir", c.io.media_dir}, {"out", c.io.out}};
  return j;
}

inline RunConfig config_from_json(const Json& j) {
  using namespace config_detail;
  check_keys(j, {"tier_map", "tag_policy", "mining", "qc", "compare", "io"}, "config");
  RunConfig c;
  if (j.contains("tier_map")) c.tier_map = tier_map_from_json(j.at("tier_map"));
  if (j.contains("tag_policy")) {
    const Json& t = j.at("tag_policy");
    check_keys(t, {"canonical_map", "bracket_unknown"}, "tag_policy");
    read(t, "canonical_map", c.tag_policy.canonical_map, "tag_policy");
    read(t, "bracket_unknown", c.tag_policy.bracket_unknown, "tag_policy");
  }
  if (j.contains("mining")) {
    const Json& m = j.at("mining");
    check_keys(m, {"similarity_threshold", "recurrent_min_count", "unique_max_count", "min_format_length",
                   "max_intervening", "max_gap_ms"},
               "mining");
    read(m, "similarity_threshold", c.mining.similarity_threshold, "mining");
    read(m, "recurrent_min_count", c.mining.recurrent_min_count, "mining");
    read(m, "unique_max_count", c.mining.unique_max_count, "mining");
    read(m, "min_format_length", c.mining.min_format_length, "mining");
    read(m, "max_intervening", c.mining.max_intervening, "mining");
    read(m, "max_gap_ms", c.mining.max_gap_ms, "mining");
  }
  if (j.contains("qc")) {
    const Json& q = j.at("qc");
    check_keys(q, {"fto_bin_ms", "duration_bin_ms", "samples", "sample_window_ms", "seed"}, "qc");
    read(q, "fto_bin_ms", c.qc.fto_bin_ms, "qc");
    read(q, "duration_bin_ms", c.qc.duration_bin_ms, "qc");
    read(q, "samples", c.qc.samples, "qc");
    read(q, "sample_window_ms", c.qc.sample_window_ms, "qc");
    read(q, "seed", c.qc.seed, "qc");
  }
  if (j.contains("compare")) {
    const Json& q = j.at("compare");
    check_keys(q, {"bin_width_ms", "min_count", "top_k"}, "compare");
    read(q, "bin_width_ms", c.compare.bin_width_ms, "compare");
    read(q, "min_count", c.compare.min_count, "compare");
    read(q, "top_k", c.compare.top_k, "compare");
  }
  if (j.contains("io")) {
    const Json& q = j.at("io");
    check_keys(q, {"inputs", "media_dir", "out"}, "io");
    read(q, "inputs", c.io.inputs, "io");
    read(q, "media_dir", c.io.media_dir, "io");
    read(q, "out", c.io.out, "io");
  }
  return c;
}

inline Json parse_json_file(const std::filesystem::path& path) {
  const std::string text = detail::read_file(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::invalid_config, path.string() + ": " + e.what());
  }
}

inline RunConfig load_config(const std::filesystem::path& path) { return config_from_json(parse_json_file(path)); }

/// A tier-map file holds either the tier_map object itself or a full
/// config containing one.
inline TierMapConfig load_tier_map(const std::filesystem::path& path) {
  const Json j = parse_json_file(path);
  if (j.is_object() && j.contains("tier_map")) return tier_map_from_json(j.at("tier_map"));
  return tier_map_from_json(j);
}

}  // namespace turntable::cli
