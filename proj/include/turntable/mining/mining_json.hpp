#pragma once

#include <string>
#include <vector>

#include "turntable/json_util.hpp"
#include "turntable/mining/contexts.hpp"

namespace turntable::mining {

inline Json to_json(const MiningConfig& cfg) {
  Json j;
  j["similarity_threshold"] = cfg.similarity_threshold;
  j["recurrent_min_count"] = cfg.recurrent_min_count;
  j["unique_max_count"] = cfg.unique_max_count;
  j["min_format_length"] = cfg.min_format_length;
  j["max_intervening"] = cfg.max_intervening;
  j["max_gap_ms"] = cfg.max_gap_ms;
  return j;
}

inline Json to_json(const CandidateScore& s) {
  Json j;
  j["normalized_form"] = s.format.normalized_form;
  j["count"] = s.format.count;
  j["example_uids"] = s.format.example_uids;
  j["continuer_contexts"] = s.continuer_contexts;
  j["repair_contexts"] = s.repair_contexts;
  j["continuer_rate"] = s.continuer_rate;
  j["repair_rate"] = s.repair_rate;
  j["label"] = std::string(to_string(s.label));
  return j;
}

inline Json mining_output_json(const MiningConfig& cfg, const std::vector<CandidateScore>& scores,
                               const CandidateRanking& ranking) {
  Json j;
  j["config"] = to_json(cfg);
  Json all = Json::array();
  for (const auto& s : scores) all.push_back(to_json(s));
  j["candidates"] = std::move(all);
  Json top;
  top["continuers"] = Json::array();
  for (const auto& s : ranking.continuers) top["continuers"].push_back(s.format.normalized_form);
  top["repair_initiators"] = Json::array();
  for (const auto& s : ranking.repair_initiators) top["repair_initiators"].push_back(s.format.normalized_form);
  j["ranking"] = std::move(top);
  return j;
}

inline std::string mining_tsv(const std::vector<CandidateScore>& scores) {
  std::string out = "format\tcount\tcontinuer_contexts\trepair_contexts\tlabel\n";
  for (const auto& s : scores) {
    out += s.format.normalized_form + '\t' + std::to_string(s.format.count) + '\t' +
           std::to_string(s.continuer_contexts) + '\t' + std::to_string(s.repair_contexts) + '\t' +
           std::string(to_string(s.label)) + '\n';
  }
  return out;
}

}  // namespace turntable::mining
