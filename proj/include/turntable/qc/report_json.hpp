#pragma once

#include "turntable/json_util.hpp"
#include "turntable/qc/report.hpp"

namespace turntable::qc {

inline Json to_json(const DyadicSample& s) {
  Json j;
  j["source"] = s.source;
  j["start_ms"] = s.start_ms;
  j["end_ms"] = s.end_ms;
  j["participants"] = {s.participants[0], s.participants[1]};
  j["turns"] = Json::array();
  for (const Turn& t : s.turns) {
    j["turns"].push_back(
        {{"uid", t.uid}, {"begin_ms", t.begin_ms}, {"end_ms", t.end_ms}, {"participant", t.participant}, {"utterance", t.utterance}});
  }
  return j;
}

/// Report keys mirror AssessmentReport field names.
inline Json to_json(const AssessmentReport& r) {
  const auto opt = [](const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); };
  Json j;
  j["corpus_id"] = r.corpus_id;
  j["n_turns"] = r.n_turns;
  j["total_annotated_ms"] = r.total_annotated_ms;
  j["recording_ms"] = r.recording_ms;
  j["recording_estimated"] = r.recording_estimated;
  j["density"] = r.density;
  j["over_density"] = r.over_density;
  j["turns_per_minute"] = r.turns_per_minute;
  j["n_unk"] = r.n_unk;
  j["n_untimed"] = r.n_untimed;
  j["n_transitions"] = r.n_transitions;
  j["n_dyadic_transitions"] = r.n_dyadic_transitions;
  j["transition_histogram"] = turntable::to_json(r.transition_histogram);
  j["duration_histogram"] = turntable::to_json(r.duration_histogram);
  j["duration_vs_fto"] = Json::array();
  for (const auto& p : r.duration_vs_fto) j["duration_vs_fto"].push_back({p.fto_ms, p.duration_ms});
  j["rank_frequency"] = Json::array();
  for (const auto& t : r.rank_frequency) j["rank_frequency"].push_back({t.rank, t.token, t.count});
  j["zipf_slope"] = opt(r.zipf_slope);
  j["zipf_r_squared"] = opt(r.zipf_r_squared);
  j["samples"] = Json::array();
  for (const auto& s : r.samples) j["samples"].push_back(to_json(s));
  j["sample_shortfall"] = r.sample_shortfall;
  j["source_check"] = Json::object();
  for (const auto& [source, check] : r.source_check) {
    j["source_check"][source] = {{"found", check.found},
                                 {"duration_ms", check.duration_ms ? Json(*check.duration_ms) : Json(nullptr)},
                                 {"path", check.path}};
  }
  return j;
}

}  // namespace turntable::qc
