#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "turntable/error.hpp"
#include "turntable/histogram.hpp"
#include "turntable/qc/density.hpp"
#include "turntable/qc/rank_frequency.hpp"
#include "turntable/qc/sampling.hpp"
#include "turntable/qc/sources.hpp"
#include "turntable/qc/transitions.hpp"
#include "turntable/unified/tokenize.hpp"
#include "turntable/unified/types.hpp"

namespace turntable::qc {

struct ReportOptions {
  std::int64_t fto_bin_ms = 50;
  std::int64_t duration_bin_ms = 100;
  std::size_t samples = 3;
  std::int64_t sample_window_ms = 10000;
  std::uint64_t seed = 1;
};

struct FtoDuration {
  std::int64_t fto_ms = 0;
  std::int64_t duration_ms = 0;

  bool operator==(const FtoDuration&) const = default;
};

struct AssessmentReport {
  std::string corpus_id;
  std::int64_t n_turns = 0;
  std::int64_t total_annotated_ms = 0;
  std::int64_t recording_ms = 0;
  bool recording_estimated = false;
  double density = 0.0;
  bool over_density = false;
  double turns_per_minute = 0.0;
  std::int64_t n_unk = 0;
  std::int64_t n_untimed = 0;
  std::int64_t n_transitions = 0;
  std::int64_t n_dyadic_transitions = 0;
  HistogramSeries transition_histogram;  // dyadic FTO, bins centred on 0
  HistogramSeries duration_histogram;    // turn durations from 0
  std::vector<FtoDuration> duration_vs_fto;  // incoming turn's duration
  std::vector<RankedToken> rank_frequency;
  std::optional<double> zipf_slope;
  std::optional<double> zipf_r_squared;
  std::vector<DyadicSample> samples;
  bool sample_shortfall = false;
  std::map<std::string, SourceCheck> source_check;
};

/// Sum over recordings of the media duration when known, else the latest
/// turn end in that recording. The flag reports whether any was estimated.
inline std::pair<std::int64_t, bool> recording_length(const CorpusTable& table,
                                                      const std::map<std::string, SourceCheck>& sources) {
  std::map<std::string, std::int64_t> max_end;
  for (const Turn& t : table.turns) {
    auto [it, inserted] = max_end.emplace(t.source, t.end_ms);
    if (!inserted) it->second = std::max(it->second, t.end_ms);
  }
  std::int64_t total = 0;
  bool estimated = false;
  for (const auto& [source, end] : max_end) {
    const auto it = sources.find(source);
    if (it != sources.end() && it->second.duration_ms) {
      total += *it->second.duration_ms;
    } else {
      total += end;
      estimated = true;
    }
  }
  return {total, estimated};
}

inline AssessmentReport build_report(const CorpusTable& table, const std::map<std::string, SourceCheck>& sources,
                                     const ReportOptions& opts = {}, const Segmenter& segmenter = whitespace_segmenter) {
  if (table.turns.empty()) throw Error(ErrorCode::empty_table, "corpus " + table.corpus_id + " has no turns");

  AssessmentReport r;
  r.corpus_id = table.corpus_id;
  r.n_turns = static_cast<std::int64_t>(table.turns.size());
  for (const Turn& t : table.turns) {
    r.n_unk += t.utterance == unk_token;
    r.n_untimed += t.untimed();
  }

  std::tie(r.recording_ms, r.recording_estimated) = recording_length(table, sources);
  r.total_annotated_ms = annotated_union_ms(table);
  if (r.recording_ms > 0) {
    const AnnotationDensity d = annotation_density(table, r.recording_ms);
    r.density = d.density;
    r.over_density = d.over_density;
    r.turns_per_minute = d.turns_per_minute;
  }

  const auto transitions = compute_transitions(table);
  r.n_transitions = static_cast<std::int64_t>(transitions.size());
  std::vector<std::int64_t> ftos;
  for (const auto& tr : transitions) {
    if (!tr.dyadic) continue;
    ftos.push_back(tr.fto_ms);
    r.duration_vs_fto.push_back({tr.fto_ms, tr.next_duration_ms});
  }
  r.n_dyadic_transitions = static_cast<std::int64_t>(ftos.size());
  r.transition_histogram = make_centered_histogram(ftos, opts.fto_bin_ms);

  std::vector<std::int64_t> durations;
  for (const Turn& t : table.turns)
    if (!t.untimed()) durations.push_back(t.duration_ms());
  r.duration_histogram = make_histogram(durations, opts.duration_bin_ms, 0);

  const auto counts = count_tokens(table, segmenter);
  if (counts.size() >= 2) {
    RankFrequency rf = rank_counts(counts);
    r.rank_frequency = std::move(rf.series);
    r.zipf_slope = rf.zipf_slope;
    r.zipf_r_squared = rf.r_squared;
  } else {
    for (const auto& [tok, c] : counts) r.rank_frequency.push_back({1, tok, c});
  }

  SampleSet samples = sample_dyadic_stretches(table, opts.samples, opts.sample_window_ms, opts.seed);
  r.samples = std::move(samples.samples);
  r.sample_shortfall = samples.shortfall;
  r.source_check = sources;
  for (const Turn& t : table.turns) r.source_check.try_emplace(t.source);
  return r;
}

}  // namespace turntable::qc
