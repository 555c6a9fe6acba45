#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "turntable/compare/durations.hpp"
#include "turntable/compare/scaled_f.hpp"
#include "turntable/error.hpp"
#include "turntable/json_util.hpp"
#include "turntable/svg.hpp"

namespace turntable::compare {

struct CompareConfig {
  std::int64_t bin_width_ms = 100;
  std::int64_t min_count = 5;
  std::size_t top_k = 20;

  void validate() const {
    if (bin_width_ms <= 0) throw Error(ErrorCode::invalid_config, "bin width must be positive");
    if (min_count < 1) throw Error(ErrorCode::invalid_config, "min count must be at least 1");
  }
};

struct Comparison {
  std::string corpus_a, corpus_b;
  DurationDistribution a, b;
  double modal_ratio = 0.0;  // modal_b / modal_a
  double overlap_coefficient = 0.0;
  std::vector<TokenAssociation> associations;  // all, score descending
  std::vector<TokenAssociation> top_positive;  // most distinctive of A first
  std::vector<TokenAssociation> top_negative;  // most distinctive of B first
};

inline Comparison compare_corpora(const CorpusTable& a, const CorpusTable& b, const CompareConfig& cfg = {},
                                  const Segmenter& segmenter = whitespace_segmenter) {
  cfg.validate();
  if (a.turns.empty() || b.turns.empty()) throw Error(ErrorCode::empty_table, "both corpora need turns");
  Comparison c;
  c.corpus_a = a.corpus_id;
  c.corpus_b = b.corpus_id;
  c.a = duration_distribution(a, cfg.bin_width_ms, segmenter);
  c.b = duration_distribution(b, cfg.bin_width_ms, segmenter);
  c.modal_ratio = static_cast<double>(c.b.modal_ms) / static_cast<double>(c.a.modal_ms);
  c.overlap_coefficient = overlap_coefficient(c.a.histogram, c.b.histogram);
  c.associations = scaled_f_score(a, b, cfg.min_count, segmenter);
  for (const auto& t : c.associations)
    if (t.score > 0 && c.top_positive.size() < cfg.top_k) c.top_positive.push_back(t);
  for (auto it = c.associations.rbegin(); it != c.associations.rend(); ++it)
    if (it->score < 0 && c.top_negative.size() < cfg.top_k) c.top_negative.push_back(*it);
  return c;
}

inline Json to_json(const DurationDistribution& d) {
  Json j;
  j["n"] = d.n;
  j["mean_ms"] = d.mean_ms;
  j["sd_ms"] = d.sd_ms;
  j["sd_defined"] = d.sd_defined;
  j["median_ms"] = d.median_ms;
  j["modal_ms"] = d.modal_ms;
  j["histogram"] = turntable::to_json(d.histogram);
  j["mean_words"] = d.mean_words;
  j["mean_chars"] = d.mean_chars;
  return j;
}

inline Json to_json(const TokenAssociation& t) {
  Json j;
  j["token"] = t.token;
  j["count_a"] = t.count_a;
  j["count_b"] = t.count_b;
  j["score"] = t.score;
  return j;
}

inline Json to_json(const Comparison& c, const CompareConfig& cfg) {
  Json j;
  j["corpus_a"] = c.corpus_a;
  j["corpus_b"] = c.corpus_b;
  j["config"] = {{"bin_width_ms", cfg.bin_width_ms}, {"min_count", cfg.min_count}, {"top_k", cfg.top_k}};
  j["sfs_variant"] = "rank";
  j["a"] = to_json(c.a);
  j["b"] = to_json(c.b);
  j["modal_ratio"] = c.modal_ratio;
  j["overlap_coefficient"] = c.overlap_coefficient;
  Json pos = Json::array(), neg = Json::array();
  for (const auto& t : c.top_positive) pos.push_back(to_json(t));
  for (const auto& t : c.top_negative) neg.push_back(to_json(t));
  j["top_positive"] = std::move(pos);
  j["top_negative"] = std::move(neg);
  return j;
}

inline std::string associations_tsv(const std::vector<TokenAssociation>& assoc) {
  std::string out = "token\tcount_a\tcount_b\tscore\n";
  for (const auto& t : assoc) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", t.score);
    out += t.token + '\t' + std::to_string(t.count_a) + '\t' + std::to_string(t.count_b) + '\t' + buf + '\n';
  }
  return out;
}

/// Both duration histograms as share-of-turns step lines on one axis.
inline std::string render_duration_overlay(const Comparison& c) {
  svg::Document doc(560, 380);
  doc.text(280, 22, "Turn durations: " + c.corpus_a + " vs " + c.corpus_b, "middle", 13);
  const auto& ha = c.a.histogram;
  const auto& hb = c.b.histogram;
  std::int64_t lo = 0, hi = 0;
  double peak = 0;
  for (const auto* h : {&ha, &hb}) {
    if (h->counts.empty()) continue;
    hi = std::max(hi, h->counts.rbegin()->first + 1);
    for (const auto& [bin, n] : h->counts)
      peak = std::max(peak, static_cast<double>(n) / static_cast<double>(h->total()));
  }
  svg::Frame frame(doc, 70, 40, 440, 270, static_cast<double>(ha.bin_start(lo)), static_cast<double>(ha.bin_start(hi)), 0,
                   peak > 0 ? peak * 1.05 : 1.0);
  frame.axes("duration (ms)", "share of turns");
  const char* colors[2] = {"#4c72b0", "#dd8452"};
  int series = 0;
  for (const auto* h : {&ha, &hb}) {
    std::vector<std::pair<double, double>> pts;
    const double total = static_cast<double>(std::max<std::int64_t>(h->total(), 1));
    for (std::int64_t bin = lo; bin < hi; ++bin) {
      const auto it = h->counts.find(bin);
      const double share = it == h->counts.end() ? 0.0 : static_cast<double>(it->second) / total;
      pts.emplace_back(frame.px(static_cast<double>(h->bin_start(bin))), frame.py(share));
      pts.emplace_back(frame.px(static_cast<double>(h->bin_start(bin + 1))), frame.py(share));
    }
    doc.polyline(pts, colors[series], "series");
    const double mx = frame.px(static_cast<double>(series ? c.b.modal_ms : c.a.modal_ms));
    doc.line(mx, frame.top(), mx, frame.bottom(), colors[series]);
    doc.text(frame.left() + frame.width() - 4, frame.top() + 14 + 14 * series,
             (series ? c.corpus_b : c.corpus_a) + ": mode " + std::to_string(series ? c.b.modal_ms : c.a.modal_ms) + " ms",
             "end", 10, std::string("fill=\"") + colors[series] + "\"");
    ++series;
  }
  return doc.str();
}

}  // namespace turntable::compare
