#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "turntable/detail/utf8.hpp"
#include "turntable/qc/report.hpp"
#include "turntable/svg.hpp"

namespace turntable::qc {

struct ReportSvgs {
  std::string fto_histogram;     // panel A
  std::string fto_vs_duration;   // panel B
  std::string rank_frequency;    // panel C
  std::string dyadic_samples;    // panel D
};

namespace report_svg_detail {

inline constexpr double width = 520, height = 360;
inline constexpr double left = 70, top = 40, plot_w = 420, plot_h = 260;

inline std::string clip_text(std::string_view s, std::size_t max_cps) {
  std::u32string cps = detail::decode_utf8(s);
  if (cps.size() <= max_cps) return std::string(s);
  cps.resize(max_cps);
  return detail::encode_utf8(cps) + "...";
}

}  // namespace report_svg_detail

inline std::string render_fto_histogram(const AssessmentReport& r) {
  using namespace report_svg_detail;
  svg::Document doc(width, height);
  doc.text(width / 2, 22, "A. Turn transitions (" + r.corpus_id + ")", "middle", 13);
  const auto& h = r.transition_histogram;
  if (h.counts.empty()) {
    svg::Frame frame(doc, left, top, plot_w, plot_h, -1000, 1000, 0, 1);
    frame.axes("floor transfer offset (ms)", "count");
    frame.no_data();
    return doc.str();
  }
  const double x0 = static_cast<double>(std::min<std::int64_t>(h.bin_start(h.counts.begin()->first), -500));
  const double x1 = static_cast<double>(std::max<std::int64_t>(h.bin_start(h.counts.rbegin()->first + 1), 500));
  std::int64_t peak = 0;
  for (const auto& [bin, c] : h.counts) peak = std::max(peak, c);
  svg::Frame frame(doc, left, top, plot_w, plot_h, x0, x1, 0, static_cast<double>(peak));
  for (const auto& [bin, c] : h.counts) {
    const double bx0 = frame.px(static_cast<double>(h.bin_start(bin)));
    const double bx1 = frame.px(static_cast<double>(h.bin_start(bin + 1)));
    doc.rect(bx0, frame.py(static_cast<double>(c)), bx1 - bx0, frame.bottom() - frame.py(static_cast<double>(c)),
             "#4c72b0", "bar");
  }
  doc.line(frame.px(0), frame.top(), frame.px(0), frame.bottom(), "#999");
  frame.axes("floor transfer offset (ms)", "count");
  return doc.str();
}

inline std::string render_fto_vs_duration(const AssessmentReport& r) {
  using namespace report_svg_detail;
  svg::Document doc(width, height);
  doc.text(width / 2, 22, "B. Transition time by duration", "middle", 13);
  if (r.duration_vs_fto.empty()) {
    svg::Frame frame(doc, left, top, plot_w, plot_h, -1000, 1000, 0, 1000);
    frame.axes("floor transfer offset (ms)", "duration (ms)");
    frame.no_data();
    return doc.str();
  }
  double x0 = 0, x1 = 0, y1 = 0;
  for (const auto& p : r.duration_vs_fto) {
    x0 = std::min(x0, static_cast<double>(p.fto_ms));
    x1 = std::max(x1, static_cast<double>(p.fto_ms));
    y1 = std::max(y1, static_cast<double>(p.duration_ms));
  }
  const double pad = std::max(100.0, (x1 - x0) * 0.05);
  svg::Frame frame(doc, left, top, plot_w, plot_h, x0 - pad, x1 + pad, 0, std::max(y1 * 1.05, 100.0));
  frame.axes("floor transfer offset (ms)", "duration (ms)");
  for (const auto& p : r.duration_vs_fto)
    doc.circle(frame.px(static_cast<double>(p.fto_ms)), frame.py(static_cast<double>(p.duration_ms)), 2.0, "#4c72b0",
               "mark");
  return doc.str();
}

inline std::string render_rank_frequency(const AssessmentReport& r) {
  using namespace report_svg_detail;
  svg::Document doc(width, height);
  doc.text(width / 2, 22, "C. Rank / frequency", "middle", 13);
  if (r.rank_frequency.empty()) {
    svg::Frame frame(doc, left, top, plot_w, plot_h, 0, 3, 0, 3);
    frame.axes("rank", "count", true, true);
    frame.no_data();
    return doc.str();
  }
  const double x1 = std::log10(static_cast<double>(r.rank_frequency.back().rank));
  const double y1 = std::log10(static_cast<double>(r.rank_frequency.front().count));
  svg::Frame frame(doc, left, top, plot_w, plot_h, 0, std::max(x1, 1.0), 0, std::max(y1, 1.0));
  frame.axes("rank", "count", true, true);
  for (const auto& t : r.rank_frequency) {
    doc.circle(frame.px(std::log10(static_cast<double>(t.rank))), frame.py(std::log10(static_cast<double>(t.count))), 2.0,
               "#4c72b0", "mark");
  }
  for (std::size_t i = 0; i < std::min<std::size_t>(r.rank_frequency.size(), 10); ++i) {
    doc.text(frame.left() + frame.width() - 4, frame.top() + 14 + 13 * static_cast<double>(i),
             std::to_string(r.rank_frequency[i].rank) + ". " + clip_text(r.rank_frequency[i].token, 20) + " (" +
                 std::to_string(r.rank_frequency[i].count) + ")",
             "end", 10);
  }
  if (r.zipf_slope)
    doc.text(frame.left() + 6, frame.bottom() - 8, "slope " + svg::num(*r.zipf_slope), "start", 10);
  return doc.str();
}

inline std::string render_dyadic_samples(const AssessmentReport& r) {
  using namespace report_svg_detail;
  const double row_h = 90;
  const double h = std::max(height, top + row_h * static_cast<double>(r.samples.size()) + 40);
  svg::Document doc(width, h);
  doc.text(width / 2, 22, "D. Sample dyadic stretches", "middle", 13);
  if (r.samples.empty()) {
    doc.text(width / 2, h / 2, "no data", "middle", 14);
    return doc.str();
  }
  const char* colors[2] = {"#4c72b0", "#dd8452"};
  for (std::size_t i = 0; i < r.samples.size(); ++i) {
    const auto& s = r.samples[i];
    const double y = top + row_h * static_cast<double>(i);
    const auto px = [&](std::int64_t t) {
      const double clamped = static_cast<double>(std::clamp(t, s.start_ms, s.end_ms));
      return left + (clamped - static_cast<double>(s.start_ms)) / static_cast<double>(s.end_ms - s.start_ms) * plot_w;
    };
    doc.text(left, y + 10, s.source + " @ " + std::to_string(s.start_ms) + " ms", "start", 10);
    for (int lane = 0; lane < 2; ++lane)
      doc.text(left - 6, y + 32 + 26 * lane, clip_text(s.participants[static_cast<std::size_t>(lane)], 8), "end", 10);
    for (const Turn& t : s.turns) {
      const int lane = t.participant == s.participants[0] ? 0 : 1;
      const double ly = y + 20 + 26 * lane;
      doc.rect(px(t.begin_ms), ly, std::max(px(t.end_ms) - px(t.begin_ms), 1.0), 16, colors[lane], "turn");
      doc.text(px(t.begin_ms) + 2, ly + 12, clip_text(t.utterance, 18), "start", 9);
    }
    doc.line(left, y + 72, left + plot_w, y + 72, "#999");
  }
  return doc.str();
}

inline ReportSvgs render_report_svg(const AssessmentReport& r) {
  return {render_fto_histogram(r), render_fto_vs_duration(r), render_rank_frequency(r), render_dyadic_samples(r)};
}

}  // namespace turntable::qc
