#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "support/synthetic.hpp"
#include "turntable/error.hpp"
#include "turntable/qc/density.hpp"
#include "turntable/qc/rank_frequency.hpp"
#include "turntable/qc/report.hpp"
#include "turntable/qc/report_json.hpp"
#include "turntable/qc/report_svg.hpp"
#include "turntable/qc/sampling.hpp"
#include "turntable/qc/sources.hpp"
#include "turntable/qc/transitions.hpp"
#include "turntable/qc/wav.hpp"

using namespace turntable;
using namespace turntable::qc;
namespace fs = std::filesystem;

namespace {

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no turntable::Error thrown";
  return ErrorCode::io;
}

CorpusTable table_of(std::vector<Turn> turns) {
  CorpusTable t;
  t.corpus_id = "t";
  t.turns = std::move(turns);
  synth::finish(t);
  return t;
}

void write_wav(const fs::path& p, std::uint32_t rate, std::uint16_t channels, std::uint16_t bits, std::uint32_t data_bytes,
               bool extra_chunk = false) {
  std::ofstream out(p, std::ios::binary);
  const auto u32 = [&](std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xff));
  };
  const auto u16 = [&](std::uint16_t v) {
    out.put(static_cast<char>(v & 0xff));
    out.put(static_cast<char>(v >> 8));
  };
  out << "RIFF";
  u32(36 + data_bytes + (extra_chunk ? 13 : 0));
  out << "WAVE";
  if (extra_chunk) {
    out << "LIST";
    u32(5);
    out << "abcde" << '\0';
  }
  out << "fmt ";
  u32(16);
  u16(1);
  u16(channels);
  u32(rate);
  u32(rate * channels * bits / 8);
  u16(static_cast<std::uint16_t>(channels * bits / 8));
  u16(bits);
  out << "data";
  u32(data_bytes);
  out << std::string(data_bytes, '\0');
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "turntable_qc_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

// ------------------------------------------------------------------ transitions

TEST(Transitions, Examples) {
  const CorpusTable t = table_of({synth::make_turn("r", 0, 1000, "A", "a"), synth::make_turn("r", 1200, 2000, "B", "b"),
                                  synth::make_turn("r", 1900, 2500, "A", "c"), synth::make_turn("r", 2600, 3000, "A", "d")});
  const auto tr = compute_transitions(t);
  ASSERT_EQ(tr.size(), 2u);
  EXPECT_EQ(tr[0].fto_ms, 200);
  EXPECT_EQ(tr[0].next_duration_ms, 800);
  EXPECT_EQ(tr[1].fto_ms, -100);
  EXPECT_TRUE(tr[0].dyadic);
}

TEST(Transitions, ThirdPartyNearbyIsNotDyadic) {
  const CorpusTable t = table_of({synth::make_turn("r", 0, 1000, "A", "a"), synth::make_turn("r", 1200, 2000, "B", "b"),
                                  synth::make_turn("r", 9000, 9500, "C", "c"), synth::make_turn("r", 40000, 41000, "A", "d"),
                                  synth::make_turn("r", 41100, 42000, "B", "e")});
  const auto tr = compute_transitions(t);
  ASSERT_EQ(tr.size(), 4u);
  EXPECT_FALSE(tr[0].dyadic);
  EXPECT_TRUE(tr[3].dyadic);
}

TEST(Transitions, SkipUntimedAndSeparateRecordings) {
  Turn untimed = synth::make_turn("r", 500, 500, "C", "x");
  untimed.extra["untimed"] = "1";
  const CorpusTable t = table_of({synth::make_turn("r", 0, 1000, "A", "a"), untimed, synth::make_turn("r", 1100, 2000, "B", "b"),
                                  synth::make_turn("s", 0, 1000, "C", "c")});
  const auto tr = compute_transitions(t);
  ASSERT_EQ(tr.size(), 1u);
  EXPECT_EQ(tr[0].fto_ms, 100);
  EXPECT_TRUE(tr[0].dyadic);
}

TEST(Transitions, MatchBruteForceOnSyntheticDyads) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto c = synth::dyadic_fto_corpus(seed, 2000);
    std::vector<std::int64_t> got;
    for (const auto& r : compute_transitions(c.table)) {
      EXPECT_TRUE(r.dyadic);
      got.push_back(r.fto_ms);
    }
    EXPECT_EQ(got, c.expected_ftos);
  }
}

TEST(Transitions, ShiftInvariant) {
  const auto a = synth::dyadic_fto_corpus(9, 1000, 0);
  const auto b = synth::dyadic_fto_corpus(9, 1000, 37000);
  const auto ta = compute_transitions(a.table), tb = compute_transitions(b.table);
  ASSERT_EQ(ta.size(), tb.size());
  for (std::size_t i = 0; i < ta.size(); ++i) {
    EXPECT_EQ(ta[i].fto_ms, tb[i].fto_ms);
    EXPECT_EQ(ta[i].dyadic, tb[i].dyadic);
  }
}

// ------------------------------------------------------------------ density

TEST(Density, Examples) {
  const CorpusTable t = table_of({synth::make_turn("r", 0, 1000, "A", "a"), synth::make_turn("r", 500, 1500, "B", "b"),
                                  synth::make_turn("r", 3000, 3000, "A", "c")});
  const auto d = annotation_density(t, 3000);
  EXPECT_EQ(d.annotated_ms, 1500);
  EXPECT_DOUBLE_EQ(d.density, 0.5);
  EXPECT_FALSE(d.over_density);
  EXPECT_DOUBLE_EQ(d.turns_per_minute, 60.0);
  const auto over = annotation_density(t, 1000);
  EXPECT_TRUE(over.over_density);
  EXPECT_DOUBLE_EQ(over.density, 1.0);
  EXPECT_DOUBLE_EQ(over.raw_ratio, 1.5);
  EXPECT_EQ(code_of([&] { annotation_density(t, 0); }), ErrorCode::zero_recording);
}

TEST(Density, MatchesGridCount) {
  Lcg64 rng(2024);
  for (int i = 0; i < 50; ++i) {
    std::int64_t rec = 0;
    const CorpusTable t = synth::random_density_corpus(rng, rec);
    EXPECT_EQ(annotated_union_ms(t), synth::grid_covered_ms(t));
    const auto d = annotation_density(t, rec);
    EXPECT_GE(d.density, 0.0);
    EXPECT_LE(d.density, 1.0);
  }
}

// ------------------------------------------------------------------ rank / frequency

TEST(RankFrequency, HandFit) {
  const auto rf = rank_counts({{"a", 8}, {"b", 4}, {"c", 2}, {"d", 1}});
  ASSERT_EQ(rf.series.size(), 4u);
  EXPECT_EQ(rf.series[0].token, "a");
  EXPECT_EQ(rf.series[3].rank, 4);
  EXPECT_NEAR(rf.zipf_slope, -1.4590219582913297, 1e-12);
  const auto flat = rank_counts({{"a", 3}, {"b", 3}, {"c", 3}});
  EXPECT_EQ(flat.zipf_slope, 0.0);
  EXPECT_EQ(flat.series[0].token, "a");
  EXPECT_EQ(code_of([] { rank_counts({{"a", 3}}); }), ErrorCode::too_few_tokens);
}

TEST(RankFrequency, CountsMatchNaiveTally) {
  const CorpusTable t = table_of({synth::make_turn("r", 0, 1, "A", "The cat, the DOG."), synth::make_turn("r", 2, 3, "B", "[unk]"),
                                  synth::make_turn("r", 4, 5, "A", "[laugh] dog [unk]")});
  const std::map<std::string, std::int64_t> expected{{"the", 2}, {"cat", 1}, {"dog", 2}, {"[laugh]", 1}};
  EXPECT_EQ(count_tokens(t), expected);
  const auto rf = rank_frequency(t);
  EXPECT_EQ(rf.series[0].token, "dog");
  EXPECT_EQ(rf.series[1].token, "the");
}

TEST(RankFrequency, SyntheticZipfSlopeNearMinusOne) {
  const auto rf = rank_frequency(synth::zipf_corpus(3, 50000, 500, 1.0));
  EXPECT_GT(rf.zipf_slope, -1.2);
  EXPECT_LT(rf.zipf_slope, -0.8);
}

// ------------------------------------------------------------------ sampling

TEST(Sampling, DeterministicWithoutReplacement) {
  const auto c = synth::dyadic_fto_corpus(4, 300);
  const auto a = sample_dyadic_stretches(c.table, 5, 10000, 99);
  const auto b = sample_dyadic_stretches(c.table, 5, 10000, 99);
  ASSERT_EQ(a.samples.size(), 5u);
  EXPECT_EQ(a.samples, b.samples);
  EXPECT_FALSE(a.shortfall);
  std::set<std::int64_t> starts;
  for (const auto& s : a.samples) {
    EXPECT_TRUE(starts.insert(s.start_ms).second);
    EXPECT_EQ(s.participants, (std::array<std::string, 2>{"A", "B"}));
    EXPECT_GE(s.turns.size(), 2u);
  }
}

TEST(Sampling, MonologueGivesShortfall) {
  const CorpusTable t = table_of({synth::make_turn("r", 0, 1000, "A", "a"), synth::make_turn("r", 1200, 2000, "A", "b")});
  const auto s = sample_dyadic_stretches(t, 3);
  EXPECT_TRUE(s.samples.empty());
  EXPECT_TRUE(s.shortfall);
}

TEST(Sampling, ThreePartyWindowsExcluded) {
  const CorpusTable t = table_of({synth::make_turn("r", 0, 1000, "A", "a"), synth::make_turn("r", 1100, 2000, "B", "b"),
                                  synth::make_turn("r", 2100, 3000, "C", "c"), synth::make_turn("r", 30000, 31000, "A", "d"),
                                  synth::make_turn("r", 31100, 32000, "C", "e")});
  const auto all = dyadic_candidates(t);
  ASSERT_FALSE(all.empty());
  for (const auto& s : all) EXPECT_GE(s.start_ms, 1100);
  const auto first = std::find_if(all.begin(), all.end(), [](const DyadicSample& s) { return s.start_ms == 1100; });
  ASSERT_NE(first, all.end());
  EXPECT_EQ(first->participants, (std::array<std::string, 2>{"B", "C"}));
}

// ------------------------------------------------------------------ sources / wav

TEST(Wav, DurationFromHeader) {
  const fs::path dir = fresh_dir("wav");
  write_wav(dir / "a.wav", 16000, 1, 16, 320000);
  EXPECT_EQ(wav_duration_ms(dir / "a.wav"), 10000);
  write_wav(dir / "b.wav", 44100, 2, 16, 44100 * 4 + 1, true);
  EXPECT_EQ(wav_duration_ms(dir / "b.wav"), 1000);
  std::ofstream(dir / "c.wav") << "not audio";
  EXPECT_FALSE(wav_duration_ms(dir / "c.wav"));
}

TEST(Sources, CaseInsensitiveMatching) {
  const fs::path dir = fresh_dir("media");
  fs::create_directories(dir / "sub");
  write_wav(dir / "sub" / "Conv01.WAV", 16000, 1, 16, 320000);
  std::ofstream(dir / "conv02.mp3") << "x";
  const CorpusTable t = table_of({synth::make_turn("conv01.wav", 0, 1, "A", "a"), synth::make_turn("CONV02", 0, 1, "A", "a"),
                                  synth::make_turn("missing", 0, 1, "A", "a")});
  const auto checks = verify_sources(t, dir);
  ASSERT_EQ(checks.size(), 3u);
  EXPECT_TRUE(checks.at("conv01.wav").found);
  EXPECT_EQ(checks.at("conv01.wav").duration_ms, 10000);
  EXPECT_EQ(checks.at("conv01.wav").path, "sub/Conv01.WAV");
  EXPECT_TRUE(checks.at("CONV02").found);
  EXPECT_FALSE(checks.at("CONV02").duration_ms);
  EXPECT_FALSE(checks.at("missing").found);
  EXPECT_EQ(code_of([&] { verify_sources(t, dir / "nope"); }), ErrorCode::media_dir_unreadable);
  const auto none = unchecked_sources(t);
  EXPECT_EQ(none.size(), 3u);
  EXPECT_FALSE(none.at("missing").found);
}

// ------------------------------------------------------------------ report

TEST(Report, MatchesConstruction) {
  const auto c = synth::dyadic_fto_corpus(7, 1000);
  const AssessmentReport r = build_report(c.table, unchecked_sources(c.table));
  EXPECT_EQ(r.n_turns, 1000);
  EXPECT_EQ(r.n_dyadic_transitions, static_cast<std::int64_t>(c.expected_ftos.size()));
  std::map<std::int64_t, std::int64_t> expected;
  for (auto f : c.expected_ftos) ++expected[r.transition_histogram.bin_of(f)];
  EXPECT_EQ(r.transition_histogram.counts, expected);
  EXPECT_EQ(r.transition_histogram.counts.at(0), std::count(c.expected_ftos.begin(), c.expected_ftos.end(), 0));
  EXPECT_TRUE(r.recording_estimated);
  EXPECT_EQ(r.duration_vs_fto.size(), c.expected_ftos.size());
  ASSERT_TRUE(r.zipf_slope.has_value());
}

TEST(Report, CountsUnkAndUntimed) {
  std::vector<Turn> turns;
  for (int i = 0; i < 10; ++i)
    turns.push_back(synth::make_turn("r", i * 1000, i * 1000 + 800, i % 2 ? "A" : "B", i < 2 ? "[unk]" : "w" + std::to_string(i)));
  turns[5].extra["untimed"] = "1";
  const CorpusTable t = table_of(turns);
  const auto r = build_report(t, unchecked_sources(t));
  EXPECT_EQ(r.n_unk, 2);
  EXPECT_EQ(r.n_untimed, 1);
  EXPECT_EQ(r.duration_histogram.total(), 9);
  EXPECT_EQ(r.recording_ms, 9800);
  EXPECT_EQ(code_of([] { build_report(CorpusTable{}, {}); }), ErrorCode::empty_table);
}

TEST(Report, JsonAndSvgDeterministic) {
  const auto c = synth::dyadic_fto_corpus(8, 500);
  const auto a = build_report(c.table, unchecked_sources(c.table));
  const auto b = build_report(c.table, unchecked_sources(c.table));
  EXPECT_EQ(dump_json(to_json(a)), dump_json(to_json(b)));
  const auto sa = render_report_svg(a), sb = render_report_svg(b);
  EXPECT_EQ(sa.fto_histogram, sb.fto_histogram);
  EXPECT_EQ(sa.dyadic_samples, sb.dyadic_samples);
  EXPECT_EQ(sa.rank_frequency, sb.rank_frequency);
}

TEST(ReportSvg, EmptyAndSinglePoint) {
  AssessmentReport r;
  r.corpus_id = "x";
  EXPECT_NE(render_fto_histogram(r).find("no data"), std::string::npos);
  EXPECT_NE(render_dyadic_samples(r).find("no data"), std::string::npos);
  r.duration_vs_fto = {{120, 900}};
  const std::string s = render_fto_vs_duration(r);
  std::size_t n = 0;
  for (std::size_t p = s.find("class=\"mark\""); p != std::string::npos; p = s.find("class=\"mark\"", p + 1)) ++n;
  EXPECT_EQ(n, 1u);
}
