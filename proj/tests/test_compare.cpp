#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "support/synthetic.hpp"
#include "turntable/compare/compare.hpp"
#include "turntable/compare/durations.hpp"
#include "turntable/compare/scaled_f.hpp"
#include "turntable/error.hpp"

using namespace turntable;
using namespace turntable::compare;

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

CorpusTable durations_table(const std::vector<std::int64_t>& durations, const std::string& id = "d") {
  CorpusTable t;
  t.corpus_id = id;
  std::int64_t at = 0;
  for (const auto d : durations) {
    t.turns.push_back(synth::make_turn(id, at, at + d, "A", "word"));
    at += d + 10;
  }
  synth::finish(t);
  return t;
}

CorpusTable words_table(const std::map<std::string, int>& counts, const std::string& id) {
  CorpusTable t;
  t.corpus_id = id;
  std::int64_t at = 0;
  for (const auto& [w, n] : counts)
    for (int i = 0; i < n; ++i) {
      t.turns.push_back(synth::make_turn(id, at, at + 500, i % 2 ? "A" : "B", w));
      at += 600;
    }
  synth::finish(t);
  return t;
}

const TokenAssociation& assoc(const std::vector<TokenAssociation>& v, const std::string& token) {
  for (const auto& a : v)
    if (a.token == token) return a;
  throw std::runtime_error("missing token " + token);
}

}  // namespace

// ------------------------------------------------------------------ durations

TEST(Durations, Examples) {
  const auto d = duration_distribution(durations_table({450, 480, 520}));
  EXPECT_EQ(d.n, 3);
  EXPECT_EQ(d.modal_ms, 450);
  EXPECT_DOUBLE_EQ(d.median_ms, 480.0);
  EXPECT_NEAR(d.mean_ms, 483.3333333333333, 1e-9);
  EXPECT_TRUE(d.sd_defined);
  const auto one = duration_distribution(durations_table({500}));
  EXPECT_EQ(one.modal_ms, 550);
  EXPECT_FALSE(one.sd_defined);
  EXPECT_EQ(one.sd_ms, 0.0);
  const auto even = duration_distribution(durations_table({100, 200, 300, 1000}));
  EXPECT_DOUBLE_EQ(even.median_ms, 250.0);
  EXPECT_EQ(even.modal_ms, 150);  // four single-count bins, lowest wins
}

TEST(Durations, WordAndCharMeans) {
  CorpusTable t;
  t.turns = {synth::make_turn("r", 0, 100, "A", "a bc"), synth::make_turn("r", 200, 300, "B", "日本 語 x")};
  synth::finish(t);
  const auto d = duration_distribution(t);
  EXPECT_DOUBLE_EQ(d.mean_words, 2.5);
  EXPECT_DOUBLE_EQ(d.mean_chars, 5.0);
}

TEST(Durations, MomentsMatchTwoPassOracle) {
  Lcg64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::int64_t> v;
    const std::size_t n = 2 + rng.below(200);
    for (std::size_t i = 0; i < n; ++i) v.push_back(static_cast<std::int64_t>(rng.below(20000)));
    double mean = 0;
    for (auto x : v) mean += static_cast<double>(x);
    mean /= static_cast<double>(n);
    double ss = 0;
    for (auto x : v) ss += (static_cast<double>(x) - mean) * (static_cast<double>(x) - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    const auto d = duration_distribution(durations_table(v));
    EXPECT_NEAR(d.mean_ms, mean, 1e-9 * std::max(1.0, mean));
    EXPECT_NEAR(d.sd_ms, sd, 1e-9 * std::max(1.0, sd));
  }
}

TEST(Durations, Errors) {
  Turn untimed = synth::make_turn("r", 0, 0, "A", "x");
  untimed.extra["untimed"] = "1";
  CorpusTable t;
  t.turns = {untimed};
  EXPECT_EQ(code_of([&] { duration_distribution(t); }), ErrorCode::empty_table);
  EXPECT_EQ(code_of([] { duration_distribution(durations_table({5}), 0); }), ErrorCode::invalid_config);
}

TEST(Overlap, Coefficient) {
  const auto a = make_histogram(std::vector<std::int64_t>{10, 20, 150}, 100);
  const auto b = make_histogram(std::vector<std::int64_t>{30, 250}, 100);
  // min(2/3, 1/2) + min(1/3, 0) + min(0, 1/2)
  EXPECT_DOUBLE_EQ(overlap_coefficient(a, b), 0.5);
  EXPECT_EQ(overlap_coefficient(a, a), 1.0);
  EXPECT_EQ(overlap_coefficient(a, HistogramSeries{100, 0, {}}), 0.0);
  EXPECT_EQ(code_of([&] { overlap_coefficient(a, make_histogram(std::vector<std::int64_t>{1}, 50)); }),
            ErrorCode::invalid_config);
}

// ------------------------------------------------------------------ scaled F

TEST(ScaledF, HandComputedExample) {
  const std::map<std::string, std::int64_t> a{{"x", 8}, {"y", 2}}, b{{"y", 8}, {"z", 2}};
  const auto r = scaled_f_from_counts(a, b, 2);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0].token, "x");
  EXPECT_NEAR(assoc(r, "x").score, 0.5, 1e-9);
  EXPECT_NEAR(assoc(r, "y").score, -0.1, 1e-9);
  EXPECT_NEAR(assoc(r, "z").score, -0.35, 1e-9);
  EXPECT_EQ(assoc(r, "y").count_a, 2);
  EXPECT_EQ(assoc(r, "y").count_b, 8);
}

TEST(ScaledF, RankNormalizeAveragesTies) {
  EXPECT_EQ(rank_normalize({3.0, 1.0, 3.0}), (std::vector<double>{2.5 / 4, 1.0 / 4, 2.5 / 4}));
}

TEST(ScaledF, AntisymmetricAndZeroOnIdentical) {
  Lcg64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    std::map<std::string, std::int64_t> a, b;
    for (int i = 0; i < 40; ++i) {
      const std::string w = "w" + std::to_string(rng.below(25));
      ++(rng.below(2) ? a : b)[w];
    }
    if (a.size() < 2 || b.size() < 2) continue;
    const auto ab = scaled_f_from_counts(a, b, 1), ba = scaled_f_from_counts(b, a, 1);
    for (const auto& t : ab) EXPECT_NEAR(t.score, -assoc(ba, t.token).score, 1e-12);
    for (const auto& t : scaled_f_from_counts(a, a, 1)) EXPECT_EQ(t.score, 0.0);
  }
}

TEST(ScaledF, MonotoneInOwnCount) {
  std::map<std::string, std::int64_t> a{{"p", 5}, {"q", 5}, {"r", 5}, {"s", 5}}, b{{"p", 5}, {"q", 5}, {"r", 5}, {"s", 5}};
  double prev = -2;
  for (int extra = 0; extra < 20; ++extra) {
    a["p"] = 5 + extra;
    const double s = assoc(scaled_f_from_counts(a, b, 1), "p").score;
    EXPECT_GE(s, prev);
    prev = s;
  }
  EXPECT_GT(prev, 0.0);
}

TEST(ScaledF, TableCountsSkipTags) {
  const auto counts = association_counts(words_table({{"Ja", 2}, {"[laugh] ja", 1}, {"[unk]", 4}}, "c"));
  EXPECT_EQ(counts, (std::map<std::string, std::int64_t>{{"ja", 3}}));
}

TEST(ScaledF, CorpusTooSmall) {
  EXPECT_EQ(code_of([] { scaled_f_from_counts({{"a", 2}}, {{"b", 10}}, 5); }), ErrorCode::corpus_too_small);
  EXPECT_EQ(code_of([] { scaled_f_from_counts({}, {{"b", 10}}, 1); }), ErrorCode::corpus_too_small);
}

// ------------------------------------------------------------------ comparison

TEST(Compare, IdenticalCorpora) {
  const auto t = synth::lognormal_duration_corpus(1, 600, 0.3, 2000, "x");
  const auto c = compare_corpora(t, t);
  EXPECT_EQ(c.modal_ratio, 1.0);
  EXPECT_EQ(c.overlap_coefficient, 1.0);
  EXPECT_TRUE(c.top_positive.empty());
  EXPECT_TRUE(c.top_negative.empty());
}

TEST(Compare, DisjointDurations) {
  const auto a = words_table({{"alpha", 10}}, "a");
  CorpusTable b = words_table({{"beta", 10}}, "b");
  for (auto& t : b.turns) t.end_ms = t.begin_ms + 5000;
  const auto c = compare_corpora(a, b);
  EXPECT_EQ(c.overlap_coefficient, 0.0);
  EXPECT_DOUBLE_EQ(c.modal_ratio, 5050.0 / 550.0);
  ASSERT_EQ(c.top_positive.size(), 1u);
  EXPECT_EQ(c.top_positive[0].token, "alpha");
  EXPECT_EQ(c.top_negative[0].token, "beta");
}

TEST(Compare, ShortVersusLongTurns) {
  const auto conv = synth::lognormal_duration_corpus(4, 500, 0.3, 20000, "conv");
  const auto asr = synth::lognormal_duration_corpus(5, 4600, 0.1, 20000, "asr");
  const auto c = compare_corpora(conv, asr);
  EXPECT_NEAR(static_cast<double>(c.a.modal_ms), 500, 100);
  EXPECT_NEAR(static_cast<double>(c.b.modal_ms), 4600, 100);
  EXPECT_GT(c.modal_ratio, 7.0);
  EXPECT_LT(c.overlap_coefficient, 0.05);
}

TEST(Compare, ErrorsAndJson) {
  EXPECT_EQ(code_of([] { compare_corpora(CorpusTable{}, words_table({{"a", 9}}, "a")); }), ErrorCode::empty_table);
  CompareConfig bad;
  bad.bin_width_ms = 0;
  EXPECT_EQ(code_of([&] { bad.validate(); }), ErrorCode::invalid_config);
  const CompareConfig cfg;
  const auto c = compare_corpora(words_table({{"a", 9}, {"b", 3}}, "A"), words_table({{"b", 9}, {"c", 3}}, "B"), cfg);
  const Json j = to_json(c, cfg);
  EXPECT_EQ(j["sfs_variant"], "rank");
  EXPECT_EQ(j["corpus_a"], "A");
  EXPECT_TRUE(j.contains("overlap_coefficient"));
  EXPECT_EQ(dump_json(j), dump_json(to_json(compare_corpora(words_table({{"a", 9}, {"b", 3}}, "A"),
                                                           words_table({{"b", 9}, {"c", 3}}, "B"), cfg),
                                            cfg)));
  const std::string svg = render_duration_overlay(c);
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find("class=\"series\""), std::string::npos);
}
