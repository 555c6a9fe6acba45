#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "turntable/detail/text.hpp"
#include "turntable/detail/utf8.hpp"
#include "turntable/error.hpp"
#include "turntable/histogram.hpp"
#include "turntable/json_util.hpp"
#include "turntable/rng.hpp"
#include "turntable/svg.hpp"

using namespace turntable;

TEST(Text, SecondsToMsRoundsHalfAwayFromZero) {
  EXPECT_EQ(detail::seconds_text_to_ms("1.2345"), 1235);
  EXPECT_EQ(detail::seconds_text_to_ms("1.2344999"), 1234);
  EXPECT_EQ(detail::seconds_text_to_ms("2.0"), 2000);
  EXPECT_EQ(detail::seconds_text_to_ms("0"), 0);
  EXPECT_EQ(detail::seconds_text_to_ms("4.05"), 4050);
  EXPECT_EQ(detail::seconds_text_to_ms("0.0005"), 1);
  EXPECT_EQ(detail::seconds_text_to_ms("-0.0005"), -1);
  EXPECT_EQ(detail::seconds_text_to_ms("12"), 12000);
  EXPECT_EQ(detail::seconds_text_to_ms(".5"), 500);
  EXPECT_FALSE(detail::seconds_text_to_ms("abc"));
  EXPECT_FALSE(detail::seconds_text_to_ms(""));
}

TEST(Text, RoundDivTiesAwayFromZero) {
  EXPECT_EQ(detail::round_div(5, 2), 3);
  EXPECT_EQ(detail::round_div(-5, 2), -3);
  EXPECT_EQ(detail::round_div(4, 3), 1);
  EXPECT_EQ(detail::round_div(2000, 3), 667);
}

TEST(Text, GlobMatch) {
  EXPECT_TRUE(detail::glob_match("*", ""));
  EXPECT_TRUE(detail::glob_match("A-*", "A-eng"));
  EXPECT_TRUE(detail::glob_match("%?ng", "%eng"));
  EXPECT_FALSE(detail::glob_match("A-*", "B-eng"));
  EXPECT_TRUE(detail::glob_match("*utt*", "spk-utterance"));
}

TEST(Text, SplitLinesHandlesCrLf) {
  const auto lines = detail::split_lines("a\r\nb\n\nc\n");
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0], "a");
  EXPECT_EQ(lines[2], "");
  EXPECT_EQ(lines[3], "c");
}

TEST(Text, FileNameOfUrl) {
  EXPECT_EQ(detail::file_name_of("file:///data/x/conv01.wav"), "conv01.wav");
  EXPECT_EQ(detail::file_name_of("C:\\media\\a.wav"), "a.wav");
  EXPECT_EQ(detail::file_name_of("plain"), "plain");
}

TEST(Utf8, RoundTripsAndCounts) {
  const std::string s = "héllo 日本 😀";
  EXPECT_EQ(detail::encode_utf8(detail::decode_utf8(s)), s);
  EXPECT_EQ(detail::count_code_points(s), 10u);
  EXPECT_EQ(detail::lowercase("ÀÉÎ ΔΣ ЖЯ"), "àéî δσ жя");
}

TEST(Utf8, Utf16WithBomIsTranscoded) {
  std::string bytes = "\xFF\xFE";
  for (const char c : std::string("ab")) {
    bytes.push_back(c);
    bytes.push_back('\0');
  }
  EXPECT_EQ(detail::to_utf8_text(bytes), "ab");
  std::string be = "\xFE\xFF";
  be += std::string("\0x", 2);
  EXPECT_EQ(detail::to_utf8_text(be), "x");
}

TEST(Histogram, FloorBinsAndTotals) {
  const std::vector<std::int64_t> v{-100, -26, -25, 0, 24, 25, 200};
  const auto h = make_centered_histogram(v, 50);
  EXPECT_EQ(h.total(), 7);
  EXPECT_EQ(h.counts.at(-2), 1);  // -100 in [-125,-75)
  EXPECT_EQ(h.counts.at(-1), 1);  // -26
  EXPECT_EQ(h.counts.at(0), 3);   // -25, 0, 24
  EXPECT_EQ(h.counts.at(1), 1);   // 25
  EXPECT_EQ(h.counts.at(4), 1);   // 200
  EXPECT_DOUBLE_EQ(h.bin_center(0), 0.0);
}

TEST(Rng, MatchesTheStatedRecurrence) {
  Lcg64 rng(1);
  const std::uint64_t first = 1ULL * 6364136223846793005ULL + 1442695040888963407ULL;
  EXPECT_EQ(rng.next(), first);
  EXPECT_EQ(rng.next(), first * 6364136223846793005ULL + 1442695040888963407ULL);
  Lcg64 a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.below(17), b.below(17));
  Lcg64 u(7);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, 1.0);
  }
}

TEST(Error, MessageCarriesCodeName) {
  const Error e(ErrorCode::schema_mismatch, "oops");
  EXPECT_EQ(e.code(), ErrorCode::schema_mismatch);
  EXPECT_NE(std::string(e.what()).find("SchemaMismatch"), std::string::npos);
}

TEST(Json, DumpIsStableWithTrailingNewline) {
  Json j;
  j["b"] = 1;
  j["a"] = "x";
  EXPECT_EQ(dump_json(j), "{\n  \"b\": 1,\n  \"a\": \"x\"\n}\n");
}

TEST(Svg, EscapesAndFormats) {
  EXPECT_EQ(svg::escape("a<b & \"c\""), "a&lt;b &amp; &quot;c&quot;");
  EXPECT_EQ(svg::num(-0.001), "0.00");
  EXPECT_EQ(svg::num(1.005), "1.00");
  const auto ticks = svg::nice_ticks(0, 100);
  ASSERT_FALSE(ticks.empty());
  EXPECT_EQ(ticks.front(), 0.0);
  EXPECT_EQ(ticks.back(), 100.0);
}
