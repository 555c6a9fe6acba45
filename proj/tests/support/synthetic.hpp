#pragma once

// Seeded corpus generators shared by the unit tests and the acceptance run.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "turntable/mining/levenshtein.hpp"
#include "turntable/rng.hpp"
#include "turntable/unified/types.hpp"

namespace synth {

using turntable::CorpusTable;
using turntable::Lcg64;
using turntable::Turn;

inline Turn make_turn(std::string source, std::int64_t b, std::int64_t e, std::string who, std::string utt) {
  Turn t;
  t.begin_ms = b;
  t.end_ms = e;
  t.participant = std::move(who);
  t.utterance = std::move(utt);
  t.utterance_raw = t.utterance;
  t.source = std::move(source);
  return t;
}

/// Assigns uids in table order and sorts.
inline void finish(CorpusTable& table) {
  table.sort();
  for (std::size_t i = 0; i < table.turns.size(); ++i)
    table.turns[i].uid = table.turns[i].source + "-" + std::to_string(i + 1);
  table.refresh_extra_columns();
}

inline double normal(Lcg64& rng) {
  const double u1 = 1.0 - rng.uniform();
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

// ---------------------------------------------------------------- FTO

inline const std::vector<std::int64_t>& fto_gap_set() {
  static const std::vector<std::int64_t> gaps{-100, 0, 200};
  return gaps;
}

struct FtoCorpus {
  CorpusTable table;
  std::vector<std::int64_t> expected_ftos;  // gaps drawn at speaker changes
};

/// Two speakers; each new turn starts `gap` after the previous one ends.
/// Roughly one turn in five continues the same speaker.
inline FtoCorpus dyadic_fto_corpus(std::uint64_t seed, std::size_t n_turns = 5000, std::int64_t shift = 0) {
  Lcg64 rng(seed);
  FtoCorpus c;
  c.table.corpus_id = "fto";
  std::int64_t t = shift;
  std::string who = "A";
  for (std::size_t i = 0; i < n_turns; ++i) {
    const std::int64_t dur = 400 + static_cast<std::int64_t>(rng.below(1601));
    c.table.turns.push_back(make_turn("rec", t, t + dur, who, "w" + std::to_string(i)));
    const std::int64_t gap = fto_gap_set()[rng.below(fto_gap_set().size())];
    const bool change = rng.below(5) != 0;
    if (i + 1 < n_turns && change) c.expected_ftos.push_back(gap);
    if (change) who = who == "A" ? "B" : "A";
    t += dur + gap;
  }
  finish(c.table);
  return c;
}

// ---------------------------------------------------------------- density

/// Up to four recordings, each at most 60 s, with random possibly
/// overlapping turns including zero-length ones.
inline CorpusTable random_density_corpus(Lcg64& rng, std::int64_t& recording_ms) {
  CorpusTable table;
  const std::size_t n_sources = 1 + rng.below(4);
  recording_ms = 0;
  for (std::size_t s = 0; s < n_sources; ++s) {
    const std::int64_t length = 1 + static_cast<std::int64_t>(rng.below(60000));
    recording_ms += length;
    const std::size_t n = rng.below(40);
    for (std::size_t i = 0; i < n; ++i) {
      const auto b = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(length)));
      const auto e = std::min<std::int64_t>(length, b + static_cast<std::int64_t>(rng.below(8000)));
      table.turns.push_back(make_turn("s" + std::to_string(s), b, e, rng.below(2) ? "A" : "B", "x"));
    }
  }
  finish(table);
  return table;
}

/// Millisecond-grid count of covered time, summed over recordings.
inline std::int64_t grid_covered_ms(const CorpusTable& table) {
  std::map<std::string, std::vector<bool>> grid;
  for (const Turn& t : table.turns) {
    auto& g = grid[t.source];
    if (g.size() < static_cast<std::size_t>(t.end_ms)) g.resize(static_cast<std::size_t>(t.end_ms), false);
    for (std::int64_t ms = t.begin_ms; ms < t.end_ms; ++ms) g[static_cast<std::size_t>(ms)] = true;
  }
  std::int64_t n = 0;
  for (const auto& [s, g] : grid) n += std::count(g.begin(), g.end(), true);
  return n;
}

// ---------------------------------------------------------------- mining

inline const std::vector<std::string>& vocabulary() {
  static const std::vector<std::string> words = [] {
    const char* onsets[] = {"b", "d", "f", "g", "k", "l", "m", "n", "p", "r", "s", "t", "v", "z"};
    const char* nuclei[] = {"a", "e", "i", "o", "u", "ai", "ou"};
    std::vector<std::string> out;
    for (const char* o : onsets)
      for (const char* n : nuclei)
        for (const char* c : {"n", "r", "st", "lk"}) out.push_back(std::string(o) + n + c);
    return out;
  }();
  return words;
}

inline std::string random_sentence(Lcg64& rng) {
  const std::size_t n = 4 + rng.below(5);
  std::string s;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) s += ' ';
    s += vocabulary()[rng.below(vocabulary().size())];
  }
  return s;
}

struct PlantedCorpus {
  CorpusTable table;
  std::int64_t continuer_triples = 0;
  std::int64_t repair_triples = 0;
};

/// Planted structure, in shuffled blocks:
///   30x  A: unique / B: "mhm" / A: different unique       (continuer)
///   10x  A: unique / B: "huh?" / A: same sentence again   (repair)
///    8x  A: unique / B: "right" / A: different unique     (weaker continuer)
///    6x  A: unique / B: "what?" / A: same sentence again  (weaker repair)
///   12x  A: "yeah" / B: "okay" / A: "so"                  (fillers, no unique flanks)
/// Speaker names are swapped at random per block.
inline PlantedCorpus planted_mining_corpus(std::uint64_t seed) {
  Lcg64 rng(seed);
  std::set<std::string> used;
  const auto fresh = [&] {
    for (;;) {
      std::string s = random_sentence(rng);
      if (used.insert(s).second) return s;
    }
  };
  const auto far_pair = [&] {
    for (;;) {
      std::string a = fresh(), b = fresh();
      if (turntable::mining::normalized_levenshtein(a, b) >= 0.5) return std::make_pair(a, b);
    }
  };

  enum Kind { continuer, repair, weak_continuer, weak_repair, filler };
  std::vector<Kind> blocks;
  blocks.insert(blocks.end(), 30, continuer);
  blocks.insert(blocks.end(), 10, repair);
  blocks.insert(blocks.end(), 8, weak_continuer);
  blocks.insert(blocks.end(), 6, weak_repair);
  blocks.insert(blocks.end(), 12, filler);
  for (std::size_t i = blocks.size(); i > 1; --i) std::swap(blocks[i - 1], blocks[rng.below(i)]);

  PlantedCorpus pc;
  pc.table.corpus_id = "planted";
  const std::string names[2] = {"p" + std::to_string(seed % 97), "q" + std::to_string(seed % 89)};
  std::int64_t t = 0;
  const auto say = [&](const std::string& who, const std::string& utt) {
    const std::int64_t dur = 300 + static_cast<std::int64_t>(rng.below(1500));
    pc.table.turns.push_back(make_turn("planted", t, t + dur, who, utt));
    t += dur + 100 + static_cast<std::int64_t>(rng.below(400));
  };
  for (const Kind k : blocks) {
    const bool swap = rng.below(2);
    const std::string& a = names[swap ? 1 : 0];
    const std::string& b = names[swap ? 0 : 1];
    switch (k) {
      case continuer:
      case weak_continuer: {
        const auto [s1, s3] = far_pair();
        say(a, s1);
        say(b, k == continuer ? "mhm" : "right.");
        say(a, s3);
        if (k == continuer) ++pc.continuer_triples;
        break;
      }
      case repair:
      case weak_repair: {
        const std::string s = fresh();
        say(a, s);
        say(b, k == repair ? "huh?" : "what?");
        say(a, s);
        if (k == repair) ++pc.repair_triples;
        break;
      }
      case filler:
        say(a, "yeah");
        say(b, "okay");
        say(a, "so");
        break;
    }
  }
  finish(pc.table);
  return pc;
}

// ---------------------------------------------------------------- durations

/// Log-normal durations with the given mode; word counts grow with length.
inline CorpusTable lognormal_duration_corpus(std::uint64_t seed, double mode_ms, double sigma, std::size_t n,
                                             std::string id) {
  Lcg64 rng(seed);
  const double mu = std::log(mode_ms) + sigma * sigma;
  CorpusTable table;
  table.corpus_id = id;
  std::int64_t t = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto dur = static_cast<std::int64_t>(std::llround(std::exp(mu + sigma * normal(rng))));
    const std::size_t words = 1 + static_cast<std::size_t>(dur / 400);
    std::string utt;
    for (std::size_t w = 0; w < words; ++w) {
      if (w) utt += ' ';
      utt += vocabulary()[rng.below(vocabulary().size())];
    }
    table.turns.push_back(make_turn(id, t, t + dur, i % 2 ? "A" : "B", utt));
    t += dur + 50;
  }
  finish(table);
  return table;
}

// ---------------------------------------------------------------- Zipf

/// n_tokens draws from P(k) proportional to k^-s over `types` word types,
/// packed ten to a turn.
inline CorpusTable zipf_corpus(std::uint64_t seed, std::size_t n_tokens = 100000, std::size_t types = 1000, double s = 1.0) {
  Lcg64 rng(seed);
  std::vector<double> cdf(types);
  double acc = 0;
  for (std::size_t k = 0; k < types; ++k) cdf[k] = acc += std::pow(static_cast<double>(k + 1), -s);
  for (auto& v : cdf) v /= acc;
  CorpusTable table;
  table.corpus_id = "zipf";
  std::string utt;
  std::int64_t t = 0;
  for (std::size_t i = 0; i < n_tokens; ++i) {
    const double u = rng.uniform();
    const std::size_t k = static_cast<std::size_t>(std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    if (!utt.empty()) utt += ' ';
    utt += "w" + std::to_string(std::min(k, types - 1) + 1);
    if ((i + 1) % 10 == 0 || i + 1 == n_tokens) {
      table.turns.push_back(make_turn("zipf", t, t + 1000, (i / 10) % 2 ? "A" : "B", utt));
      utt.clear();
      t += 1100;
    }
  }
  finish(table);
  return table;
}

// ---------------------------------------------------------------- tables

inline std::string adversarial_text(Lcg64& rng, bool allow_empty = true) {
  static const std::vector<std::string> pieces{
      "a", "Z", " ", "\t", "\n", "\r", "\\", "\\t", "\\n", "\"", "'", "#", ":", "# corpus_id: x", "[laugh]",
      "日本語", "русский", "ελληνικά", "עברית", "العربية", "हिन्दी", "😀", " ", ",", ";", "\"\"", "x\ty"};
  const std::size_t n = (allow_empty ? 0 : 1) + rng.below(6);
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s += pieces[rng.below(pieces.size())];
  return s;
}

inline CorpusTable random_table(Lcg64& rng) {
  CorpusTable table;
  table.corpus_id = rng.below(4) ? adversarial_text(rng) : "";
  table.language = rng.below(2) ? adversarial_text(rng) : "";
  std::vector<std::string> extra_names;
  const std::size_t n_extra = rng.below(4);
  for (std::size_t i = 0; i < n_extra; ++i) extra_names.push_back("x" + std::to_string(i) + adversarial_text(rng));
  const std::size_t n = rng.below(30);
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t b = static_cast<std::int64_t>(rng.below(100000)) - 1000;
    Turn t = make_turn(adversarial_text(rng), b, b + static_cast<std::int64_t>(rng.below(5000)), adversarial_text(rng),
                       adversarial_text(rng));
    t.utterance_raw = adversarial_text(rng);
    t.uid = adversarial_text(rng, false);
    for (const auto& name : extra_names)
      if (rng.below(2)) t.extra[name] = adversarial_text(rng, false);
    table.turns.push_back(std::move(t));
  }
  table.sort();
  table.refresh_extra_columns();
  return table;
}

}  // namespace synth
