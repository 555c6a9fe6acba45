#pragma once

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "turntable/cli/config.hpp"
#include "turntable/compare/compare.hpp"
#include "turntable/error.hpp"
#include "turntable/json_util.hpp"
#include "turntable/mining/contexts.hpp"
#include "turntable/mining/mining_json.hpp"
#include "turntable/parsers/document_json.hpp"
#include "turntable/parsers/parse.hpp"
#include "turntable/qc/report.hpp"
#include "turntable/qc/report_json.hpp"
#include "turntable/qc/report_svg.hpp"
#include "turntable/qc/sources.hpp"
#include "turntable/unified/table_io.hpp"
#include "turntable/unified/unify.hpp"

namespace turntable::cli {

enum ExitCode : int { exit_ok = 0, exit_fatal = 1, exit_partial = 2 };

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

namespace commands_detail {

namespace fs = std::filesystem;

inline void write_outputs(const fs::path& dir, const std::vector<std::pair<std::string, std::string>>& files,
                          Json& summary) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::io, "cannot create " + dir.string() + ": " + ec.message());
  Json written = Json::array();
  for (const auto& [name, content] : files) {
    detail::write_file(dir / name, content);
    written.push_back((dir / name).generic_string());
  }
  summary["outputs"] = std::move(written);
}

inline std::string unmatched_tsv(const std::vector<UnmatchedAnnotation>& rows) {
  std::string out = "source\ttier_id\tcolumn\tbegin\tend\ttext\n";
  const auto esc = [](const std::string& s) { return table_io_detail::escape(s); };
  for (const auto& u : rows)
    out += esc(u.source) + '\t' + esc(u.tier_id) + '\t' + esc(u.column) + '\t' + std::to_string(u.begin_ms) + '\t' +
           std::to_string(u.end_ms) + '\t' + esc(u.text) + '\n';
  return out;
}

/// Same stem twice gets "-2", "-3", ... in input order so uids stay unique.
inline std::vector<std::string> unique_source_ids(const std::vector<std::string>& inputs) {
  std::vector<std::string> ids;
  std::set<std::string> taken;
  for (const auto& in : inputs) {
    const fs::path p(in);
    std::string stem = p.stem().string();
    if (stem.empty()) stem = p.filename().string();
    std::string id = stem;
    for (int k = 2; !taken.insert(id).second; ++k) id = stem + "-" + std::to_string(k);
    ids.push_back(id);
  }
  return ids;
}

struct FileResult {
  std::optional<UnifyResult> result;
  std::string error;
  std::vector<std::string> warnings;
};

inline FileResult parse_one(const std::string& input, const std::string& source_id, const RunConfig& cfg) {
  FileResult r;
  try {
    const std::string bytes = detail::read_file(input);
    const auto format = parsers::detect_format(input, bytes);
    parsers::ParsedDocument doc = parsers::parse_bytes(format, bytes, source_id);
    if (const auto it = doc.metadata.find("skipped_point_tiers"); it != doc.metadata.end() && it->second != "0")
      r.warnings.push_back(it->second + " point tier(s) skipped");
    UnifyResult u = unify_detailed(doc, cfg.tier_map, cfg.tag_policy);
    std::size_t untimed = 0;
    for (const Turn& t : u.table.turns) untimed += t.untimed();
    if (untimed) r.warnings.push_back(std::to_string(untimed) + " untimed turn(s)");
    if (!u.unmatched.empty()) r.warnings.push_back(std::to_string(u.unmatched.size()) + " unmatched annotation(s)");
    r.result = std::move(u);
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

}  // namespace commands_detail

/// Parse and unify each input, then write one table. Files are processed
/// on up to `jobs` threads; results are merged in input order.
inline int cmd_parse(const RunConfig& cfg, const std::string& out_path, bool keep_going, unsigned jobs,
                     const std::string& corpus_id, const std::string& language, bool json, Streams s) {
  using namespace commands_detail;
  const auto& inputs = cfg.io.inputs;
  if (inputs.empty()) {
    s.err << "error: no input files\n";
    return exit_fatal;
  }
  const auto ids = unique_source_ids(inputs);
  std::vector<FileResult> results(inputs.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i; (i = next++) < inputs.size();) results[i] = parse_one(inputs[i], ids[i], cfg);
  };
  const unsigned n_threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(inputs.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<CorpusTable> parts;
  std::vector<UnmatchedAnnotation> unmatched;
  std::size_t failed = 0;
  Json files = Json::array();
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    auto& r = results[i];
    for (const auto& w : r.warnings) s.err << "warning: " << inputs[i] << ": " << w << '\n';
    Json f{{"input", inputs[i]}, {"source_id", ids[i]}};
    if (!r.result) {
      ++failed;
      s.err << "error: " << inputs[i] << ": " << r.error << '\n';
      f["error"] = r.error;
      files.push_back(std::move(f));
      continue;
    }
    f["turns"] = r.result->table.turns.size();
    files.push_back(std::move(f));
    parts.push_back(std::move(r.result->table));
    unmatched.insert(unmatched.end(), r.result->unmatched.begin(), r.result->unmatched.end());
  }
  if (failed && (!keep_going || failed == inputs.size())) return exit_fatal;

  std::string id = corpus_id;
  if (id.empty()) id = fs::path(out_path).stem().string();
  CorpusTable table;
  try {
    table = merge_tables(std::move(parts), id, language);
    write_table(table, out_path);
    detail::write_file(out_path + ".unmatched.tsv", unmatched_tsv(unmatched));
  } catch (const std::exception& e) {
    s.err << "error: " << e.what() << '\n';
    std::error_code ec;
    fs::remove(out_path, ec);
    return exit_fatal;
  }
  s.err << "wrote " << table.turns.size() << " turns to " << out_path << '\n';
  if (json) {
    Json summary{{"table", out_path}, {"unmatched", out_path + ".unmatched.tsv"}, {"turns", table.turns.size()},
                 {"files", std::move(files)}};
    s.out << dump_json(summary);
  }
  return failed ? exit_partial : exit_ok;
}

inline int cmd_assess(const RunConfig& cfg, const std::string& table_path, bool json, Streams s) {
  using namespace commands_detail;
  try {
    const CorpusTable table = read_table(table_path);
    std::map<std::string, qc::SourceCheck> sources;
    if (cfg.io.media_dir.empty()) {
      s.err << "warning: no media directory given; sources not checked\n";
      sources = qc::unchecked_sources(table);
    } else {
      try {
        sources = qc::verify_sources(table, cfg.io.media_dir);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::media_dir_unreadable) throw;
        s.err << "warning: " << e.what() << "; sources not checked\n";
        sources = qc::unchecked_sources(table);
      }
    }
    const qc::AssessmentReport report = qc::build_report(table, sources, cfg.qc);
    const qc::ReportSvgs svgs = qc::render_report_svg(report);
    Json summary;
    write_outputs(cfg.io.out,
                  {{"report.json", dump_json(qc::to_json(report))},
                   {"fto_histogram.svg", svgs.fto_histogram},
                   {"fto_vs_duration.svg", svgs.fto_vs_duration},
                   {"rank_frequency.svg", svgs.rank_frequency},
                   {"dyadic_samples.svg", svgs.dyadic_samples},
                   {"run_config.json", dump_json(to_json(cfg))}},
                  summary);
    if (json) s.out << dump_json(summary);
  } catch (const std::exception& e) {
    s.err << "error: " << e.what() << '\n';
    return exit_fatal;
  }
  return exit_ok;
}

inline int cmd_mine(const RunConfig& cfg, const std::string& table_path, std::size_t top_n, bool json, Streams s) {
  using namespace commands_detail;
  try {
    const CorpusTable table = read_table(table_path);
    if (table.turns.empty()) throw Error(ErrorCode::empty_table, "table " + table_path + " has no turns");
    const auto formats = mining::recurrent_formats(table, cfg.mining);
    const auto scores = mining::classify_contexts(table, formats, cfg.mining);
    const auto ranking = mining::rank_candidates(scores, top_n);
    Json summary;
    write_outputs(cfg.io.out,
                  {{"candidates.json", dump_json(mining::mining_output_json(cfg.mining, scores, ranking))},
                   {"candidates.tsv", mining::mining_tsv(scores)},
                   {"run_config.json", dump_json(to_json(cfg))}},
                  summary);
    if (json) s.out << dump_json(summary);
  } catch (const std::exception& e) {
    s.err << "error: " << e.what() << '\n';
    return exit_fatal;
  }
  return exit_ok;
}

inline int cmd_compare(const RunConfig& cfg, const std::string& a_path, const std::string& b_path, bool json, Streams s) {
  using namespace commands_detail;
  try {
    const CorpusTable a = read_table(a_path);
    const CorpusTable b = read_table(b_path);
    const compare::Comparison c = compare::compare_corpora(a, b, cfg.compare);
    Json summary;
    write_outputs(cfg.io.out,
                  {{"comparison.json", dump_json(compare::to_json(c, cfg.compare))},
                   {"tokens.tsv", compare::associations_tsv(c.associations)},
                   {"durations.svg", compare::render_duration_overlay(c)},
                   {"run_config.json", dump_json(to_json(cfg))}},
                  summary);
    if (json) s.out << dump_json(summary);
  } catch (const std::exception& e) {
    s.err << "error: " << e.what() << '\n';
    return exit_fatal;
  }
  return exit_ok;
}

inline Json tier_inventory(const parsers::ParsedDocument& doc) {
  Json j;
  j["source_id"] = doc.source_id;
  j["format"] = std::string(parsers::to_string(doc.format));
  j["media_refs"] = doc.media_refs;
  Json tiers = Json::array();
  for (std::size_t i = 0; i < doc.tiers.size(); ++i) {
    const auto& t = doc.tiers[i];
    tiers.push_back({{"tier_id", t.tier_id},
                     {"participant", t.participant},
                     {"category", t.category},
                     {"parent_tier", t.parent_tier ? Json(*t.parent_tier) : Json(nullptr)},
                     {"annotations", doc.annotation_count(i)}});
  }
  j["tiers"] = std::move(tiers);
  return j;
}

inline int cmd_inspect(const std::vector<std::string>& inputs, bool json, Streams s) {
  int rc = exit_ok;
  Json all = Json::array();
  for (const auto& in : inputs) {
    try {
      const auto doc = parsers::parse_file(in);
      const Json inv = tier_inventory(doc);
      all.push_back(inv);
      if (json) continue;
      s.out << in << " (" << parsers::to_string(doc.format) << ")\n";
      for (const auto& t : inv["tiers"]) {
        s.out << "  " << t["tier_id"].get<std::string>() << "  participant=" << t["participant"].get<std::string>()
              << "  category=" << t["category"].get<std::string>();
        if (!t["parent_tier"].is_null()) s.out << "  parent=" << t["parent_tier"].get<std::string>();
        s.out << "  annotations=" << t["annotations"].get<std::size_t>() << '\n';
      }
    } catch (const std::exception& e) {
      s.err << "error: " << in << ": " << e.what() << '\n';
      rc = exit_fatal;
    }
  }
  if (json) s.out << dump_json(all);
  return rc;
}

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
inline int run_cli(const std::vector<std::string>& args, Streams s = {std::cout, std::cerr}) {
  CLI::App app{"Conversational transcript corpus toolkit"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  bool json = false;
  app.add_flag("--json", json, "machine-readable summary on stdout");

  auto* parse = app.add_subcommand("parse", "parse transcripts into one turn table");
  std::vector<std::string> inputs;
  std::string out, tier_map, corpus_id, language;
  bool keep_going = false;
  unsigned jobs = 1;
  parse->add_option("inputs", inputs, "transcript files");
  parse->add_option("--tier-map", tier_map, "tier map JSON")->check(CLI::ExistingFile);
  parse->add_option("--out", out, "output table")->required();
  parse->add_flag("--keep-going", keep_going, "skip failing files");
  parse->add_option("--jobs,-j", jobs, "parallel files")->check(CLI::PositiveNumber);
  parse->add_option("--corpus-id", corpus_id);
  parse->add_option("--language", language);

  auto* assess = app.add_subcommand("assess", "quality-control report");
  std::string table_path, media_dir, out_dir;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::int64_t fto_bin = 0, duration_bin = 0;
  assess->add_option("table", table_path)->required();
  auto* o_media = assess->add_option("--media-dir", media_dir);
  auto* o_seed = assess->add_option("--seed", seed);
  auto* o_samples = assess->add_option("--samples", samples);
  auto* o_fto_bin = assess->add_option("--fto-bin", fto_bin);
  auto* o_dur_bin = assess->add_option("--duration-bin", duration_bin);
  auto* o_assess_out = assess->add_option("--out", out_dir);

  auto* mine = app.add_subcommand("mine", "continuer and repair-initiator candidates");
  double threshold = 0;
  std::int64_t min_count = 0, unique_max = 0;
  std::size_t top_n = 10;
  mine->add_option("table", table_path)->required();
  auto* o_threshold = mine->add_option("--threshold", threshold);
  auto* o_min_count = mine->add_option("--min-count", min_count);
  auto* o_unique = mine->add_option("--unique-max", unique_max);
  mine->add_option("--top-n", top_n);
  auto* o_mine_out = mine->add_option("--out", out_dir);

  auto* cmp = app.add_subcommand("compare", "compare two turn tables");
  std::string b_path;
  std::int64_t bin = 0, cmp_min_count = 0;
  std::size_t top_k = 0;
  cmp->add_option("a", table_path)->required();
  cmp->add_option("b", b_path)->required();
  auto* o_bin = cmp->add_option("--bin", bin);
  auto* o_cmp_min = cmp->add_option("--min-count", cmp_min_count);
  auto* o_top_k = cmp->add_option("--top-k", top_k);
  auto* o_cmp_out = cmp->add_option("--out", out_dir);

  auto* inspect = app.add_subcommand("inspect", "list tiers of raw transcripts");
  std::vector<std::string> inspect_inputs;
  inspect->add_option("inputs", inspect_inputs)->required();

  auto* show = app.add_subcommand("config", "print the effective configuration");

  for (auto* sub : {parse, assess, mine, cmp, inspect, show}) sub->add_flag("--json", json, "machine-readable summary");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, s.out, s.err);
    return rc == 0 ? exit_ok : exit_fatal;
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = load_config(config_path);
    if (!tier_map.empty()) cfg.tier_map = load_tier_map(tier_map);
    if (!inputs.empty()) cfg.io.inputs = inputs;
    if (o_media->count()) cfg.io.media_dir = media_dir;
    if (o_seed->count()) cfg.qc.seed = seed;
    if (o_samples->count()) cfg.qc.samples = samples;
    if (o_fto_bin->count()) cfg.qc.fto_bin_ms = fto_bin;
    if (o_dur_bin->count()) cfg.qc.duration_bin_ms = duration_bin;
    if (o_threshold->count()) cfg.mining.similarity_threshold = threshold;
    if (o_min_count->count()) cfg.mining.recurrent_min_count = min_count;
    if (o_unique->count()) cfg.mining.unique_max_count = unique_max;
    if (o_bin->count()) cfg.compare.bin_width_ms = bin;
    if (o_cmp_min->count()) cfg.compare.min_count = cmp_min_count;
    if (o_top_k->count()) cfg.compare.top_k = top_k;
    if (o_assess_out->count() || o_mine_out->count() || o_cmp_out->count()) cfg.io.out = out_dir;
    cfg.validate();
  } catch (const std::exception& e) {
    s.err << "error: " << e.what() << '\n';
    return exit_fatal;
  }

  if (*show) {
    s.out << dump_json(to_json(cfg));
    return exit_ok;
  }
  if (*inspect) return cmd_inspect(inspect_inputs, json, s);
  if (*parse) return cmd_parse(cfg, out, keep_going, jobs, corpus_id, language, json, s);
  if (cfg.io.out.empty()) {
    s.err << "error: --out is required\n";
    return exit_fatal;
  }
  if (*assess) return cmd_assess(cfg, table_path, json, s);
  if (*mine) return cmd_mine(cfg, table_path, top_n, json, s);
  return cmd_compare(cfg, table_path, b_path, json, s);
}

}  // namespace turntable::cli
