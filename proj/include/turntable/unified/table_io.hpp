#pragma once

#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "turntable/detail/text.hpp"
#include "turntable/error.hpp"
#include "turntable/unified/types.hpp"
#include "turntable/unified/unify.hpp"

namespace turntable {

// Turn table file: UTF-8, LF, tab-separated, header row. Optional leading
// "# corpus_id: ..." / "# language: ..." lines carry table metadata. Fields
// escape tab, newline, carriage return and backslash as \t \n \r \\.
namespace table_io_detail {

inline std::string escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (const char c : s) {
    switch (c) {
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\\': out += "\\\\"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

inline std::string unescape(std::string_view s, std::size_t line_no) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\') {
      out.push_back(s[i]);
      continue;
    }
    if (i + 1 >= s.size())
      throw Error(ErrorCode::schema_mismatch, "dangling backslash on line " + std::to_string(line_no));
    switch (s[++i]) {
      case 't': out.push_back('\t'); break;
      case 'n': out.push_back('\n'); break;
      case 'r': out.push_back('\r'); break;
      case '\\': out.push_back('\\'); break;
      default:
        throw Error(ErrorCode::schema_mismatch, "unknown escape on line " + std::to_string(line_no));
    }
  }
  return out;
}

inline std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

}  // namespace table_io_detail

inline std::string format_table(const CorpusTable& table) {
  using table_io_detail::escape;
  std::vector<std::string> extras = table.extra_columns;
  std::sort(extras.begin(), extras.end());

  std::string out;
  if (!table.corpus_id.empty()) out += "# corpus_id: " + escape(table.corpus_id) + "\n";
  if (!table.language.empty()) out += "# language: " + escape(table.language) + "\n";
  const auto& core = core_columns();
  for (std::size_t i = 0; i < core.size(); ++i) out += (i ? "\t" : "") + core[i];
  for (const auto& e : extras) out += "\t" + escape(e);
  out += '\n';
  for (const Turn& t : table.turns) {
    out += std::to_string(t.begin_ms);
    out += '\t' + std::to_string(t.end_ms);
    out += '\t' + escape(t.participant);
    out += '\t' + escape(t.utterance);
    out += '\t' + escape(t.source);
    out += '\t' + escape(t.uid);
    out += '\t' + escape(t.utterance_raw);
    for (const auto& e : extras) {
      const auto it = t.extra.find(e);
      out += '\t';
      if (it != t.extra.end()) out += escape(it->second);
    }
    out += '\n';
  }
  return out;
}

/// Parses a turn table. The five core columns are required; `uid` and
/// `utterance_raw` are filled in when a third-party file lacks them. Empty
/// extra cells are treated as absent.
inline CorpusTable parse_table(std::string_view text) {
  using table_io_detail::unescape;
  CorpusTable table;
  const auto lines = detail::split_lines(text);
  std::size_t li = 0;
  for (; li < lines.size() && !lines[li].empty() && lines[li].front() == '#'; ++li) {
    const std::string_view line = lines[li];
    const std::size_t colon = line.find(':');
    if (colon == std::string_view::npos) continue;
    const std::string_view key = detail::trim(line.substr(1, colon - 1));
    std::string_view value = line.substr(colon + 1);
    if (!value.empty() && value.front() == ' ') value.remove_prefix(1);
    if (key == "corpus_id") table.corpus_id = unescape(value, li + 1);
    else if (key == "language") table.language = unescape(value, li + 1);
  }
  if (li >= lines.size()) throw Error(ErrorCode::schema_mismatch, "missing header row");

  std::vector<std::string> header;
  for (const auto f : table_io_detail::split_tabs(lines[li])) header.push_back(unescape(f, li + 1));
  const auto column = [&](std::string_view name) -> std::optional<std::size_t> {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) return std::nullopt;
    return static_cast<std::size_t>(it - header.begin());
  };
  std::map<std::string, std::size_t> core;
  for (const char* name : {"begin", "end", "participant", "utterance", "source"}) {
    const auto idx = column(name);
    if (!idx) throw Error(ErrorCode::schema_mismatch, std::string("missing core column '") + name + "'");
    core[name] = *idx;
  }
  const auto uid_col = column("uid");
  const auto raw_col = column("utterance_raw");
  std::vector<std::pair<std::string, std::size_t>> extras;
  const auto& core_names = core_columns();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (std::find(core_names.begin(), core_names.end(), header[i]) != core_names.end()) continue;
    extras.emplace_back(header[i], i);
    table.extra_columns.push_back(header[i]);
  }

  std::map<std::string, std::size_t> ordinals;
  for (++li; li < lines.size(); ++li) {
    const std::size_t line_no = li + 1;
    const auto fields = table_io_detail::split_tabs(lines[li]);
    if (fields.size() != header.size())
      throw Error(ErrorCode::schema_mismatch, "line " + std::to_string(line_no) + " has " +
                                                   std::to_string(fields.size()) + " fields, expected " +
                                                   std::to_string(header.size()));
    Turn t;
    const auto begin = detail::parse_int(fields[core["begin"]]);
    const auto end = detail::parse_int(fields[core["end"]]);
    if (!begin || !end) throw Error(ErrorCode::schema_mismatch, "non-integer time on line " + std::to_string(line_no));
    t.begin_ms = *begin;
    t.end_ms = *end;
    t.participant = unescape(fields[core["participant"]], line_no);
    t.utterance = unescape(fields[core["utterance"]], line_no);
    t.source = unescape(fields[core["source"]], line_no);
    t.utterance_raw = raw_col ? unescape(fields[*raw_col], line_no) : t.utterance;
    if (uid_col) {
      t.uid = unescape(fields[*uid_col], line_no);
    } else {
      t.uid = t.source + "-" + std::to_string(++ordinals[t.source]);
    }
    for (const auto& [name, idx] : extras) {
      std::string value = unescape(fields[idx], line_no);
      if (!value.empty()) t.extra.emplace(name, std::move(value));
    }
    table.turns.push_back(std::move(t));
  }
  table.sort();
  return table;
}

inline void write_table(const CorpusTable& table, const std::filesystem::path& path) {
  detail::write_file(path, format_table(table));
}

inline CorpusTable read_table(const std::filesystem::path& path) { return parse_table(detail::read_file(path)); }

}  // namespace turntable
