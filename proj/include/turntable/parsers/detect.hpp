#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "turntable/detail/text.hpp"
#include "turntable/detail/utf8.hpp"
#include "turntable/error.hpp"
#include "turntable/parsers/document.hpp"

namespace turntable::parsers {

inline constexpr std::size_t detect_head_bytes = 4096;

inline std::optional<Format> format_from_extension(const std::filesystem::path& path) {
  const std::string ext = detail::ascii_lower(path.extension().string());
  if (ext == ".eaf") return Format::eaf;
  if (ext == ".cha") return Format::cha;
  if (ext == ".textgrid") return Format::textgrid;
  if (ext == ".exb") return Format::exb;
  return std::nullopt;
}

/// Content sniffing over the first bytes of a file. Every rule that matches
/// is a candidate; the file extension breaks ties, otherwise rule order
/// (EAF, EXB, CHA, TEXTGRID) decides.
inline Format detect_format(const std::filesystem::path& path, std::string_view head) {
  if (head.size() > detect_head_bytes) head = head.substr(0, detect_head_bytes);
  const std::string text = detail::to_utf8_text(head);

  std::vector<Format> matches;
  if (text.find("<ANNOTATION_DOCUMENT") != std::string::npos) matches.push_back(Format::eaf);
  if (text.find("<basic-transcription") != std::string::npos) matches.push_back(Format::exb);
  for (std::string_view line : detail::split_lines(text)) {
    if (detail::trim(line).empty()) continue;
    if (line.front() == '@') matches.push_back(Format::cha);
    break;
  }
  if (text.find("File type = \"ooTextFile\"") != std::string::npos ||
      text.find("\"TextGrid\"") != std::string::npos)
    matches.push_back(Format::textgrid);

  if (matches.empty()) throw Error(ErrorCode::unknown_format, "no format rule matches " + path.string());
  if (matches.size() > 1) {
    if (const auto by_ext = format_from_extension(path)) {
      for (const Format f : matches)
        if (f == *by_ext) return f;
    }
  }
  return matches.front();
}

}  // namespace turntable::parsers
