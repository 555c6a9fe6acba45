#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "turntable/detail/text.hpp"
#include "turntable/parsers/cha.hpp"
#include "turntable/parsers/detect.hpp"
#include "turntable/parsers/document.hpp"
#include "turntable/parsers/eaf.hpp"
#include "turntable/parsers/exb.hpp"
#include "turntable/parsers/textgrid.hpp"

namespace turntable::parsers {

inline ParsedDocument parse_bytes(Format format, std::string_view bytes, std::string source_id) {
  switch (format) {
    case Format::eaf: return parse_eaf(bytes, std::move(source_id));
    case Format::cha: return parse_cha(bytes, std::move(source_id));
    case Format::textgrid: return parse_textgrid(bytes, std::move(source_id));
    case Format::exb: return parse_exb(bytes, std::move(source_id));
  }
  throw Error(ErrorCode::unknown_format, "unhandled format");
}

/// Detects the format from content (extension as tiebreaker) and parses.
/// The document's source_id is the file stem.
inline ParsedDocument parse_file(const std::filesystem::path& path) {
  const std::string bytes = detail::read_file(path);
  const Format format = detect_format(path, bytes);
  std::string stem = path.stem().string();
  if (stem.empty()) stem = path.filename().string();
  return parse_bytes(format, bytes, std::move(stem));
}

}  // namespace turntable::parsers
