#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <system_error>

#include "turntable/detail/text.hpp"
#include "turntable/error.hpp"
#include "turntable/qc/wav.hpp"
#include "turntable/unified/types.hpp"

namespace turntable::qc {

struct SourceCheck {
  bool found = false;
  std::optional<std::int64_t> duration_ms;
  std::string path;  // relative to the media directory

  bool operator==(const SourceCheck&) const = default;
};

inline constexpr std::array<std::string_view, 6> media_extensions{".wav", ".mp3", ".mp4", ".mov", ".ogg", ".flac"};

inline bool is_media_extension(std::string_view ext_lower) {
  for (const auto e : media_extensions)
    if (e == ext_lower) return true;
  return false;
}

/// Lowercased stem used to match a source value against media files; a
/// recognized media extension on the source value is dropped first.
inline std::string media_key(std::string_view source) {
  const std::filesystem::path p{std::string(source)};
  const std::string ext = detail::ascii_lower(p.extension().string());
  const std::string base = detail::file_name_of(source);
  if (is_media_extension(ext)) return detail::lowercase(p.stem().string());
  return detail::lowercase(base);
}

/// Looks up every distinct source value under media_dir (recursively,
/// case-insensitive on the stem). WAV matches are preferred so a duration
/// can be read; remaining ties go to the lexicographically first path.
inline std::map<std::string, SourceCheck> verify_sources(const CorpusTable& table, const std::filesystem::path& media_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(media_dir, ec))
    throw Error(ErrorCode::media_dir_unreadable, "not a readable directory: " + media_dir.string());

  std::map<std::string, fs::path> best;
  fs::recursive_directory_iterator it(media_dir, fs::directory_options::skip_permission_denied, ec);
  if (ec) throw Error(ErrorCode::media_dir_unreadable, media_dir.string() + ": " + ec.message());
  for (const fs::recursive_directory_iterator end; it != end; it.increment(ec)) {
    if (ec) throw Error(ErrorCode::media_dir_unreadable, media_dir.string() + ": " + ec.message());
    if (!it->is_regular_file(ec)) continue;
    const fs::path& p = it->path();
    const std::string ext = detail::ascii_lower(p.extension().string());
    if (!is_media_extension(ext)) continue;
    const std::string key = detail::lowercase(p.stem().string());
    auto [slot, inserted] = best.emplace(key, p);
    if (inserted) continue;
    const bool cand_wav = ext == ".wav";
    const bool cur_wav = detail::ascii_lower(slot->second.extension().string()) == ".wav";
    if ((cand_wav && !cur_wav) || (cand_wav == cur_wav && p.generic_string() < slot->second.generic_string()))
      slot->second = p;
  }

  std::map<std::string, SourceCheck> out;
  for (const Turn& t : table.turns) {
    if (out.count(t.source)) continue;
    SourceCheck check;
    if (const auto hit = best.find(media_key(t.source)); hit != best.end()) {
      check.found = true;
      check.path = hit->second.lexically_relative(media_dir).generic_string();
      if (detail::ascii_lower(hit->second.extension().string()) == ".wav") check.duration_ms = wav_duration_ms(hit->second);
    }
    out.emplace(t.source, std::move(check));
  }
  return out;
}

/// Every source marked missing; used when no media directory is available.
inline std::map<std::string, SourceCheck> unchecked_sources(const CorpusTable& table) {
  std::map<std::string, SourceCheck> out;
  for (const Turn& t : table.turns) out.try_emplace(t.source);
  return out;
}

}  // namespace turntable::qc
