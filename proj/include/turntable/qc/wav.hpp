#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>

#include "turntable/detail/text.hpp"

namespace turntable::qc {

struct WavInfo {
  std::uint16_t audio_format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint32_t byte_rate = 0;
  std::uint16_t block_align = 0;
  std::uint16_t bits_per_sample = 0;
  std::uint32_t data_bytes = 0;
};

/// Walks the RIFF chunk list for "fmt " and "data". Returns nullopt for
/// anything that is not a RIFF/WAVE file with both chunks present.
inline std::optional<WavInfo> read_wav_header(std::istream& in) {
  const auto u32 = [](const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
  };
  const auto u16 = [](const unsigned char* p) { return static_cast<std::uint16_t>(p[0] | (p[1] << 8)); };

  std::array<unsigned char, 12> riff{};
  if (!in.read(reinterpret_cast<char*>(riff.data()), riff.size())) return std::nullopt;
  if (std::string_view(reinterpret_cast<const char*>(riff.data()), 4) != "RIFF" ||
      std::string_view(reinterpret_cast<const char*>(riff.data() + 8), 4) != "WAVE")
    return std::nullopt;

  WavInfo info;
  bool have_fmt = false;
  for (;;) {
    std::array<unsigned char, 8> head{};
    if (!in.read(reinterpret_cast<char*>(head.data()), head.size())) return std::nullopt;
    const std::string_view id(reinterpret_cast<const char*>(head.data()), 4);
    const std::uint32_t size = u32(head.data() + 4);
    if (id == "fmt ") {
      if (size < 16) return std::nullopt;
      std::array<unsigned char, 16> fmt{};
      if (!in.read(reinterpret_cast<char*>(fmt.data()), fmt.size())) return std::nullopt;
      info.audio_format = u16(fmt.data());
      info.channels = u16(fmt.data() + 2);
      info.sample_rate = u32(fmt.data() + 4);
      info.byte_rate = u32(fmt.data() + 8);
      info.block_align = u16(fmt.data() + 12);
      info.bits_per_sample = u16(fmt.data() + 14);
      have_fmt = true;
      in.seekg(static_cast<std::streamoff>(size - 16 + (size & 1)), std::ios::cur);
    } else if (id == "data") {
      if (!have_fmt) return std::nullopt;
      info.data_bytes = size;
      return info;
    } else {
      in.seekg(static_cast<std::streamoff>(size) + (size & 1), std::ios::cur);
    }
    if (!in) return std::nullopt;
  }
}

/// Duration of a canonical PCM WAV file (format tag 1) in milliseconds,
/// data bytes / byte rate, rounded to nearest.
inline std::optional<std::int64_t> wav_duration_ms(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  const auto info = read_wav_header(in);
  if (!info || info->audio_format != 1 || info->byte_rate == 0) return std::nullopt;
  return detail::round_div(static_cast<std::int64_t>(info->data_bytes) * 1000, info->byte_rate);
}

}  // namespace turntable::qc
