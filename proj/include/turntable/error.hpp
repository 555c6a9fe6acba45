#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace turntable {

enum class ErrorCode {
  unknown_format,
  malformed_xml,
  dangling_time_slot_ref,
  dangling_annotation_ref,
  unresolvable_time,
  missing_header,
  malformed_time_bullet,
  malformed_textgrid,
  non_monotone_intervals,
  dangling_tli_ref,
  no_utterance_tier,
  empty_selection,
  io,
  schema_mismatch,
  zero_recording,
  too_few_tokens,
  empty_table,
  media_dir_unreadable,
  corpus_too_small,
  invalid_config,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::unknown_format: return "UnknownFormat";
    case ErrorCode::malformed_xml: return "MalformedXml";
    case ErrorCode::dangling_time_slot_ref: return "DanglingTimeSlotRef";
    case ErrorCode::dangling_annotation_ref: return "DanglingAnnotationRef";
    case ErrorCode::unresolvable_time: return "UnresolvableTime";
    case ErrorCode::missing_header: return "MissingHeader";
    case ErrorCode::malformed_time_bullet: return "MalformedTimeBullet";
    case ErrorCode::malformed_textgrid: return "MalformedTextGrid";
    case ErrorCode::non_monotone_intervals: return "NonMonotoneIntervals";
    case ErrorCode::dangling_tli_ref: return "DanglingTliRef";
    case ErrorCode::no_utterance_tier: return "NoUtteranceTier";
    case ErrorCode::empty_selection: return "EmptySelection";
    case ErrorCode::io: return "Io";
    case ErrorCode::schema_mismatch: return "SchemaMismatch";
    case ErrorCode::zero_recording: return "ZeroRecording";
    case ErrorCode::too_few_tokens: return "TooFewTokens";
    case ErrorCode::empty_table: return "EmptyTable";
    case ErrorCode::media_dir_unreadable: return "MediaDirUnreadable";
    case ErrorCode::corpus_too_small: return "CorpusTooSmall";
    case ErrorCode::invalid_config: return "InvalidConfig";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above; the
/// message is prefixed with the code name so it reads well on stderr.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace turntable
