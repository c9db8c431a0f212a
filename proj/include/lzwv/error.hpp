#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lzwv {

/// Failure classes raised by the core. Values mirror the C API status codes.
enum class ErrorCode : int {
  InvalidArgument = 1,
  CorruptStream = 2,
  BadMagic = 3,
  UnsupportedVersion = 4,
  TruncatedPayload = 5,
  NonzeroPadding = 6,
  TrailingData = 7,
  UnknownColormap = 8,
  OutOfRange = 9,
  EmptyInput = 10,
  InvalidPrefixLength = 11,
  RenderLimitExceeded = 12,
  Io = 13,
  Internal = 14,
};

/// Stable identifier for an error class, e.g. "BadMagic".
std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lzwv
