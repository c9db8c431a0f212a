#include "lzwv/error.hpp"

namespace lzwv {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::CorruptStream: return "CorruptStream";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::TruncatedPayload: return "TruncatedPayload";
    case ErrorCode::NonzeroPadding: return "NonzeroPadding";
    case ErrorCode::TrailingData: return "TrailingData";
    case ErrorCode::UnknownColormap: return "UnknownColormap";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::InvalidPrefixLength: return "InvalidPrefixLength";
    case ErrorCode::RenderLimitExceeded: return "RenderLimitExceeded";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace lzwv
