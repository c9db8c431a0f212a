#pragma once

#include <string>
#include <string_view>

namespace lzwv {

/// Display form of a byte string: printable ASCII passes through, a backslash
/// doubles, every other byte becomes \xNN (lowercase hex). Always valid UTF-8.
std::string escape_bytes(std::string_view bytes);

/// Inverse of escape_bytes. Throws InvalidArgument on malformed escapes.
std::string unescape_bytes(std::string_view text);

inline bool is_printable_ascii(unsigned char c) noexcept { return c >= 0x20 && c <= 0x7e; }

}  // namespace lzwv
