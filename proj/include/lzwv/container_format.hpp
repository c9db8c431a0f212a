#pragma once

// .lzwv archive layout:
//   bytes 0..3   magic "LZWV"
//   byte  4      version (0x01)
//   bytes 5..12  original length, little-endian u64
//   payload      codes, the k-th (1-indexed) written with code_width(k) bits,
//                least-significant bit first; last byte zero-padded.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "lzwv/lzw_codec.hpp"

namespace lzwv {

inline constexpr std::array<std::uint8_t, 4> kContainerMagic{0x4C, 0x5A, 0x57, 0x56};
inline constexpr std::uint8_t kContainerVersion = 0x01;
inline constexpr std::size_t kContainerHeaderSize = 13;

/// Bits for the code at 1-indexed position k: max(9, bit_length(k + 254)).
/// Codes at position k never exceed 254 + k.
unsigned code_width(std::uint64_t position);

bool has_container_magic(std::string_view bytes) noexcept;

/// Throws InvalidArgument if a code does not fit its position's width.
std::string pack(const EncodedStream& stream);

/// Throws BadMagic, UnsupportedVersion, TruncatedPayload, NonzeroPadding,
/// TrailingData or CorruptStream.
EncodedStream unpack(std::string_view bytes);

}  // namespace lzwv
