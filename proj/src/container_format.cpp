#include "lzwv/container_format.hpp"

#include <algorithm>
#include <bit>
#include <vector>

#include "lzwv/error.hpp"

namespace lzwv {

namespace {

class BitWriter {
 public:
  explicit BitWriter(std::string& out) : out_(out) {}

  void write(std::uint64_t value, unsigned width) {
    acc_ |= value << fill_;
    fill_ += width;
    while (fill_ >= 8) {
      out_ += static_cast<char>(acc_ & 0xff);
      acc_ >>= 8;
      fill_ -= 8;
    }
  }

  void flush() {
    if (fill_ > 0) out_ += static_cast<char>(acc_ & 0xff);
    acc_ = 0;
    fill_ = 0;
  }

 private:
  std::string& out_;
  std::uint64_t acc_ = 0;
  unsigned fill_ = 0;
};

class BitReader {
 public:
  explicit BitReader(std::string_view data) : data_(data) {}

  std::uint64_t bits_left() const noexcept { return (data_.size() - pos_) * 8 + fill_; }

  std::uint64_t read(unsigned width) {
    while (fill_ < width) {
      acc_ |= std::uint64_t{static_cast<std::uint8_t>(data_[pos_++])} << fill_;
      fill_ += 8;
    }
    const std::uint64_t value = acc_ & ((std::uint64_t{1} << width) - 1);
    acc_ >>= width;
    fill_ -= width;
    return value;
  }

 private:
  std::string_view data_;
  std::size_t pos_ = 0;
  std::uint64_t acc_ = 0;
  unsigned fill_ = 0;
};

}  // namespace

unsigned code_width(std::uint64_t position) {
  return std::max(9u, static_cast<unsigned>(std::bit_width(position + 254)));
}

bool has_container_magic(std::string_view bytes) noexcept {
  return bytes.size() >= kContainerMagic.size() &&
         std::equal(kContainerMagic.begin(), kContainerMagic.end(), bytes.begin(),
                    [](std::uint8_t m, char b) { return m == static_cast<std::uint8_t>(b); });
}

std::string pack(const EncodedStream& stream) {
  std::string out;
  out.reserve(kContainerHeaderSize + stream.codes.size() * 2);
  for (auto b : kContainerMagic) out += static_cast<char>(b);
  out += static_cast<char>(kContainerVersion);
  for (int i = 0; i < 8; ++i) out += static_cast<char>((stream.original_length >> (8 * i)) & 0xff);

  BitWriter writer(out);
  for (std::size_t i = 0; i < stream.codes.size(); ++i) {
    const unsigned width = code_width(i + 1);
    const Code code = stream.codes[i];
    if (std::bit_width(code) > width) {
      throw Error(ErrorCode::InvalidArgument, "code #" + std::to_string(i + 1) + " (" +
                                                  std::to_string(code) + ") exceeds " +
                                                  std::to_string(width) + " bits");
    }
    writer.write(code, width);
  }
  writer.flush();
  return out;
}

EncodedStream unpack(std::string_view bytes) {
  if (!has_container_magic(bytes)) {
    throw Error(ErrorCode::BadMagic, "not an LZWV archive");
  }
  if (bytes.size() < kContainerHeaderSize) {
    throw Error(ErrorCode::TruncatedPayload, "header is shorter than 13 bytes");
  }
  if (static_cast<std::uint8_t>(bytes[4]) != kContainerVersion) {
    throw Error(ErrorCode::UnsupportedVersion,
                "version " + std::to_string(static_cast<std::uint8_t>(bytes[4])));
  }
  EncodedStream stream;
  for (int i = 0; i < 8; ++i) {
    stream.original_length |= std::uint64_t{static_cast<std::uint8_t>(bytes[5 + i])} << (8 * i);
  }

  // The code count is implied by the original length: phrase lengths are
  // tracked (without materializing bytes) until they add up to it.
  BitReader reader(bytes.substr(kContainerHeaderSize));
  std::vector<std::uint32_t> lengths(PatternDictionary::kBaseSize, 1);
  std::uint64_t produced = 0;
  while (produced < stream.original_length) {
    const std::uint64_t position = stream.codes.size() + 1;
    const unsigned width = code_width(position);
    if (reader.bits_left() < width) {
      throw Error(ErrorCode::TruncatedPayload,
                  "payload ends before code #" + std::to_string(position));
    }
    const auto code = static_cast<Code>(reader.read(width));
    if (position > 1) {
      const Code prev = stream.codes.back();
      if (code > lengths.size()) {
        throw Error(ErrorCode::CorruptStream, "code #" + std::to_string(position) +
                                                  " (" + std::to_string(code) +
                                                  ") is not yet defined");
      }
      lengths.push_back(lengths[prev] + 1);
    } else if (code >= PatternDictionary::kBaseSize) {
      throw Error(ErrorCode::CorruptStream, "first code must be a single byte");
    }
    produced += lengths[code];
    stream.codes.push_back(code);
  }
  if (produced != stream.original_length) {
    throw Error(ErrorCode::CorruptStream, "last phrase overruns the original length");
  }

  const std::uint64_t left = reader.bits_left();
  if (left >= 8) {
    throw Error(ErrorCode::TrailingData, std::to_string(left / 8) + " byte(s) after the payload");
  }
  if (left > 0 && reader.read(static_cast<unsigned>(left)) != 0) {
    throw Error(ErrorCode::NonzeroPadding, "padding bits are not zero");
  }
  return stream;
}

}  // namespace lzwv
