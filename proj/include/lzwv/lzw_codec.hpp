#pragma once

// Pattern-counting LZW: a greedy LZW parse over the byte alphabet that keeps a
// second dictionary registering how often every discovered pattern was seen.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lzwv {

using Code = std::uint32_t;

/// Bidirectional code <-> pattern mapping, stored as a prefix trie.
///
/// Codes 0..255 are the single-byte patterns. Every later code is the pattern of
/// its parent code extended by one byte, so the dictionary is prefix-closed by
/// construction and new codes are assigned densely in creation order.
class PatternDictionary {
 public:
  static constexpr Code kBaseSize = 256;
  static constexpr Code kNoParent = ~Code{0};

  PatternDictionary();

  Code next_code() const noexcept { return static_cast<Code>(entries_.size()); }
  std::size_t size() const noexcept { return entries_.size(); }
  std::size_t multi_byte_entries() const noexcept { return entries_.size() - kBaseSize; }
  bool contains(Code code) const noexcept { return code < entries_.size(); }

  /// Code of `parent` extended by `byte`, if that pattern exists.
  std::optional<Code> child(Code parent, std::uint8_t byte) const {
    auto it = children_.find(child_key(parent, byte));
    if (it == children_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<Code> find(std::string_view pattern) const;

  /// Registers parent+byte under next_code(). Throws Internal if it already exists.
  Code add(Code parent, std::uint8_t byte);

  Code parent(Code code) const { return entries_.at(code).parent; }
  std::uint8_t first_byte(Code code) const { return entries_.at(code).first; }
  std::uint8_t last_byte(Code code) const { return entries_.at(code).last; }
  std::size_t length(Code code) const { return entries_.at(code).length; }

  std::string pattern(Code code) const;

  /// Code of the length-`prefix_length` prefix of `code`'s pattern.
  /// Requires 1 <= prefix_length <= length(code).
  Code ancestor(Code code, std::size_t prefix_length) const;

  friend bool operator==(const PatternDictionary& a, const PatternDictionary& b) {
    return a.entries_ == b.entries_;
  }

 private:
  struct Entry {
    Code parent;
    std::uint32_t length;
    std::uint8_t first;
    std::uint8_t last;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  static std::uint64_t child_key(Code parent, std::uint8_t byte) noexcept {
    return (std::uint64_t{parent} << 8) | byte;
  }

  std::vector<Entry> entries_;
  std::unordered_map<std::uint64_t, Code> children_;
};

/// Occurrence register, indexed by dictionary code.
class CountRegister {
 public:
  CountRegister() : counts_(PatternDictionary::kBaseSize, 0) {}

  std::uint64_t count(Code code) const { return code < counts_.size() ? counts_[code] : 0; }
  std::optional<std::uint64_t> count_of(const PatternDictionary& dictionary,
                                        std::string_view pattern) const;

  std::uint64_t total_increments() const noexcept { return total_increments_; }
  std::uint64_t sum() const noexcept;
  std::size_t size() const noexcept { return counts_.size(); }

  /// A freshly created pattern starts at one observation.
  void register_new(Code code);

  friend void increment_prefixes(CountRegister& reg, const PatternDictionary& dictionary,
                                 Code phrase);
  friend bool operator==(const CountRegister&, const CountRegister&) = default;

 private:
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_increments_ = 0;
};

/// Adds one to every prefix of the phrase, lengths 1..len inclusive.
void increment_prefixes(CountRegister& reg, const PatternDictionary& dictionary, Code phrase);
/// Same, with the phrase given as bytes. Throws Internal if it is not registered.
void increment_prefixes(CountRegister& reg, const PatternDictionary& dictionary,
                        std::string_view phrase);

struct EncodedStream {
  std::vector<Code> codes;
  std::uint64_t original_length = 0;

  friend bool operator==(const EncodedStream&, const EncodedStream&) = default;
};

struct EncodeResult {
  EncodedStream stream;
  PatternDictionary dictionary;
  CountRegister counts;
};

struct ReplayResult {
  PatternDictionary dictionary;
  CountRegister counts;
};

/// Greedy LZW parse without dictionary reset. On every flush of the buffer the
/// buffer's code is emitted, all of its prefixes are incremented, and the
/// extended pattern is registered with count 1. The final flush creates nothing.
EncodeResult encode_with_counts(std::string_view input);

/// Inverse of the encoder. Throws CorruptStream for unresolvable codes or a
/// length mismatch with original_length.
std::string decode(const EncodedStream& stream);

/// Rebuilds the encoder's dictionary and counts from its code stream alone.
/// Throws CorruptStream if the stream is not one the greedy encoder can emit.
ReplayResult replay_counts(const EncodedStream& stream);

}  // namespace lzwv
