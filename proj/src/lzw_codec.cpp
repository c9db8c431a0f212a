#include "lzwv/lzw_codec.hpp"

#include <algorithm>
#include <numeric>

#include "lzwv/error.hpp"

namespace lzwv {

PatternDictionary::PatternDictionary() {
  entries_.reserve(4096);
  for (Code b = 0; b < kBaseSize; ++b) {
    auto byte = static_cast<std::uint8_t>(b);
    entries_.push_back(Entry{kNoParent, 1, byte, byte});
  }
}

std::optional<Code> PatternDictionary::find(std::string_view pattern) const {
  if (pattern.empty()) return std::nullopt;
  Code code = static_cast<std::uint8_t>(pattern.front());
  for (std::size_t i = 1; i < pattern.size(); ++i) {
    auto next = child(code, static_cast<std::uint8_t>(pattern[i]));
    if (!next) return std::nullopt;
    code = *next;
  }
  return code;
}

Code PatternDictionary::add(Code parent, std::uint8_t byte) {
  if (!contains(parent)) {
    throw Error(ErrorCode::Internal, "parent code " + std::to_string(parent) + " is not assigned");
  }
  const Code code = next_code();
  auto [it, inserted] = children_.try_emplace(child_key(parent, byte), code);
  if (!inserted) {
    throw Error(ErrorCode::Internal, "pattern already registered as code " +
                                         std::to_string(it->second));
  }
  const Entry& p = entries_[parent];
  entries_.push_back(Entry{parent, p.length + 1, p.first, byte});
  return code;
}

std::string PatternDictionary::pattern(Code code) const {
  std::string out(length(code), '\0');
  for (std::size_t i = out.size(); i-- > 0;) {
    const Entry& e = entries_[code];
    out[i] = static_cast<char>(e.last);
    code = e.parent;
  }
  return out;
}

Code PatternDictionary::ancestor(Code code, std::size_t prefix_length) const {
  std::size_t len = length(code);
  if (prefix_length < 1 || prefix_length > len) {
    throw Error(ErrorCode::InvalidArgument, "prefix length out of range for code");
  }
  for (; len > prefix_length; --len) code = entries_[code].parent;
  return code;
}

std::optional<std::uint64_t> CountRegister::count_of(const PatternDictionary& dictionary,
                                                     std::string_view pattern) const {
  auto code = dictionary.find(pattern);
  if (!code) return std::nullopt;
  return count(*code);
}

std::uint64_t CountRegister::sum() const noexcept {
  return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

void CountRegister::register_new(Code code) {
  if (code >= counts_.size()) counts_.resize(std::size_t{code} + 1, 0);
  counts_[code] = 1;
}

void increment_prefixes(CountRegister& reg, const PatternDictionary& dictionary, Code phrase) {
  if (!dictionary.contains(phrase)) {
    throw Error(ErrorCode::Internal, "phrase code " + std::to_string(phrase) + " is not assigned");
  }
  if (reg.counts_.size() < dictionary.size()) reg.counts_.resize(dictionary.size(), 0);
  // Parent links walk exactly the prefixes of the phrase.
  for (Code c = phrase; c != PatternDictionary::kNoParent; c = dictionary.parent(c)) {
    ++reg.counts_[c];
    ++reg.total_increments_;
  }
}

void increment_prefixes(CountRegister& reg, const PatternDictionary& dictionary,
                        std::string_view phrase) {
  auto code = dictionary.find(phrase);
  if (!code) throw Error(ErrorCode::Internal, "phrase is not a registered pattern");
  increment_prefixes(reg, dictionary, *code);
}

EncodeResult encode_with_counts(std::string_view input) {
  EncodeResult out;
  out.stream.original_length = input.size();
  if (input.empty()) return out;

  auto& dict = out.dictionary;
  auto& counts = out.counts;
  auto& codes = out.stream.codes;

  Code w = static_cast<std::uint8_t>(input.front());
  for (std::size_t i = 1; i < input.size(); ++i) {
    const auto c = static_cast<std::uint8_t>(input[i]);
    if (auto wc = dict.child(w, c)) {
      w = *wc;
      continue;
    }
    codes.push_back(w);
    increment_prefixes(counts, dict, w);
    counts.register_new(dict.add(w, c));
    w = c;
  }
  codes.push_back(w);
  increment_prefixes(counts, dict, w);
  return out;
}

namespace {

[[noreturn]] void corrupt(std::size_t index, const std::string& what) {
  throw Error(ErrorCode::CorruptStream, "code #" + std::to_string(index + 1) + ": " + what);
}

// A code must already be assigned, except the KwKwK case: code == next_code
// once a previous phrase exists.
void check_code(std::size_t index, Code code, Code next_code) {
  if (index == 0 ? code >= PatternDictionary::kBaseSize : code > next_code) {
    corrupt(index, "value " + std::to_string(code) + " is not yet defined");
  }
}

}  // namespace

std::string decode(const EncodedStream& stream) {
  struct Entry {
    Code parent;
    std::uint32_t length;
    std::uint8_t first;
    std::uint8_t last;
  };
  std::vector<Entry> table;
  table.reserve(PatternDictionary::kBaseSize + stream.codes.size());
  for (Code b = 0; b < PatternDictionary::kBaseSize; ++b) {
    auto byte = static_cast<std::uint8_t>(b);
    table.push_back(Entry{PatternDictionary::kNoParent, 1, byte, byte});
  }

  std::string out;
  out.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(stream.original_length, 1u << 26)));

  Code prev = PatternDictionary::kNoParent;
  for (std::size_t i = 0; i < stream.codes.size(); ++i) {
    const Code code = stream.codes[i];
    const auto next = static_cast<Code>(table.size());
    check_code(i, code, next);
    if (i > 0) {
      const std::uint8_t c = code < next ? table[code].first : table[prev].first;
      const Entry& p = table[prev];
      table.push_back(Entry{prev, p.length + 1, p.first, c});
    }
    const std::size_t len = table[code].length;
    if (out.size() + len > stream.original_length) corrupt(i, "output exceeds original length");
    const std::size_t pos = out.size();
    out.resize(pos + len);
    Code c = code;
    for (std::size_t j = len; j-- > 0;) {
      out[pos + j] = static_cast<char>(table[c].last);
      c = table[c].parent;
    }
    prev = code;
  }
  if (out.size() != stream.original_length) {
    throw Error(ErrorCode::CorruptStream, "decoded " + std::to_string(out.size()) +
                                              " bytes, header says " +
                                              std::to_string(stream.original_length));
  }
  return out;
}

ReplayResult replay_counts(const EncodedStream& stream) {
  ReplayResult out;
  auto& dict = out.dictionary;
  auto& counts = out.counts;

  std::uint64_t produced = 0;
  Code prev = PatternDictionary::kNoParent;
  for (std::size_t i = 0; i < stream.codes.size(); ++i) {
    const Code code = stream.codes[i];
    const Code next = dict.next_code();
    check_code(i, code, next);
    if (i > 0) {
      const std::uint8_t c = code < next ? dict.first_byte(code) : dict.first_byte(prev);
      if (dict.child(prev, c)) corrupt(i, "previous phrase was not a longest match");
      counts.register_new(dict.add(prev, c));
    }
    increment_prefixes(counts, dict, code);
    produced += dict.length(code);
    if (produced > stream.original_length) corrupt(i, "output exceeds original length");
    prev = code;
  }
  if (produced != stream.original_length) {
    throw Error(ErrorCode::CorruptStream, "stream covers " + std::to_string(produced) +
                                              " bytes, header says " +
                                              std::to_string(stream.original_length));
  }
  return out;
}

}  // namespace lzwv
