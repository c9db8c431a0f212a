#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lzwv/colormap.hpp"
#include "lzwv/lzw_codec.hpp"
#include "lzwv/pattern_table.hpp"

namespace lzwv {

/// Byte range [start, end) of the original file covered by one emitted code.
struct Span {
  std::uint64_t start = 0;
  std::uint64_t end = 0;
  Code code = 0;
  std::string pattern;

  friend bool operator==(const Span&, const Span&) = default;
};

struct AnnotatedSpan {
  Span span;
  std::uint64_t metric_value = 0;
  double normalized = 0.0;
  Rgb color;

  friend bool operator==(const AnnotatedSpan&, const AnnotatedSpan&) = default;
};

/// One gapless span per code, in stream order. Throws CorruptStream if a code
/// is not in the dictionary.
std::vector<Span> spans_from_stream(const EncodedStream& stream,
                                    const PatternDictionary& dictionary);

/// Attaches the metric of each span's pattern, normalized over the whole span
/// set and colored with `colormap`.
std::vector<AnnotatedSpan> annotate(std::span<const Span> spans,
                                    const PatternDictionary& dictionary,
                                    const CountRegister& counts, MetricKind metric,
                                    std::size_t prefix_length, const Colormap& colormap);

}  // namespace lzwv
