#pragma once

#include <string>
#include <vector>

#include "lzwv/lzw_codec.hpp"
#include "lzwv/pattern_table.hpp"
#include "lzwv/renderers.hpp"
#include "lzwv/span_annotator.hpp"

namespace lzwv {

/// Everything derived from one input file.
struct Analysis {
  std::string original;
  EncodedStream stream;
  PatternDictionary dictionary;
  CountRegister counts;
  bool from_archive = false;
};

/// Accepts raw bytes or an .lzwv archive (detected by magic). Archives are
/// decoded and their counts replayed from the code stream.
Analysis analyze_bytes(std::string content);

std::vector<AnnotatedSpan> annotate(const Analysis& analysis, MetricKind metric,
                                    std::size_t prefix_length, const Colormap& colormap);

/// Dispatches on config.output_kind.
std::string render(const Analysis& analysis, const RenderConfig& config);

}  // namespace lzwv
