#include "lzwv/span_annotator.hpp"

#include "lzwv/error.hpp"

namespace lzwv {

std::vector<Span> spans_from_stream(const EncodedStream& stream,
                                    const PatternDictionary& dictionary) {
  std::vector<Span> spans;
  spans.reserve(stream.codes.size());
  std::uint64_t offset = 0;
  for (std::size_t i = 0; i < stream.codes.size(); ++i) {
    const Code code = stream.codes[i];
    if (!dictionary.contains(code)) {
      throw Error(ErrorCode::CorruptStream,
                  "code #" + std::to_string(i + 1) + " (" + std::to_string(code) +
                      ") is not in the dictionary");
    }
    Span s;
    s.start = offset;
    s.pattern = dictionary.pattern(code);
    s.end = offset + s.pattern.size();
    s.code = code;
    offset = s.end;
    spans.push_back(std::move(s));
  }
  return spans;
}

std::vector<AnnotatedSpan> annotate(std::span<const Span> spans,
                                    const PatternDictionary& dictionary,
                                    const CountRegister& counts, MetricKind metric,
                                    std::size_t prefix_length, const Colormap& colormap) {
  if (prefix_length < 1) {
    throw Error(ErrorCode::InvalidPrefixLength, "prefix length must be at least 1");
  }
  if (spans.empty()) return {};

  std::vector<std::uint64_t> values;
  values.reserve(spans.size());
  for (const Span& s : spans) {
    values.push_back(metric_value(make_record(dictionary, counts, s.code, prefix_length), metric));
  }
  const std::vector<double> normalized = normalize(std::span<const std::uint64_t>(values));

  std::vector<AnnotatedSpan> out;
  out.reserve(spans.size());
  for (std::size_t i = 0; i < spans.size(); ++i) {
    out.push_back(AnnotatedSpan{spans[i], values[i], normalized[i], colormap.sample(normalized[i])});
  }
  return out;
}

}  // namespace lzwv
