#include "lzwv/analysis.hpp"

#include "lzwv/container_format.hpp"
#include "lzwv/error.hpp"

namespace lzwv {

Analysis analyze_bytes(std::string content) {
  Analysis a;
  if (has_container_magic(content)) {
    a.stream = unpack(content);
    auto replay = replay_counts(a.stream);
    a.dictionary = std::move(replay.dictionary);
    a.counts = std::move(replay.counts);
    a.original = decode(a.stream);
    a.from_archive = true;
    return a;
  }
  auto encoded = encode_with_counts(content);
  a.stream = std::move(encoded.stream);
  a.dictionary = std::move(encoded.dictionary);
  a.counts = std::move(encoded.counts);
  a.original = std::move(content);
  return a;
}

std::vector<AnnotatedSpan> annotate(const Analysis& analysis, MetricKind metric,
                                    std::size_t prefix_length, const Colormap& colormap) {
  const auto spans = spans_from_stream(analysis.stream, analysis.dictionary);
  return annotate(spans, analysis.dictionary, analysis.counts, metric, prefix_length, colormap);
}

std::string render(const Analysis& analysis, const RenderConfig& config) {
  config.validate();
  if (analysis.original.size() > kRenderLimitBytes) {
    throw Error(ErrorCode::RenderLimitExceeded,
                std::to_string(analysis.original.size()) + " bytes exceeds the render limit");
  }
  const auto spans = annotate(analysis, config.metric, config.prefix_length,
                              colormap_by_name(config.colormap_name));
  switch (config.output_kind) {
    case OutputKind::Ansi: return render_ansi(spans, config);
    case OutputKind::Html: return render_html(spans, analysis.original, config);
    case OutputKind::Json:
      return export_json(spans, build_table(analysis.dictionary, analysis.counts,
                                            config.prefix_length),
                         config);
  }
  return {};
}

}  // namespace lzwv
