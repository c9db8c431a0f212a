#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

#include "lzwv/pattern_table.hpp"
#include "lzwv/span_annotator.hpp"

namespace lzwv {

enum class OutputKind { Ansi, Html, Json };

std::string_view output_kind_name(OutputKind kind) noexcept;
std::optional<OutputKind> parse_output_kind(std::string_view name);

struct RenderConfig {
  MetricKind metric = MetricKind::Frequency;
  std::string colormap_name = "jet";
  std::size_t prefix_length = kDefaultPrefixLength;
  OutputKind output_kind = OutputKind::Html;

  /// Throws UnknownColormap or InvalidPrefixLength.
  void validate() const;
};

/// Largest file a single render call accepts.
inline constexpr std::size_t kRenderLimitBytes = std::size_t{16} << 20;

/// 24-bit SGR background per span. Newlines and tabs pass through (the color is
/// reset before a newline and re-applied after), other non-printable bytes are
/// shown as \xNN. Ends with a reset.
std::string render_ansi(std::span<const AnnotatedSpan> spans, const RenderConfig& config);

/// Self-contained HTML page, one inline-styled element per span fragment
/// (spans are split at newlines).
std::string render_html(std::span<const AnnotatedSpan> spans, std::string_view original,
                        const RenderConfig& config);

/// Interchange document:
/// {original_length, metric, colormap, prefix_length,
///  spans: [{start, end, pattern, metric_value, normalized, color}],
///  table: [{pattern, length, frequency, freq_times_length, prefix, prefix_count}]}
nlohmann::ordered_json make_interchange(std::span<const AnnotatedSpan> spans, const PatternTable& table,
                                const RenderConfig& config);
std::string export_json(std::span<const AnnotatedSpan> spans, const PatternTable& table,
                        const RenderConfig& config);
/// Parses and schema-checks an interchange document. Throws InvalidArgument.
nlohmann::ordered_json parse_interchange(std::string_view text);

}  // namespace lzwv
