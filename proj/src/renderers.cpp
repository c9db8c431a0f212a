#include "lzwv/renderers.hpp"

#include "lzwv/colormap.hpp"
#include "lzwv/error.hpp"
#include "lzwv/text_escape.hpp"

namespace lzwv {

namespace {

constexpr char kHex[] = "0123456789abcdef";

void check_limit(std::uint64_t bytes) {
  if (bytes > kRenderLimitBytes) {
    throw Error(ErrorCode::RenderLimitExceeded,
                std::to_string(bytes) + " bytes exceeds the " +
                    std::to_string(kRenderLimitBytes) + "-byte render limit");
  }
}

std::uint64_t covered_length(std::span<const AnnotatedSpan> spans) {
  return spans.empty() ? 0 : spans.back().span.end;
}

// Black or white text, whichever reads better on the background.
Rgb text_color(Rgb bg) {
  const double luma = 0.299 * bg.r + 0.587 * bg.g + 0.114 * bg.b;
  return luma > 140.0 ? Rgb{0, 0, 0} : Rgb{255, 255, 255};
}

void append_visible(std::string& out, char ch) {
  const auto c = static_cast<unsigned char>(ch);
  if (is_printable_ascii(c) || c == '\t') {
    out += ch;
  } else {
    out += "\\x";
    out += kHex[c >> 4];
    out += kHex[c & 0x0f];
  }
}

void append_html_escaped(std::string& out, char ch) {
  switch (ch) {
    case '<': out += "&lt;"; break;
    case '>': out += "&gt;"; break;
    case '&': out += "&amp;"; break;
    case '"': out += "&quot;"; break;
    default: append_visible(out, ch);
  }
}

std::string html_escape(std::string_view text) {
  std::string out;
  for (char c : text) append_html_escaped(out, c);
  return out;
}

std::string sgr(std::uint8_t mode, Rgb c) {
  return "\x1b[" + std::to_string(mode) + ";2;" + std::to_string(c.r) + ';' +
         std::to_string(c.g) + ';' + std::to_string(c.b) + 'm';
}

}  // namespace

std::string_view output_kind_name(OutputKind kind) noexcept {
  switch (kind) {
    case OutputKind::Ansi: return "ansi";
    case OutputKind::Html: return "html";
    case OutputKind::Json: return "json";
  }
  return "";
}

std::optional<OutputKind> parse_output_kind(std::string_view name) {
  for (auto kind : {OutputKind::Ansi, OutputKind::Html, OutputKind::Json}) {
    if (output_kind_name(kind) == name) return kind;
  }
  return std::nullopt;
}

void RenderConfig::validate() const {
  colormap_by_name(colormap_name);
  if (prefix_length < 1) {
    throw Error(ErrorCode::InvalidPrefixLength, "prefix length must be at least 1");
  }
}

std::string render_ansi(std::span<const AnnotatedSpan> spans, const RenderConfig& config) {
  config.validate();
  check_limit(covered_length(spans));
  constexpr std::string_view kReset = "\x1b[0m";

  std::string out;
  for (const AnnotatedSpan& a : spans) {
    // Foreground first so the background escape sits right before the text.
    const std::string color = sgr(38, text_color(a.color)) + sgr(48, a.color);
    const std::string& text = a.span.pattern;
    bool colored = false;
    for (char c : text) {
      if (c == '\n') {
        out += kReset;
        out += '\n';
        colored = false;
        continue;
      }
      if (!colored) {
        out += color;
        colored = true;
      }
      append_visible(out, c);
    }
  }
  out += kReset;
  return out;
}

std::string render_html(std::span<const AnnotatedSpan> spans, std::string_view original,
                        const RenderConfig& config) {
  config.validate();
  check_limit(std::max<std::uint64_t>(original.size(), covered_length(spans)));

  const std::string metric{metric_name(config.metric)};
  std::string body;
  body.reserve(original.size() * 8);
  for (const AnnotatedSpan& a : spans) {
    const std::string open = "<span style=\"background-color:" + to_hex(a.color) +
                             ";color:" + to_hex(text_color(a.color)) + "\" title=\"" +
                             html_escape(escape_bytes(a.span.pattern)) + "&#10;" + metric +
                             ": " + std::to_string(a.metric_value) + "\">";
    const std::string_view text = a.span.pattern;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t nl = std::min(text.find('\n', pos), text.size());
      if (nl > pos) {
        body += open;
        for (char c : text.substr(pos, nl - pos)) append_html_escaped(body, c);
        body += "</span>";
      }
      if (nl == text.size()) break;
      body += '\n';
      pos = nl + 1;
    }
  }

  std::string out =
      "<!DOCTYPE html>\n"
      "<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n<title>lzwv: " +
      metric + " / " + html_escape(config.colormap_name) +
      "</title>\n<style>\n"
      "body { margin: 0; background: #ffffff; }\n"
      "pre.log { margin: 1em; font-family: ui-monospace, Menlo, Consolas, monospace;"
      " font-size: 13px; line-height: 1.4; white-space: pre; }\n"
      "pre.log span:hover { outline: 1px solid #000000; }\n"
      "</style>\n</head>\n<body>\n<pre class=\"log\">";
  out += body;
  out += "</pre>\n</body>\n</html>\n";
  return out;
}

nlohmann::ordered_json make_interchange(std::span<const AnnotatedSpan> spans, const PatternTable& table,
                                const RenderConfig& config) {
  config.validate();
  check_limit(covered_length(spans));
  auto span_rows = nlohmann::ordered_json::array();
  for (const AnnotatedSpan& a : spans) {
    span_rows.push_back({
        {"start", a.span.start},
        {"end", a.span.end},
        {"pattern", escape_bytes(a.span.pattern)},
        {"metric_value", a.metric_value},
        {"normalized", a.normalized},
        {"color", to_hex(a.color)},
    });
  }
  return {
      {"original_length", covered_length(spans)},
      {"metric", metric_name(config.metric)},
      {"colormap", config.colormap_name},
      {"prefix_length", config.prefix_length},
      {"spans", std::move(span_rows)},
      {"table", rows_to_json(table.rows)},
  };
}

std::string export_json(std::span<const AnnotatedSpan> spans, const PatternTable& table,
                        const RenderConfig& config) {
  return make_interchange(spans, table, config).dump() + "\n";
}

nlohmann::ordered_json parse_interchange(std::string_view text) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::parse(text, nullptr, false);
  auto fail = [](const std::string& what) -> void {
    throw Error(ErrorCode::InvalidArgument, "interchange document: " + what);
  };
  if (doc.is_discarded() || !doc.is_object()) fail("not a JSON object");
  for (const char* key : {"original_length", "prefix_length"}) {
    if (!doc.contains(key) || !doc[key].is_number_unsigned()) fail(std::string("bad ") + key);
  }
  for (const char* key : {"metric", "colormap"}) {
    if (!doc.contains(key) || !doc[key].is_string()) fail(std::string("bad ") + key);
  }
  if (!doc.contains("spans") || !doc["spans"].is_array()) fail("missing spans");
  if (!doc.contains("table") || !doc["table"].is_array()) fail("missing table");
  std::uint64_t expected_start = 0;
  for (const auto& s : doc["spans"]) {
    for (const char* key : {"start", "end", "metric_value"}) {
      if (!s.contains(key) || !s[key].is_number_unsigned()) fail(std::string("span ") + key);
    }
    if (!s.contains("pattern") || !s["pattern"].is_string()) fail("span pattern");
    if (!s.contains("normalized") || !s["normalized"].is_number()) fail("span normalized");
    if (!s.contains("color") || !s["color"].is_string()) fail("span color");
    rgb_from_hex(s["color"].get<std::string>());
    if (s["start"].get<std::uint64_t>() != expected_start) fail("spans are not contiguous");
    expected_start = s["end"].get<std::uint64_t>();
  }
  if (expected_start != doc["original_length"].get<std::uint64_t>()) {
    fail("spans do not cover original_length");
  }
  return doc;
}

}  // namespace lzwv
