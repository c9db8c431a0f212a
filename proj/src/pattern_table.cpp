#include "lzwv/pattern_table.hpp"

#include <algorithm>
#include <array>

#include "lzwv/error.hpp"
#include "lzwv/text_escape.hpp"

namespace lzwv {

namespace {

struct ColumnName {
  SortColumn column;
  std::string_view name;
};

constexpr std::array<ColumnName, 5> kColumns{{
    {SortColumn::Pattern, "pattern"},
    {SortColumn::Frequency, "frequency"},
    {SortColumn::Length, "length"},
    {SortColumn::FrequencyTimesLength, "freq_times_length"},
    {SortColumn::PrefixCount, "prefix_count"},
}};

std::uint64_t column_value(const PatternRecord& r, SortColumn column) noexcept {
  switch (column) {
    case SortColumn::Frequency: return r.frequency;
    case SortColumn::Length: return r.length;
    case SortColumn::FrequencyTimesLength: return r.freq_times_length;
    case SortColumn::PrefixCount: return r.prefix_count;
    case SortColumn::Pattern: break;
  }
  return 0;
}

std::string csv_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string_view metric_name(MetricKind metric) noexcept {
  return column_name(to_column(metric));
}

std::optional<MetricKind> parse_metric(std::string_view name) {
  auto column = parse_column(name);
  if (!column) return std::nullopt;
  switch (*column) {
    case SortColumn::Frequency: return MetricKind::Frequency;
    case SortColumn::Length: return MetricKind::Length;
    case SortColumn::FrequencyTimesLength: return MetricKind::FrequencyTimesLength;
    case SortColumn::PrefixCount: return MetricKind::PrefixCount;
    case SortColumn::Pattern: break;
  }
  return std::nullopt;
}

std::string_view column_name(SortColumn column) noexcept {
  for (const auto& c : kColumns) {
    if (c.column == column) return c.name;
  }
  return "";
}

std::optional<SortColumn> parse_column(std::string_view name) {
  for (const auto& c : kColumns) {
    if (c.name == name) return c.column;
  }
  return std::nullopt;
}

SortColumn to_column(MetricKind metric) noexcept {
  switch (metric) {
    case MetricKind::Frequency: return SortColumn::Frequency;
    case MetricKind::Length: return SortColumn::Length;
    case MetricKind::FrequencyTimesLength: return SortColumn::FrequencyTimesLength;
    case MetricKind::PrefixCount: return SortColumn::PrefixCount;
  }
  return SortColumn::Frequency;
}

PatternRecord make_record(const PatternDictionary& dictionary, const CountRegister& counts,
                          Code code, std::size_t prefix_length) {
  PatternRecord r;
  r.code = code;
  r.pattern = dictionary.pattern(code);
  r.length = r.pattern.size();
  r.frequency = counts.count(code);
  r.freq_times_length = r.frequency * r.length;
  // Shorter patterns get no prefix class and a prefix count of 0.
  if (r.length >= prefix_length) {
    r.prefix = r.pattern.substr(0, prefix_length);
    r.prefix_count = counts.count(dictionary.ancestor(code, prefix_length));
  }
  return r;
}

const PatternRecord* PatternTable::find(std::string_view pattern) const {
  auto it = std::find_if(rows.begin(), rows.end(),
                         [&](const PatternRecord& r) { return r.pattern == pattern; });
  return it == rows.end() ? nullptr : &*it;
}

PatternTable build_table(const PatternDictionary& dictionary, const CountRegister& counts,
                         std::size_t prefix_length) {
  if (prefix_length < 1) {
    throw Error(ErrorCode::InvalidPrefixLength, "prefix length must be at least 1");
  }
  PatternTable table;
  table.prefix_length = prefix_length;
  for (Code code = 0; code < dictionary.next_code(); ++code) {
    if (counts.count(code) == 0) continue;
    table.rows.push_back(make_record(dictionary, counts, code, prefix_length));
  }
  return table;
}

std::uint64_t metric_value(const PatternRecord& record, MetricKind metric) noexcept {
  return column_value(record, to_column(metric));
}

std::vector<PatternRecord> sort_table(const PatternTable& table, SortColumn column,
                                      SortDirection direction) {
  std::vector<PatternRecord> rows = table.rows;
  const bool desc = direction == SortDirection::Descending;
  if (column == SortColumn::Pattern) {
    std::stable_sort(rows.begin(), rows.end(), [desc](const auto& a, const auto& b) {
      return desc ? b.pattern < a.pattern : a.pattern < b.pattern;
    });
    return rows;
  }
  std::stable_sort(rows.begin(), rows.end(), [column, desc](const auto& a, const auto& b) {
    const auto va = column_value(a, column);
    const auto vb = column_value(b, column);
    if (va != vb) return desc ? va > vb : va < vb;
    return a.pattern < b.pattern;
  });
  return rows;
}

std::vector<PatternRecord> top_n(const PatternTable& table, MetricKind metric, std::size_t n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "top-n requires n >= 1");
  auto rows = sort_table(table, to_column(metric), SortDirection::Descending);
  if (rows.size() > n) rows.resize(n);
  return rows;
}

nlohmann::ordered_json rows_to_json(std::span<const PatternRecord> rows) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    out.push_back({
        {"pattern", escape_bytes(r.pattern)},
        {"length", r.length},
        {"frequency", r.frequency},
        {"freq_times_length", r.freq_times_length},
        {"prefix", r.prefix ? nlohmann::ordered_json(escape_bytes(*r.prefix)) : nlohmann::ordered_json(nullptr)},
        {"prefix_count", r.prefix_count},
    });
  }
  return out;
}

std::string rows_to_csv(std::span<const PatternRecord> rows) {
  std::string out = "pattern,length,frequency,freq_times_length,prefix,prefix_count\r\n";
  for (const auto& r : rows) {
    out += csv_field(escape_bytes(r.pattern));
    out += ',' + std::to_string(r.length);
    out += ',' + std::to_string(r.frequency);
    out += ',' + std::to_string(r.freq_times_length);
    out += ',' + (r.prefix ? csv_field(escape_bytes(*r.prefix)) : std::string());
    out += ',' + std::to_string(r.prefix_count);
    out += "\r\n";
  }
  return out;
}

}  // namespace lzwv
