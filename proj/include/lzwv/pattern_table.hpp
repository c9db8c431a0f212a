#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lzwv/lzw_codec.hpp"

namespace lzwv {

enum class MetricKind { Frequency, Length, FrequencyTimesLength, PrefixCount };

/// Sortable table columns: the pattern itself or any metric.
enum class SortColumn { Pattern, Frequency, Length, FrequencyTimesLength, PrefixCount };

enum class SortDirection { Ascending, Descending };

inline constexpr std::size_t kDefaultPrefixLength = 5;

std::string_view metric_name(MetricKind metric) noexcept;
std::optional<MetricKind> parse_metric(std::string_view name);
std::string_view column_name(SortColumn column) noexcept;
std::optional<SortColumn> parse_column(std::string_view name);
SortColumn to_column(MetricKind metric) noexcept;

struct PatternRecord {
  std::string pattern;
  Code code = 0;
  std::uint64_t length = 0;
  std::uint64_t frequency = 0;
  std::uint64_t freq_times_length = 0;
  /// First k bytes of the pattern; absent when the pattern is shorter than k.
  std::optional<std::string> prefix;
  /// Count of `prefix`, or 0 when it is absent.
  std::uint64_t prefix_count = 0;

  friend bool operator==(const PatternRecord&, const PatternRecord&) = default;
};

/// Metric row for one dictionary code at prefix length k.
PatternRecord make_record(const PatternDictionary& dictionary, const CountRegister& counts,
                          Code code, std::size_t prefix_length);

struct PatternTable {
  /// Rows in code order (creation order of the encoder).
  std::vector<PatternRecord> rows;
  std::size_t prefix_length = kDefaultPrefixLength;

  const PatternRecord* find(std::string_view pattern) const;
};

/// One row per pattern with count >= 1. Throws InvalidPrefixLength if k < 1.
PatternTable build_table(const PatternDictionary& dictionary, const CountRegister& counts,
                         std::size_t prefix_length);

std::uint64_t metric_value(const PatternRecord& record, MetricKind metric) noexcept;

/// Stable sort; equal metric values fall back to ascending byte order of the pattern.
std::vector<PatternRecord> sort_table(const PatternTable& table, SortColumn column,
                                      SortDirection direction);

/// First n rows by the metric, descending. Throws InvalidArgument if n < 1.
std::vector<PatternRecord> top_n(const PatternTable& table, MetricKind metric, std::size_t n);

nlohmann::ordered_json rows_to_json(std::span<const PatternRecord> rows);
/// RFC 4180 CSV with a header row, CRLF line endings.
std::string rows_to_csv(std::span<const PatternRecord> rows);

}  // namespace lzwv
