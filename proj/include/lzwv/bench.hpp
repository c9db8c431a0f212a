#pragma once

#include <chrono>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace lzwv {

/// Worst-case timing ladder: N bytes of one repeated character.
inline constexpr std::uint64_t kDefaultBenchSizes[] = {10'000,  20'000,  30'000,
                                                       40'000,  50'000,  80'000,
                                                       160'000, 320'000, 640'000};
inline constexpr unsigned kDefaultBenchRuns = 20;

struct BenchRow {
  std::uint64_t n_bytes = 0;
  double mean_ms = 0.0;
  double per_byte_ns = 0.0;
  std::uint64_t counter_increments = 0;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  unsigned runs = 0;
  /// per_byte_ns at the largest size divided by per_byte_ns at the smallest.
  double linearity_ratio = 1.0;

  bool counters_exact() const noexcept;
};

/// Encodes N repeated 'a' bytes `runs` times per size, sleeping `interval`
/// between runs. Throws InvalidArgument for a zero size or zero runs.
BenchReport run_bench(std::span<const std::uint64_t> sizes, unsigned runs,
                      std::chrono::milliseconds interval = std::chrono::milliseconds{0});

nlohmann::ordered_json to_json(const BenchReport& report);
std::string format_table(const BenchReport& report);

}  // namespace lzwv
