#include "lzwv/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <thread>

#include "lzwv/error.hpp"
#include "lzwv/lzw_codec.hpp"

namespace lzwv {

bool BenchReport::counters_exact() const noexcept {
  return std::all_of(rows.begin(), rows.end(),
                     [](const BenchRow& r) { return r.counter_increments == r.n_bytes; });
}

BenchReport run_bench(std::span<const std::uint64_t> sizes, unsigned runs,
                      std::chrono::milliseconds interval) {
  if (runs == 0) throw Error(ErrorCode::InvalidArgument, "bench needs at least one run");
  if (sizes.empty()) throw Error(ErrorCode::InvalidArgument, "bench needs at least one size");
  BenchReport report;
  report.runs = runs;
  for (std::uint64_t n : sizes) {
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "bench sizes must be >= 1");
    const std::string input(n, 'a');
    // One untimed pass warms the allocator and caches.
    BenchRow row;
    row.n_bytes = n;
    row.counter_increments = encode_with_counts(input).counts.total_increments();

    std::chrono::duration<double, std::milli> total{0};
    for (unsigned r = 0; r < runs; ++r) {
      if (r > 0 && interval.count() > 0) std::this_thread::sleep_for(interval);
      const auto t0 = std::chrono::steady_clock::now();
      auto result = encode_with_counts(input);
      const auto t1 = std::chrono::steady_clock::now();
      total += t1 - t0;
      if (result.counts.total_increments() != row.counter_increments) {
        throw Error(ErrorCode::Internal, "counter value changed between runs");
      }
    }
    row.mean_ms = total.count() / runs;
    row.per_byte_ns = row.mean_ms * 1e6 / static_cast<double>(n);
    report.rows.push_back(row);
  }
  const auto [lo, hi] = std::minmax_element(
      report.rows.begin(), report.rows.end(),
      [](const BenchRow& a, const BenchRow& b) { return a.n_bytes < b.n_bytes; });
  report.linearity_ratio = hi->per_byte_ns / lo->per_byte_ns;
  return report;
}

nlohmann::ordered_json to_json(const BenchReport& report) {
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"n_bytes", r.n_bytes},
                    {"mean_ms", r.mean_ms},
                    {"per_byte_ns", r.per_byte_ns},
                    {"counter_increments", r.counter_increments}});
  }
  return {{"runs", report.runs},
          {"rows", std::move(rows)},
          {"linearity_ratio", report.linearity_ratio},
          {"counters_exact", report.counters_exact()}};
}

std::string format_table(const BenchReport& report) {
  std::string out;
  char line[128];
  std::snprintf(line, sizeof line, "%12s %12s %14s %20s\n", "N (bytes)", "mean (ms)",
                "per byte (ns)", "counter increments");
  out += line;
  for (const auto& r : report.rows) {
    std::snprintf(line, sizeof line, "%12llu %12.3f %14.3f %20llu\n",
                  static_cast<unsigned long long>(r.n_bytes), r.mean_ms, r.per_byte_ns,
                  static_cast<unsigned long long>(r.counter_increments));
    out += line;
  }
  std::snprintf(line, sizeof line, "runs: %u  linearity ratio: %.3f\n", report.runs,
                report.linearity_ratio);
  out += line;
  return out;
}

}  // namespace lzwv
