#include "lzwv/lzwv.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "lzwv/analysis.hpp"
#include "lzwv/api_server.hpp"
#include "lzwv/bench.hpp"
#include "lzwv/colormap.hpp"
#include "lzwv/container_format.hpp"
#include "lzwv/error.hpp"

struct lzwv_analysis {
  lzwv::Analysis analysis;
};

struct lzwv_server {
  explicit lzwv_server(lzwv::ServerOptions options) : server(std::move(options)) {}
  lzwv::ApiServer server;
};

namespace {

thread_local std::string g_last_error;

lzwv_status fail(lzwv_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
lzwv_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    g_last_error.clear();
    return LZWV_OK;
  } catch (const lzwv::Error& e) {
    return fail(static_cast<lzwv_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(LZWV_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(LZWV_ERR_INTERNAL, e.what());
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw lzwv::Error(lzwv::ErrorCode::InvalidArgument, what);
}

std::string_view view(const uint8_t* data, size_t size) {
  require(data != nullptr || size == 0, "null input buffer");
  return {reinterpret_cast<const char*>(data), size};
}

// Copies into a malloc'd, NUL-terminated buffer.
template <typename Out>
void hand_out(std::string_view bytes, Out** out, size_t* out_size) {
  require(out != nullptr && out_size != nullptr, "null output pointer");
  auto* buf = static_cast<char*>(std::malloc(bytes.size() + 1));
  if (!buf) throw std::bad_alloc();
  std::memcpy(buf, bytes.data(), bytes.size());
  buf[bytes.size()] = '\0';
  *out = reinterpret_cast<Out*>(buf);
  *out_size = bytes.size();
}

lzwv::MetricKind to_metric(lzwv_metric m) {
  switch (m) {
    case LZWV_METRIC_FREQUENCY: return lzwv::MetricKind::Frequency;
    case LZWV_METRIC_LENGTH: return lzwv::MetricKind::Length;
    case LZWV_METRIC_FREQ_TIMES_LENGTH: return lzwv::MetricKind::FrequencyTimesLength;
    case LZWV_METRIC_PREFIX_COUNT: return lzwv::MetricKind::PrefixCount;
  }
  throw lzwv::Error(lzwv::ErrorCode::InvalidArgument, "unknown metric value");
}

lzwv::SortColumn to_column(lzwv_column c) {
  switch (c) {
    case LZWV_COLUMN_PATTERN: return lzwv::SortColumn::Pattern;
    case LZWV_COLUMN_FREQUENCY: return lzwv::SortColumn::Frequency;
    case LZWV_COLUMN_LENGTH: return lzwv::SortColumn::Length;
    case LZWV_COLUMN_FREQ_TIMES_LENGTH: return lzwv::SortColumn::FrequencyTimesLength;
    case LZWV_COLUMN_PREFIX_COUNT: return lzwv::SortColumn::PrefixCount;
  }
  throw lzwv::Error(lzwv::ErrorCode::InvalidArgument, "unknown column value");
}

}  // namespace

extern "C" {

const char* lzwv_version(void) { return "1.0.0"; }

const char* lzwv_status_name(lzwv_status status) {
  if (status == LZWV_OK) return "Ok";
  // error_name returns views of string literals.
  return lzwv::error_name(static_cast<lzwv::ErrorCode>(status)).data();
}

const char* lzwv_last_error(void) { return g_last_error.c_str(); }

void lzwv_free(void* ptr) { std::free(ptr); }

int lzwv_is_archive(const uint8_t* data, size_t size) {
  if (data == nullptr) return 0;
  return lzwv::has_container_magic(view(data, size)) ? 1 : 0;
}

lzwv_status lzwv_compress(const uint8_t* data, size_t size, uint8_t** out, size_t* out_size) {
  return guarded([&] {
    auto encoded = lzwv::encode_with_counts(view(data, size));
    hand_out(lzwv::pack(encoded.stream), out, out_size);
  });
}

lzwv_status lzwv_decompress(const uint8_t* data, size_t size, uint8_t** out, size_t* out_size) {
  return guarded([&] {
    hand_out(lzwv::decode(lzwv::unpack(view(data, size))), out, out_size);
  });
}

lzwv_status lzwv_analysis_create(const uint8_t* data, size_t size, lzwv_analysis** out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    auto* handle = new lzwv_analysis{lzwv::analyze_bytes(std::string(view(data, size)))};
    *out = handle;
  });
}

void lzwv_analysis_destroy(lzwv_analysis* analysis) { delete analysis; }

uint64_t lzwv_analysis_original_length(const lzwv_analysis* a) {
  return a ? a->analysis.original.size() : 0;
}

size_t lzwv_analysis_code_count(const lzwv_analysis* a) {
  return a ? a->analysis.stream.codes.size() : 0;
}

size_t lzwv_analysis_dictionary_size(const lzwv_analysis* a) {
  return a ? a->analysis.dictionary.size() : 0;
}

uint64_t lzwv_analysis_total_increments(const lzwv_analysis* a) {
  return a ? a->analysis.counts.total_increments() : 0;
}

int lzwv_analysis_from_archive(const lzwv_analysis* a) {
  return a && a->analysis.from_archive ? 1 : 0;
}

lzwv_status lzwv_analysis_codes(const lzwv_analysis* a, uint32_t** out, size_t* out_count) {
  return guarded([&] {
    require(a != nullptr && out != nullptr && out_count != nullptr, "null argument");
    const auto& codes = a->analysis.stream.codes;
    *out = nullptr;
    *out_count = codes.size();
    if (codes.empty()) return;
    auto* buf = static_cast<uint32_t*>(std::malloc(codes.size() * sizeof(uint32_t)));
    if (!buf) throw std::bad_alloc();
    std::memcpy(buf, codes.data(), codes.size() * sizeof(uint32_t));
    *out = buf;
  });
}

lzwv_table_options lzwv_table_options_default(void) {
  return lzwv_table_options{lzwv::kDefaultPrefixLength, LZWV_COLUMN_FREQUENCY, LZWV_ORDER_DESC,
                            0, LZWV_TABLE_JSON};
}

lzwv_status lzwv_analysis_table(const lzwv_analysis* a, const lzwv_table_options* options,
                                char** out, size_t* out_size) {
  return guarded([&] {
    require(a != nullptr && options != nullptr, "null argument");
    require(options->order == LZWV_ORDER_ASC || options->order == LZWV_ORDER_DESC,
            "unknown sort order");
    const auto& an = a->analysis;
    const auto table = lzwv::build_table(an.dictionary, an.counts, options->prefix_length);
    auto rows = lzwv::sort_table(table, to_column(options->sort_column),
                                 options->order == LZWV_ORDER_ASC
                                     ? lzwv::SortDirection::Ascending
                                     : lzwv::SortDirection::Descending);
    if (options->top > 0 && rows.size() > options->top) rows.resize(options->top);
    switch (options->format) {
      case LZWV_TABLE_JSON: hand_out(lzwv::rows_to_json(rows).dump(2) + "\n", out, out_size); return;
      case LZWV_TABLE_CSV: hand_out(lzwv::rows_to_csv(rows), out, out_size); return;
    }
    throw lzwv::Error(lzwv::ErrorCode::InvalidArgument, "unknown table format");
  });
}

lzwv_render_options lzwv_render_options_default(void) {
  return lzwv_render_options{LZWV_METRIC_FREQUENCY, nullptr, lzwv::kDefaultPrefixLength,
                             LZWV_RENDER_HTML};
}

lzwv_status lzwv_analysis_render(const lzwv_analysis* a, const lzwv_render_options* options,
                                 char** out, size_t* out_size) {
  return guarded([&] {
    require(a != nullptr && options != nullptr, "null argument");
    lzwv::RenderConfig config;
    config.metric = to_metric(options->metric);
    config.colormap_name = options->colormap ? options->colormap : "jet";
    config.prefix_length = options->prefix_length;
    switch (options->format) {
      case LZWV_RENDER_HTML: config.output_kind = lzwv::OutputKind::Html; break;
      case LZWV_RENDER_ANSI: config.output_kind = lzwv::OutputKind::Ansi; break;
      case LZWV_RENDER_JSON: config.output_kind = lzwv::OutputKind::Json; break;
      default: throw lzwv::Error(lzwv::ErrorCode::InvalidArgument, "unknown render format");
    }
    hand_out(lzwv::render(a->analysis, config), out, out_size);
  });
}

size_t lzwv_colormap_count(void) { return lzwv::list_colormaps().size(); }

const char* lzwv_colormap_name(size_t index) {
  static const std::vector<std::string> names = lzwv::list_colormaps();
  return index < names.size() ? names[index].c_str() : nullptr;
}

lzwv_status lzwv_parse_metric(const char* name, lzwv_metric* out) {
  return guarded([&] {
    require(name != nullptr && out != nullptr, "null argument");
    auto m = lzwv::parse_metric(name);
    if (!m) throw lzwv::Error(lzwv::ErrorCode::InvalidArgument,
                              std::string("unknown metric '") + name + "'");
    *out = static_cast<lzwv_metric>(static_cast<int>(*m));
  });
}

lzwv_status lzwv_parse_column(const char* name, lzwv_column* out) {
  return guarded([&] {
    require(name != nullptr && out != nullptr, "null argument");
    auto c = lzwv::parse_column(name);
    if (!c) throw lzwv::Error(lzwv::ErrorCode::InvalidArgument,
                              std::string("unknown column '") + name + "'");
    *out = static_cast<lzwv_column>(static_cast<int>(*c));
  });
}

lzwv_status lzwv_bench(const uint64_t* sizes, size_t count, unsigned runs, unsigned interval_ms,
                       lzwv_bench_row* rows, double* linearity_ratio) {
  return guarded([&] {
    require(sizes != nullptr && rows != nullptr && count > 0, "bench needs sizes and rows");
    const auto report = lzwv::run_bench(std::span<const uint64_t>(sizes, count), runs,
                                        std::chrono::milliseconds{interval_ms});
    for (size_t i = 0; i < count; ++i) {
      const auto& r = report.rows[i];
      rows[i] = lzwv_bench_row{r.n_bytes, r.mean_ms, r.per_byte_ns, r.counter_increments};
    }
    if (linearity_ratio) *linearity_ratio = report.linearity_ratio;
  });
}

lzwv_status lzwv_server_create(const lzwv_server_options* options, lzwv_server** out) {
  return guarded([&] {
    require(options != nullptr && options->data_dir != nullptr && out != nullptr,
            "server needs a data directory");
    lzwv::ServerOptions opts;
    opts.data_dir = options->data_dir;
    if (options->asset_dir) opts.asset_dir = options->asset_dir;
    if (options->max_upload_bytes > 0) opts.max_upload_bytes = options->max_upload_bytes;
    *out = new lzwv_server(std::move(opts));
  });
}

lzwv_status lzwv_server_bind(lzwv_server* server, const char* host, int port, int* bound_port) {
  return guarded([&] {
    require(server != nullptr, "null server");
    require(port >= 0 && port <= 65535, "port out of range");
    const int p = server->server.bind(host ? host : "127.0.0.1", port);
    if (bound_port) *bound_port = p;
  });
}

lzwv_status lzwv_server_listen(lzwv_server* server) {
  return guarded([&] {
    require(server != nullptr, "null server");
    server->server.listen();
  });
}

void lzwv_server_stop(lzwv_server* server) {
  if (server) server->server.stop();
}

void lzwv_server_destroy(lzwv_server* server) { delete server; }

}  // extern "C"
