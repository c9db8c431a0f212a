/*
 * lzwv C API.
 *
 * Every fallible call returns an lzwv_status; on failure a human-readable
 * message for the calling thread is available from lzwv_last_error().
 * Buffers returned through out-parameters are owned by the caller and must be
 * released with lzwv_free().
 */
#ifndef LZWV_H_
#define LZWV_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(LZWV_BUILDING_LIBRARY)
#    define LZWV_API __declspec(dllexport)
#  else
#    define LZWV_API __declspec(dllimport)
#  endif
#else
#  define LZWV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lzwv_status {
  LZWV_OK = 0,
  LZWV_ERR_INVALID_ARGUMENT = 1,
  LZWV_ERR_CORRUPT_STREAM = 2,
  LZWV_ERR_BAD_MAGIC = 3,
  LZWV_ERR_UNSUPPORTED_VERSION = 4,
  LZWV_ERR_TRUNCATED_PAYLOAD = 5,
  LZWV_ERR_NONZERO_PADDING = 6,
  LZWV_ERR_TRAILING_DATA = 7,
  LZWV_ERR_UNKNOWN_COLORMAP = 8,
  LZWV_ERR_OUT_OF_RANGE = 9,
  LZWV_ERR_EMPTY_INPUT = 10,
  LZWV_ERR_INVALID_PREFIX_LENGTH = 11,
  LZWV_ERR_RENDER_LIMIT = 12,
  LZWV_ERR_IO = 13,
  LZWV_ERR_INTERNAL = 14
} lzwv_status;

typedef enum lzwv_metric {
  LZWV_METRIC_FREQUENCY = 0,
  LZWV_METRIC_LENGTH = 1,
  LZWV_METRIC_FREQ_TIMES_LENGTH = 2,
  LZWV_METRIC_PREFIX_COUNT = 3
} lzwv_metric;

typedef enum lzwv_column {
  LZWV_COLUMN_PATTERN = 0,
  LZWV_COLUMN_FREQUENCY = 1,
  LZWV_COLUMN_LENGTH = 2,
  LZWV_COLUMN_FREQ_TIMES_LENGTH = 3,
  LZWV_COLUMN_PREFIX_COUNT = 4
} lzwv_column;

typedef enum lzwv_order { LZWV_ORDER_DESC = 0, LZWV_ORDER_ASC = 1 } lzwv_order;

typedef enum lzwv_table_format { LZWV_TABLE_JSON = 0, LZWV_TABLE_CSV = 1 } lzwv_table_format;

typedef enum lzwv_render_format {
  LZWV_RENDER_HTML = 0,
  LZWV_RENDER_ANSI = 1,
  LZWV_RENDER_JSON = 2
} lzwv_render_format;

LZWV_API const char* lzwv_version(void);
/* "BadMagic", "TruncatedPayload", ... ; "Ok" for LZWV_OK. */
LZWV_API const char* lzwv_status_name(lzwv_status status);
LZWV_API const char* lzwv_last_error(void);
LZWV_API void lzwv_free(void* ptr);

/* ---- archives ---------------------------------------------------------- */

LZWV_API int lzwv_is_archive(const uint8_t* data, size_t size);
LZWV_API lzwv_status lzwv_compress(const uint8_t* data, size_t size, uint8_t** out,
                                   size_t* out_size);
LZWV_API lzwv_status lzwv_decompress(const uint8_t* data, size_t size, uint8_t** out,
                                     size_t* out_size);

/* ---- analysis ---------------------------------------------------------- */

typedef struct lzwv_analysis lzwv_analysis;

/* Raw bytes or an .lzwv archive (detected by magic). */
LZWV_API lzwv_status lzwv_analysis_create(const uint8_t* data, size_t size,
                                          lzwv_analysis** out);
LZWV_API void lzwv_analysis_destroy(lzwv_analysis* analysis);

LZWV_API uint64_t lzwv_analysis_original_length(const lzwv_analysis* analysis);
LZWV_API size_t lzwv_analysis_code_count(const lzwv_analysis* analysis);
LZWV_API size_t lzwv_analysis_dictionary_size(const lzwv_analysis* analysis);
LZWV_API uint64_t lzwv_analysis_total_increments(const lzwv_analysis* analysis);
LZWV_API int lzwv_analysis_from_archive(const lzwv_analysis* analysis);
/* Code stream copy; *out may be NULL when the stream is empty. */
LZWV_API lzwv_status lzwv_analysis_codes(const lzwv_analysis* analysis, uint32_t** out,
                                         size_t* out_count);

typedef struct lzwv_table_options {
  size_t prefix_length; /* >= 1 */
  lzwv_column sort_column;
  lzwv_order order;
  size_t top; /* 0 keeps every row */
  lzwv_table_format format;
} lzwv_table_options;

/* Options with the defaults: k = 5, frequency, descending, all rows, JSON. */
LZWV_API lzwv_table_options lzwv_table_options_default(void);
/* NUL-terminated text. */
LZWV_API lzwv_status lzwv_analysis_table(const lzwv_analysis* analysis,
                                         const lzwv_table_options* options, char** out,
                                         size_t* out_size);

typedef struct lzwv_render_options {
  lzwv_metric metric;
  const char* colormap; /* NULL selects "jet" */
  size_t prefix_length; /* >= 1 */
  lzwv_render_format format;
} lzwv_render_options;

LZWV_API lzwv_render_options lzwv_render_options_default(void);
LZWV_API lzwv_status lzwv_analysis_render(const lzwv_analysis* analysis,
                                          const lzwv_render_options* options, char** out,
                                          size_t* out_size);

/* ---- names ------------------------------------------------------------- */

LZWV_API size_t lzwv_colormap_count(void);
LZWV_API const char* lzwv_colormap_name(size_t index); /* NULL past the end */
LZWV_API lzwv_status lzwv_parse_metric(const char* name, lzwv_metric* out);
LZWV_API lzwv_status lzwv_parse_column(const char* name, lzwv_column* out);

/* ---- benchmark --------------------------------------------------------- */

typedef struct lzwv_bench_row {
  uint64_t n_bytes;
  double mean_ms;
  double per_byte_ns;
  uint64_t counter_increments;
} lzwv_bench_row;

/* rows must hold `count` entries. */
LZWV_API lzwv_status lzwv_bench(const uint64_t* sizes, size_t count, unsigned runs,
                                unsigned interval_ms, lzwv_bench_row* rows,
                                double* linearity_ratio);

/* ---- HTTP server ------------------------------------------------------- */

typedef struct lzwv_server lzwv_server;

typedef struct lzwv_server_options {
  const char* data_dir;    /* required */
  const char* asset_dir;   /* optional, served at "/" */
  size_t max_upload_bytes; /* 0 selects 64 MiB */
} lzwv_server_options;

LZWV_API lzwv_status lzwv_server_create(const lzwv_server_options* options, lzwv_server** out);
/* port 0 lets the OS choose; the bound port is written to *bound_port. */
LZWV_API lzwv_status lzwv_server_bind(lzwv_server* server, const char* host, int port,
                                      int* bound_port);
/* Blocks until lzwv_server_stop() is called from another thread. */
LZWV_API lzwv_status lzwv_server_listen(lzwv_server* server);
LZWV_API void lzwv_server_stop(lzwv_server* server);
LZWV_API void lzwv_server_destroy(lzwv_server* server);

#ifdef __cplusplus
}
#endif

#endif /* LZWV_H_ */
