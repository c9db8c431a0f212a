// lzwv command-line tool. Talks to the library only through the C API.

#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <pthread.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "lzwv/lzwv.h"

namespace {

struct Freer {
  void operator()(void* p) const { lzwv_free(p); }
};
template <typename T>
using CBuffer = std::unique_ptr<T, Freer>;

struct AnalysisDeleter {
  void operator()(lzwv_analysis* a) const { lzwv_analysis_destroy(a); }
};
using AnalysisHandle = std::unique_ptr<lzwv_analysis, AnalysisDeleter>;

struct CliFailure {
  std::string message;
};

void check(lzwv_status status, const std::string& context) {
  if (status != LZWV_OK) {
    throw CliFailure{context + ": " + lzwv_last_error()};
  }
}

std::string read_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliFailure{"cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

void write_output(const std::string& path, const char* data, size_t size) {
  if (path.empty() || path == "-") {
    std::fwrite(data, 1, size, stdout);
    std::fflush(stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(data, static_cast<std::streamsize>(size));
  if (!out) throw CliFailure{"cannot write " + path};
}

const uint8_t* bytes(const std::string& s) { return reinterpret_cast<const uint8_t*>(s.data()); }

AnalysisHandle load_analysis(const std::string& path) {
  const std::string content = read_input(path);
  lzwv_analysis* raw = nullptr;
  check(lzwv_analysis_create(bytes(content), content.size(), &raw), path);
  return AnalysisHandle(raw);
}

int cmd_compress(const std::string& input, std::string output) {
  if (output.empty()) output = input + ".lzwv";
  const std::string content = read_input(input);
  uint8_t* out = nullptr;
  size_t out_size = 0;
  check(lzwv_compress(bytes(content), content.size(), &out, &out_size), "compress");
  CBuffer<uint8_t> guard(out);
  write_output(output, reinterpret_cast<const char*>(out), out_size);
  const double ratio = content.empty() ? 0.0 : static_cast<double>(out_size) / content.size();
  std::fprintf(stderr, "%s: %zu bytes -> %s: %zu bytes (ratio %.4f)\n", input.c_str(),
               content.size(), output.c_str(), out_size, ratio);
  return 0;
}

int cmd_decompress(const std::string& input, const std::string& output) {
  const std::string content = read_input(input);
  uint8_t* out = nullptr;
  size_t out_size = 0;
  check(lzwv_decompress(bytes(content), content.size(), &out, &out_size), input);
  CBuffer<uint8_t> guard(out);
  write_output(output, reinterpret_cast<const char*>(out), out_size);
  return 0;
}

struct AnalyzeArgs {
  std::string input;
  std::string format = "json";
  size_t prefix_length = 5;
  std::string sort = "frequency";
  std::string order = "desc";
  size_t top = 0;
  std::string output;
};

int cmd_analyze(const AnalyzeArgs& args) {
  lzwv_table_options opts = lzwv_table_options_default();
  opts.prefix_length = args.prefix_length;
  check(lzwv_parse_column(args.sort.c_str(), &opts.sort_column), "--sort");
  opts.order = args.order == "asc" ? LZWV_ORDER_ASC : LZWV_ORDER_DESC;
  opts.top = args.top;
  opts.format = args.format == "csv" ? LZWV_TABLE_CSV : LZWV_TABLE_JSON;

  auto analysis = load_analysis(args.input);
  char* out = nullptr;
  size_t out_size = 0;
  check(lzwv_analysis_table(analysis.get(), &opts, &out, &out_size), "analyze");
  CBuffer<char> guard(out);
  write_output(args.output, out, out_size);
  return 0;
}

struct RenderArgs {
  std::string input;
  std::string metric = "frequency";
  std::string colormap = "jet";
  size_t prefix_length = 5;
  std::string format = "html";
  std::string output;
};

int cmd_render(const RenderArgs& args) {
  lzwv_render_options opts = lzwv_render_options_default();
  check(lzwv_parse_metric(args.metric.c_str(), &opts.metric), "--metric");
  opts.colormap = args.colormap.c_str();
  opts.prefix_length = args.prefix_length;
  opts.format = args.format == "ansi"   ? LZWV_RENDER_ANSI
                : args.format == "json" ? LZWV_RENDER_JSON
                                        : LZWV_RENDER_HTML;

  auto analysis = load_analysis(args.input);
  char* out = nullptr;
  size_t out_size = 0;
  check(lzwv_analysis_render(analysis.get(), &opts, &out, &out_size), "render");
  CBuffer<char> guard(out);
  write_output(args.output, out, out_size);
  return 0;
}

int cmd_bench(const std::vector<uint64_t>& sizes, unsigned runs, unsigned interval_ms) {
  std::vector<lzwv_bench_row> rows(sizes.size());
  double ratio = 0.0;
  check(lzwv_bench(sizes.data(), sizes.size(), runs, interval_ms, rows.data(), &ratio), "bench");

  std::printf("%12s %12s %14s %20s\n", "N (bytes)", "mean (ms)", "per byte (ns)",
              "counter increments");
  bool exact = true;
  auto json_rows = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    std::printf("%12llu %12.3f %14.3f %20llu\n", static_cast<unsigned long long>(r.n_bytes),
                r.mean_ms, r.per_byte_ns, static_cast<unsigned long long>(r.counter_increments));
    exact = exact && r.counter_increments == r.n_bytes;
    json_rows.push_back({{"n_bytes", r.n_bytes},
                         {"mean_ms", r.mean_ms},
                         {"per_byte_ns", r.per_byte_ns},
                         {"counter_increments", r.counter_increments}});
  }
  std::printf("runs: %u  linearity ratio: %.3f  counters exact: %s\n", runs, ratio,
              exact ? "yes" : "NO");
  const nlohmann::ordered_json report{{"runs", runs},
                              {"rows", json_rows},
                              {"linearity_ratio", ratio},
                              {"counters_exact", exact}};
  std::printf("%s\n", report.dump().c_str());
  return exact ? 0 : 1;
}

struct ServeArgs {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string data_dir;
  std::string asset_dir;
  size_t max_upload_mib = 64;
};

int cmd_serve(ServeArgs args) {
  if (args.data_dir.empty()) {
    const char* env = std::getenv("LZWV_DATA_DIR");
    args.data_dir = env && *env ? env : "lzwv-data";
  }
  lzwv_server_options opts{args.data_dir.c_str(),
                           args.asset_dir.empty() ? nullptr : args.asset_dir.c_str(),
                           args.max_upload_mib << 20};
  lzwv_server* server = nullptr;
  check(lzwv_server_create(&opts, &server), "serve");
  std::unique_ptr<lzwv_server, void (*)(lzwv_server*)> guard(server, lzwv_server_destroy);

  int bound = 0;
  check(lzwv_server_bind(server, args.host.c_str(), args.port, &bound), "serve");

  // Signals are taken synchronously on this thread; the listener thread
  // inherits the blocked mask.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  lzwv_status listen_status = LZWV_OK;
  std::string listen_error;
  std::thread listener([&] {
    listen_status = lzwv_server_listen(server);
    if (listen_status != LZWV_OK) listen_error = lzwv_last_error();
    // Wake the waiting main thread if the listener exits on its own.
    if (listen_status != LZWV_OK) kill(getpid(), SIGTERM);
  });

  std::printf("listening on http://%s:%d (data: %s)\n", args.host.c_str(), bound,
              args.data_dir.c_str());
  std::fflush(stdout);

  int sig = 0;
  sigwait(&signals, &sig);
  lzwv_server_stop(server);
  listener.join();
  if (listen_status != LZWV_OK) throw CliFailure{"serve: " + listen_error};
  std::fprintf(stderr, "stopped\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lzwv: pattern-counting LZW compressor and log pattern explorer"};
  app.require_subcommand(1);

  std::string in_path, out_path;
  auto* compress = app.add_subcommand("compress", "Write an .lzwv archive");
  compress->add_option("input", in_path, "File to compress")->required();
  compress->add_option("output", out_path, "Archive path (default: INPUT.lzwv)");

  auto* decompress = app.add_subcommand("decompress", "Restore the original bytes of an archive");
  decompress->add_option("input", in_path, "Archive")->required();
  decompress->add_option("output", out_path, "Output path (default: stdout)");

  AnalyzeArgs analyze_args;
  const std::vector<std::string> columns{"pattern", "frequency", "length", "freq_times_length",
                                         "prefix_count"};
  const std::vector<std::string> metrics{"frequency", "length", "freq_times_length",
                                         "prefix_count"};
  auto* analyze = app.add_subcommand("analyze", "Print the pattern table");
  analyze->add_option("input", analyze_args.input, "Raw file or .lzwv archive")->required();
  analyze->add_option("--format", analyze_args.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  analyze->add_option("--prefix-len", analyze_args.prefix_length, "Root prefix length k")
      ->check(CLI::Range(1ull, 1ull << 40));
  analyze->add_option("--sort", analyze_args.sort, "Sort column")->check(CLI::IsMember(columns));
  analyze->add_option("--order", analyze_args.order, "asc or desc")
      ->check(CLI::IsMember({"asc", "desc"}));
  analyze->add_option("--top", analyze_args.top, "Keep the first N rows")
      ->check(CLI::Range(1ull, 1ull << 40));
  analyze->add_option("-o,--output", analyze_args.output, "Output path (default: stdout)");

  RenderArgs render_args;
  auto* render = app.add_subcommand("render", "Color the file by a pattern metric");
  render->add_option("input", render_args.input, "Raw file or .lzwv archive")->required();
  render->add_option("--metric", render_args.metric, "Coloring metric")
      ->check(CLI::IsMember(metrics));
  render->add_option("--colormap", render_args.colormap, "sequential_blue, coolwarm or jet");
  render->add_option("--prefix-len", render_args.prefix_length, "Root prefix length k")
      ->check(CLI::Range(1ull, 1ull << 40));
  render->add_option("--format", render_args.format, "html, ansi or json")
      ->check(CLI::IsMember({"html", "ansi", "json"}));
  render->add_option("-o,--output", render_args.output, "Output path (default: stdout)");

  std::vector<uint64_t> sizes{10000, 20000, 30000, 40000, 50000, 80000, 160000, 320000, 640000};
  unsigned runs = 20;
  unsigned interval_ms = 0;
  auto* bench = app.add_subcommand("bench", "Time the encoder on N repeated bytes");
  bench->add_option("--sizes", sizes, "Input sizes in bytes")
      ->delimiter(',')
      ->check(CLI::Range(1ull, 1ull << 40));
  bench->add_option("--runs", runs, "Runs per size")->check(CLI::Range(1ull, 1ull << 40));
  bench->add_option("--interval-ms", interval_ms, "Pause between runs");

  ServeArgs serve_args;
  auto* serve = app.add_subcommand("serve", "Run the HTTP API");
  serve->add_option("--host", serve_args.host, "Bind address");
  serve->add_option("--port", serve_args.port, "Port (0 picks a free one)")
      ->check(CLI::Range(0, 65535));
  serve->add_option("--data-dir", serve_args.data_dir,
                    "Upload store (default: $LZWV_DATA_DIR or ./lzwv-data)");
  serve->add_option("--assets", serve_args.asset_dir, "Web UI assets served at /");
  serve->add_option("--max-upload-mib", serve_args.max_upload_mib, "Upload size limit")
      ->check(CLI::Range(1ull, 1ull << 40));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*compress) return cmd_compress(in_path, out_path);
    if (*decompress) return cmd_decompress(in_path, out_path);
    if (*analyze) return cmd_analyze(analyze_args);
    if (*render) return cmd_render(render_args);
    if (*bench) return cmd_bench(sizes, runs, interval_ms);
    if (*serve) return cmd_serve(serve_args);
  } catch (const CliFailure& f) {
    std::fprintf(stderr, "lzwv: %s\n", f.message.c_str());
    return 1;
  }
  return 0;
}
