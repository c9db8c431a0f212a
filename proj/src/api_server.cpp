#include "lzwv/api_server.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <ctime>
#include <fstream>
#include <regex>
#include <sstream>

#include <httplib.h>

#include "lzwv/colormap.hpp"
#include "lzwv/container_format.hpp"
#include "lzwv/error.hpp"

namespace fs = std::filesystem;

namespace lzwv {

namespace {

constexpr const char* kOriginalFile = "original";
constexpr const char* kArchiveFile = "archive.lzwv";
constexpr const char* kMetaFile = "meta.json";

const std::regex kIdPattern("[0-9a-f]{64}");

std::string now_utc() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

void write_file_atomic(const fs::path& path, std::string_view bytes) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::Io, "short write to " + tmp.string());
  }
  fs::rename(tmp, path);
}

FileEntry entry_from_json(const nlohmann::ordered_json& j) {
  return FileEntry{j.at("id").get<std::string>(), j.at("name").get<std::string>(),
                   j.at("size").get<std::uint64_t>(), j.at("uploaded_at").get<std::string>()};
}

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::Io:
    case ErrorCode::Internal: return 500;
    case ErrorCode::RenderLimitExceeded: return 413;
    default: return 400;
  }
}

void send_json(httplib::Response& res, const nlohmann::ordered_json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump() + "\n", "application/json");
}

void send_error(httplib::Response& res, int status, std::string_view error,
                const std::string& message) {
  send_json(res, {{"error", error}, {"message", message}}, status);
}

void send_error(httplib::Response& res, const Error& e) {
  send_error(res, http_status(e.code()), error_name(e.code()), e.what());
}

std::size_t parse_prefix_length(const httplib::Request& req) {
  if (!req.has_param("prefix_len")) return kDefaultPrefixLength;
  const std::string v = req.get_param_value("prefix_len");
  std::size_t k = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), k);
  if (ec != std::errc{} || ptr != v.data() + v.size() || k < 1) {
    throw Error(ErrorCode::InvalidPrefixLength, "prefix_len must be a positive integer");
  }
  return k;
}

}  // namespace

nlohmann::ordered_json to_json(const FileEntry& entry) {
  return {{"id", entry.id},
          {"name", entry.name},
          {"size", entry.size},
          {"uploaded_at", entry.uploaded_at}};
}

std::string content_id(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::Internal, "SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0x0f];
  }
  return out;
}

FileStore::FileStore(fs::path data_dir) : data_dir_(std::move(data_dir)) {
  std::error_code ec;
  fs::create_directories(data_dir_, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create " + data_dir_.string() + ": " + ec.message());
}

std::shared_ptr<FileStore::Slot> FileStore::slot(const std::string& id) {
  std::lock_guard lock(slots_mutex_);
  auto& s = slots_[id];
  if (!s) s = std::make_shared<Slot>();
  return s;
}

bool FileStore::load(Slot& s, const std::string& id) {
  if (s.analysis) return true;
  const fs::path dir = data_dir_ / id;
  if (!fs::exists(dir / kMetaFile) || !fs::exists(dir / kOriginalFile)) return false;

  s.entry = entry_from_json(nlohmann::ordered_json::parse(read_file(dir / kMetaFile)));
  auto a = std::make_shared<Analysis>();
  a->original = read_file(dir / kOriginalFile);
  bool cached = false;
  if (fs::exists(dir / kArchiveFile)) {
    try {
      a->stream = unpack(read_file(dir / kArchiveFile));
      if (a->stream.original_length == a->original.size()) {
        auto replay = replay_counts(a->stream);
        a->dictionary = std::move(replay.dictionary);
        a->counts = std::move(replay.counts);
        cached = true;
      }
    } catch (const Error&) {
      cached = false;
    }
  }
  if (!cached) {
    auto encoded = encode_with_counts(a->original);
    a->stream = std::move(encoded.stream);
    a->dictionary = std::move(encoded.dictionary);
    a->counts = std::move(encoded.counts);
    write_file_atomic(dir / kArchiveFile, pack(a->stream));
  }
  s.analysis = std::move(a);
  return true;
}

FileEntry FileStore::put(std::string bytes, std::string name) {
  Analysis analysis = analyze_bytes(std::move(bytes));
  const std::string id = content_id(analysis.original);
  auto s = slot(id);
  std::lock_guard lock(s->mutex);
  if (load(*s, id)) return *s->entry;

  const fs::path dir = data_dir_ / id;
  fs::create_directories(dir);
  FileEntry entry{id, std::move(name), analysis.original.size(), now_utc()};
  write_file_atomic(dir / kOriginalFile, analysis.original);
  write_file_atomic(dir / kArchiveFile, pack(analysis.stream));
  // Metadata last: its presence marks a complete entry.
  write_file_atomic(dir / kMetaFile, to_json(entry).dump());
  s->entry = entry;
  s->analysis = std::make_shared<const Analysis>(std::move(analysis));
  return entry;
}

std::optional<FileEntry> FileStore::entry(const std::string& id) {
  if (!std::regex_match(id, kIdPattern)) return std::nullopt;
  auto s = slot(id);
  std::lock_guard lock(s->mutex);
  if (!load(*s, id)) return std::nullopt;
  return s->entry;
}

std::shared_ptr<const Analysis> FileStore::analysis(const std::string& id) {
  if (!std::regex_match(id, kIdPattern)) return nullptr;
  auto s = slot(id);
  std::lock_guard lock(s->mutex);
  if (!load(*s, id)) return nullptr;
  return s->analysis;
}

std::vector<FileEntry> FileStore::list() const {
  std::vector<FileEntry> out;
  std::error_code ec;
  for (const auto& dir : fs::directory_iterator(data_dir_, ec)) {
    const fs::path meta = dir.path() / kMetaFile;
    if (!dir.is_directory() || !fs::exists(meta)) continue;
    try {
      out.push_back(entry_from_json(nlohmann::ordered_json::parse(read_file(meta))));
    } catch (const std::exception&) {
      continue;
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.uploaded_at != b.uploaded_at ? a.uploaded_at < b.uploaded_at : a.id < b.id;
  });
  return out;
}

struct ApiServer::Impl {
  explicit Impl(ServerOptions opts) : options(std::move(opts)), store(options.data_dir) {
    routes();
  }

  void routes();
  std::shared_ptr<const Analysis> require(const httplib::Request& req, httplib::Response& res);

  ServerOptions options;
  FileStore store;
  httplib::Server http;
  bool bound = false;
};

std::shared_ptr<const Analysis> ApiServer::Impl::require(const httplib::Request& req,
                                                         httplib::Response& res) {
  auto a = store.analysis(req.matches[1]);
  if (!a) send_error(res, 404, "NotFound", "no file with id " + std::string(req.matches[1]));
  return a;
}

void ApiServer::Impl::routes() {
  http.set_payload_max_length(options.max_upload_bytes);
  // The library default sets SO_REUSEPORT, which lets two servers share a port.
  http.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });
  http.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                            {"Access-Control-Allow-Methods", "GET, HEAD, POST, OPTIONS"},
                            {"Access-Control-Allow-Headers", "Content-Type"}});
  http.set_exception_handler([](const httplib::Request&, httplib::Response& res,
                                std::exception_ptr ep) {
    try {
      std::rethrow_exception(ep);
    } catch (const Error& e) {
      send_error(res, e);
    } catch (const std::exception& e) {
      send_error(res, 500, "Internal", e.what());
    }
  });

  http.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
  });

  http.Get("/api/colormaps", [](const httplib::Request&, httplib::Response& res) {
    send_json(res, list_colormaps());
  });

  http.Post("/api/files", [this](const httplib::Request& req, httplib::Response& res) {
    std::string name = req.has_param("name") ? req.get_param_value("name") : "upload";
    try {
      send_json(res, to_json(store.put(req.body, std::move(name))));
    } catch (const Error& e) {
      send_error(res, e);
    }
  });

  http.Get("/api/files", [this](const httplib::Request&, httplib::Response& res) {
    auto out = nlohmann::ordered_json::array();
    for (const auto& e : store.list()) out.push_back(to_json(e));
    send_json(res, out);
  });

  http.Get(R"(/api/files/([0-9a-f]{64}))",
           [this](const httplib::Request& req, httplib::Response& res) {
             if (auto e = store.entry(req.matches[1])) {
               send_json(res, to_json(*e));
             } else {
               send_error(res, 404, "NotFound", "no file with id " + std::string(req.matches[1]));
             }
           });

  http.Get(R"(/api/files/([0-9a-f]{64})/table)",
           [this](const httplib::Request& req, httplib::Response& res) {
             auto a = require(req, res);
             if (!a) return;
             const std::string col =
                 req.has_param("metric") ? req.get_param_value("metric") : "frequency";
             const auto column = parse_column(col);
             if (!column) return send_error(res, 400, "InvalidArgument", "unknown metric '" + col + "'");
             const std::string ord = req.has_param("order") ? req.get_param_value("order") : "desc";
             if (ord != "asc" && ord != "desc") {
               return send_error(res, 400, "InvalidArgument", "order must be asc or desc");
             }
             std::size_t top = 0;
             if (req.has_param("top")) {
               const std::string v = req.get_param_value("top");
               auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), top);
               if (ec != std::errc{} || ptr != v.data() + v.size() || top < 1) {
                 return send_error(res, 400, "InvalidArgument", "top must be a positive integer");
               }
             }
             const auto table = build_table(a->dictionary, a->counts, parse_prefix_length(req));
             auto rows = sort_table(table, *column,
                                    ord == "asc" ? SortDirection::Ascending
                                                 : SortDirection::Descending);
             if (top > 0 && rows.size() > top) rows.resize(top);
             send_json(res, rows_to_json(rows));
           });

  http.Get(R"(/api/files/([0-9a-f]{64})/spans)",
           [this](const httplib::Request& req, httplib::Response& res) {
             auto a = require(req, res);
             if (!a) return;
             const std::string m =
                 req.has_param("metric") ? req.get_param_value("metric") : "frequency";
             const auto metric = parse_metric(m);
             if (!metric) return send_error(res, 400, "InvalidArgument", "unknown metric '" + m + "'");
             RenderConfig config;
             config.metric = *metric;
             config.colormap_name =
                 req.has_param("colormap") ? req.get_param_value("colormap") : "jet";
             config.prefix_length = parse_prefix_length(req);
             config.output_kind = OutputKind::Json;
             res.set_content(render(*a, config), "application/json");
           });

  http.Get(R"(/api/files/([0-9a-f]{64})/raw)",
           [this](const httplib::Request& req, httplib::Response& res) {
             auto a = require(req, res);
             if (!a) return;
             res.set_content(a->original, "application/octet-stream");
           });

  if (!options.asset_dir.empty() && fs::is_directory(options.asset_dir)) {
    http.set_mount_point("/", options.asset_dir.string());
  }
}

ApiServer::ApiServer(ServerOptions options) : impl_(std::make_unique<Impl>(std::move(options))) {}

ApiServer::~ApiServer() { stop(); }

int ApiServer::bind(const std::string& host, int port) {
  int bound_port = port;
  if (port == 0) {
    bound_port = impl_->http.bind_to_any_port(host);
  } else if (!impl_->http.bind_to_port(host, port)) {
    bound_port = -1;
  }
  if (bound_port <= 0) {
    throw Error(ErrorCode::Io, "cannot bind " + host + ":" + std::to_string(port));
  }
  impl_->bound = true;
  return bound_port;
}

void ApiServer::listen() {
  if (!impl_->bound) throw Error(ErrorCode::InvalidArgument, "listen() before bind()");
  impl_->http.listen_after_bind();
}

void ApiServer::stop() {
  if (impl_) impl_->http.stop();
}

bool ApiServer::is_running() const { return impl_->http.is_running(); }

FileStore& ApiServer::store() { return impl_->store; }

}  // namespace lzwv
