#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "lzwv/analysis.hpp"

namespace lzwv {

inline constexpr std::size_t kDefaultMaxUploadBytes = std::size_t{64} << 20;
/// Environment variable consulted for the data directory when none is given.
inline constexpr const char* kDataDirEnv = "LZWV_DATA_DIR";

struct FileEntry {
  std::string id;
  std::string name;
  std::uint64_t size = 0;
  std::string uploaded_at;  ///< ISO 8601, UTC

  friend bool operator==(const FileEntry&, const FileEntry&) = default;
};

nlohmann::ordered_json to_json(const FileEntry& entry);

/// Hex SHA-256 of the bytes.
std::string content_id(std::string_view bytes);

/// Content-addressed upload store. Each file lives in <data_dir>/<id>/ as the
/// original bytes, its metadata and a cached .lzwv archive of the code stream;
/// counts are replayed from the archive on a cold load.
class FileStore {
 public:
  explicit FileStore(std::filesystem::path data_dir);

  /// Stores raw bytes or an .lzwv archive. Identical content yields the same
  /// id and keeps the first entry. Throws the container/codec errors for
  /// damaged archives.
  FileEntry put(std::string bytes, std::string name);

  std::optional<FileEntry> entry(const std::string& id);
  /// nullptr for unknown ids. Computed at most once per id.
  std::shared_ptr<const Analysis> analysis(const std::string& id);
  std::vector<FileEntry> list() const;

  const std::filesystem::path& data_dir() const noexcept { return data_dir_; }

 private:
  struct Slot {
    std::mutex mutex;
    std::optional<FileEntry> entry;
    std::shared_ptr<const Analysis> analysis;
  };

  std::shared_ptr<Slot> slot(const std::string& id);
  bool load(Slot& slot, const std::string& id);

  std::filesystem::path data_dir_;
  std::mutex slots_mutex_;
  std::unordered_map<std::string, std::shared_ptr<Slot>> slots_;
};

struct ServerOptions {
  std::filesystem::path data_dir;
  /// Static web UI assets served at "/", if set and present.
  std::filesystem::path asset_dir;
  std::size_t max_upload_bytes = kDefaultMaxUploadBytes;
};

/// HTTP JSON API over a FileStore:
///   POST /api/files?name=           upload raw bytes or an .lzwv archive
///   GET  /api/files                 list entries
///   GET  /api/files/{id}            entry
///   GET  /api/files/{id}/table?metric=&order=&prefix_len=&top=
///   GET  /api/files/{id}/spans?metric=&colormap=&prefix_len=
///   GET  /api/files/{id}/raw        original bytes (HEAD too)
///   GET  /api/colormaps             colormap names
class ApiServer {
 public:
  explicit ApiServer(ServerOptions options);
  ~ApiServer();
  ApiServer(const ApiServer&) = delete;
  ApiServer& operator=(const ApiServer&) = delete;

  /// Binds without serving; port 0 picks a free port. Returns the bound port.
  /// Throws Io.
  int bind(const std::string& host, int port);
  /// Serves until stop(). Requires a prior bind().
  void listen();
  void stop();
  bool is_running() const;

  FileStore& store();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace lzwv
