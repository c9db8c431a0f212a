#include "lzwv/api_server.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <thread>

#include <httplib.h>

#include "lzwv/container_format.hpp"
#include "lzwv/error.hpp"
#include "lzwv/lzw_codec.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace lzwv {
namespace {

fs::path fresh_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() /
                       ("lzwv-api-" + tag + "-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  return dir;
}

class RunningServer {
 public:
  explicit RunningServer(ServerOptions options) : server_(std::move(options)) {
    port_ = server_.bind("127.0.0.1", 0);
    thread_ = std::thread([this] { server_.listen(); });
  }
  ~RunningServer() {
    server_.stop();
    thread_.join();
  }
  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port_);
    c.set_read_timeout(10, 0);
    return c;
  }
  int port() const { return port_; }

 private:
  ApiServer server_;
  int port_ = 0;
  std::thread thread_;
};

std::string upload(httplib::Client& c, const std::string& body, const std::string& name = "f") {
  auto res = c.Post("/api/files?name=" + name, body, "application/octet-stream");
  EXPECT_TRUE(res);
  EXPECT_EQ(res->status, 200) << res->body;
  return ordered_json::parse(res->body)["id"].get<std::string>();
}

ordered_json get_json(httplib::Client& c, const std::string& path, int expect_status = 200) {
  auto res = c.Get(path);
  EXPECT_TRUE(res) << path;
  if (!res) return {};
  EXPECT_EQ(res->status, expect_status) << path << ": " << res->body;
  return ordered_json::parse(res->body);
}

class ApiTest : public ::testing::Test {
 protected:
  void SetUp() override {
    options.data_dir = fresh_dir(::testing::UnitTest::GetInstance()->current_test_info()->name());
    options.max_upload_bytes = 1 << 16;
    server = std::make_unique<RunningServer>(options);
  }
  void TearDown() override {
    server.reset();
    fs::remove_all(options.data_dir);
  }
  ServerOptions options;
  std::unique_ptr<RunningServer> server;
};

TEST_F(ApiTest, Colormaps) {
  auto c = server->client();
  const auto names = get_json(c, "/api/colormaps");
  EXPECT_EQ(names, ordered_json({"sequential_blue", "coolwarm", "jet"}));
}

TEST_F(ApiTest, UploadIsContentAddressed) {
  auto c = server->client();
  auto res = c.Post("/api/files?name=ababab.txt", "ABABAB", "application/octet-stream");
  ASSERT_TRUE(res);
  ASSERT_EQ(res->status, 200);
  const auto entry = ordered_json::parse(res->body);
  EXPECT_EQ(entry["size"], 6);
  EXPECT_EQ(entry["name"], "ababab.txt");
  EXPECT_EQ(entry["id"], content_id("ABABAB"));
  EXPECT_EQ(entry["id"].get<std::string>().size(), 64u);

  EXPECT_EQ(upload(c, "ABABAB", "again"), entry["id"]);
  // An archive of the same content lands on the same entry.
  EXPECT_EQ(upload(c, pack(encode_with_counts("ABABAB").stream)), entry["id"]);
  EXPECT_EQ(get_json(c, "/api/files").size(), 1u);
  EXPECT_EQ(get_json(c, "/api/files/" + entry["id"].get<std::string>()), entry);
  EXPECT_TRUE(fs::exists(options.data_dir / entry["id"].get<std::string>() / "archive.lzwv"));
}

TEST_F(ApiTest, CorruptArchiveNamesTheClass) {
  auto c = server->client();
  std::string archive = pack(encode_with_counts("ABABAB").stream);
  archive.pop_back();
  auto res = c.Post("/api/files", archive, "application/octet-stream");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
  EXPECT_EQ(ordered_json::parse(res->body)["error"], "TruncatedPayload");
}

TEST_F(ApiTest, UploadTooLarge) {
  auto c = server->client();
  auto res = c.Post("/api/files", std::string(options.max_upload_bytes + 1, 'x'),
                    "application/octet-stream");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 413);
}

TEST_F(ApiTest, TableEndpoint) {
  auto c = server->client();
  const std::string id = upload(c, "ABABAB");
  const auto rows = get_json(c, "/api/files/" + id + "/table?metric=frequency&order=desc");
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0]["frequency"], 3);
  EXPECT_EQ(rows[0]["pattern"], "A");
  EXPECT_EQ(rows[1]["pattern"], "AB");

  const auto k2 = get_json(c, "/api/files/" + id + "/table?metric=pattern&order=asc&prefix_len=2");
  EXPECT_EQ(k2[0]["pattern"], "A");
  EXPECT_EQ(k2[0]["prefix_count"], 0);
  EXPECT_TRUE(k2[0]["prefix"].is_null());
  EXPECT_EQ(k2[2]["pattern"], "ABA");
  EXPECT_EQ(k2[2]["prefix_count"], 3);

  const auto top = get_json(c, "/api/files/" + id + "/table?metric=freq_times_length&top=1");
  ASSERT_EQ(top.size(), 1u);
  EXPECT_EQ(top[0]["pattern"], "AB");

  EXPECT_EQ(get_json(c, "/api/files/" + id + "/table?metric=bogus", 400)["error"],
            "InvalidArgument");
  EXPECT_EQ(get_json(c, "/api/files/" + id + "/table?prefix_len=0", 400)["error"],
            "InvalidPrefixLength");
  EXPECT_EQ(get_json(c, "/api/files/" + id + "/table?top=0", 400)["error"], "InvalidArgument");
  get_json(c, "/api/files/" + std::string(64, '0') + "/table", 404);
  auto wrong = c.Get("/api/files/nothex/table");
  ASSERT_TRUE(wrong);
  EXPECT_EQ(wrong->status, 404);
}

TEST_F(ApiTest, SpansEndpoint) {
  auto c = server->client();
  const std::string id = upload(c, "ABABAB");
  const auto doc = get_json(c, "/api/files/" + id + "/spans?metric=frequency&colormap=jet");
  ASSERT_EQ(doc["spans"].size(), 4u);
  EXPECT_EQ(doc["spans"][1]["pattern"], "B");
  EXPECT_EQ(doc["spans"][1]["color"], "#000080");
  EXPECT_EQ(doc["original_length"], 6);

  const std::string flat = upload(c, "xyz");
  for (const auto& s : get_json(c, "/api/files/" + flat + "/spans?colormap=jet")["spans"]) {
    EXPECT_EQ(s["normalized"], 0.5);
    EXPECT_EQ(s["color"], "#80ff80");
  }
  EXPECT_EQ(get_json(c, "/api/files/" + id + "/spans?colormap=rainbow", 400)["error"],
            "UnknownColormap");
  EXPECT_EQ(get_json(c, "/api/files/" + id + "/spans?metric=pattern", 400)["error"],
            "InvalidArgument");
  get_json(c, "/api/files/" + std::string(64, 'a') + "/spans", 404);
}

TEST_F(ApiTest, RawAndHead) {
  auto c = server->client();
  const std::string id = upload(c, "ABABAB");
  auto res = c.Get("/api/files/" + id + "/raw");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->body, "ABABAB");
  auto head = c.Head("/api/files/" + id + "/raw");
  ASSERT_TRUE(head);
  EXPECT_EQ(head->status, 200);
  EXPECT_EQ(head->get_header_value("Content-Length"), "6");
  EXPECT_TRUE(head->body.empty());
  EXPECT_EQ(res->get_header_value("Access-Control-Allow-Origin"), "*");
}

TEST_F(ApiTest, TableAndSpansAgree) {
  auto c = server->client();
  std::ifstream in(std::string(LZWV_FIXTURE_DIR) + "/bgp_updates.log", std::ios::binary);
  const std::string log((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const std::string id = upload(c, log);
  for (const std::string metric : {"frequency", "length", "freq_times_length", "prefix_count"}) {
    const auto rows = get_json(c, "/api/files/" + id + "/table?metric=" + metric + "&prefix_len=4");
    std::map<std::string, std::uint64_t> by_pattern;
    for (const auto& r : rows) by_pattern[r["pattern"]] = r[metric];
    const auto doc = get_json(c, "/api/files/" + id + "/spans?metric=" + metric + "&prefix_len=4");
    ASSERT_FALSE(doc["spans"].empty());
    for (const auto& s : doc["spans"]) {
      ASSERT_EQ(s["metric_value"].get<std::uint64_t>(), by_pattern.at(s["pattern"])) << metric;
    }
  }
}

TEST_F(ApiTest, ConcurrentUploads) {
  std::vector<std::thread> threads;
  std::vector<std::string> ids(8);
  for (int i = 0; i < 8; ++i) {
    threads.emplace_back([&, i] {
      auto c = server->client();
      auto res = c.Post("/api/files", "payload-" + std::to_string(i % 3) + std::string(5000, 'z'),
                        "application/octet-stream");
      if (res && res->status == 200) ids[i] = ordered_json::parse(res->body)["id"];
    });
  }
  for (auto& t : threads) t.join();
  for (int i = 0; i < 8; ++i) {
    ASSERT_FALSE(ids[i].empty());
    EXPECT_EQ(ids[i], ids[i % 3]);
  }
  auto c = server->client();
  EXPECT_EQ(get_json(c, "/api/files").size(), 3u);
}

TEST(ApiPersistence, ColdStartReplaysArchive) {
  ServerOptions options;
  options.data_dir = fresh_dir("persist");
  std::string id;
  ordered_json table;
  {
    RunningServer server(options);
    auto c = server.client();
    id = upload(c, "ABABAB ABABAB ABABAB");
    table = get_json(c, "/api/files/" + id + "/table");
  }
  {
    RunningServer server(options);
    auto c = server.client();
    EXPECT_EQ(get_json(c, "/api/files/" + id + "/table"), table);
  }
  // A missing cache is rebuilt from the original bytes.
  fs::remove(options.data_dir / id / "archive.lzwv");
  {
    RunningServer server(options);
    auto c = server.client();
    EXPECT_EQ(get_json(c, "/api/files/" + id + "/table"), table);
    EXPECT_TRUE(fs::exists(options.data_dir / id / "archive.lzwv"));
  }
  fs::remove_all(options.data_dir);
}

TEST(ApiStatic, ServesAssets) {
  ServerOptions options;
  options.data_dir = fresh_dir("static-data");
  options.asset_dir = fresh_dir("static-assets");
  fs::create_directories(options.asset_dir);
  std::ofstream(options.asset_dir / "index.html") << "<html>ui</html>";
  {
    RunningServer server(options);
    auto c = server.client();
    auto res = c.Get("/index.html");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 200);
    EXPECT_EQ(res->body, "<html>ui</html>");
    EXPECT_EQ(get_json(c, "/api/colormaps").size(), 3u);
  }
  fs::remove_all(options.data_dir);
  fs::remove_all(options.asset_dir);
}

TEST(ApiBind, PortInUse) {
  ServerOptions options;
  options.data_dir = fresh_dir("bind");
  RunningServer first(options);
  ApiServer second(options);
  try {
    second.bind("127.0.0.1", first.port());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Io);
  }
  fs::remove_all(options.data_dir);
}

}  // namespace
}  // namespace lzwv
