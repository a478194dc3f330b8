#include <gtest/gtest.h>

#include <atomic>
#include <chrono>
#include <fstream>
#include <thread>

#include "httplib.h"
#include "maniscope/service.hpp"
#include "service_util.hpp"

namespace maniscope {
namespace {

using service::handle_rerank;
using service::WireJson;

std::string field_of_first_error(const service::Response& r) {
  return r.body["details"][0]["field"].get<std::string>();
}

TEST(HandleRerank, SingleCandidate) {
  const auto r = handle_rerank(
      R"({"query_vector": [1, 0], "candidates": [{"id": "only", "vector": [0.6, 0.8]}]})");
  ASSERT_EQ(r.status, 200) << r.dump();
  ASSERT_EQ(r.body["ranked"].size(), 1u);
  EXPECT_EQ(r.body["ranked"][0]["id"], "only");
  EXPECT_EQ(r.body["ranked"][0]["geo"].get<float>(), 1.0f);
  EXPECT_EQ(r.body["ranked"][0]["cos"].get<float>(), 0.6f);
  EXPECT_EQ(r.body["config_echo"]["k"], 5);
  EXPECT_EQ(r.body["config_echo"]["variant"], "maxnorm");
}

TEST(HandleRerank, DimensionMismatchNamesTheCandidate) {
  const auto r = handle_rerank(R"({"query_vector": [1, 0, 0], "candidates": [
      {"id": "a", "vector": [1, 0, 0]}, {"id": "b", "vector": [1, 0]}]})");
  EXPECT_EQ(r.status, 400);
  EXPECT_EQ(field_of_first_error(r), "candidates[1].vector");
  EXPECT_EQ(r.body["details"][0]["message"], "dimension mismatch: expected 3, got 2");
}

TEST(HandleRerank, ValidationErrors) {
  const auto status_and_field = [](const std::string& body) {
    const auto r = handle_rerank(body);
    return std::make_pair(r.status, r.status == 400 ? field_of_first_error(r) : "");
  };
  const std::string cands = R"("candidates": [{"id": "a", "vector": [1, 0]}])";
  EXPECT_EQ(status_and_field("not json"), std::make_pair(400, std::string("body")));
  EXPECT_EQ(status_and_field("{" + cands + "}"), std::make_pair(400, std::string("query_vector")));
  EXPECT_EQ(status_and_field(R"({"query_vector": [0, 0], )" + cands + "}"),
            std::make_pair(400, std::string("query_vector")));
  EXPECT_EQ(status_and_field(R"({"query_vector": [1, 0], "candidates": []})"),
            std::make_pair(400, std::string("candidates")));
  EXPECT_EQ(status_and_field(R"({"query_vector": [1, 0], "candidates": [{"id": "a", "vector": [0, 0]}]})"),
            std::make_pair(400, std::string("candidates[0].vector")));
  EXPECT_EQ(status_and_field(R"({"query_vector": [1, 0], "candidates": [{"vector": [1, 0]}]})"),
            std::make_pair(400, std::string("candidates[0].id")));
  EXPECT_EQ(status_and_field(R"({"query_vector": [1, 0], "k": 0, )" + cands + "}"),
            std::make_pair(400, std::string("k")));
  EXPECT_EQ(status_and_field(R"({"query_vector": [1, 0], "alpha": 1.5, )" + cands + "}"),
            std::make_pair(400, std::string("alpha")));
  EXPECT_EQ(status_and_field(R"({"query_vector": [1, 0], "variant": "cube", )" + cands + "}"),
            std::make_pair(400, std::string("variant")));
  EXPECT_EQ(status_and_field(R"({"query_vector": [1, "x"], )" + cands + "}"),
            std::make_pair(400, std::string("query_vector")));

  WireJson many = {{"query_vector", {1.0f, 0.0f}}, {"candidates", WireJson::array()}};
  for (std::size_t i = 0; i <= service::kMaxCandidates; ++i) {
    many["candidates"].push_back({{"id", "c"}, {"vector", {1.0f, 0.0f}}});
  }
  EXPECT_EQ(status_and_field(many.dump()), std::make_pair(400, std::string("candidates")));
}

TEST(HandleRerank, ReportsEveryInvalidField) {
  const auto r = handle_rerank(R"({"query_vector": [1, 0], "k": -1, "alpha": "x",
      "candidates": [{"id": "a", "vector": [1]}, {"id": "b", "vector": [1, 0, 0]}]})");
  ASSERT_EQ(r.status, 400);
  EXPECT_EQ(r.body["details"].size(), 4u);
}

TEST(HandleRerank, SixCandidateFixtureMatchesLibrary) {
  std::ifstream in(testing::fixture_path("six_candidates.json"));
  const auto doc = nlohmann::json::parse(in);
  nlohmann::json request = {{"query_vector", doc["query"]},
                            {"candidates", doc["candidates"]},
                            {"k", doc["k"]},
                            {"alpha", doc["alpha"]}};
  const auto r = handle_rerank(request.dump());
  ASSERT_EQ(r.status, 200) << r.dump();
  std::vector<std::string> ids;
  for (const auto& row : r.body["ranked"]) ids.push_back(row["id"].get<std::string>());
  EXPECT_EQ(ids, doc["expected"]["ranking"].get<std::vector<std::string>>());
}

TEST(HandleRerank, RandomRequestsMatchLibrary) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = testing::random_case(rng);
    const auto r = handle_rerank(c.body());
    ASSERT_EQ(r.status, 200) << r.dump();
    EXPECT_EQ(testing::compare_with_library(c, r.body), "") << "trial " << trial;
  }
}

TEST(HandleRerank, ConcurrentIdenticalRequestsAgree) {
  std::mt19937_64 rng(5);
  const auto c = testing::random_case(rng);
  const auto body = c.body();
  std::vector<std::string> results(8);
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < results.size(); ++t) {
    threads.emplace_back([&, t] {
      auto r = handle_rerank(body);
      r.body.erase("latency_ms");
      results[t] = r.dump();
    });
  }
  for (auto& t : threads) t.join();
  for (const auto& r : results) EXPECT_EQ(r, results[0]);
}

TEST(HandleHealth, ReportsVersion) {
  const auto r = service::handle_health();
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(r.body["status"], "ok");
  EXPECT_EQ(r.body["ready"], true);
  EXPECT_EQ(r.body["version"], std::string(service::version()));
  EXPECT_FALSE(service::version().empty());
}

class ServerTest : public ::testing::Test {
 protected:
  void SetUp() override {
    server_ = std::make_unique<service::Server>(service::ServerOptions{"127.0.0.1", 0, 64 * 1024});
    port_ = server_->bind();
    thread_ = std::thread([this] { server_->serve(); });
  }
  void TearDown() override {
    server_->stop();
    thread_.join();
  }
  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port_);
    c.set_read_timeout(10, 0);
    return c;
  }

  std::unique_ptr<service::Server> server_;
  int port_ = 0;
  std::thread thread_;
};

TEST_F(ServerTest, HealthAndRerankOverHttp) {
  auto c = client();
  const auto health = c.Get("/healthz");
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);
  EXPECT_EQ(WireJson::parse(health->body)["status"], "ok");

  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const auto rc = testing::random_case(rng);
    const auto res = c.Post("/v1/rerank", rc.body(), "application/json");
    ASSERT_TRUE(res);
    ASSERT_EQ(res->status, 200);
    EXPECT_EQ(testing::compare_with_library(rc, WireJson::parse(res->body)), "");
  }

  const auto bad = c.Post("/v1/rerank", "{}", "application/json");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);
}

TEST_F(ServerTest, RejectsOversizedBodies) {
  auto c = client();
  const auto res = c.Post("/v1/rerank", std::string(128 * 1024, ' '), "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 413);
}

TEST_F(ServerTest, HealthStaysFastUnderLoad) {
  std::mt19937_64 rng(10);
  testing::RerankCase heavy;
  heavy.query.vector = testing::random_unit_vectors(rng, 1, 16);
  heavy.vectors = testing::random_unit_vectors(rng, 300, 16);
  for (int i = 0; i < 300; ++i) heavy.ids.push_back("h" + std::to_string(i));
  heavy.cfg = {8, 0.5, GeodesicVariant::kMaxNorm};
  const auto body = heavy.body();

  std::atomic<bool> done{false};
  std::vector<std::thread> load;
  for (int t = 0; t < 2; ++t) {
    load.emplace_back([&] {
      auto c = client();
      while (!done) (void)c.Post("/v1/rerank", body, "application/json");
    });
  }
  std::this_thread::sleep_for(std::chrono::milliseconds(50));
  auto c = client();
  double worst_ms = 0.0;
  for (int i = 0; i < 10; ++i) {
    const auto start = std::chrono::steady_clock::now();
    const auto res = c.Get("/healthz");
    worst_ms = std::max(worst_ms, std::chrono::duration<double, std::milli>(
                                      std::chrono::steady_clock::now() - start).count());
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 200);
  }
  done = true;
  for (auto& t : load) t.join();
  EXPECT_LT(worst_ms, 100.0);
}

}  // namespace
}  // namespace maniscope
