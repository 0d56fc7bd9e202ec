// Copyright 2026 The GRAFS Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "grafs/service.hpp"
#include "httplib.h"
#include "json.hpp"
#include "test_util.hpp"

namespace grafs {
namespace {

using json = nlohmann::json;

class ServiceTest : public ::testing::Test {
 protected:
  void SetUp() override {
    port_ = service_.bind_any("127.0.0.1");
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { service_.listen_after_bind(); });
    service_.server().wait_until_ready();
  }

  void TearDown() override {
    service_.stop();
    if (thread_.joinable()) thread_.join();
  }

  void load_fix1() {
    service_.set_index(std::make_shared<const Index>(testing::fix1_index()));
  }

  httplib::Client client() { return httplib::Client("127.0.0.1", port_); }

  httplib::Result post_explore(const json& body) {
    return client().Post("/api/explore", body.dump(), "application/json");
  }

  Service service_;
  int port_ = 0;
  std::thread thread_;
};

TEST_F(ServiceTest, HealthDuringLoadIs503) {
  auto res = client().Get("/api/health");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 503);
  EXPECT_EQ(json::parse(res->body)["error"]["code"], "unavailable");
  auto explore = post_explore({{"query", "beta"}});
  ASSERT_TRUE(explore);
  EXPECT_EQ(explore->status, 503);
}

TEST_F(ServiceTest, HealthAfterLoad) {
  load_fix1();
  auto res = client().Get("/api/health");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  const json body = json::parse(res->body);
  EXPECT_EQ(body["status"], "ok");
  EXPECT_EQ(body["doc_count"], 4);
}

TEST_F(ServiceTest, ExploreEchoesDefaults) {
  load_fix1();
  auto res = post_explore({{"query", "beta"}});
  ASSERT_TRUE(res);
  ASSERT_EQ(res->status, 200) << res->body;
  const json body = json::parse(res->body);
  EXPECT_EQ(body["params"]["n"], 1000);
  EXPECT_EQ(body["params"]["k"], 20);
  EXPECT_EQ(body["params"]["lambda"], 0.5);
  EXPECT_EQ(body["params"]["m"], 3);
  EXPECT_EQ(body["params"]["page_size"], 10);
  EXPECT_EQ(body["total_results"], 4);
  EXPECT_EQ(body["index_fingerprint"],
            service_.index()->fingerprint());
  EXPECT_EQ(res->get_header_value("Access-Control-Allow-Origin"), "*");
}

TEST_F(ServiceTest, ExploreWithSelection) {
  load_fix1();
  auto res = post_explore(
      {{"query", "beta"}, {"k", 3}, {"added", {"A"}}, {"selected", {"A"}}});
  ASSERT_TRUE(res);
  ASSERT_EQ(res->status, 200) << res->body;
  const json body = json::parse(res->body);
  EXPECT_EQ(body["subgraph"]["leaf_order"], json({"A", "B", "C"}));
  EXPECT_EQ(body["arcs"], json::parse(R"([{"target":"B","weight":2},
                                          {"target":"C","weight":1}])"));
  EXPECT_EQ(body["documents"]["total"], 3);
  ASSERT_EQ(body["provenance"].size(), 1u);
  EXPECT_EQ(body["provenance"][0]["concept_id"], "A");
}

TEST_F(ServiceTest, BadQueryHasPosition) {
  load_fix1();
  auto res = post_explore({{"query", "(("}});
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
  const json err = json::parse(res->body)["error"];
  EXPECT_EQ(err["code"], "bad_query");
  EXPECT_TRUE(err.contains("position"));
}

TEST_F(ServiceTest, AddedNotInResults) {
  load_fix1();
  auto res = post_explore({{"query", "beta"}, {"added", {"NOPE"}}});
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
  EXPECT_EQ(json::parse(res->body)["error"]["code"], "added_not_in_results");
}

TEST_F(ServiceTest, SchemaViolations) {
  load_fix1();
  for (const std::string body :
       {R"({"query":"beta","bogus":1})", R"({"query":"beta","k":0})",
        R"({"k":3})", R"({"query":"beta","selected":"A"})", "not json",
        R"(["query"])"}) {
    auto res = client().Post("/api/explore", body, "application/json");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 400) << body;
    EXPECT_EQ(json::parse(res->body)["error"]["code"], "bad_query") << body;
  }
}

TEST_F(ServiceTest, UnknownSelectedConcept) {
  load_fix1();
  auto res = post_explore({{"query", "beta"}, {"selected", {"ZZZ"}}});
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 404);
  EXPECT_EQ(json::parse(res->body)["error"]["code"], "unknown_concept");
}

TEST_F(ServiceTest, Documents) {
  load_fix1();
  auto res = client().Get("/api/documents/d3");
  ASSERT_TRUE(res);
  ASSERT_EQ(res->status, 200);
  const json doc = json::parse(res->body);
  EXPECT_EQ(doc["doc_id"], "d3");
  std::set<std::string> concepts;
  for (const auto& m : doc["mentions"]) {
    concepts.insert(m["concept_id"].get<std::string>());
    const std::string field = m["field"];
    const std::string text = doc[field];
    const std::size_t a = m["char_start"], b = m["char_end"];
    ASSERT_LE(b, text.size());
    EXPECT_LT(a, b);
  }
  EXPECT_EQ(concepts, (std::set<std::string>{"A", "C"}));

  auto missing = client().Get("/api/documents/nope");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);
  EXPECT_EQ(json::parse(missing->body)["error"]["code"], "not_found");
}

TEST_F(ServiceTest, DocumentWithoutMentions) {
  service_.set_index(std::make_shared<const Index>(
      build_index({{"plain", "", "nothing"}}, Vocabulary{})));
  auto res = client().Get("/api/documents/plain");
  ASSERT_TRUE(res);
  ASSERT_EQ(res->status, 200);
  EXPECT_EQ(json::parse(res->body)["mentions"], json::array());
}

TEST_F(ServiceTest, Provenance) {
  load_fix1();
  auto one = client().Get("/api/provenance?query=stable&concept=B");
  ASSERT_TRUE(one);
  ASSERT_EQ(one->status, 200) << one->body;
  const json body = json::parse(one->body);
  EXPECT_EQ(body["m"], 3);
  EXPECT_EQ(body["sentences"].size(), 1u);

  auto absent = client().Get("/api/provenance?query=stable&concept=C");
  ASSERT_TRUE(absent);
  EXPECT_EQ(absent->status, 200);
  EXPECT_EQ(json::parse(absent->body)["sentences"], json::array());

  auto capped = client().Get("/api/provenance?query=beta&concept=A");
  ASSERT_TRUE(capped);
  EXPECT_EQ(json::parse(capped->body)["sentences"].size(), 3u);

  auto m1 = client().Get("/api/provenance?query=beta&concept=A&m=1");
  ASSERT_TRUE(m1);
  EXPECT_EQ(json::parse(m1->body)["sentences"].size(), 1u);

  auto unknown = client().Get("/api/provenance?query=beta&concept=ZZZ");
  ASSERT_TRUE(unknown);
  EXPECT_EQ(unknown->status, 404);

  auto bad = client().Get("/api/provenance?query=%28%28&concept=A");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);

  auto bad_m = client().Get("/api/provenance?query=beta&concept=A&m=0");
  ASSERT_TRUE(bad_m);
  EXPECT_EQ(bad_m->status, 400);
}

TEST_F(ServiceTest, UnknownRouteIsApiError) {
  load_fix1();
  auto res = client().Get("/api/nothing");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 404);
  EXPECT_EQ(json::parse(res->body)["error"]["code"], "not_found");
}

TEST_F(ServiceTest, CorsPreflight) {
  auto res = client().Options("/api/explore");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 204);
  EXPECT_EQ(res->get_header_value("Access-Control-Allow-Origin"), "*");
}

TEST_F(ServiceTest, ResponsesAreDeterministicUnderConcurrency) {
  load_fix1();
  const std::vector<json> bodies = {
      {{"query", "beta"}},
      {{"query", "beta"}, {"k", 3}, {"added", {"A"}}, {"selected", {"A"}}},
      {{"query", "alpha OR charlie"}, {"selected", {"C"}}},
      {{"query", "beta"}, {"deleted", {"B"}}, {"page_size", 2}, {"page", 2}}};
  std::vector<std::string> expected;
  for (const auto& b : bodies) {
    auto res = post_explore(b);
    ASSERT_TRUE(res);
    expected.push_back(res->body);
  }
  std::vector<std::thread> workers;
  std::vector<int> mismatches(8, 0);
  for (int w = 0; w < 8; ++w) {
    workers.emplace_back([&, w] {
      auto c = client();
      for (int i = 0; i < 20; ++i) {
        const std::size_t j = static_cast<std::size_t>(w + i) % bodies.size();
        auto res = c.Post("/api/explore", bodies[j].dump(), "application/json");
        if (!res || res->body != expected[j]) ++mismatches[w];
      }
    });
  }
  for (auto& t : workers) t.join();
  for (int m : mismatches) EXPECT_EQ(m, 0);
}

TEST_F(ServiceTest, StaticFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "grafs_static_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "index.html") << "<html>ui</html>";
  ASSERT_TRUE(service_.set_static_dir(dir.string()));
  auto res = client().Get("/index.html");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->body, "<html>ui</html>");
  EXPECT_FALSE(service_.set_static_dir("/nonexistent/ui"));
}

}  // namespace
}  // namespace grafs
