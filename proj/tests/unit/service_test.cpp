// Copyright 2026 The SocialRank Authors. All Rights Reserved.
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

#include <thread>

#include "httplib.h"
#include "socialrank/error.hpp"
#include "socialrank/eval.hpp"
#include "socialrank/graphgen.hpp"
#include "socialrank/service.hpp"
#include "socialrank/session_store.hpp"
#include "test_util.hpp"

namespace socialrank {
namespace {

using nlohmann::json;

TEST(SessionStore, CreateGetUpdate) {
  testing::TempDir dir("sessions");
  std::string id;
  {
    SessionStore store((dir / "s.db").string());
    const OnboardingSession s = store.create();
    id = s.id;
    EXPECT_EQ(id.size(), 32u);
    EXPECT_TRUE(s.selections.empty());
    EXPECT_TRUE(store.set_selections(id, {"a", "b"}));
    EXPECT_FALSE(store.set_selections("missing", {"a"}));
    EXPECT_FALSE(store.get("missing").has_value());
    EXPECT_NE(store.create().id, id);
  }
  SessionStore reopened((dir / "s.db").string());
  const auto s = reopened.get(id);
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->selections, (EntitySet{"a", "b"}));
  EXPECT_GE(s->updated_at, s->created_at);
}

TEST(SessionStore, IdsAreRandomHex) {
  std::set<std::string> seen;
  for (int i = 0; i < 200; ++i) {
    const std::string id = random_session_id();
    EXPECT_EQ(id.find_first_not_of("0123456789abcdef"), std::string::npos);
    EXPECT_TRUE(seen.insert(id).second);
  }
}

std::shared_ptr<const ServiceState> make_state(bool with_probes) {
  DatasetConfig config;
  config.users = 1500;
  config.model.background_entities = 100;
  SyntheticDataset d = generate_dataset(reference_catalog(), config);
  TrainConfig tc;
  tc.dim = 16;
  tc.epochs = 3;
  EmbeddingTable table = train(d.graph, tc);
  std::vector<LinearProbe> probes;
  if (with_probes) {
    for (const auto& r : train_trait_probes(d.graph, table, d.traits, {})) probes.push_back(r.probe);
  }
  return std::make_shared<const ServiceState>(
      ServiceState{d.catalog, emit_vectors(table, EmitMode::Input), std::move(probes), std::move(d.graph)});
}

class ServiceTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { state_ = make_state(true); }
  static void TearDownTestSuite() { state_.reset(); }

  void SetUp() override {
    dir_ = std::make_unique<testing::TempDir>("service");
    store_ = std::make_unique<SessionStore>((*dir_ / "sessions.db").string());
    service_ = std::make_unique<OnboardingService>(*store_);
    service_->register_routes(server_);
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
  }
  void TearDown() override {
    server_.stop();
    thread_.join();
  }

  void publish() { service_->set_state(state_); }

  json get(const std::string& path, int expect = 200) {
    auto res = client_->Get(path);
    EXPECT_TRUE(res) << path;
    if (!res) return nullptr;
    EXPECT_EQ(res->status, expect) << path << ": " << res->body;
    return json::parse(res->body);
  }
  json recommendations(const std::string& session, const std::string& category, int expect = 200) {
    auto res = client_->Get("/v1/sessions/" + session + "/recommendations", httplib::Params{{"category", category}},
                            httplib::Headers{});
    EXPECT_TRUE(res);
    if (!res) return nullptr;
    EXPECT_EQ(res->status, expect) << res->body;
    return json::parse(res->body);
  }
  int put_selections(const std::string& session, const std::string& body) {
    auto res = client_->Put("/v1/sessions/" + session + "/selections", body, "application/json");
    return res ? res->status : -1;
  }
  std::string new_session() {
    auto res = client_->Post("/v1/sessions");
    EXPECT_TRUE(res);
    EXPECT_EQ(res->status, 201);
    return json::parse(res->body).at("session_id");
  }
  static std::vector<std::string> ranking_ids(const json& body) {
    std::vector<std::string> ids;
    for (const auto& item : body.at("ranking")) ids.push_back(item.at("id"));
    return ids;
  }

  static std::shared_ptr<const ServiceState> state_;
  std::unique_ptr<testing::TempDir> dir_;
  std::unique_ptr<SessionStore> store_;
  std::unique_ptr<OnboardingService> service_;
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::unique_ptr<httplib::Client> client_;
};

std::shared_ptr<const ServiceState> ServiceTest::state_;

TEST_F(ServiceTest, UnavailableUntilStateIsPublished) {
  get("/v1/categories", 503);
  EXPECT_EQ(client_->Post("/v1/sessions")->status, 503);
  get("/v1/openapi.json", 200);
  publish();
  EXPECT_EQ(get("/v1/categories").at("categories").size(), 14u);
}

TEST_F(ServiceTest, EntitiesInPopularityOrder) {
  publish();
  const json body = get("/v1/categories/Car%20makers/entities");
  std::vector<std::string> ids;
  for (const auto& e : body.at("entities")) ids.push_back(e.at("id"));
  EXPECT_EQ(ids, state_->catalog.popularity_ranking("Car makers"));
  get("/v1/categories/Spaceships/entities", 404);
}

TEST_F(ServiceTest, EmptySessionFallsBackToPopularity) {
  publish();
  const std::string id = new_session();
  const json body = recommendations(id, "Car makers");
  EXPECT_EQ(body.at("fallback"), "popularity");
  EXPECT_EQ(ranking_ids(body), state_->catalog.popularity_ranking("Car makers"));
}

TEST_F(ServiceTest, RecommendationsMatchLibraryPath) {
  publish();
  const std::string id = new_session();
  EntitySet picks;
  for (const char* cat : {"Politicians", "Comedians", "Sports teams"}) {
    const auto slate = state_->catalog.slate_ids(cat);
    for (std::size_t i = 0; i < 4; ++i) picks.insert(slate[2 * i + 1]);
  }
  ASSERT_EQ(picks.size(), 12u);
  json body{{"entity_ids", std::vector<std::string>(picks.begin(), picks.end())}};
  ASSERT_EQ(put_selections(id, body.dump()), 200);

  const json rec = recommendations(id, "News outlets");
  EXPECT_TRUE(rec.at("fallback").is_null());
  EXPECT_EQ(rec.at("support").size(), 12u);

  const UserEmbedding user = project({"x", picks}, state_->table, make_mask(state_->catalog, "News outlets", WorldMode::Open));
  const Ranking expected = rank_slate(user, state_->catalog, "News outlets", state_->table);
  EXPECT_EQ(ranking_ids(rec), expected.ids());
  for (std::size_t i = 0; i < expected.items.size(); ++i) {
    EXPECT_EQ(rec["ranking"][i]["score"].get<double>(), expected.items[i].score);
  }

  // Target-category picks are masked server-side.
  const auto news = state_->catalog.slate_ids("News outlets");
  EntitySet with_news = picks;
  with_news.insert(news.begin(), news.begin() + 5);
  ASSERT_EQ(put_selections(id, json{{"entity_ids", std::vector<std::string>(with_news.begin(), with_news.end())}}.dump()),
            200);
  EXPECT_EQ(recommendations(id, "News outlets").at("ranking"), rec.at("ranking"));

  // A second session with the same selections gets the same body.
  const std::string other = new_session();
  ASSERT_EQ(put_selections(other, body.dump()), 200);
  json a = recommendations(other, "News outlets");
  a.erase("session_id");
  json b = rec;
  b.erase("session_id");
  EXPECT_EQ(a.dump(), b.dump());

  // Deselecting everything reverts to the fallback.
  ASSERT_EQ(put_selections(id, R"({"entity_ids": []})"), 200);
  EXPECT_EQ(recommendations(id, "News outlets").at("fallback"), "popularity");
}

TEST_F(ServiceTest, OnlyTargetCategorySelectionsFallBack) {
  publish();
  const std::string id = new_session();
  const auto films = state_->catalog.slate_ids("Films");
  ASSERT_EQ(put_selections(id, json{{"entity_ids", {films[0], films[1]}}}.dump()), 200);
  EXPECT_EQ(recommendations(id, "Films").at("fallback"), "popularity");
  EXPECT_TRUE(recommendations(id, "Actors").at("fallback").is_null());
}

TEST_F(ServiceTest, ErrorStatuses) {
  publish();
  const std::string id = new_session();
  EXPECT_EQ(put_selections(id, "{not json"), 400);
  EXPECT_EQ(put_selections(id, R"({"entity_ids": "news.reuters"})"), 400);
  EXPECT_EQ(put_selections(id, R"({"entity_ids": [1, 2]})"), 400);
  EXPECT_EQ(put_selections(id, R"({"entity_ids": ["news.reuters", "made.up"]})"), 409);
  EXPECT_EQ(put_selections("0123456789abcdef0123456789abcdef", R"({"entity_ids": []})"), 404);
  EXPECT_EQ(get("/v1/sessions/" + id).at("selections").size(), 0u);  // rejected updates changed nothing

  recommendations("0123456789abcdef0123456789abcdef", "Films", 404);
  recommendations(id, "Spaceships", 404);
  EXPECT_EQ(client_->Get("/v1/sessions/" + id + "/recommendations")->status, 400);
  get("/v1/sessions/nope", 404);
}

TEST_F(ServiceTest, TraitProfiles) {
  publish();
  const json body = get("/v1/entities/politician.ron_desantis/trait-profile");
  EXPECT_EQ(body.at("mode"), "followers");
  EXPECT_EQ(body.at("category"), "Politicians");
  EXPECT_EQ(body.at("profile").at("proportions").size(), 5u);
  EXPECT_EQ(body.at("category_average").at("proportions").size(), 5u);
  get("/v1/entities/made.up/trait-profile", 404);
}

TEST_F(ServiceTest, TraitProfileNeedsProbes) {
  auto bare = std::make_shared<ServiceState>(*state_);
  bare->probes.clear();
  service_->set_state(bare);
  get("/v1/entities/politician.ron_desantis/trait-profile", 404);
}

TEST_F(ServiceTest, EmbeddingModeWithoutGraph) {
  auto no_graph = std::make_shared<ServiceState>(*state_);
  no_graph->graph.reset();
  service_->set_state(no_graph);
  const json body = get("/v1/entities/music.justin_bieber/trait-profile");
  EXPECT_EQ(body.at("mode"), "embedding");
}

TEST_F(ServiceTest, OpenApiListsEveryRoute) {
  const json doc = get("/v1/openapi.json");
  for (const char* path : {"/v1/categories", "/v1/categories/{category}/entities", "/v1/sessions",
                           "/v1/sessions/{id}/selections", "/v1/sessions/{id}/recommendations",
                           "/v1/entities/{id}/trait-profile"}) {
    EXPECT_TRUE(doc.at("paths").contains(path)) << path;
  }
}

}  // namespace
}  // namespace socialrank
