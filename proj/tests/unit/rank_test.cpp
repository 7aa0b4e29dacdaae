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

#include <algorithm>

#include "socialrank/error.hpp"
#include "socialrank/rank.hpp"
#include "test_util.hpp"

#ifndef SOCIALRANK_TEST_RANKER
#error "SOCIALRANK_TEST_RANKER must name the test adapter executable"
#endif

namespace socialrank {
namespace {

UserEmbedding user_of(std::vector<double> v) { return {"u", std::move(v), {}, "", 0}; }

TEST(RankBySimilarity, HandGeometry) {
  const Catalog c({"X"}, {{"a", "A", "X", 1}, {"b", "B", "X", 2}});
  const EmbeddingTable t = testing::make_table({"a", "b"}, 2, {{1.0f, 0.1f}, {0.0f, 1.0f}});
  const Ranking r = rank_by_similarity(user_of({1, 0}), c.slate("X"), t);
  EXPECT_EQ(r.ids(), (std::vector<std::string>{"a", "b"}));
  EXPECT_GT(r.items[0].score, r.items[1].score);
}

TEST(RankBySimilarity, OwnVectorRanksFirst) {
  const Catalog c = testing::small_catalog(10);
  const EmbeddingTable t = testing::random_table(
      [&] {
        std::vector<std::string> ids;
        for (const auto& e : c.entities()) ids.push_back(e.id);
        return ids;
      }(),
      6, 4);
  for (const Entity* e : c.slate("B")) {
    auto v = *t.find(e->id);
    const Ranking r = rank_by_similarity(user_of({v.begin(), v.end()}), c.slate("B"), t);
    EXPECT_EQ(r.items.front().entity, e->id);
    EXPECT_NEAR(r.items.front().score, 1.0, 1e-12);
  }
}

std::vector<Entity> slate_of(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Entity> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({"c" + std::to_string(i), "Candidate " + std::to_string(i), "X", rng.below(5)});
  }
  return out;
}

std::vector<std::string> ids_of(const std::vector<Entity>& es) {
  std::vector<std::string> ids;
  for (const auto& e : es) ids.push_back(e.id);
  return ids;
}

TEST(RankBySimilarity, MatchesOracleSort) {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const auto slate = slate_of(20, trial);
    const EmbeddingTable t = testing::random_table(ids_of(slate), 8, 100 + trial);
    std::vector<double> u(8);
    for (auto& x : u) x = rng.normal();
    std::vector<const Entity*> ptrs;
    for (const auto& e : slate) ptrs.push_back(&e);

    struct Row {
      double cos;
      std::uint64_t followers;
      std::string id;
    };
    std::vector<Row> rows;
    for (const auto& e : slate) {
      auto v = *t.find(e.id);
      double ab = 0, aa = 0, bb = 0;
      for (int i = 0; i < 8; ++i) {
        ab += u[i] * v[i];
        aa += u[i] * u[i];
        bb += double(v[i]) * v[i];
      }
      rows.push_back({ab / std::sqrt(aa * bb), e.follower_count, e.id});
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
      if (a.cos != b.cos) return a.cos > b.cos;
      if (a.followers != b.followers) return a.followers > b.followers;
      return a.id < b.id;
    });
    const Ranking r = rank_by_similarity(user_of(u), ptrs, t);
    ASSERT_EQ(r.items.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(r.items[i].entity, rows[i].id) << "trial " << trial;

    // Positive rescaling of the user vector keeps the permutation.
    std::vector<double> scaled = u;
    for (auto& x : scaled) x *= 37.5;
    EXPECT_EQ(rank_by_similarity(user_of(scaled), ptrs, t).ids(), r.ids());
  }
}

TEST(RankBySimilarity, TiesFallBackToFollowersThenId) {
  const Catalog c({"X"}, {{"b", "B", "X", 5}, {"a", "A", "X", 5}, {"c", "C", "X", 9}});
  const std::vector<float> v = {1.0f, 1.0f};
  const EmbeddingTable t = testing::make_table({"a", "b", "c"}, 2, {v, v, v});
  EXPECT_EQ(rank_by_similarity(user_of({2, 2}), c.slate("X"), t).ids(), (std::vector<std::string>{"c", "a", "b"}));
}

TEST(RankBySimilarity, Errors) {
  const Catalog c({"X"}, {{"a", "A", "X", 1}, {"b", "B", "X", 2}});
  const EmbeddingTable t = testing::make_table({"a"}, 2, {{1.0f, 0.0f}});
  EXPECT_THROW(rank_by_similarity(user_of({1, 0}), c.slate("X"), t), UnknownEntity);
  const EmbeddingTable full = testing::make_table({"a", "b"}, 2, {{1.0f, 0.0f}, {0.0f, 1.0f}});
  EXPECT_THROW(rank_by_similarity(user_of({0, 0}), c.slate("X"), full), ZeroVector);
}

TEST(RankSlate, MissingVectorsGoLastInPopularityOrder) {
  const Catalog c({"X"}, {{"a", "A", "X", 1}, {"b", "B", "X", 2}, {"z", "Z", "X", 3}, {"y", "Y", "X", 7}});
  const EmbeddingTable t = testing::make_table({"a", "b"}, 2, {{1.0f, 0.0f}, {0.0f, 1.0f}});
  const Ranking r = rank_slate(user_of({1, 0}), c, "X", t);
  EXPECT_EQ(r.ids(), (std::vector<std::string>{"a", "b", "y", "z"}));
  EXPECT_TRUE(std::isinf(r.items.back().score));
}

TEST(RankByPopularity, FollowsCatalogCounts) {
  const Catalog c = testing::small_catalog();
  const Ranking r = rank_by_popularity(c, "A");
  EXPECT_EQ(r.ids(), c.popularity_ranking("A"));
  EXPECT_FALSE(r.user_id.has_value());
}

RankRequest request_for(const std::vector<Entity>& slate) { return {"X", slate, {"Some account"}}; }

ExternalRanker adapter(const std::string& mode, std::chrono::milliseconds timeout = std::chrono::seconds(10)) {
  return ExternalRanker({SOCIALRANK_TEST_RANKER, mode}, timeout);
}

TEST(ExternalRanker, IdentityEchoesOrder) {
  const auto slate = slate_of(20, 1);
  auto ranker = adapter("identity");
  const Ranking r = ranker.rank(request_for(slate));
  EXPECT_EQ(r.ids(), ids_of(slate));
  for (std::size_t i = 1; i < r.items.size(); ++i) EXPECT_GT(r.items[i - 1].score, r.items[i].score);
}

TEST(ExternalRanker, FollowerSortEqualsPopularity) {
  const auto slate = slate_of(20, 2);
  const Catalog c({"X"}, slate);
  auto ranker = adapter("followers");
  EXPECT_EQ(ranker.rank(request_for(slate)).ids(), c.popularity_ranking("X"));
}

TEST(ExternalRanker, NonPermutationsAreRejected) {
  const auto slate = slate_of(20, 3);
  for (const char* mode : {"drop", "duplicate", "foreign", "garbage"}) {
    auto ranker = adapter(mode);
    EXPECT_THROW(ranker.rank(request_for(slate)), InvalidPermutation) << mode;
  }
}

TEST(ExternalRanker, ProcessFailures) {
  const auto slate = slate_of(5, 4);
  auto failing = adapter("fail");
  EXPECT_THROW(failing.rank(request_for(slate)), AdapterFailure);
  auto slow = adapter("sleep", std::chrono::milliseconds(300));
  EXPECT_THROW(slow.rank(request_for(slate)), AdapterFailure);
  ExternalRanker missing({"/nonexistent/ranker"});
  EXPECT_THROW(missing.rank(request_for(slate)), AdapterFailure);
}

TEST(ParseRankingResponse, AcceptsExactPermutation) {
  const auto slate = slate_of(3, 5);
  EXPECT_EQ(parse_ranking_response(R"({"ranking": ["c2", "c0", "c1"]})", slate),
            (std::vector<std::string>{"c2", "c0", "c1"}));
  EXPECT_THROW(parse_ranking_response(R"({"ranking": ["c2", "c0", 1]})", slate), InvalidPermutation);
  EXPECT_THROW(parse_ranking_response(R"(["c2", "c0", "c1"])", slate), InvalidPermutation);
}

}  // namespace
}  // namespace socialrank
