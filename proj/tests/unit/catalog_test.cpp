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

#include "socialrank/catalog.hpp"
#include "socialrank/error.hpp"
#include "socialrank/follow_graph.hpp"
#include "test_util.hpp"

namespace socialrank {
namespace {

using testing::small_catalog;
using testing::TempDir;

TEST(Catalog, SlateIsInFileOrder) {
  const Catalog c = small_catalog();
  EXPECT_EQ(c.slate_ids("B"), (std::vector<std::string>{"b0", "b1", "b2", "b3"}));
  EXPECT_THROW(c.slate("C"), UnknownCategory);
}

TEST(Catalog, PopularityBreaksTiesById) {
  Catalog c({"X"}, {{"z", "Z", "X", 5}, {"a", "A", "X", 5}, {"m", "M", "X", 9}});
  EXPECT_EQ(c.popularity_ranking("X"), (std::vector<std::string>{"m", "a", "z"}));
}

TEST(Catalog, RejectsInvalidContents) {
  EXPECT_THROW(Catalog({"X", "X"}, {{"a", "A", "X", 0}}), ValidationError);
  EXPECT_THROW(Catalog({"X"}, {{"a", "A", "Y", 0}}), ValidationError);
  EXPECT_THROW(Catalog({"X"}, {{"a", "A", "X", 0}, {"a", "B", "X", 0}}), ValidationError);
  EXPECT_THROW(Catalog({"X", "Y"}, {{"a", "A", "X", 0}}), ValidationError);
  EXPECT_THROW(Catalog({"X"}, {{"", "A", "X", 0}}), ValidationError);
}

TEST(Catalog, JsonRoundTrip) {
  const Catalog c = small_catalog(6);
  EXPECT_EQ(parse_catalog(serialize_catalog(c)), c);
  TempDir dir("catalog");
  save_catalog(c, dir / "c.json");
  EXPECT_EQ(load_catalog(dir / "c.json"), c);
}

TEST(Catalog, ParseErrors) {
  EXPECT_THROW(parse_catalog("{"), FormatError);
  EXPECT_THROW(parse_catalog(R"({"categories": ["X"], "entities": [{"id": 3}]})"), FormatError);
  EXPECT_THROW(load_catalog("/nonexistent/catalog.json"), IoError);
}

TEST(FollowGraph, EdgeListRoundTrip) {
  FollowGraph g = parse_edge_list("u2\tb\nu1\ta\nu1\tb\n\nu1\ta\r\n");
  EXPECT_EQ(g.user_count(), 2u);
  EXPECT_EQ(g.edge_count(), 3u);  // duplicate edge collapsed
  EXPECT_EQ(g.follower_count("b"), 2u);
  EXPECT_EQ(g.follower_count("nobody"), 0u);
  const std::string text = serialize_edge_list(g);
  EXPECT_EQ(text, "u1\ta\nu1\tb\nu2\tb\n");
  EXPECT_EQ(serialize_edge_list(parse_edge_list(text)), text);
}

TEST(FollowGraph, MalformedLineReportsLineNumber) {
  try {
    parse_edge_list("u1\ta\nbroken line\n");
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
}

TEST(FollowGraph, FollowersAreConsistentWithFollowing) {
  FollowGraph g;
  Rng rng(4);
  for (int i = 0; i < 500; ++i) {
    g.add_edge("u" + std::to_string(rng.below(40)), "e" + std::to_string(rng.below(25)));
  }
  g.finalize();
  std::size_t from_users = 0, from_entities = 0;
  for (std::uint32_t u = 0; u < g.user_count(); ++u) {
    from_users += g.following(u).size();
    for (std::uint32_t e : g.following(u)) {
      auto f = g.followers(e);
      EXPECT_TRUE(std::binary_search(f.begin(), f.end(), u));
    }
  }
  for (std::uint32_t e = 0; e < g.entity_count(); ++e) from_entities += g.followers(e).size();
  EXPECT_EQ(from_users, from_entities);
  EXPECT_EQ(from_users, g.edge_count());
}

}  // namespace
}  // namespace socialrank
