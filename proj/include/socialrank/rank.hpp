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

#ifndef SOCIALRANK_RANK_HPP_
#define SOCIALRANK_RANK_HPP_

#include <chrono>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "socialrank/catalog.hpp"
#include "socialrank/embed.hpp"
#include "socialrank/userrep.hpp"

namespace socialrank {

struct RankedItem {
  std::string entity;
  double score = 0.0;

  bool operator==(const RankedItem&) const = default;
};

/// An ordered candidate slate; scores are non-increasing.
struct Ranking {
  std::string category;
  std::optional<std::string> user_id;
  std::vector<RankedItem> items;

  std::vector<std::string> ids() const;
};

/// Orders candidates by cosine to the user vector, descending. Ties fall back
/// to follower count (descending) and then id (ascending), so the order is
/// total. Throws ZeroVector or UnknownEntity (candidate without a vector).
Ranking rank_by_similarity(const UserEmbedding& user, std::span<const Entity* const> candidates,
                           const EmbeddingTable& table);

/// Ranks a whole category slate for a user: candidates with a vector by
/// rank_by_similarity, then any candidate missing from the table in popularity
/// order (score -infinity).
Ranking rank_slate(const UserEmbedding& user, const Catalog& catalog, std::string_view category,
                   const EmbeddingTable& table);

/// Non-personalised baseline; scores are follower counts.
Ranking rank_by_popularity(const Catalog& catalog, std::string_view category);

struct RankRequest {
  std::string category;
  std::vector<Entity> candidates;
  std::vector<std::string> user_entities;  // display names
};

std::string to_json(const RankRequest& request);

/// Parses {"ranking": [...]} and checks it is an exact permutation of the
/// candidate ids. Throws InvalidPermutation.
std::vector<std::string> parse_ranking_response(std::string_view body, std::span<const Entity> candidates);

/// Runs an external ranking command: the request JSON goes to its standard
/// input, a {"ranking": [...]} document is read from standard output. Calls
/// on one instance are serialised.
class ExternalRanker {
 public:
  explicit ExternalRanker(std::vector<std::string> argv,
                          std::chrono::milliseconds timeout = std::chrono::seconds(30));

  /// Throws AdapterFailure (spawn error, non-zero exit, timeout) or
  /// InvalidPermutation.
  Ranking rank(const RankRequest& request);

 private:
  std::vector<std::string> argv_;
  std::chrono::milliseconds timeout_;
  std::mutex mutex_;
};

Ranking rank_external(const RankRequest& request, ExternalRanker& adapter);

}  // namespace socialrank

#endif  // SOCIALRANK_RANK_HPP_
