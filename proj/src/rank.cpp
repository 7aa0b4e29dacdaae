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

#include "socialrank/rank.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "json.hpp"

namespace socialrank {

using nlohmann::json;

std::vector<std::string> Ranking::ids() const {
  std::vector<std::string> out;
  out.reserve(items.size());
  for (const auto& it : items) out.push_back(it.entity);
  return out;
}

Ranking rank_by_similarity(const UserEmbedding& user, std::span<const Entity* const> candidates,
                           const EmbeddingTable& table) {
  struct Scored {
    const Entity* entity;
    double score;
  };
  std::vector<Scored> scored;
  scored.reserve(candidates.size());
  const std::span<const double> u(user.vector);
  for (const Entity* e : candidates) {
    auto v = table.find(e->id);
    if (!v) throw UnknownEntity("candidate '" + e->id + "' has no embedding");
    scored.push_back({e, cosine(u, *v)});
  }
  std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.entity->follower_count != b.entity->follower_count) {
      return a.entity->follower_count > b.entity->follower_count;
    }
    return a.entity->id < b.entity->id;
  });
  Ranking r;
  if (!candidates.empty()) r.category = candidates.front()->category;
  r.user_id = user.user_id;
  for (const auto& s : scored) r.items.push_back({s.entity->id, s.score});
  return r;
}

Ranking rank_slate(const UserEmbedding& user, const Catalog& catalog, std::string_view category,
                   const EmbeddingTable& table) {
  const auto slate = catalog.slate(category);
  std::vector<const Entity*> known;
  known.reserve(slate.size());
  for (const Entity* e : slate) {
    if (table.vocab().contains(e->id)) known.push_back(e);
  }
  Ranking r = rank_by_similarity(user, known, table);
  r.category = std::string(category);
  if (known.size() != slate.size()) {
    for (const auto& id : catalog.popularity_ranking(category)) {
      if (!table.vocab().contains(id)) r.items.push_back({id, -std::numeric_limits<double>::infinity()});
    }
  }
  return r;
}

Ranking rank_by_popularity(const Catalog& catalog, std::string_view category) {
  Ranking r;
  r.category = std::string(category);
  for (const auto& id : catalog.popularity_ranking(category)) {
    r.items.push_back({id, static_cast<double>(catalog.find(id)->follower_count)});
  }
  return r;
}

std::string to_json(const RankRequest& request) {
  json candidates = json::array();
  for (const auto& e : request.candidates) {
    candidates.push_back({{"id", e.id}, {"display_name", e.display_name}, {"follower_count", e.follower_count}});
  }
  json doc{{"category", request.category}, {"candidates", std::move(candidates)},
           {"user_entities", request.user_entities}};
  return doc.dump();
}

std::vector<std::string> parse_ranking_response(std::string_view body, std::span<const Entity> candidates) {
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::parse_error& ex) {
    throw InvalidPermutation(std::string("adapter response is not JSON: ") + ex.what());
  }
  if (!doc.is_object() || !doc.contains("ranking") || !doc["ranking"].is_array()) {
    throw InvalidPermutation("adapter response lacks a 'ranking' array");
  }
  std::set<std::string, std::less<>> expected;
  for (const auto& e : candidates) expected.insert(e.id);
  std::vector<std::string> ids;
  std::set<std::string, std::less<>> seen;
  for (const auto& item : doc["ranking"]) {
    if (!item.is_string()) throw InvalidPermutation("ranking entries must be strings");
    auto id = item.get<std::string>();
    if (!expected.contains(id)) throw InvalidPermutation("ranking names foreign id '" + id + "'");
    if (!seen.insert(id).second) throw InvalidPermutation("ranking repeats id '" + id + "'");
    ids.push_back(std::move(id));
  }
  if (ids.size() != expected.size()) {
    throw InvalidPermutation("ranking has " + std::to_string(ids.size()) + " of " +
                             std::to_string(expected.size()) + " candidates");
  }
  return ids;
}

Ranking rank_external(const RankRequest& request, ExternalRanker& adapter) { return adapter.rank(request); }

}  // namespace socialrank
