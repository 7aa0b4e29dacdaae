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

#ifndef SOCIALRANK_FOLLOW_GRAPH_HPP_
#define SOCIALRANK_FOLLOW_GRAPH_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace socialrank {

/// Bipartite user -> entity follow edges. Users and entities are interned to
/// dense indices; adjacency lists are sorted and duplicate-free once
/// finalize() has run.
class FollowGraph {
 public:
  /// Returns the index of the user, adding it if new.
  std::uint32_t add_user(std::string_view id);
  std::uint32_t intern_entity(std::string_view id);
  void add_edge(std::uint32_t user, std::uint32_t entity);
  void add_edge(std::string_view user, std::string_view entity);

  /// Sorts adjacency and drops duplicate edges; rebuilds the follower index.
  void finalize();

  const std::vector<std::string>& users() const { return users_; }
  const std::vector<std::string>& entities() const { return entities_; }
  std::size_t user_count() const { return users_.size(); }
  std::size_t entity_count() const { return entities_.size(); }
  std::size_t edge_count() const;

  std::optional<std::uint32_t> find_user(std::string_view id) const;
  std::optional<std::uint32_t> find_entity(std::string_view id) const;

  std::span<const std::uint32_t> following(std::uint32_t user) const { return following_[user]; }
  std::span<const std::uint32_t> followers(std::uint32_t entity) const { return followers_[entity]; }
  std::size_t follower_count(std::string_view entity) const;

  /// Entity ids followed by a user, sorted by id.
  std::vector<std::string> followed_ids(std::uint32_t user) const;

 private:
  std::vector<std::string> users_;
  std::vector<std::string> entities_;
  std::unordered_map<std::string, std::uint32_t> user_index_;
  std::unordered_map<std::string, std::uint32_t> entity_index_;
  std::vector<std::vector<std::uint32_t>> following_;
  std::vector<std::vector<std::uint32_t>> followers_;
};

/// Tab-separated `user<TAB>entity` lines. Throws IoError / FormatError.
FollowGraph read_edge_list(const std::filesystem::path& path);
FollowGraph parse_edge_list(std::string_view text);

/// Lines sorted lexicographically by (user, entity).
std::string serialize_edge_list(const FollowGraph& graph);
void write_edge_list(const FollowGraph& graph, const std::filesystem::path& path);

}  // namespace socialrank

#endif  // SOCIALRANK_FOLLOW_GRAPH_HPP_
