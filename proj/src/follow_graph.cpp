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

#include "socialrank/follow_graph.hpp"

#include <algorithm>

#include "socialrank/error.hpp"
#include "socialrank/io_util.hpp"

namespace socialrank {

std::uint32_t FollowGraph::add_user(std::string_view id) {
  auto [it, inserted] = user_index_.try_emplace(std::string(id), static_cast<std::uint32_t>(users_.size()));
  if (inserted) {
    users_.emplace_back(id);
    following_.emplace_back();
  }
  return it->second;
}

std::uint32_t FollowGraph::intern_entity(std::string_view id) {
  auto [it, inserted] =
      entity_index_.try_emplace(std::string(id), static_cast<std::uint32_t>(entities_.size()));
  if (inserted) {
    entities_.emplace_back(id);
    followers_.emplace_back();
  }
  return it->second;
}

void FollowGraph::add_edge(std::uint32_t user, std::uint32_t entity) {
  following_.at(user).push_back(entity);
  followers_.at(entity).push_back(user);
}

void FollowGraph::add_edge(std::string_view user, std::string_view entity) {
  add_edge(add_user(user), intern_entity(entity));
}

void FollowGraph::finalize() {
  for (auto& adj : following_) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }
  for (auto& f : followers_) f.clear();
  for (std::uint32_t u = 0; u < following_.size(); ++u) {
    for (std::uint32_t e : following_[u]) followers_[e].push_back(u);
  }
}

std::size_t FollowGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& adj : following_) n += adj.size();
  return n;
}

std::optional<std::uint32_t> FollowGraph::find_user(std::string_view id) const {
  auto it = user_index_.find(std::string(id));
  if (it == user_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::uint32_t> FollowGraph::find_entity(std::string_view id) const {
  auto it = entity_index_.find(std::string(id));
  if (it == entity_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FollowGraph::follower_count(std::string_view entity) const {
  auto e = find_entity(entity);
  return e ? followers_[*e].size() : 0;
}

std::vector<std::string> FollowGraph::followed_ids(std::uint32_t user) const {
  std::vector<std::string> ids;
  ids.reserve(following_[user].size());
  for (std::uint32_t e : following_[user]) ids.push_back(entities_[e]);
  std::sort(ids.begin(), ids.end());
  return ids;
}

FollowGraph parse_edge_list(std::string_view text) {
  FollowGraph graph;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0 || tab + 1 == line.size() ||
        line.find('\t', tab + 1) != std::string_view::npos) {
      throw FormatError("edge list line " + std::to_string(line_no) + ": expected 'user<TAB>entity'");
    }
    graph.add_edge(line.substr(0, tab), line.substr(tab + 1));
  }
  graph.finalize();
  return graph;
}

FollowGraph read_edge_list(const std::filesystem::path& path) {
  return parse_edge_list(read_text_file(path));
}

std::string serialize_edge_list(const FollowGraph& graph) {
  std::vector<std::pair<std::string_view, std::string_view>> edges;
  edges.reserve(graph.edge_count());
  for (std::uint32_t u = 0; u < graph.user_count(); ++u) {
    for (std::uint32_t e : graph.following(u)) edges.emplace_back(graph.users()[u], graph.entities()[e]);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  std::string out;
  for (const auto& [u, e] : edges) {
    out.append(u);
    out.push_back('\t');
    out.append(e);
    out.push_back('\n');
  }
  return out;
}

void write_edge_list(const FollowGraph& graph, const std::filesystem::path& path) {
  write_text_file(path, serialize_edge_list(graph));
}

}  // namespace socialrank
