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

#include "socialrank/userrep.hpp"

#include <algorithm>
#include <map>

#include "json.hpp"
#include "socialrank/io_util.hpp"
#include "socialrank/rng.hpp"

namespace socialrank {

using nlohmann::json;

bool admits(const MaskPolicy& mask, std::string_view entity) {
  if (const auto* open = std::get_if<OpenWorld>(&mask)) return !open->exclude.contains(entity);
  const auto& closed = std::get<ClosedWorld>(mask);
  return closed.allowed.contains(entity) && !closed.exclude.contains(entity);
}

std::string describe(const MaskPolicy& mask) {
  if (const auto* open = std::get_if<OpenWorld>(&mask)) {
    return "open-world(exclude=" + std::to_string(open->exclude.size()) + ")";
  }
  const auto& closed = std::get<ClosedWorld>(mask);
  return "closed-world(allowed=" + std::to_string(closed.allowed.size()) +
         ",exclude=" + std::to_string(closed.exclude.size()) + ")";
}

UserProfile apply_mask(const UserProfile& profile, const MaskPolicy& mask) {
  UserProfile out{profile.user_id, {}};
  for (const auto& e : profile.followed) {
    if (admits(mask, e)) out.followed.insert(out.followed.end(), e);
  }
  return out;
}

UserEmbedding project(const UserProfile& profile, const EmbeddingTable& table, const MaskPolicy& mask) {
  UserEmbedding emb;
  emb.user_id = profile.user_id;
  emb.mask = describe(mask);
  emb.vector.assign(table.dim(), 0.0);
  for (const auto& e : profile.followed) {
    if (!admits(mask, e)) continue;
    auto v = table.find(e);
    if (!v) {
      ++emb.out_of_vocabulary;
      continue;
    }
    for (std::size_t i = 0; i < v->size(); ++i) emb.vector[i] += (*v)[i];
    emb.support.push_back(e);
  }
  if (emb.support.empty()) {
    throw EmptySupport("user '" + profile.user_id + "' has no in-vocabulary evidence under " + emb.mask);
  }
  const auto n = static_cast<double>(emb.support.size());
  for (auto& x : emb.vector) x /= n;
  return emb;
}

UserProfile sample_profile(const UserProfile& profile, std::size_t k, std::uint64_t seed) {
  if (k >= profile.followed.size()) return profile;
  std::vector<std::string> pool(profile.followed.begin(), profile.followed.end());
  Rng rng(seed);
  partial_shuffle(pool.begin(), pool.end(), k, rng);
  UserProfile out{profile.user_id, {}};
  for (std::size_t i = 0; i < k; ++i) out.followed.insert(std::move(pool[i]));
  return out;
}

UserProfile stratified_sample(const UserProfile& profile, const Catalog& catalog, std::size_t n_categories,
                              std::size_t k_per_category, std::uint64_t seed, std::string_view exclude_category) {
  if (n_categories == 0 || k_per_category == 0) {
    throw InvalidParameter("stratified_sample needs n_categories >= 1 and k_per_category >= 1");
  }
  // Category order follows the catalog so the draw does not depend on map order.
  std::map<std::string_view, std::vector<std::string>> by_category;
  for (const auto& id : profile.followed) {
    const Entity* e = catalog.find(id);
    if (e && e->category != exclude_category) by_category[e->category].push_back(id);
  }
  std::vector<std::string_view> available;
  for (const auto& c : catalog.categories()) {
    if (by_category.contains(c)) available.push_back(c);
  }
  if (available.empty()) {
    throw EmptySupport("user '" + profile.user_id + "' follows no catalog entity outside '" +
                       std::string(exclude_category) + "'");
  }
  Rng rng(seed);
  const std::size_t n = std::min(n_categories, available.size());
  partial_shuffle(available.begin(), available.end(), n, rng);
  UserProfile out{profile.user_id, {}};
  for (std::size_t i = 0; i < n; ++i) {
    auto& members = by_category[available[i]];
    const std::size_t k = std::min(k_per_category, members.size());
    partial_shuffle(members.begin(), members.end(), k, rng);
    for (std::size_t j = 0; j < k; ++j) out.followed.insert(members[j]);
  }
  return out;
}

UserProfile profile_from_graph(const FollowGraph& graph, std::uint32_t user) {
  UserProfile p{graph.users()[user], {}};
  for (std::uint32_t e : graph.following(user)) p.followed.insert(graph.entities()[e]);
  return p;
}

std::string serialize_profiles(const std::vector<UserProfile>& profiles) {
  std::string out;
  for (const auto& p : profiles) {
    json line{{"user_id", p.user_id}, {"followed", std::vector<std::string>(p.followed.begin(), p.followed.end())}};
    out += line.dump();
    out.push_back('\n');
  }
  return out;
}

std::vector<UserProfile> parse_profiles(std::string_view text) {
  std::vector<UserProfile> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      const json obj = json::parse(line);
      UserProfile p;
      p.user_id = obj.at("user_id").get<std::string>();
      for (const auto& e : obj.at("followed")) p.followed.insert(e.get<std::string>());
      out.push_back(std::move(p));
    } catch (const json::exception& ex) {
      throw FormatError("profiles line " + std::to_string(line_no) + ": " + ex.what());
    }
  }
  return out;
}

std::vector<UserProfile> load_profiles(const std::filesystem::path& path) {
  return parse_profiles(read_text_file(path));
}

void save_profiles(const std::vector<UserProfile>& profiles, const std::filesystem::path& path) {
  write_text_file(path, serialize_profiles(profiles));
}

}  // namespace socialrank
