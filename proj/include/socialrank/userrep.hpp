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

#ifndef SOCIALRANK_USERREP_HPP_
#define SOCIALRANK_USERREP_HPP_

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "socialrank/catalog.hpp"
#include "socialrank/embed.hpp"
#include "socialrank/follow_graph.hpp"

namespace socialrank {

using EntitySet = std::set<std::string, std::less<>>;

struct UserProfile {
  std::string user_id;
  EntitySet followed;

  bool operator==(const UserProfile&) const = default;
};

/// All followed entities are eligible except `exclude`.
struct OpenWorld {
  EntitySet exclude;
};

/// Only `allowed` entities are eligible; `exclude` wins over `allowed`.
struct ClosedWorld {
  EntitySet allowed;
  EntitySet exclude;
};

using MaskPolicy = std::variant<OpenWorld, ClosedWorld>;

bool admits(const MaskPolicy& mask, std::string_view entity);
std::string describe(const MaskPolicy& mask);

struct UserEmbedding {
  std::string user_id;
  std::vector<double> vector;
  std::vector<std::string> support;  // entities actually pooled, sorted
  std::string mask;
  std::size_t out_of_vocabulary = 0;  // followed entities dropped for lack of a vector
};

/// Mean of the input vectors of followed entities that are in the vocabulary
/// and admitted by the mask. Accumulates in double, in id order.
/// Throws EmptySupport when nothing survives.
UserEmbedding project(const UserProfile& profile, const EmbeddingTable& table, const MaskPolicy& mask = OpenWorld{});

/// The followed entities that the mask admits.
UserProfile apply_mask(const UserProfile& profile, const MaskPolicy& mask);

/// Uniform sample without replacement of min(k, |followed|) entities.
UserProfile sample_profile(const UserProfile& profile, std::size_t k, std::uint64_t seed);

/// Chooses min(n_categories, available) catalog categories other than
/// `exclude_category` in which the user follows something, then up to
/// k_per_category followed entities from each. Throws EmptySupport when the user
/// follows no catalog entity outside `exclude_category`, InvalidParameter on
/// zero counts.
UserProfile stratified_sample(const UserProfile& profile, const Catalog& catalog, std::size_t n_categories,
                              std::size_t k_per_category, std::uint64_t seed, std::string_view exclude_category);

UserProfile profile_from_graph(const FollowGraph& graph, std::uint32_t user);

/// JSON lines: {"user_id": ..., "followed": [...]} per line.
std::string serialize_profiles(const std::vector<UserProfile>& profiles);
std::vector<UserProfile> parse_profiles(std::string_view text);
std::vector<UserProfile> load_profiles(const std::filesystem::path& path);
void save_profiles(const std::vector<UserProfile>& profiles, const std::filesystem::path& path);

}  // namespace socialrank

#endif  // SOCIALRANK_USERREP_HPP_
