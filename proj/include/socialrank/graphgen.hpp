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

#ifndef SOCIALRANK_GRAPHGEN_HPP_
#define SOCIALRANK_GRAPHGEN_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "socialrank/catalog.hpp"
#include "socialrank/follow_graph.hpp"

namespace socialrank {

inline constexpr std::size_t kTraitCount = 5;
inline constexpr std::array<std::string_view, kTraitCount> kTraitNames = {
    "gender", "age_over_25", "ethnicity_majority", "has_degree", "political_right"};

using TraitPriors = std::array<double, kTraitCount>;

struct TraitVector {
  std::array<std::uint8_t, kTraitCount> values{};

  bool operator==(const TraitVector&) const = default;
};

/// Logistic follow model for one entity: P(follow | t) = sigmoid(bias + weights . t).
/// A bias of -infinity means the entity is never followed.
struct EntityAffinity {
  std::string entity;
  std::string group;  // catalog category, or a background group name
  double bias = 0.0;
  std::array<double, kTraitCount> weights{};

  double logit(const TraitVector& t) const;
  bool operator==(const EntityAffinity&) const = default;
};

class AffinityModel {
 public:
  AffinityModel() = default;
  explicit AffinityModel(std::vector<EntityAffinity> records);

  const std::vector<EntityAffinity>& records() const { return records_; }
  const EntityAffinity* find(std::string_view entity) const;

  bool operator==(const AffinityModel& other) const { return records_ == other.records_; }

 private:
  std::vector<EntityAffinity> records_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct UserSample {
  std::vector<std::string> ids;
  std::vector<TraitVector> traits;  // parallel to ids
};

/// n users with independent Bernoulli(prior) traits. Ids are zero-padded
/// ("u000001") so lexicographic and numeric order agree.
UserSample sample_users(std::size_t n, const TraitPriors& priors, std::uint64_t seed);

/// Independent Bernoulli edge for every (user, model record). Each user draws
/// from its own substream keyed by (seed, user index), so the result does not
/// depend on iteration order. Throws MissingAffinity if a catalog entity has
/// no model record.
FollowGraph sample_graph(const UserSample& users, const Catalog& catalog, const AffinityModel& model,
                         std::uint64_t seed);

struct PlantedModelOptions {
  /// Share of an entity's weight direction that comes from its group direction.
  double within_category_correlation = 0.5;
  /// Non-catalog entities; nullopt means 4 x catalog size.
  std::optional<std::size_t> background_entities;
  std::size_t background_group_size = 20;
  /// Population-mean follow logit before popularity spread.
  double base_logit = -2.0;
  /// Population-mean follow logit of background entities. Lower than
  /// base_logit: the catalog holds the heavily followed accounts and the
  /// background is the long tail.
  double background_base_logit = -3.5;
  /// Trait priors used to centre each bias so the population-mean logit does
  /// not depend on the trait weights.
  TraitPriors trait_priors = {0.5, 0.5, 0.5, 0.5, 0.5};
};

/// Planted model: each group (catalog category or background block) gets a
/// random unit direction in trait space; entity weights are
/// strength * (rho * group_dir + sqrt(1 - rho^2) * own_dir). Biases are
/// base_logit - weights . priors + spread * z, with the catalog draws sorted so
/// that catalog order is descending expected popularity.
AffinityModel make_planted_model(const Catalog& catalog, double correlation_strength, double popularity_spread,
                                 std::uint64_t seed, const PlantedModelOptions& options = {});

struct DatasetConfig {
  std::size_t users = 5000;
  double correlation_strength = 3.0;
  double popularity_spread = 0.5;
  TraitPriors trait_priors = {0.5, 0.5, 0.5, 0.5, 0.5};
  PlantedModelOptions model;
  std::uint64_t seed = 1;
};

struct SyntheticDataset {
  Catalog catalog;  // follower counts measured on `graph`
  FollowGraph graph;
  std::map<std::string, TraitVector> traits;
  AffinityModel model;
  std::uint64_t seed = 0;
};

SyntheticDataset generate_dataset(const Catalog& base_catalog, const DatasetConfig& config);

/// Copy of the catalog with follower counts replaced by in-graph counts.
Catalog with_follower_counts(const Catalog& catalog, const FollowGraph& graph);

/// 14 categories x 20 candidates modelled on a Twitter experimental catalog.
/// Follower counts are zero; fill them with with_follower_counts().
Catalog reference_catalog();

std::string serialize_traits(const std::map<std::string, TraitVector>& traits);
std::map<std::string, TraitVector> parse_traits(std::string_view json_text);
std::map<std::string, TraitVector> load_traits(const std::filesystem::path& path);

std::string serialize_model(const AffinityModel& model);
AffinityModel parse_model(std::string_view json_text);

/// Writes edges.tsv, traits.json, model.json and catalog.json into `dir`.
void write_dataset(const SyntheticDataset& dataset, const std::filesystem::path& dir);

}  // namespace socialrank

#endif  // SOCIALRANK_GRAPHGEN_HPP_
