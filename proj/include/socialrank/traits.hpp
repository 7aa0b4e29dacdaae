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

#ifndef SOCIALRANK_TRAITS_HPP_
#define SOCIALRANK_TRAITS_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "socialrank/catalog.hpp"
#include "socialrank/embed.hpp"
#include "socialrank/follow_graph.hpp"
#include "socialrank/graphgen.hpp"

namespace socialrank {

struct LabeledVector {
  std::vector<double> x;
  std::uint8_t label = 0;
};

struct ProbeConfig {
  double l2 = 1e-2;
  std::size_t max_iterations = 20000;
  /// Stop once the gradient norm of the (standardised) objective falls below this.
  double tolerance = 1e-9;
  std::uint64_t seed = 1;
  /// Standard deviation of the random initial weights; 0 starts from zero.
  double init_scale = 0.0;
};

struct LinearProbe {
  std::string trait;
  std::vector<double> weights;
  double bias = 0.0;
  std::size_t iterations = 0;
  double final_loss = 0.0;
  double l2 = 0.0;
  std::uint64_t seed = 0;
};

/// Mean logistic cross-entropy plus (l2 / 2) * |w|^2 (bias unpenalised).
struct ProbeObjective {
  double loss = 0.0;
  std::vector<double> grad_weights;
  double grad_bias = 0.0;
};

ProbeObjective probe_objective(std::span<const double> weights, double bias, std::span<const LabeledVector> data,
                               double l2);

/// Logistic regression fit with accelerated full-batch gradient descent on
/// standardised features; the returned weights act on raw vectors.
/// Deterministic given the config. Throws DegenerateLabels when only one class
/// is present, DimensionMismatch on ragged input.
LinearProbe train_probe(std::span<const LabeledVector> data, const ProbeConfig& config, std::string trait = {});

/// sigmoid(w . x + b). Throws DimensionMismatch.
double predict(const LinearProbe& probe, std::span<const double> x);

double accuracy(const LinearProbe& probe, std::span<const LabeledVector> data);

struct EntityTraitProfile {
  std::string entity;
  std::array<double, kTraitCount> proportions{};
  std::size_t sample_size = 0;
};

/// Ground-truth mode: share of the entity's followers with each trait set,
/// counted from the trait map. Throws NoFollowers.
EntityTraitProfile entity_trait_profile(std::string_view entity, const FollowGraph& graph,
                                        const std::map<std::string, TraitVector>& traits);

/// Predicted mode: each follower is projected (full profile) and classified by
/// the probe for each trait at threshold 0.5. `probes` are in kTraitNames
/// order. Throws NoFollowers when no follower can be projected.
EntityTraitProfile entity_trait_profile(std::string_view entity, const FollowGraph& graph,
                                        std::span<const LinearProbe> probes, const EmbeddingTable& table);

/// Per-trait mean over the given entity profiles (the category reference line).
EntityTraitProfile average_profile(std::span<const EntityTraitProfile> profiles, std::string label);

/// Mean-pooled full-profile vector and trait label for every user that has
/// both traits and in-vocabulary evidence.
std::vector<LabeledVector> probe_dataset(const FollowGraph& graph, const EmbeddingTable& table,
                                         const std::map<std::string, TraitVector>& traits, std::size_t trait);

struct TraitProbeResult {
  LinearProbe probe;
  double heldout_accuracy = 0.0;
  double heldout_majority_rate = 0.0;
  /// Majority-class share in the training split: the accuracy reference for a
  /// probe that learned nothing. Unlike heldout_majority_rate it does not peek
  /// at the held-out labels.
  double train_majority_rate = 0.0;
  std::size_t heldout_size = 0;
};

/// Deterministic split by seed; trains on (1 - heldout_fraction) of users.
std::vector<TraitProbeResult> train_trait_probes(const FollowGraph& graph, const EmbeddingTable& table,
                                                 const std::map<std::string, TraitVector>& traits,
                                                 const ProbeConfig& config, double heldout_fraction = 0.2);

nlohmann::json to_json(const LinearProbe& probe);
LinearProbe probe_from_json(const nlohmann::json& doc);
/// Accepts a single probe object or an array of them.
std::vector<LinearProbe> load_probes(const std::filesystem::path& path);
void save_probes(std::span<const LinearProbe> probes, const std::filesystem::path& path);
/// Reorders probes into kTraitNames order. Throws FormatError if one is missing.
std::vector<LinearProbe> probes_in_trait_order(std::vector<LinearProbe> probes);

nlohmann::json to_json(const EntityTraitProfile& profile);

}  // namespace socialrank

#endif  // SOCIALRANK_TRAITS_HPP_
