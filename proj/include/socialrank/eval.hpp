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

#ifndef SOCIALRANK_EVAL_HPP_
#define SOCIALRANK_EVAL_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "socialrank/catalog.hpp"
#include "socialrank/embed.hpp"
#include "socialrank/follow_graph.hpp"
#include "socialrank/userrep.hpp"

namespace socialrank {

/// AP = (1/|R|) * sum over positions i holding a relevant item of
/// (relevant items in the top i) / i. Throws EmptyRelevant or
/// RelevantNotInRanking.
double average_precision(std::span<const std::string> ranking, const EntitySet& relevant);

/// One link-prediction query: rank `category`'s slate for a user whose
/// followed candidates in that slate are `relevant`.
struct EvalCase {
  std::string user_id;
  std::string category;
  EntitySet relevant;
  UserProfile profile;
};

struct Shortfall {
  std::string entity;
  std::size_t requested = 0;
  std::size_t available = 0;
};

struct CaseSet {
  std::vector<EvalCase> cases;
  std::vector<Shortfall> shortfalls;
};

/// Samples up to `users_per_entity` followers of every candidate in the
/// category, deduplicated within the category; cases are sorted by user id.
/// Entities with too few followers are reported in `shortfalls`, not thrown.
CaseSet build_eval_cases(const FollowGraph& graph, const Catalog& catalog, std::string_view category,
                         std::size_t users_per_entity, std::uint64_t seed);

/// build_eval_cases for every catalog category, concatenated in catalog order.
CaseSet build_all_eval_cases(const FollowGraph& graph, const Catalog& catalog, std::size_t users_per_entity,
                             std::uint64_t seed);

enum class WorldMode { Open, Closed };

std::string_view to_string(WorldMode mode);
WorldMode parse_world_mode(std::string_view text);

/// Open world: every followed entity except the target slate. Closed world:
/// catalog entities only, minus the target slate.
MaskPolicy make_mask(const Catalog& catalog, std::string_view target_category, WorldMode mode);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool overlaps(const Interval& other) const { return lo <= other.hi && other.lo <= hi; }
};

struct MapEstimate {
  double map = 0.0;
  Interval ci;
};

struct CategoryRow {
  std::string category;
  std::size_t cases = 0;
  std::size_t scored = 0;
  double mean_relevant_per_user = 0.0;
  MapEstimate popularity;
  MapEstimate social;
  double delta_percent = 0.0;
};

struct EvalOptions {
  std::uint64_t seed = 1;
  std::size_t bootstrap_resamples = 1000;
  double confidence = 0.95;
  std::size_t workers = 1;
  bool include_timestamp = false;
  /// Merged into report metadata (e.g. training configuration, input paths).
  nlohmann::json extra_metadata = nlohmann::json::object();
};

/// Per-category and overall MAP. The overall row is the unweighted mean over
/// categories with at least one scored case; bootstrap intervals resample
/// users within each category, shared between the two rankers.
struct ExperimentReport {
  std::string experiment;
  WorldMode mode = WorldMode::Open;
  std::vector<CategoryRow> rows;
  CategoryRow overall;
  std::size_t skipped = 0;
  nlohmann::json metadata;
};

ExperimentReport run_linkpred(std::span<const EvalCase> cases, const EmbeddingTable& table, const Catalog& catalog,
                              WorldMode mode, const EvalOptions& options = {});

struct CurvePoint {
  std::optional<std::size_t> k;  // nullopt: full profile
  MapEstimate social;
  std::size_t scored = 0;
  std::size_t skipped = 0;
};

struct VaryKReport {
  WorldMode mode = WorldMode::Open;
  std::vector<CurvePoint> points;  // one per requested k, then the full profile
  CurvePoint full;
  nlohmann::json metadata;
};

/// Reruns link prediction with each user's eligible evidence (after masking)
/// reduced to a uniform sample of k entities.
VaryKReport vary_k_experiment(std::span<const EvalCase> cases, const EmbeddingTable& table, const Catalog& catalog,
                              std::span<const std::size_t> ks, WorldMode mode, const EvalOptions& options = {});

struct GridCell {
  std::size_t k_categories = 0;
  std::size_t n_per_category = 0;
  MapEstimate social;
  std::size_t scored = 0;
  std::size_t skipped = 0;
};

struct GridReport {
  std::vector<GridCell> cells;  // row-major over k_categories, then n_per_category
  MapEstimate closed_world_full;
  nlohmann::json metadata;

  const GridCell& cell(std::size_t k_categories, std::size_t n_per_category) const;
};

/// Cold-start grid: profiles are stratified samples of n entities from each of
/// k non-target categories, scored in closed-world mode.
GridReport grid_experiment(std::span<const EvalCase> cases, const EmbeddingTable& table, const Catalog& catalog,
                           std::span<const std::size_t> k_categories, std::span<const std::size_t> n_per_category,
                           const EvalOptions& options = {});

nlohmann::json to_json(const ExperimentReport& report);
nlohmann::json to_json(const VaryKReport& report);
nlohmann::json to_json(const GridReport& report);
std::string to_csv(const ExperimentReport& report);
std::string to_csv(const VaryKReport& report);
std::string to_csv(const GridReport& report);

/// Bootstrap percentile interval of the mean of `values`.
Interval bootstrap_mean_interval(std::span<const double> values, std::size_t resamples, double confidence,
                                 std::uint64_t seed);

}  // namespace socialrank

#endif  // SOCIALRANK_EVAL_HPP_
