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

#ifndef SOCIALRANK_SERVICE_HPP_
#define SOCIALRANK_SERVICE_HPP_

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "socialrank/catalog.hpp"
#include "socialrank/embed.hpp"
#include "socialrank/follow_graph.hpp"
#include "socialrank/rank.hpp"
#include "socialrank/session_store.hpp"
#include "socialrank/traits.hpp"

namespace httplib {
class Server;
}

namespace socialrank {

/// Everything the onboarding service reads; immutable once published.
struct ServiceState {
  Catalog catalog;
  EmbeddingTable table;
  std::vector<LinearProbe> probes;   // empty, or one per trait in kTraitNames order
  std::optional<FollowGraph> graph;  // enables follower-based trait profiles
};

struct Recommendation {
  Ranking ranking;
  bool fallback = false;  // true: popularity order, no usable evidence
  std::vector<std::string> support;
};

/// Cross-domain recommendation for a set of selected catalog entities:
/// selections inside the target category are masked out, the rest are
/// mean-pooled and the slate is ranked by cosine. Falls back to popularity
/// when no selection outside the category has a vector.
Recommendation recommend(const ServiceState& state, const EntitySet& selections, std::string_view category);

/// HTTP facade over the library. Requests answer 503 until a state has been
/// published with set_state().
class OnboardingService {
 public:
  explicit OnboardingService(SessionStore& store);

  void set_state(std::shared_ptr<const ServiceState> state);
  bool ready() const { return state() != nullptr; }

  void register_routes(httplib::Server& server);

  static nlohmann::json openapi();

 private:
  std::shared_ptr<const ServiceState> state() const {
    std::lock_guard lock(state_mutex_);
    return state_;
  }
  nlohmann::json trait_profile(const ServiceState& state, const Entity& entity);

  SessionStore& store_;
  mutable std::mutex state_mutex_;
  std::shared_ptr<const ServiceState> state_;
  std::mutex profile_mutex_;
  std::map<std::string, EntityTraitProfile> profile_cache_;
};

}  // namespace socialrank

#endif  // SOCIALRANK_SERVICE_HPP_
