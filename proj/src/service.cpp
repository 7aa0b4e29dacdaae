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

#include "socialrank/service.hpp"

#include <cmath>

#include "httplib.h"
#include "socialrank/eval.hpp"
#include "socialrank/userrep.hpp"

namespace socialrank {

using nlohmann::json;

Recommendation recommend(const ServiceState& state, const EntitySet& selections, std::string_view category) {
  Recommendation rec;
  UserProfile profile{"session", selections};
  const MaskPolicy mask = make_mask(state.catalog, category, WorldMode::Open);
  try {
    const UserEmbedding user = project(profile, state.table, mask);
    rec.ranking = rank_slate(user, state.catalog, category, state.table);
    rec.support = user.support;
  } catch (const EmptySupport&) {
    rec.ranking = rank_by_popularity(state.catalog, category);
    rec.fallback = true;
  }
  rec.ranking.user_id.reset();
  return rec;
}

namespace {

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message) {
  send_json(res, status, {{"error", message}});
}

json entity_json(const Entity& e) {
  return {{"id", e.id}, {"display_name", e.display_name}, {"category", e.category},
          {"follower_count", e.follower_count}};
}

json session_json(const OnboardingSession& s) {
  return {{"session_id", s.id},
          {"selections", std::vector<std::string>(s.selections.begin(), s.selections.end())},
          {"created_at", s.created_at},
          {"updated_at", s.updated_at}};
}

}  // namespace

OnboardingService::OnboardingService(SessionStore& store) : store_(store) {}

void OnboardingService::set_state(std::shared_ptr<const ServiceState> state) {
  {
    std::lock_guard lock(profile_mutex_);
    profile_cache_.clear();
  }
  std::lock_guard lock(state_mutex_);
  state_ = std::move(state);
}

json OnboardingService::trait_profile(const ServiceState& state, const Entity& entity) {
  auto follower_profile = [&](const std::string& id) -> std::optional<EntityTraitProfile> {
    {
      std::lock_guard lock(profile_mutex_);
      if (auto it = profile_cache_.find(id); it != profile_cache_.end()) return it->second;
    }
    try {
      auto p = entity_trait_profile(id, *state.graph, state.probes, state.table);
      std::lock_guard lock(profile_mutex_);
      profile_cache_.emplace(id, p);
      return p;
    } catch (const NoFollowers&) {
      return std::nullopt;
    }
  };
  auto embedding_profile = [&](const std::string& id) -> std::optional<EntityTraitProfile> {
    auto v = state.table.find(id);
    if (!v) return std::nullopt;
    const std::vector<double> x(v->begin(), v->end());
    EntityTraitProfile p{id, {}, 1};
    for (std::size_t t = 0; t < kTraitCount; ++t) p.proportions[t] = predict(state.probes[t], x);
    return p;
  };
  const bool by_followers = state.graph.has_value();
  auto profile_of = [&](const std::string& id) { return by_followers ? follower_profile(id) : embedding_profile(id); };

  auto own = profile_of(entity.id);
  if (!own) return nullptr;
  std::vector<EntityTraitProfile> members;
  for (const Entity* e : state.catalog.slate(entity.category)) {
    if (auto p = profile_of(e->id)) members.push_back(*p);
  }
  return {{"entity", entity.id},
          {"category", entity.category},
          {"mode", by_followers ? "followers" : "embedding"},
          {"traits", kTraitNames},
          {"profile", to_json(*own)},
          {"category_average", to_json(average_profile(members, entity.category))}};
}

void OnboardingService::register_routes(httplib::Server& server) {
  server.set_pre_routing_handler([this](const httplib::Request& req, httplib::Response& res) {
    if (req.path.rfind("/v1/", 0) == 0 && req.path != "/v1/openapi.json" && !ready()) {
      send_error(res, 503, "service is loading");
      return httplib::Server::HandlerResponse::Handled;
    }
    return httplib::Server::HandlerResponse::Unhandled;
  });

  server.Get("/v1/openapi.json", [](const httplib::Request&, httplib::Response& res) { send_json(res, 200, openapi()); });

  server.Get("/v1/categories", [this](const httplib::Request&, httplib::Response& res) {
    auto st = state();
    json cats = json::array();
    for (const auto& c : st->catalog.categories()) {
      cats.push_back({{"name", c}, {"entity_count", st->catalog.slate(c).size()}});
    }
    send_json(res, 200, {{"categories", std::move(cats)}});
  });

  server.Get(R"(/v1/categories/([^/]+)/entities)", [this](const httplib::Request& req, httplib::Response& res) {
    auto st = state();
    const std::string category = req.matches[1];
    if (!st->catalog.has_category(category)) return send_error(res, 404, "unknown category '" + category + "'");
    json items = json::array();
    for (const auto& id : st->catalog.popularity_ranking(category)) items.push_back(entity_json(*st->catalog.find(id)));
    send_json(res, 200, {{"category", category}, {"entities", std::move(items)}});
  });

  server.Post("/v1/sessions", [this](const httplib::Request&, httplib::Response& res) {
    send_json(res, 201, session_json(store_.create()));
  });

  server.Get(R"(/v1/sessions/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
    auto s = store_.get(req.matches[1]);
    if (!s) return send_error(res, 404, "unknown session");
    send_json(res, 200, session_json(*s));
  });

  server.Put(R"(/v1/sessions/([^/]+)/selections)", [this](const httplib::Request& req, httplib::Response& res) {
    auto st = state();
    const std::string id = req.matches[1];
    if (!store_.get(id)) return send_error(res, 404, "unknown session");
    EntitySet selections;
    try {
      const json body = json::parse(req.body);
      if (!body.is_object() || !body.contains("entity_ids") || !body["entity_ids"].is_array()) {
        return send_error(res, 400, "body must be {\"entity_ids\": [...]}");
      }
      for (const auto& e : body["entity_ids"]) {
        if (!e.is_string()) return send_error(res, 400, "entity_ids must be strings");
        selections.insert(e.get<std::string>());
      }
    } catch (const json::exception&) {
      return send_error(res, 400, "malformed JSON body");
    }
    for (const auto& e : selections) {
      if (!st->catalog.contains(e)) return send_error(res, 409, "unknown entity '" + e + "'");
    }
    if (!store_.set_selections(id, selections)) return send_error(res, 404, "unknown session");
    send_json(res, 200, session_json(*store_.get(id)));
  });

  server.Get(R"(/v1/sessions/([^/]+)/recommendations)", [this](const httplib::Request& req, httplib::Response& res) {
    auto st = state();
    auto session = store_.get(req.matches[1]);
    if (!session) return send_error(res, 404, "unknown session");
    if (!req.has_param("category")) return send_error(res, 400, "missing 'category' query parameter");
    const std::string category = req.get_param_value("category");
    if (!st->catalog.has_category(category)) return send_error(res, 404, "unknown category '" + category + "'");
    const Recommendation rec = recommend(*st, session->selections, category);
    json items = json::array();
    for (const auto& item : rec.ranking.items) {
      const Entity* e = st->catalog.find(item.entity);
      json ji{{"id", e->id}, {"display_name", e->display_name}, {"follower_count", e->follower_count}};
      ji["score"] = std::isfinite(item.score) ? json(item.score) : json(nullptr);
      items.push_back(std::move(ji));
    }
    send_json(res, 200,
              {{"session_id", session->id},
               {"category", category},
               {"fallback", rec.fallback ? json("popularity") : json(nullptr)},
               {"support", rec.support},
               {"ranking", std::move(items)}});
  });

  server.Get(R"(/v1/entities/([^/]+)/trait-profile)", [this](const httplib::Request& req, httplib::Response& res) {
    auto st = state();
    if (st->probes.empty()) return send_error(res, 404, "trait probes are not loaded");
    const Entity* e = st->catalog.find(req.matches[1].str());
    if (!e) return send_error(res, 404, "unknown entity");
    json body = trait_profile(*st, *e);
    if (body.is_null()) return send_error(res, 404, "no trait profile for entity '" + e->id + "'");
    send_json(res, 200, body);
  });
}

json OnboardingService::openapi() {
  auto op = [](const char* summary, json responses) {
    return json{{"summary", summary}, {"responses", std::move(responses)}};
  };
  auto resp = [](const char* d) { return json{{"description", d}}; };
  json paths;
  paths["/v1/categories"]["get"] = op("List categories", {{"200", resp("Categories")}});
  paths["/v1/categories/{category}/entities"]["get"] =
      op("Entities of a category in popularity order", {{"200", resp("Entities")}, {"404", resp("Unknown category")}});
  paths["/v1/sessions"]["post"] = op("Create an onboarding session", {{"201", resp("Session created")}});
  paths["/v1/sessions/{id}"]["get"] = op("Read a session", {{"200", resp("Session")}, {"404", resp("Unknown session")}});
  paths["/v1/sessions/{id}/selections"]["put"] =
      op("Replace the selected entities; body {\"entity_ids\": [...]}",
         {{"200", resp("Updated session")},
          {"400", resp("Malformed body")},
          {"404", resp("Unknown session")},
          {"409", resp("Selection names an unknown entity")}});
  paths["/v1/sessions/{id}/recommendations"]["get"] =
      op("Personalised ranking of a category slate (?category=C); fallback is \"popularity\" without evidence",
         {{"200", resp("Ranking")}, {"400", resp("Missing category")}, {"404", resp("Unknown session or category")}});
  paths["/v1/entities/{id}/trait-profile"]["get"] =
      op("Socio-demographic profile of an entity's followers",
         {{"200", resp("Profile with category average")}, {"404", resp("Unknown entity or probes not loaded")}});
  return {{"openapi", "3.0.3"},
          {"info", {{"title", "socialrank onboarding API"}, {"version", "1"}}},
          {"paths", std::move(paths)}};
}

}  // namespace socialrank
