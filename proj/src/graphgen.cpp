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

#include "socialrank/graphgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "json.hpp"
#include "socialrank/error.hpp"
#include "socialrank/io_util.hpp"
#include "socialrank/rng.hpp"

namespace socialrank {

using nlohmann::json;

double EntityAffinity::logit(const TraitVector& t) const {
  double z = bias;
  for (std::size_t i = 0; i < kTraitCount; ++i) z += weights[i] * t.values[i];
  return z;
}

AffinityModel::AffinityModel(std::vector<EntityAffinity> records) : records_(std::move(records)) {
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const auto& r = records_[i];
    if (r.entity.empty()) throw InvalidParameter("affinity record with empty entity id");
    for (double w : r.weights) {
      if (!std::isfinite(w)) throw InvalidParameter("non-finite trait weight for '" + r.entity + "'");
    }
    if (std::isnan(r.bias) || r.bias == std::numeric_limits<double>::infinity()) {
      throw InvalidParameter("bias for '" + r.entity + "' must be finite or -infinity");
    }
    if (!index_.emplace(r.entity, i).second) {
      throw InvalidParameter("duplicate affinity record for '" + r.entity + "'");
    }
  }
}

const EntityAffinity* AffinityModel::find(std::string_view entity) const {
  auto it = index_.find(std::string(entity));
  return it == index_.end() ? nullptr : &records_[it->second];
}

UserSample sample_users(std::size_t n, const TraitPriors& priors, std::uint64_t seed) {
  if (n == 0) throw InvalidParameter("user count must be positive");
  for (double p : priors) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidParameter("trait priors must lie in [0, 1]");
  }
  const int width = std::max<int>(6, static_cast<int>(std::to_string(n).size()));
  UserSample sample;
  sample.ids.reserve(n);
  sample.traits.reserve(n);
  for (std::size_t u = 0; u < n; ++u) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "u%0*zu", width, u + 1);
    sample.ids.emplace_back(buf);
    Rng rng(derive_seed(seed, u));
    TraitVector t;
    for (std::size_t i = 0; i < kTraitCount; ++i) t.values[i] = rng.bernoulli(priors[i]) ? 1 : 0;
    sample.traits.push_back(t);
  }
  return sample;
}

FollowGraph sample_graph(const UserSample& users, const Catalog& catalog, const AffinityModel& model,
                         std::uint64_t seed) {
  for (const auto& e : catalog.entities()) {
    if (!model.find(e.id)) throw MissingAffinity("no affinity record for catalog entity '" + e.id + "'");
  }
  if (users.ids.size() != users.traits.size()) throw InvalidParameter("user ids and traits differ in length");

  FollowGraph graph;
  std::vector<std::uint32_t> entity_index;
  entity_index.reserve(model.records().size());
  for (const auto& r : model.records()) entity_index.push_back(graph.intern_entity(r.entity));

  for (std::size_t u = 0; u < users.ids.size(); ++u) {
    const std::uint32_t user = graph.add_user(users.ids[u]);
    Rng rng(derive_seed(seed, u));
    const auto& records = model.records();
    for (std::size_t i = 0; i < records.size(); ++i) {
      const double p = sigmoid(records[i].logit(users.traits[u]));
      // Draw unconditionally so the stream position is independent of outcomes.
      if (rng.uniform() < p) graph.add_edge(user, entity_index[i]);
    }
  }
  graph.finalize();
  return graph;
}

namespace {

std::array<double, kTraitCount> unit_direction(Rng& rng) {
  std::array<double, kTraitCount> v{};
  double norm = 0.0;
  while (norm < 1e-12) {
    norm = 0.0;
    for (auto& x : v) {
      x = rng.normal();
      norm += x * x;
    }
  }
  norm = std::sqrt(norm);
  for (auto& x : v) x /= norm;
  return v;
}

}  // namespace

AffinityModel make_planted_model(const Catalog& catalog, double correlation_strength, double popularity_spread,
                                 std::uint64_t seed, const PlantedModelOptions& options) {
  if (!(correlation_strength >= 0.0) || !std::isfinite(correlation_strength)) {
    throw InvalidParameter("correlation_strength must be finite and >= 0");
  }
  if (!(popularity_spread >= 0.0) || !std::isfinite(popularity_spread)) {
    throw InvalidParameter("popularity_spread must be finite and >= 0");
  }
  const double rho = options.within_category_correlation;
  if (!(rho >= 0.0 && rho <= 1.0)) throw InvalidParameter("within_category_correlation must lie in [0, 1]");
  if (options.background_group_size == 0) throw InvalidParameter("background_group_size must be positive");

  Rng rng(seed);
  const double own = std::sqrt(1.0 - rho * rho);

  auto draw_weights = [&](const std::array<double, kTraitCount>& group_dir) {
    const auto own_dir = unit_direction(rng);
    std::array<double, kTraitCount> w{};
    for (std::size_t i = 0; i < kTraitCount; ++i) {
      w[i] = correlation_strength * (rho * group_dir[i] + own * own_dir[i]);
    }
    return w;
  };
  auto centred_bias = [&](const std::array<double, kTraitCount>& w, double base, double z) {
    double b = base + popularity_spread * z;
    for (std::size_t i = 0; i < kTraitCount; ++i) b -= w[i] * options.trait_priors[i];
    return b;
  };

  std::vector<EntityAffinity> records;
  for (const auto& category : catalog.categories()) {
    const auto members = catalog.slate(category);
    const auto group_dir = unit_direction(rng);
    std::vector<double> z(members.size());
    for (auto& x : z) x = rng.normal();
    std::sort(z.begin(), z.end(), std::greater<>());
    for (std::size_t i = 0; i < members.size(); ++i) {
      EntityAffinity rec;
      rec.entity = members[i]->id;
      rec.group = category;
      rec.weights = draw_weights(group_dir);
      rec.bias = centred_bias(rec.weights, options.base_logit, z[i]);
      records.push_back(std::move(rec));
    }
  }

  const std::size_t background = options.background_entities.value_or(4 * catalog.entities().size());
  const double background_base = options.background_base_logit;
  std::array<double, kTraitCount> group_dir{};
  std::string group;
  for (std::size_t i = 0; i < background; ++i) {
    if (i % options.background_group_size == 0) {
      group_dir = unit_direction(rng);
      char buf[32];
      std::snprintf(buf, sizeof buf, "background-%03zu", i / options.background_group_size);
      group = buf;
    }
    char id[32];
    std::snprintf(id, sizeof id, "bg.%05zu", i);
    EntityAffinity rec;
    rec.entity = id;
    rec.group = group;
    rec.weights = draw_weights(group_dir);
    rec.bias = centred_bias(rec.weights, background_base, rng.normal());
    records.push_back(std::move(rec));
  }
  return AffinityModel(std::move(records));
}

Catalog with_follower_counts(const Catalog& catalog, const FollowGraph& graph) {
  std::vector<Entity> entities = catalog.entities();
  for (auto& e : entities) e.follower_count = graph.follower_count(e.id);
  return Catalog(catalog.categories(), std::move(entities));
}

SyntheticDataset generate_dataset(const Catalog& base_catalog, const DatasetConfig& config) {
  SyntheticDataset ds;
  ds.seed = config.seed;
  PlantedModelOptions model_options = config.model;
  model_options.trait_priors = config.trait_priors;
  ds.model = make_planted_model(base_catalog, config.correlation_strength, config.popularity_spread,
                                derive_seed(config.seed, 1), model_options);
  const UserSample users = sample_users(config.users, config.trait_priors, derive_seed(config.seed, 2));
  ds.graph = sample_graph(users, base_catalog, ds.model, derive_seed(config.seed, 3));
  for (std::size_t u = 0; u < users.ids.size(); ++u) ds.traits.emplace(users.ids[u], users.traits[u]);
  ds.catalog = with_follower_counts(base_catalog, ds.graph);
  return ds;
}

std::string serialize_traits(const std::map<std::string, TraitVector>& traits) {
  json doc = json::object();
  for (const auto& [user, t] : traits) {
    json arr = json::array();
    for (auto v : t.values) arr.push_back(static_cast<int>(v));
    doc[user] = std::move(arr);
  }
  return doc.dump() + "\n";
}

std::map<std::string, TraitVector> parse_traits(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& ex) {
    throw FormatError(std::string("trait JSON: ") + ex.what());
  }
  if (!doc.is_object()) throw FormatError("trait JSON: top level must be an object");
  std::map<std::string, TraitVector> out;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const json& arr = it.value();
    if (!arr.is_array() || arr.size() != kTraitCount) {
      throw FormatError("trait JSON: user '" + it.key() + "' must map to a 5-element array");
    }
    TraitVector t;
    for (std::size_t i = 0; i < kTraitCount; ++i) {
      if (!arr[i].is_number_integer() || (arr[i] != 0 && arr[i] != 1)) {
        throw FormatError("trait JSON: user '" + it.key() + "' has a non-binary trait");
      }
      t.values[i] = arr[i].get<std::uint8_t>();
    }
    out.emplace(it.key(), t);
  }
  return out;
}

std::map<std::string, TraitVector> load_traits(const std::filesystem::path& path) {
  return parse_traits(read_text_file(path));
}

std::string serialize_model(const AffinityModel& model) {
  json records = json::array();
  for (const auto& r : model.records()) {
    json rec{{"entity", r.entity}, {"group", r.group}, {"weights", r.weights}};
    rec["bias"] = std::isinf(r.bias) ? json(nullptr) : json(r.bias);
    records.push_back(std::move(rec));
  }
  json doc{{"trait_names", kTraitNames}, {"records", std::move(records)}};
  return doc.dump() + "\n";
}

AffinityModel parse_model(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& ex) {
    throw FormatError(std::string("model JSON: ") + ex.what());
  }
  std::vector<EntityAffinity> records;
  try {
    for (const json& rec : doc.at("records")) {
      EntityAffinity r;
      r.entity = rec.at("entity").get<std::string>();
      r.group = rec.value("group", std::string());
      r.weights = rec.at("weights").get<std::array<double, kTraitCount>>();
      const json& b = rec.at("bias");
      r.bias = b.is_null() ? -std::numeric_limits<double>::infinity() : b.get<double>();
      records.push_back(std::move(r));
    }
  } catch (const json::exception& ex) {
    throw FormatError(std::string("model JSON: ") + ex.what());
  }
  return AffinityModel(std::move(records));
}

void write_dataset(const SyntheticDataset& dataset, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
  write_edge_list(dataset.graph, dir / "edges.tsv");
  write_text_file(dir / "traits.json", serialize_traits(dataset.traits));
  write_text_file(dir / "model.json", serialize_model(dataset.model));
  save_catalog(dataset.catalog, dir / "catalog.json");
}

}  // namespace socialrank
