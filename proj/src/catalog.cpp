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

#include "socialrank/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "socialrank/error.hpp"
#include "socialrank/io_util.hpp"

namespace socialrank {

using nlohmann::json;

Catalog::Catalog(std::vector<std::string> categories, std::vector<Entity> entities)
    : categories_(std::move(categories)), entities_(std::move(entities)) {
  if (categories_.empty()) throw ValidationError("catalog lists no categories");
  for (const auto& c : categories_) {
    if (c.empty()) throw ValidationError("empty category name");
    if (by_category_.count(c)) throw ValidationError("duplicate category '" + c + "'");
    by_category_[c];
  }
  for (std::size_t i = 0; i < entities_.size(); ++i) {
    const Entity& e = entities_[i];
    if (e.id.empty()) throw ValidationError("entity #" + std::to_string(i) + " has an empty id");
    auto cat = by_category_.find(e.category);
    if (cat == by_category_.end()) {
      throw ValidationError("entity '" + e.id + "' references unknown category '" + e.category + "'");
    }
    if (!by_id_.emplace(e.id, i).second) throw ValidationError("duplicate entity id '" + e.id + "'");
    cat->second.push_back(i);
  }
  for (const auto& [name, members] : by_category_) {
    if (members.empty()) throw ValidationError("category '" + name + "' has no entities");
  }
}

bool Catalog::has_category(std::string_view category) const {
  return by_category_.find(category) != by_category_.end();
}

const Entity* Catalog::find(std::string_view id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &entities_[it->second];
}

std::vector<const Entity*> Catalog::slate(std::string_view category) const {
  auto it = by_category_.find(category);
  if (it == by_category_.end()) throw UnknownCategory("unknown category '" + std::string(category) + "'");
  std::vector<const Entity*> out;
  out.reserve(it->second.size());
  for (std::size_t i : it->second) out.push_back(&entities_[i]);
  return out;
}

std::vector<std::string> Catalog::slate_ids(std::string_view category) const {
  std::vector<std::string> ids;
  for (const Entity* e : slate(category)) ids.push_back(e->id);
  return ids;
}

std::vector<std::string> Catalog::popularity_ranking(std::string_view category) const {
  auto members = slate(category);
  std::sort(members.begin(), members.end(), [](const Entity* a, const Entity* b) {
    if (a->follower_count != b->follower_count) return a->follower_count > b->follower_count;
    return a->id < b->id;
  });
  std::vector<std::string> ids;
  ids.reserve(members.size());
  for (const Entity* e : members) ids.push_back(e->id);
  return ids;
}

namespace {

template <typename T>
T required(const json& obj, const char* field, const std::string& where) {
  auto it = obj.find(field);
  if (it == obj.end()) throw FormatError(where + ": missing field '" + field + "'");
  try {
    return it->get<T>();
  } catch (const json::exception& ex) {
    throw FormatError(where + ": field '" + field + "': " + ex.what());
  }
}

}  // namespace

Catalog parse_catalog(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& ex) {
    throw FormatError(std::string("catalog JSON: ") + ex.what());
  }
  if (!doc.is_object()) throw FormatError("catalog JSON: top level must be an object");
  auto categories = required<std::vector<std::string>>(doc, "categories", "catalog");
  auto entities_json = doc.find("entities");
  if (entities_json == doc.end() || !entities_json->is_array()) {
    throw FormatError("catalog: 'entities' must be an array");
  }
  std::vector<Entity> entities;
  entities.reserve(entities_json->size());
  for (std::size_t i = 0; i < entities_json->size(); ++i) {
    const json& item = (*entities_json)[i];
    const std::string where = "catalog entities[" + std::to_string(i) + "]";
    if (!item.is_object()) throw FormatError(where + ": must be an object");
    Entity e;
    e.id = required<std::string>(item, "id", where);
    e.display_name = required<std::string>(item, "display_name", where);
    e.category = required<std::string>(item, "category", where);
    const json& count = item.contains("follower_count") ? item.at("follower_count") : json();
    if (!count.is_number_integer() || count.get<std::int64_t>() < 0) {
      throw FormatError(where + ": 'follower_count' must be a non-negative integer");
    }
    e.follower_count = count.get<std::uint64_t>();
    entities.push_back(std::move(e));
  }
  return Catalog(std::move(categories), std::move(entities));
}

std::string serialize_catalog(const Catalog& catalog) {
  json doc;
  doc["categories"] = catalog.categories();
  json entities = json::array();
  for (const auto& e : catalog.entities()) {
    entities.push_back({{"id", e.id},
                        {"display_name", e.display_name},
                        {"category", e.category},
                        {"follower_count", e.follower_count}});
  }
  doc["entities"] = std::move(entities);
  return doc.dump(2) + "\n";
}

Catalog load_catalog(const std::filesystem::path& path) {
  return parse_catalog(read_text_file(path));
}

void save_catalog(const Catalog& catalog, const std::filesystem::path& path) {
  write_text_file(path, serialize_catalog(catalog));
}

}  // namespace socialrank
