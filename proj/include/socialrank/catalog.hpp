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

#ifndef SOCIALRANK_CATALOG_HPP_
#define SOCIALRANK_CATALOG_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace socialrank {

struct Entity {
  std::string id;
  std::string display_name;
  std::string category;
  std::uint64_t follower_count = 0;

  bool operator==(const Entity&) const = default;
};

/// The category/entity universe: candidate slates for ranking plus the
/// follower counts that drive the popularity baseline. Immutable once built.
class Catalog {
 public:
  Catalog() = default;

  /// Validates the invariants: non-empty category list, unique category names,
  /// unique non-empty entity ids, every entity in a listed category, and at
  /// least one entity per category. Throws ValidationError.
  Catalog(std::vector<std::string> categories, std::vector<Entity> entities);

  const std::vector<std::string>& categories() const { return categories_; }
  const std::vector<Entity>& entities() const { return entities_; }

  bool has_category(std::string_view category) const;
  const Entity* find(std::string_view id) const;
  bool contains(std::string_view id) const { return find(id) != nullptr; }

  /// Entities of a category in catalog order. Throws UnknownCategory.
  std::vector<const Entity*> slate(std::string_view category) const;
  std::vector<std::string> slate_ids(std::string_view category) const;

  /// Follower count descending, ties by id ascending. Throws UnknownCategory.
  std::vector<std::string> popularity_ranking(std::string_view category) const;

  bool operator==(const Catalog& other) const {
    return categories_ == other.categories_ && entities_ == other.entities_;
  }

 private:
  std::vector<std::string> categories_;
  std::vector<Entity> entities_;
  std::map<std::string, std::size_t, std::less<>> by_id_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_category_;
};

Catalog parse_catalog(std::string_view json_text);
std::string serialize_catalog(const Catalog& catalog);

/// Throws IoError, FormatError or ValidationError.
Catalog load_catalog(const std::filesystem::path& path);
void save_catalog(const Catalog& catalog, const std::filesystem::path& path);

}  // namespace socialrank

#endif  // SOCIALRANK_CATALOG_HPP_
