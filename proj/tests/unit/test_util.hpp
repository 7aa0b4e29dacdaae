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


// Small fixtures shared by the unit tests.

#ifndef SOCIALRANK_TESTS_TEST_UTIL_HPP_
#define SOCIALRANK_TESTS_TEST_UTIL_HPP_

#include <unistd.h>

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "socialrank/catalog.hpp"
#include "socialrank/embed.hpp"
#include "socialrank/follow_graph.hpp"
#include "socialrank/rng.hpp"

namespace socialrank::testing {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    Rng rng(std::hash<std::string>{}(tag) ^ static_cast<std::uint64_t>(::getpid()));
    path_ = std::filesystem::temp_directory_path() / ("socialrank-" + tag + "-" + std::to_string(rng() % 1000000007));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

/// Table with the given ids and row-major vectors.
inline EmbeddingTable make_table(const std::vector<std::string>& ids, std::size_t dim,
                                 const std::vector<std::vector<float>>& rows) {
  std::vector<float> data;
  for (const auto& r : rows) data.insert(data.end(), r.begin(), r.end());
  return EmbeddingTable(Vocabulary(ids, {}), dim, std::move(data));
}

inline EmbeddingTable random_table(const std::vector<std::string>& ids, std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<float> data(ids.size() * dim);
  for (auto& v : data) v = static_cast<float>(rng.normal());
  return EmbeddingTable(Vocabulary(ids, {}), dim, std::move(data));
}

/// Two categories "A" (a0..a{n-1}) and "B" (b0..), follower counts descending.
inline Catalog small_catalog(std::size_t per_category = 4) {
  std::vector<Entity> entities;
  for (const char* cat : {"A", "B"}) {
    for (std::size_t i = 0; i < per_category; ++i) {
      const std::string id = std::string(1, static_cast<char>(cat[0] + 32)) + std::to_string(i);
      entities.push_back({id, "Entity " + id, cat, 100 - 10 * i});
    }
  }
  return Catalog({"A", "B"}, std::move(entities));
}

}  // namespace socialrank::testing

#endif  // SOCIALRANK_TESTS_TEST_UTIL_HPP_
