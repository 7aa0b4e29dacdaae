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

#ifndef SOCIALRANK_SESSION_STORE_HPP_
#define SOCIALRANK_SESSION_STORE_HPP_

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>

#include "socialrank/userrep.hpp"

struct sqlite3;

namespace socialrank {

struct OnboardingSession {
  std::string id;
  EntitySet selections;
  std::int64_t created_at = 0;  // unix seconds
  std::int64_t updated_at = 0;
};

/// Onboarding sessions persisted in a single SQLite file (":memory:" for a
/// throwaway store). Each mutation is one statement, so updates are atomic per
/// session and the last writer wins.
class SessionStore {
 public:
  explicit SessionStore(const std::string& path);
  ~SessionStore();
  SessionStore(const SessionStore&) = delete;
  SessionStore& operator=(const SessionStore&) = delete;

  /// New session with a random 128-bit hex id.
  OnboardingSession create();
  std::optional<OnboardingSession> get(const std::string& id);
  /// Replaces the selection set; false if the session does not exist.
  bool set_selections(const std::string& id, const EntitySet& selections);

 private:
  void exec(const char* sql);

  sqlite3* db_ = nullptr;
  std::mutex mutex_;
};

std::string random_session_id();

}  // namespace socialrank

#endif  // SOCIALRANK_SESSION_STORE_HPP_
