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

#include "socialrank/session_store.hpp"

#include <sqlite3.h>

#include <chrono>
#include <random>

#include "json.hpp"

namespace socialrank {

namespace {

std::int64_t now_seconds() {
  return std::chrono::duration_cast<std::chrono::seconds>(std::chrono::system_clock::now().time_since_epoch())
      .count();
}

struct Statement {
  sqlite3_stmt* stmt = nullptr;
  Statement(sqlite3* db, const char* sql) {
    if (sqlite3_prepare_v2(db, sql, -1, &stmt, nullptr) != SQLITE_OK) {
      throw IoError(std::string("sqlite prepare: ") + sqlite3_errmsg(db));
    }
  }
  ~Statement() { sqlite3_finalize(stmt); }
  void bind(int i, const std::string& s) { sqlite3_bind_text(stmt, i, s.c_str(), -1, SQLITE_TRANSIENT); }
  void bind(int i, std::int64_t v) { sqlite3_bind_int64(stmt, i, v); }
};

std::string encode(const EntitySet& s) { return nlohmann::json(std::vector<std::string>(s.begin(), s.end())).dump(); }

EntitySet decode(const unsigned char* text) {
  EntitySet out;
  if (!text) return out;
  for (const auto& e : nlohmann::json::parse(reinterpret_cast<const char*>(text))) out.insert(e.get<std::string>());
  return out;
}

}  // namespace

std::string random_session_id() {
  static thread_local std::random_device device;
  std::uint64_t hi = (static_cast<std::uint64_t>(device()) << 32) | device();
  std::uint64_t lo = (static_cast<std::uint64_t>(device()) << 32) | device();
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(hi),
                static_cast<unsigned long long>(lo));
  return buf;
}

SessionStore::SessionStore(const std::string& path) {
  if (sqlite3_open(path.c_str(), &db_) != SQLITE_OK) {
    std::string msg = db_ ? sqlite3_errmsg(db_) : "out of memory";
    sqlite3_close(db_);
    throw IoError("cannot open session store '" + path + "': " + msg);
  }
  exec("CREATE TABLE IF NOT EXISTS sessions ("
       " id TEXT PRIMARY KEY,"
       " selections TEXT NOT NULL,"
       " created_at INTEGER NOT NULL,"
       " updated_at INTEGER NOT NULL)");
}

SessionStore::~SessionStore() { sqlite3_close(db_); }

void SessionStore::exec(const char* sql) {
  char* err = nullptr;
  if (sqlite3_exec(db_, sql, nullptr, nullptr, &err) != SQLITE_OK) {
    std::string msg = err ? err : "unknown error";
    sqlite3_free(err);
    throw IoError("sqlite: " + msg);
  }
}

OnboardingSession SessionStore::create() {
  std::lock_guard lock(mutex_);
  OnboardingSession s{random_session_id(), {}, now_seconds(), 0};
  s.updated_at = s.created_at;
  Statement st(db_, "INSERT INTO sessions (id, selections, created_at, updated_at) VALUES (?1, ?2, ?3, ?4)");
  st.bind(1, s.id);
  st.bind(2, encode(s.selections));
  st.bind(3, s.created_at);
  st.bind(4, s.updated_at);
  if (sqlite3_step(st.stmt) != SQLITE_DONE) throw IoError(std::string("sqlite insert: ") + sqlite3_errmsg(db_));
  return s;
}

std::optional<OnboardingSession> SessionStore::get(const std::string& id) {
  std::lock_guard lock(mutex_);
  Statement st(db_, "SELECT selections, created_at, updated_at FROM sessions WHERE id = ?1");
  st.bind(1, id);
  const int rc = sqlite3_step(st.stmt);
  if (rc == SQLITE_DONE) return std::nullopt;
  if (rc != SQLITE_ROW) throw IoError(std::string("sqlite select: ") + sqlite3_errmsg(db_));
  OnboardingSession s;
  s.id = id;
  s.selections = decode(sqlite3_column_text(st.stmt, 0));
  s.created_at = sqlite3_column_int64(st.stmt, 1);
  s.updated_at = sqlite3_column_int64(st.stmt, 2);
  return s;
}

bool SessionStore::set_selections(const std::string& id, const EntitySet& selections) {
  std::lock_guard lock(mutex_);
  Statement st(db_, "UPDATE sessions SET selections = ?1, updated_at = ?2 WHERE id = ?3");
  st.bind(1, encode(selections));
  st.bind(2, now_seconds());
  st.bind(3, id);
  if (sqlite3_step(st.stmt) != SQLITE_DONE) throw IoError(std::string("sqlite update: ") + sqlite3_errmsg(db_));
  return sqlite3_changes(db_) > 0;
}

}  // namespace socialrank
