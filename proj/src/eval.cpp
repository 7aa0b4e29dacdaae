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

#include "socialrank/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <functional>
#include <map>
#include <sstream>
#include <thread>

#include "socialrank/rank.hpp"
#include "socialrank/rng.hpp"

namespace socialrank {

using nlohmann::json;

double average_precision(std::span<const std::string> ranking, const EntitySet& relevant) {
  if (relevant.empty()) throw EmptyRelevant("average precision needs at least one relevant item");
  std::size_t hits = 0;
  double sum = 0.0;
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    if (relevant.contains(ranking[i])) {
      ++hits;
      sum += static_cast<double>(hits) / static_cast<double>(i + 1);
    }
  }
  if (hits != relevant.size()) throw RelevantNotInRanking("a relevant item is missing from the ranking");
  return sum / static_cast<double>(relevant.size());
}

CaseSet build_eval_cases(const FollowGraph& graph, const Catalog& catalog, std::string_view category,
                         std::size_t users_per_entity, std::uint64_t seed) {
  const auto slate = catalog.slate(category);
  CaseSet out;
  std::map<std::uint32_t, EvalCase> by_user;
  for (const Entity* e : slate) {
    const auto entity = graph.find_entity(e->id);
    std::vector<std::uint32_t> followers;
    if (entity) followers.assign(graph.followers(*entity).begin(), graph.followers(*entity).end());
    if (followers.size() < users_per_entity) out.shortfalls.push_back({e->id, users_per_entity, followers.size()});
    Rng rng(derive_seed(seed, fnv1a(category), fnv1a(e->id)));
    const std::size_t take = std::min(users_per_entity, followers.size());
    partial_shuffle(followers.begin(), followers.end(), take, rng);
    for (std::size_t i = 0; i < take; ++i) by_user.try_emplace(followers[i]);
  }
  for (auto& [user, c] : by_user) {
    c.user_id = graph.users()[user];
    c.category = std::string(category);
    c.profile = profile_from_graph(graph, user);
    for (const Entity* e : slate) {
      if (c.profile.followed.contains(e->id)) c.relevant.insert(e->id);
    }
    out.cases.push_back(std::move(c));
  }
  std::sort(out.cases.begin(), out.cases.end(),
            [](const EvalCase& a, const EvalCase& b) { return a.user_id < b.user_id; });
  return out;
}

CaseSet build_all_eval_cases(const FollowGraph& graph, const Catalog& catalog, std::size_t users_per_entity,
                             std::uint64_t seed) {
  CaseSet all;
  for (const auto& category : catalog.categories()) {
    auto part = build_eval_cases(graph, catalog, category, users_per_entity, seed);
    std::move(part.cases.begin(), part.cases.end(), std::back_inserter(all.cases));
    std::move(part.shortfalls.begin(), part.shortfalls.end(), std::back_inserter(all.shortfalls));
  }
  return all;
}

std::string_view to_string(WorldMode mode) { return mode == WorldMode::Open ? "open" : "closed"; }

WorldMode parse_world_mode(std::string_view text) {
  if (text == "open" || text == "open-world" || text == "all") return WorldMode::Open;
  if (text == "closed" || text == "closed-world" || text == "sampled") return WorldMode::Closed;
  throw InvalidParameter("unknown world mode '" + std::string(text) + "' (expected open|closed)");
}

MaskPolicy make_mask(const Catalog& catalog, std::string_view target_category, WorldMode mode) {
  EntitySet exclude;
  for (const auto& id : catalog.slate_ids(target_category)) exclude.insert(id);
  if (mode == WorldMode::Open) return OpenWorld{std::move(exclude)};
  EntitySet allowed;
  for (const auto& e : catalog.entities()) allowed.insert(e.id);
  return ClosedWorld{std::move(allowed), std::move(exclude)};
}

namespace {

/// Neumaier-compensated summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double mean_of(std::span<const double> v) {
  CompensatedSum s;
  for (double x : v) s.add(x);
  return v.empty() ? 0.0 : s.value() / static_cast<double>(v.size());
}

Interval percentile_interval(std::vector<double> samples, double confidence) {
  if (samples.empty()) return {};
  std::sort(samples.begin(), samples.end());
  auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(samples.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, samples.size() - 1);
    return samples[lo] + (samples[hi] - samples[lo]) * (pos - static_cast<double>(lo));
  };
  const double tail = (1.0 - confidence) / 2.0;
  return {quantile(tail), quantile(1.0 - tail)};
}

struct CategoryContext {
  MaskPolicy mask;
  std::vector<std::string> popularity;
};

struct CaseOutcome {
  bool scored = false;
  double social = 0.0;
  double popularity = 0.0;
};

using ProfileTransform = std::function<UserProfile(const EvalCase&, const UserProfile& eligible)>;

std::vector<CaseOutcome> score_cases(std::span<const EvalCase> cases, const EmbeddingTable& table,
                                     const Catalog& catalog, WorldMode mode, const ProfileTransform& transform,
                                     std::size_t workers) {
  std::map<std::string, CategoryContext, std::less<>> contexts;
  for (const auto& c : cases) {
    if (contexts.contains(c.category)) continue;
    CategoryContext ctx{make_mask(catalog, c.category, mode), catalog.popularity_ranking(c.category)};
    contexts.emplace(c.category, std::move(ctx));
  }
  std::vector<CaseOutcome> outcomes(cases.size());
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < cases.size(); i += stride) {
      const EvalCase& c = cases[i];
      const CategoryContext& ctx = contexts.find(c.category)->second;
      CaseOutcome& out = outcomes[i];
      try {
        const UserProfile eligible = apply_mask(c.profile, ctx.mask);
        const UserProfile evidence = transform ? transform(c, eligible) : eligible;
        const UserEmbedding user = project(evidence, table, ctx.mask);
        const auto ranking = rank_slate(user, catalog, c.category, table).ids();
        out.social = average_precision(ranking, c.relevant);
        out.popularity = average_precision(ctx.popularity, c.relevant);
        out.scored = true;
      } catch (const EmptySupport&) {
        out.scored = false;
      } catch (const ZeroVector&) {
        out.scored = false;
      }
    }
  };
  workers = std::max<std::size_t>(1, std::min(workers, cases.size()));
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> threads;
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(work, w, workers);
  }
  return outcomes;
}

struct Aggregate {
  std::vector<CategoryRow> rows;
  CategoryRow overall;
  std::size_t skipped = 0;
};

Aggregate aggregate(std::span<const EvalCase> cases, std::span<const CaseOutcome> outcomes, const Catalog& catalog,
                    const EvalOptions& options) {
  struct Bucket {
    std::vector<double> social, popularity;
    std::size_t cases = 0;
    double relevant = 0.0;
  };
  std::vector<Bucket> buckets(catalog.categories().size());
  std::map<std::string_view, std::size_t> slot;
  for (std::size_t i = 0; i < catalog.categories().size(); ++i) slot[catalog.categories()[i]] = i;

  Aggregate agg;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    Bucket& b = buckets[slot.at(cases[i].category)];
    ++b.cases;
    if (!outcomes[i].scored) {
      ++agg.skipped;
      continue;
    }
    b.social.push_back(outcomes[i].social);
    b.popularity.push_back(outcomes[i].popularity);
    b.relevant += static_cast<double>(cases[i].relevant.size());
  }

  std::vector<std::size_t> active;
  for (std::size_t c = 0; c < buckets.size(); ++c) {
    if (!buckets[c].social.empty()) active.push_back(c);
  }

  const std::size_t B = options.bootstrap_resamples;
  std::vector<std::vector<double>> boot_social(buckets.size()), boot_pop(buckets.size());
  std::vector<double> overall_social(B), overall_pop(B);
  for (std::size_t r = 0; r < B; ++r) {
    Rng rng(derive_seed(options.seed, 0xB0075, r));
    CompensatedSum os, op;
    for (std::size_t c : active) {
      const Bucket& b = buckets[c];
      const std::size_t n = b.social.size();
      CompensatedSum ss, sp;
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t pick = rng.below(n);
        ss.add(b.social[pick]);
        sp.add(b.popularity[pick]);
      }
      const double ms = ss.value() / static_cast<double>(n), mp = sp.value() / static_cast<double>(n);
      boot_social[c].push_back(ms);
      boot_pop[c].push_back(mp);
      os.add(ms);
      op.add(mp);
    }
    const auto na = static_cast<double>(std::max<std::size_t>(1, active.size()));
    overall_social[r] = os.value() / na;
    overall_pop[r] = op.value() / na;
  }

  auto delta = [](double social, double pop) { return pop > 0.0 ? (social - pop) / pop * 100.0 : 0.0; };
  CompensatedSum all_social, all_pop, all_rel;
  for (std::size_t c = 0; c < buckets.size(); ++c) {
    const Bucket& b = buckets[c];
    CategoryRow row;
    row.category = catalog.categories()[c];
    row.cases = b.cases;
    row.scored = b.social.size();
    agg.overall.cases += b.cases;
    agg.overall.scored += row.scored;
    if (row.scored == 0) continue;
    row.mean_relevant_per_user = b.relevant / static_cast<double>(row.scored);
    row.social = {mean_of(b.social), percentile_interval(boot_social[c], options.confidence)};
    row.popularity = {mean_of(b.popularity), percentile_interval(boot_pop[c], options.confidence)};
    row.delta_percent = delta(row.social.map, row.popularity.map);
    all_social.add(row.social.map);
    all_pop.add(row.popularity.map);
    all_rel.add(row.mean_relevant_per_user);
    agg.rows.push_back(std::move(row));
  }
  const auto na = static_cast<double>(std::max<std::size_t>(1, active.size()));
  agg.overall.category = "overall";
  agg.overall.mean_relevant_per_user = all_rel.value() / na;
  agg.overall.social = {all_social.value() / na, percentile_interval(overall_social, options.confidence)};
  agg.overall.popularity = {all_pop.value() / na, percentile_interval(overall_pop, options.confidence)};
  agg.overall.delta_percent = delta(agg.overall.social.map, agg.overall.popularity.map);
  return agg;
}

json base_metadata(std::string_view experiment, const EvalOptions& options, std::size_t cases) {
  json meta{{"experiment", experiment},
            {"seed", options.seed},
            {"bootstrap_resamples", options.bootstrap_resamples},
            {"confidence", options.confidence},
            {"cases", cases}};
  for (auto it = options.extra_metadata.begin(); it != options.extra_metadata.end(); ++it) {
    meta[it.key()] = it.value();
  }
  if (options.include_timestamp) {
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    meta["generated_at"] = buf;
  }
  return meta;
}

std::uint64_t case_seed(std::uint64_t seed, const EvalCase& c, std::uint64_t salt) {
  return derive_seed(seed, fnv1a(c.user_id) ^ (fnv1a(c.category) * 31), salt);
}

json estimate_json(const MapEstimate& e) { return {{"map", e.map}, {"ci_low", e.ci.lo}, {"ci_high", e.ci.hi}}; }

json row_json(const CategoryRow& r) {
  return {{"category", r.category},
          {"cases", r.cases},
          {"scored", r.scored},
          {"mean_relevant_per_user", r.mean_relevant_per_user},
          {"popularity_map", r.popularity.map},
          {"popularity_ci", {r.popularity.ci.lo, r.popularity.ci.hi}},
          {"social_map", r.social.map},
          {"social_ci", {r.social.ci.lo, r.social.ci.hi}},
          {"delta_percent", r.delta_percent}};
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

Interval bootstrap_mean_interval(std::span<const double> values, std::size_t resamples, double confidence,
                                 std::uint64_t seed) {
  if (values.empty()) return {};
  std::vector<double> means;
  means.reserve(resamples);
  Rng rng(seed);
  for (std::size_t r = 0; r < resamples; ++r) {
    CompensatedSum s;
    for (std::size_t j = 0; j < values.size(); ++j) s.add(values[rng.below(values.size())]);
    means.push_back(s.value() / static_cast<double>(values.size()));
  }
  return percentile_interval(std::move(means), confidence);
}

ExperimentReport run_linkpred(std::span<const EvalCase> cases, const EmbeddingTable& table, const Catalog& catalog,
                              WorldMode mode, const EvalOptions& options) {
  if (cases.empty()) throw InvalidParameter("run_linkpred needs at least one case");
  const auto outcomes = score_cases(cases, table, catalog, mode, nullptr, options.workers);
  Aggregate agg = aggregate(cases, outcomes, catalog, options);
  ExperimentReport report;
  report.experiment = "linkpred";
  report.mode = mode;
  report.rows = std::move(agg.rows);
  report.overall = std::move(agg.overall);
  report.skipped = agg.skipped;
  report.metadata = base_metadata("linkpred", options, cases.size());
  report.metadata["mode"] = to_string(mode);
  report.metadata["skipped"] = report.skipped;
  return report;
}

VaryKReport vary_k_experiment(std::span<const EvalCase> cases, const EmbeddingTable& table, const Catalog& catalog,
                              std::span<const std::size_t> ks, WorldMode mode, const EvalOptions& options) {
  if (ks.empty()) throw InvalidParameter("vary_k_experiment needs at least one k");
  if (cases.empty()) throw InvalidParameter("vary_k_experiment needs at least one case");
  for (std::size_t k : ks) {
    if (k == 0) throw InvalidParameter("k must be >= 1");
  }
  VaryKReport report;
  report.mode = mode;
  auto run_point = [&](std::optional<std::size_t> k) {
    ProfileTransform transform;
    if (k) {
      transform = [&, kk = *k](const EvalCase& c, const UserProfile& eligible) {
        return sample_profile(eligible, kk, case_seed(options.seed, c, kk));
      };
    }
    const auto outcomes = score_cases(cases, table, catalog, mode, transform, options.workers);
    const Aggregate agg = aggregate(cases, outcomes, catalog, options);
    return CurvePoint{k, agg.overall.social, agg.overall.scored, agg.skipped};
  };
  for (std::size_t k : ks) report.points.push_back(run_point(k));
  report.full = run_point(std::nullopt);
  report.points.push_back(report.full);
  report.metadata = base_metadata("vary-k", options, cases.size());
  report.metadata["mode"] = to_string(mode);
  report.metadata["ks"] = std::vector<std::size_t>(ks.begin(), ks.end());
  return report;
}

const GridCell& GridReport::cell(std::size_t k_categories, std::size_t n_per_category) const {
  for (const auto& c : cells) {
    if (c.k_categories == k_categories && c.n_per_category == n_per_category) return c;
  }
  throw InvalidParameter("grid has no cell (" + std::to_string(k_categories) + ", " +
                         std::to_string(n_per_category) + ")");
}

GridReport grid_experiment(std::span<const EvalCase> cases, const EmbeddingTable& table, const Catalog& catalog,
                           std::span<const std::size_t> k_categories, std::span<const std::size_t> n_per_category,
                           const EvalOptions& options) {
  if (k_categories.empty() || n_per_category.empty()) throw InvalidParameter("grid ranges must be non-empty");
  if (cases.empty()) throw InvalidParameter("grid_experiment needs at least one case");
  GridReport report;
  for (std::size_t k : k_categories) {
    for (std::size_t n : n_per_category) {
      if (k == 0 || n == 0) throw InvalidParameter("grid ranges must hold positive values");
      ProfileTransform transform = [&, k, n](const EvalCase& c, const UserProfile&) {
        return stratified_sample(c.profile, catalog, k, n, case_seed(options.seed, c, (k << 16) | n), c.category);
      };
      const auto outcomes = score_cases(cases, table, catalog, WorldMode::Closed, transform, options.workers);
      const Aggregate agg = aggregate(cases, outcomes, catalog, options);
      report.cells.push_back({k, n, agg.overall.social, agg.overall.scored, agg.skipped});
    }
  }
  const auto full = score_cases(cases, table, catalog, WorldMode::Closed, nullptr, options.workers);
  report.closed_world_full = aggregate(cases, full, catalog, options).overall.social;
  report.metadata = base_metadata("grid", options, cases.size());
  report.metadata["mode"] = "closed";
  report.metadata["k_categories"] = std::vector<std::size_t>(k_categories.begin(), k_categories.end());
  report.metadata["n_per_category"] = std::vector<std::size_t>(n_per_category.begin(), n_per_category.end());
  return report;
}

json to_json(const ExperimentReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows) rows.push_back(row_json(r));
  return {{"experiment", report.experiment},
          {"mode", to_string(report.mode)},
          {"rows", std::move(rows)},
          {"overall", row_json(report.overall)},
          {"skipped", report.skipped},
          {"metadata", report.metadata}};
}

json to_json(const VaryKReport& report) {
  json points = json::array();
  for (const auto& p : report.points) {
    json jp = estimate_json(p.social);
    jp["k"] = p.k ? json(*p.k) : json("full");
    jp["scored"] = p.scored;
    jp["skipped"] = p.skipped;
    points.push_back(std::move(jp));
  }
  return {{"experiment", "vary-k"},
          {"mode", to_string(report.mode)},
          {"points", std::move(points)},
          {"full", estimate_json(report.full.social)},
          {"metadata", report.metadata}};
}

json to_json(const GridReport& report) {
  json cells = json::array();
  for (const auto& c : report.cells) {
    json jc = estimate_json(c.social);
    jc["k_categories"] = c.k_categories;
    jc["n_per_category"] = c.n_per_category;
    jc["scored"] = c.scored;
    jc["skipped"] = c.skipped;
    cells.push_back(std::move(jc));
  }
  return {{"experiment", "grid"},
          {"cells", std::move(cells)},
          {"closed_world_full", estimate_json(report.closed_world_full)},
          {"metadata", report.metadata}};
}

std::string to_csv(const ExperimentReport& report) {
  std::string out =
      "category,cases,scored,mean_relevant_per_user,popularity_map,popularity_ci_low,popularity_ci_high,"
      "social_map,social_ci_low,social_ci_high,delta_percent\n";
  auto line = [&](const CategoryRow& r) {
    out += csv_field(r.category) + "," + std::to_string(r.cases) + "," + std::to_string(r.scored) + "," +
           fmt17(r.mean_relevant_per_user) + "," + fmt17(r.popularity.map) + "," + fmt17(r.popularity.ci.lo) + "," +
           fmt17(r.popularity.ci.hi) + "," + fmt17(r.social.map) + "," + fmt17(r.social.ci.lo) + "," +
           fmt17(r.social.ci.hi) + "," + fmt17(r.delta_percent) + "\n";
  };
  for (const auto& r : report.rows) line(r);
  line(report.overall);
  return out;
}

std::string to_csv(const VaryKReport& report) {
  std::string out = "k,map,ci_low,ci_high,scored,skipped\n";
  for (const auto& p : report.points) {
    out += (p.k ? std::to_string(*p.k) : std::string("full")) + "," + fmt17(p.social.map) + "," +
           fmt17(p.social.ci.lo) + "," + fmt17(p.social.ci.hi) + "," + std::to_string(p.scored) + "," +
           std::to_string(p.skipped) + "\n";
  }
  return out;
}

std::string to_csv(const GridReport& report) {
  std::string out = "k_categories,n_per_category,map,ci_low,ci_high,scored,skipped\n";
  for (const auto& c : report.cells) {
    out += std::to_string(c.k_categories) + "," + std::to_string(c.n_per_category) + "," + fmt17(c.social.map) +
           "," + fmt17(c.social.ci.lo) + "," + fmt17(c.social.ci.hi) + "," + std::to_string(c.scored) + "," +
           std::to_string(c.skipped) + "\n";
  }
  return out;
}

}  // namespace socialrank
