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


#include <gtest/gtest.h>

#include <cmath>

#include "socialrank/error.hpp"
#include "socialrank/graphgen.hpp"
#include "socialrank/traits.hpp"
#include "test_util.hpp"

namespace socialrank {
namespace {

std::vector<LabeledVector> random_data(Rng& rng, std::size_t n, std::size_t d, const std::vector<double>& w_true,
                                       double noise) {
  std::vector<LabeledVector> out(n);
  for (auto& row : out) {
    row.x.resize(d);
    double z = 0.3;
    for (std::size_t i = 0; i < d; ++i) {
      row.x[i] = 2.0 * rng.normal() + (i == 0 ? 1.0 : 0.0);
      z += w_true[i] * row.x[i];
    }
    row.label = rng.uniform() < sigmoid(z / noise) ? 1 : 0;
  }
  return out;
}

// Mean cross-entropy + l2/2 |w|^2, evaluated directly.
double oracle_objective(const std::vector<double>& w, double b, const std::vector<LabeledVector>& data, double l2) {
  double total = 0.0;
  for (const auto& row : data) {
    double z = b;
    for (std::size_t i = 0; i < w.size(); ++i) z += w[i] * row.x[i];
    const double p = 1.0 / (1.0 + std::exp(-z));
    total -= row.label ? std::log(p) : std::log(1.0 - p);
  }
  double reg = 0.0;
  for (double x : w) reg += x * x;
  return total / data.size() + 0.5 * l2 * reg;
}

TEST(ProbeObjective, GradientMatchesCentralDifferences) {
  Rng rng(2);
  constexpr double h = 1e-5;
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t d = 1 + rng.below(6);
    std::vector<double> w_true(d);
    for (auto& x : w_true) x = rng.normal();
    const auto data = random_data(rng, 5 + rng.below(30), d, w_true, 1.0);
    std::vector<double> w(d);
    for (auto& x : w) x = 0.5 * rng.normal();
    double b = 0.5 * rng.normal();
    const double l2 = rng.uniform() < 0.5 ? 0.0 : rng.uniform(0.0, 0.5);

    const ProbeObjective obj = probe_objective(w, b, data, l2);
    ASSERT_NEAR(obj.loss, oracle_objective(w, b, data, l2), 1e-12);
    auto rel = [](double a, double n) { return std::abs(a - n) / std::max({std::abs(a), std::abs(n), 1e-6}); };
    for (std::size_t i = 0; i < d; ++i) {
      const double keep = w[i];
      w[i] = keep + h;
      const double up = oracle_objective(w, b, data, l2);
      w[i] = keep - h;
      const double down = oracle_objective(w, b, data, l2);
      w[i] = keep;
      ASSERT_LT(rel(obj.grad_weights[i], (up - down) / (2 * h)), 1e-4) << "trial " << trial << " w" << i;
    }
    const double up = oracle_objective(w, b + h, data, l2);
    const double down = oracle_objective(w, b - h, data, l2);
    ASSERT_LT(rel(obj.grad_bias, (up - down) / (2 * h)), 1e-4) << "trial " << trial << " bias";
  }
}

TEST(TrainProbe, SeparableClustersAreClassifiedPerfectly) {
  Rng rng(4);
  std::vector<LabeledVector> train, test;
  for (int i = 0; i < 400; ++i) {
    const std::uint8_t label = i % 2;
    LabeledVector row{{(label ? 3.0 : -3.0) + 0.5 * rng.normal(), 0.5 * rng.normal()}, label};
    (i < 300 ? train : test).push_back(row);
  }
  const LinearProbe probe = train_probe(train, {}, "toy");
  EXPECT_EQ(accuracy(probe, test), 1.0);
  EXPECT_EQ(probe.trait, "toy");
}

TEST(TrainProbe, IndependentLabelsStayNearMajorityRate) {
  Rng rng(6);
  std::vector<LabeledVector> train(2000), test(2000);
  std::size_t ones = 0;
  for (auto* set : {&train, &test}) {
    for (auto& row : *set) {
      row.x = {rng.normal(), rng.normal(), rng.normal()};
      row.label = rng.uniform() < 0.7;
    }
  }
  for (const auto& r : test) ones += r.label;
  const double p = static_cast<double>(ones) / test.size();
  const double majority = std::max(p, 1 - p);
  const LinearProbe probe = train_probe(train, {});
  EXPECT_NEAR(accuracy(probe, test), majority, 3 * std::sqrt(majority * (1 - majority) / test.size()));
}

TEST(TrainProbe, StronglyConvexObjectiveHasOneMinimum) {
  Rng rng(8);
  const std::vector<double> w_true = {1.0, -2.0, 0.5, 0.0};
  const auto data = random_data(rng, 500, 4, w_true, 2.0);
  ProbeConfig a{.l2 = 0.05, .seed = 1, .init_scale = 2.0};
  ProbeConfig b{.l2 = 0.05, .seed = 2, .init_scale = 2.0};
  const LinearProbe pa = train_probe(data, a);
  const LinearProbe pb = train_probe(data, b);
  double dist = 0.0;
  for (std::size_t i = 0; i < 4; ++i) dist += std::pow(pa.weights[i] - pb.weights[i], 2);
  EXPECT_LT(std::sqrt(dist), 1e-3);
  // Same config twice: same bits.
  const LinearProbe again = train_probe(data, a);
  EXPECT_EQ(again.weights, pa.weights);
  EXPECT_EQ(again.bias, pa.bias);
}

TEST(TrainProbe, Errors) {
  std::vector<LabeledVector> one_class = {{{1.0}, 1}, {{2.0}, 1}};
  EXPECT_THROW(train_probe(one_class, {}), DegenerateLabels);
  std::vector<LabeledVector> ragged = {{{1.0}, 1}, {{2.0, 1.0}, 0}};
  EXPECT_THROW(train_probe(ragged, {}), DimensionMismatch);
}

TEST(Predict, FormulaAndEdgeCases) {
  LinearProbe zero{"t", {0.0, 0.0, 0.0}, 0.0};
  const std::vector<double> x = {4.0, -1.0, 9.0};
  EXPECT_EQ(predict(zero, x), 0.5);
  LinearProbe sure{"t", {0.0, 0.0, 0.0}, 1e6};
  EXPECT_NEAR(predict(sure, x), 1.0, 1e-15);
  EXPECT_THROW(predict(zero, std::vector<double>{1.0}), DimensionMismatch);

  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    LinearProbe p{"t", {rng.normal(), rng.normal(), rng.normal()}, rng.normal()};
    const std::vector<double> v = {rng.normal(), rng.normal(), rng.normal()};
    const double z = p.bias + p.weights[0] * v[0] + p.weights[1] * v[1] + p.weights[2] * v[2];
    EXPECT_NEAR(predict(p, v), 1.0 / (1.0 + std::exp(-z)), 1e-15);
  }
}

// Ground-truth profiles are integer ratios over followers.
TEST(EntityTraitProfile, GroundTruthCountsFollowers) {
  DatasetConfig config;
  config.users = 600;
  const SyntheticDataset d = generate_dataset(testing::small_catalog(5), config);
  for (const auto& e : d.catalog.entities()) {
    const auto idx = d.graph.find_entity(e.id);
    if (!idx || d.graph.followers(*idx).empty()) {
      EXPECT_THROW(entity_trait_profile(e.id, d.graph, d.traits), NoFollowers);
      continue;
    }
    const EntityTraitProfile p = entity_trait_profile(e.id, d.graph, d.traits);
    const auto followers = d.graph.followers(*idx);
    ASSERT_EQ(p.sample_size, followers.size());
    for (std::size_t t = 0; t < kTraitCount; ++t) {
      std::size_t ones = 0;
      for (auto u : followers) ones += d.traits.at(d.graph.users()[u]).values[t];
      EXPECT_EQ(p.proportions[t], static_cast<double>(ones) / static_cast<double>(followers.size()));
    }
  }
  EXPECT_THROW(entity_trait_profile("nobody", d.graph, d.traits), NoFollowers);
}

TEST(EntityTraitProfile, UnanimousFollowersGiveOne) {
  FollowGraph g;
  g.add_edge("u1", "x");
  g.add_edge("u2", "x");
  g.finalize();
  std::map<std::string, TraitVector> traits = {{"u1", {{1, 0, 1, 0, 1}}}, {"u2", {{1, 1, 0, 0, 1}}}};
  const EntityTraitProfile p = entity_trait_profile("x", g, traits);
  EXPECT_EQ(p.proportions[0], 1.0);
  EXPECT_EQ(p.proportions[3], 0.0);
  EXPECT_EQ(p.proportions[4], 1.0);
}

TEST(EntityTraitProfile, RightLeaningPoliticianExceedsCategoryAverage) {
  const Catalog catalog = reference_catalog();
  std::vector<EntityAffinity> records;
  const std::string target = "politician.ron_desantis";
  for (const auto& e : catalog.entities()) {
    EntityAffinity r{e.id, e.category, -1.5, {}};
    if (e.id == target) {
      r.weights[4] = 3.0;
      r.bias = -3.0;
    }
    records.push_back(r);
  }
  const UserSample users = sample_users(3000, {0.5, 0.5, 0.5, 0.5, 0.5}, 4);
  const FollowGraph g = sample_graph(users, catalog, AffinityModel(records), 5);
  std::map<std::string, TraitVector> traits;
  for (std::size_t i = 0; i < users.ids.size(); ++i) traits[users.ids[i]] = users.traits[i];

  std::vector<EntityTraitProfile> members;
  for (const Entity* e : catalog.slate("Politicians")) members.push_back(entity_trait_profile(e->id, g, traits));
  const EntityTraitProfile avg = average_profile(members, "Politicians");
  const EntityTraitProfile own = entity_trait_profile(target, g, traits);
  EXPECT_GT(own.proportions[4], avg.proportions[4] + 0.2);
  EXPECT_EQ(avg.entity, "Politicians");
}

// Both majority rates are recounts of the two halves of one split.
TEST(TrainTraitProbes, SplitSizesAndMajorityRates) {
  DatasetConfig config;
  config.users = 600;
  config.correlation_strength = 0.0;
  const SyntheticDataset d = generate_dataset(testing::small_catalog(5), config);
  const EmbeddingTable table = testing::random_table(d.graph.entities(), 8, 3);
  const auto results = train_trait_probes(d.graph, table, d.traits, {}, 0.25);
  ASSERT_EQ(results.size(), kTraitCount);
  // Users without follows have no vector and drop out.
  const std::size_t n = probe_dataset(d.graph, table, d.traits, 0).size();
  std::array<std::size_t, kTraitCount> ones_all{};
  for (std::size_t t = 0; t < kTraitCount; ++t) {
    for (const auto& row : probe_dataset(d.graph, table, d.traits, t)) ones_all[t] += row.label;
  }
  const auto n_test = static_cast<std::size_t>(std::round(0.25 * static_cast<double>(n)));
  for (std::size_t t = 0; t < kTraitCount; ++t) {
    const auto& r = results[t];
    EXPECT_EQ(r.probe.trait, kTraitNames[t]);
    EXPECT_EQ(r.heldout_size, n_test);
    const std::size_t ones = ones_all[t];
    bool consistent = false;
    for (double a : {r.train_majority_rate, 1 - r.train_majority_rate}) {
      for (double b : {r.heldout_majority_rate, 1 - r.heldout_majority_rate}) {
        consistent |= std::abs(a * static_cast<double>(n - n_test) + b * static_cast<double>(n_test) -
                               static_cast<double>(ones)) < 1e-6;
      }
    }
    EXPECT_TRUE(consistent) << kTraitNames[t];
  }
  EXPECT_THROW(train_trait_probes(d.graph, table, d.traits, {}, 1.0), InvalidParameter);
}

TEST(ProbeFiles, RoundTripAndOrdering) {
  std::vector<LinearProbe> probes;
  for (std::size_t t = kTraitCount; t-- > 0;) {
    probes.push_back({std::string(kTraitNames[t]), {0.1 * t, -0.25}, 0.5 + t, 10, 0.3, 0.01, 7});
  }
  testing::TempDir dir("probes");
  save_probes(probes, dir / "p.json");
  const auto loaded = load_probes(dir / "p.json");
  ASSERT_EQ(loaded.size(), kTraitCount);
  EXPECT_EQ(loaded[0].weights, probes[0].weights);
  const auto ordered = probes_in_trait_order(loaded);
  for (std::size_t t = 0; t < kTraitCount; ++t) EXPECT_EQ(ordered[t].trait, kTraitNames[t]);
  probes.pop_back();
  EXPECT_THROW(probes_in_trait_order(probes), FormatError);
  EXPECT_EQ(probe_from_json(to_json(probes[1])).bias, probes[1].bias);
}

}  // namespace
}  // namespace socialrank
