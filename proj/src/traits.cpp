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

#include "socialrank/traits.hpp"

#include <algorithm>
#include <cmath>

#include "socialrank/io_util.hpp"
#include "socialrank/rng.hpp"
#include "socialrank/userrep.hpp"

namespace socialrank {

using nlohmann::json;

namespace {

double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

std::size_t check_dims(std::span<const LabeledVector> data) {
  if (data.empty()) throw DegenerateLabels("probe training data is empty");
  const std::size_t d = data.front().x.size();
  for (const auto& s : data) {
    if (s.x.size() != d) throw DimensionMismatch("probe training vectors differ in dimension");
  }
  return d;
}

}  // namespace

ProbeObjective probe_objective(std::span<const double> weights, double bias, std::span<const LabeledVector> data,
                               double l2) {
  ProbeObjective obj;
  obj.grad_weights.assign(weights.size(), 0.0);
  if (data.empty()) return obj;
  for (const auto& s : data) {
    if (s.x.size() != weights.size()) throw DimensionMismatch("probe weights and data differ in dimension");
    double z = bias;
    for (std::size_t i = 0; i < weights.size(); ++i) z += weights[i] * s.x[i];
    obj.loss += softplus(z) - (s.label ? z : 0.0);
    const double r = sigmoid(z) - (s.label ? 1.0 : 0.0);
    for (std::size_t i = 0; i < weights.size(); ++i) obj.grad_weights[i] += r * s.x[i];
    obj.grad_bias += r;
  }
  const auto n = static_cast<double>(data.size());
  obj.loss /= n;
  obj.grad_bias /= n;
  double norm2 = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    obj.grad_weights[i] = obj.grad_weights[i] / n + l2 * weights[i];
    norm2 += weights[i] * weights[i];
  }
  obj.loss += 0.5 * l2 * norm2;
  return obj;
}

LinearProbe train_probe(std::span<const LabeledVector> data, const ProbeConfig& config, std::string trait) {
  const std::size_t d = check_dims(data);
  std::size_t positives = 0;
  for (const auto& s : data) positives += s.label ? 1 : 0;
  if (positives == 0 || positives == data.size()) {
    throw DegenerateLabels("probe training data for '" + trait + "' contains a single class");
  }
  if (!(config.l2 >= 0.0)) throw InvalidParameter("l2 must be >= 0");

  // Standardise features; constant columns keep scale 1.
  std::vector<double> mean(d, 0.0), scale(d, 0.0);
  const auto n = static_cast<double>(data.size());
  for (const auto& s : data) {
    for (std::size_t i = 0; i < d; ++i) mean[i] += s.x[i];
  }
  for (auto& m : mean) m /= n;
  for (const auto& s : data) {
    for (std::size_t i = 0; i < d; ++i) scale[i] += (s.x[i] - mean[i]) * (s.x[i] - mean[i]);
  }
  for (auto& sd : scale) {
    sd = std::sqrt(sd / n);
    if (!(sd > 1e-12)) sd = 1.0;
  }
  std::vector<LabeledVector> z(data.size());
  for (std::size_t j = 0; j < data.size(); ++j) {
    z[j].label = data[j].label;
    z[j].x.resize(d);
    for (std::size_t i = 0; i < d; ++i) z[j].x[i] = (data[j].x[i] - mean[i]) / scale[i];
  }

  // Smoothness constant: 0.25 * largest eigenvalue of [X 1]^T [X 1] / n, by power iteration.
  std::vector<double> v(d + 1, 1.0 / std::sqrt(static_cast<double>(d + 1))), w(d + 1);
  double lambda_max = 1.0;
  for (int it = 0; it < 100; ++it) {
    std::fill(w.begin(), w.end(), 0.0);
    for (const auto& s : z) {
      double dotp = v[d];
      for (std::size_t i = 0; i < d; ++i) dotp += s.x[i] * v[i];
      for (std::size_t i = 0; i < d; ++i) w[i] += dotp * s.x[i];
      w[d] += dotp;
    }
    double norm = 0.0;
    for (auto& x : w) {
      x /= n;
      norm += x * x;
    }
    norm = std::sqrt(norm);
    if (norm == 0.0) break;
    lambda_max = norm;
    for (std::size_t i = 0; i <= d; ++i) v[i] = w[i] / norm;
  }
  const double L = 0.25 * lambda_max * 1.05 + config.l2;
  const double mu = std::max(config.l2, 1e-12);
  const double momentum = (std::sqrt(L) - std::sqrt(mu)) / (std::sqrt(L) + std::sqrt(mu));

  std::vector<double> x(d, 0.0);
  double b = 0.0;
  if (config.init_scale > 0.0) {
    Rng rng(config.seed);
    for (auto& xi : x) xi = config.init_scale * rng.normal();
    b = config.init_scale * rng.normal();
  }
  std::vector<double> x_prev = x, y = x;
  double b_prev = b, by = b;
  LinearProbe probe;
  probe.trait = std::move(trait);
  probe.l2 = config.l2;
  probe.seed = config.seed;
  std::size_t iter = 0;
  for (; iter < config.max_iterations; ++iter) {
    const ProbeObjective at_x = probe_objective(x, b, z, config.l2);
    double gnorm = at_x.grad_bias * at_x.grad_bias;
    for (double g : at_x.grad_weights) gnorm += g * g;
    if (std::sqrt(gnorm) < config.tolerance) break;
    for (std::size_t i = 0; i < d; ++i) y[i] = x[i] + momentum * (x[i] - x_prev[i]);
    by = b + momentum * (b - b_prev);
    const ProbeObjective at_y = probe_objective(y, by, z, config.l2);
    x_prev = x;
    b_prev = b;
    for (std::size_t i = 0; i < d; ++i) x[i] = y[i] - at_y.grad_weights[i] / L;
    b = by - at_y.grad_bias / L;
  }
  probe.iterations = iter;
  probe.final_loss = probe_objective(x, b, z, config.l2).loss;

  probe.weights.resize(d);
  probe.bias = b;
  for (std::size_t i = 0; i < d; ++i) {
    probe.weights[i] = x[i] / scale[i];
    probe.bias -= probe.weights[i] * mean[i];
  }
  return probe;
}

double predict(const LinearProbe& probe, std::span<const double> x) {
  if (x.size() != probe.weights.size()) throw DimensionMismatch("probe dimension does not match input");
  double z = probe.bias;
  for (std::size_t i = 0; i < x.size(); ++i) z += probe.weights[i] * x[i];
  return sigmoid(z);
}

double accuracy(const LinearProbe& probe, std::span<const LabeledVector> data) {
  if (data.empty()) return 0.0;
  std::size_t correct = 0;
  for (const auto& s : data) {
    const bool positive = predict(probe, s.x) >= 0.5;
    correct += positive == (s.label != 0) ? 1 : 0;
  }
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

EntityTraitProfile entity_trait_profile(std::string_view entity, const FollowGraph& graph,
                                        const std::map<std::string, TraitVector>& traits) {
  const auto idx = graph.find_entity(entity);
  if (!idx || graph.followers(*idx).empty()) throw NoFollowers("entity '" + std::string(entity) + "' has no followers");
  std::array<std::size_t, kTraitCount> counts{};
  std::size_t n = 0;
  for (std::uint32_t u : graph.followers(*idx)) {
    auto it = traits.find(graph.users()[u]);
    if (it == traits.end()) continue;
    ++n;
    for (std::size_t t = 0; t < kTraitCount; ++t) counts[t] += it->second.values[t];
  }
  if (n == 0) throw NoFollowers("no follower of '" + std::string(entity) + "' has trait labels");
  EntityTraitProfile p{std::string(entity), {}, n};
  for (std::size_t t = 0; t < kTraitCount; ++t) p.proportions[t] = static_cast<double>(counts[t]) / static_cast<double>(n);
  return p;
}

EntityTraitProfile entity_trait_profile(std::string_view entity, const FollowGraph& graph,
                                        std::span<const LinearProbe> probes, const EmbeddingTable& table) {
  if (probes.size() != kTraitCount) throw InvalidParameter("expected one probe per trait");
  const auto idx = graph.find_entity(entity);
  if (!idx || graph.followers(*idx).empty()) throw NoFollowers("entity '" + std::string(entity) + "' has no followers");
  std::array<std::size_t, kTraitCount> counts{};
  std::size_t n = 0;
  for (std::uint32_t u : graph.followers(*idx)) {
    UserEmbedding user;
    try {
      user = project(profile_from_graph(graph, u), table);
    } catch (const EmptySupport&) {
      continue;
    }
    ++n;
    for (std::size_t t = 0; t < kTraitCount; ++t) counts[t] += predict(probes[t], user.vector) >= 0.5 ? 1 : 0;
  }
  if (n == 0) throw NoFollowers("no follower of '" + std::string(entity) + "' can be projected");
  EntityTraitProfile p{std::string(entity), {}, n};
  for (std::size_t t = 0; t < kTraitCount; ++t) p.proportions[t] = static_cast<double>(counts[t]) / static_cast<double>(n);
  return p;
}

EntityTraitProfile average_profile(std::span<const EntityTraitProfile> profiles, std::string label) {
  EntityTraitProfile avg{std::move(label), {}, 0};
  if (profiles.empty()) return avg;
  for (const auto& p : profiles) {
    avg.sample_size += p.sample_size;
    for (std::size_t t = 0; t < kTraitCount; ++t) avg.proportions[t] += p.proportions[t];
  }
  for (auto& x : avg.proportions) x /= static_cast<double>(profiles.size());
  return avg;
}

std::vector<LabeledVector> probe_dataset(const FollowGraph& graph, const EmbeddingTable& table,
                                         const std::map<std::string, TraitVector>& traits, std::size_t trait) {
  std::vector<LabeledVector> out;
  for (std::uint32_t u = 0; u < graph.user_count(); ++u) {
    auto it = traits.find(graph.users()[u]);
    if (it == traits.end()) continue;
    try {
      auto user = project(profile_from_graph(graph, u), table);
      out.push_back({std::move(user.vector), it->second.values[trait]});
    } catch (const EmptySupport&) {
    }
  }
  return out;
}

std::vector<TraitProbeResult> train_trait_probes(const FollowGraph& graph, const EmbeddingTable& table,
                                                 const std::map<std::string, TraitVector>& traits,
                                                 const ProbeConfig& config, double heldout_fraction) {
  if (!(heldout_fraction > 0.0 && heldout_fraction < 1.0)) {
    throw InvalidParameter("heldout_fraction must lie in (0, 1)");
  }
  // Project every user once; the five traits share vectors and split.
  std::vector<std::vector<double>> vectors;
  std::vector<TraitVector> labels;
  for (std::uint32_t u = 0; u < graph.user_count(); ++u) {
    auto it = traits.find(graph.users()[u]);
    if (it == traits.end()) continue;
    try {
      vectors.push_back(project(profile_from_graph(graph, u), table).vector);
      labels.push_back(it->second);
    } catch (const EmptySupport&) {
    }
  }
  std::vector<std::size_t> order(vectors.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(derive_seed(config.seed, 0x5917));
  shuffle(order.begin(), order.end(), rng);
  const auto n_test = static_cast<std::size_t>(std::round(heldout_fraction * static_cast<double>(order.size())));

  std::vector<TraitProbeResult> results;
  for (std::size_t t = 0; t < kTraitCount; ++t) {
    std::vector<LabeledVector> train_set, test_set;
    for (std::size_t i = 0; i < order.size(); ++i) {
      LabeledVector s{vectors[order[i]], labels[order[i]].values[t]};
      (i < n_test ? test_set : train_set).push_back(std::move(s));
    }
    TraitProbeResult r;
    r.probe = train_probe(train_set, config, std::string(kTraitNames[t]));
    r.heldout_accuracy = accuracy(r.probe, test_set);
    r.heldout_size = test_set.size();
    std::size_t pos = 0;
    for (const auto& s : test_set) pos += s.label;
    const double rate = test_set.empty() ? 0.0 : static_cast<double>(pos) / static_cast<double>(test_set.size());
    r.heldout_majority_rate = std::max(rate, 1.0 - rate);
    pos = 0;
    for (const auto& s : train_set) pos += s.label;
    const double train_rate = static_cast<double>(pos) / static_cast<double>(train_set.size());
    r.train_majority_rate = std::max(train_rate, 1.0 - train_rate);
    results.push_back(std::move(r));
  }
  return results;
}

json to_json(const LinearProbe& probe) {
  return {{"trait", probe.trait},
          {"weights", probe.weights},
          {"bias", probe.bias},
          {"metadata",
           {{"iterations", probe.iterations}, {"final_loss", probe.final_loss}, {"l2", probe.l2}, {"seed", probe.seed}}}};
}

LinearProbe probe_from_json(const json& doc) {
  LinearProbe p;
  try {
    p.trait = doc.at("trait").get<std::string>();
    p.weights = doc.at("weights").get<std::vector<double>>();
    p.bias = doc.at("bias").get<double>();
    if (doc.contains("metadata")) {
      const json& m = doc["metadata"];
      p.iterations = m.value("iterations", std::size_t{0});
      p.final_loss = m.value("final_loss", 0.0);
      p.l2 = m.value("l2", 0.0);
      p.seed = m.value("seed", std::uint64_t{0});
    }
  } catch (const json::exception& ex) {
    throw FormatError(std::string("probe JSON: ") + ex.what());
  }
  for (double w : p.weights) {
    if (!std::isfinite(w)) throw FormatError("probe JSON: non-finite weight");
  }
  return p;
}

std::vector<LinearProbe> load_probes(const std::filesystem::path& path) {
  json doc;
  try {
    doc = json::parse(read_text_file(path));
  } catch (const json::parse_error& ex) {
    throw FormatError(std::string("probe file: ") + ex.what());
  }
  std::vector<LinearProbe> out;
  if (doc.is_array()) {
    for (const auto& item : doc) out.push_back(probe_from_json(item));
  } else {
    out.push_back(probe_from_json(doc));
  }
  return out;
}

void save_probes(std::span<const LinearProbe> probes, const std::filesystem::path& path) {
  json arr = json::array();
  for (const auto& p : probes) arr.push_back(to_json(p));
  write_text_file(path, arr.dump(2) + "\n");
}

std::vector<LinearProbe> probes_in_trait_order(std::vector<LinearProbe> probes) {
  std::vector<LinearProbe> ordered;
  for (auto name : kTraitNames) {
    auto it = std::find_if(probes.begin(), probes.end(), [&](const LinearProbe& p) { return p.trait == name; });
    if (it == probes.end()) throw FormatError("no probe for trait '" + std::string(name) + "'");
    ordered.push_back(*it);
  }
  return ordered;
}

json to_json(const EntityTraitProfile& profile) {
  json props = json::object();
  for (std::size_t t = 0; t < kTraitCount; ++t) props[std::string(kTraitNames[t])] = profile.proportions[t];
  return {{"entity", profile.entity}, {"proportions", std::move(props)}, {"sample_size", profile.sample_size}};
}

}  // namespace socialrank
