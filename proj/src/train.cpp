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

#include <algorithm>
#include <atomic>
#include <thread>

#include "socialrank/embed.hpp"

namespace socialrank {

void validate(const TrainConfig& config) {
  if (config.dim == 0) throw InvalidConfig("dim must be >= 1");
  if (config.negatives == 0) throw InvalidConfig("negatives must be >= 1");
  if (!(config.alpha > 0.0)) throw InvalidConfig("alpha must be > 0");
  if (!(config.alpha_min >= 0.0) || config.alpha_min > config.alpha) {
    throw InvalidConfig("alpha_min must lie in [0, alpha]");
  }
  if (config.max_contexts == 0) throw InvalidConfig("max_contexts must be >= 1");
  if (config.workers == 0) throw InvalidConfig("workers must be >= 1");
}

namespace {

struct EpochContext {
  const std::vector<std::vector<std::uint32_t>>* users;
  const NegativeSampler* sampler;
  const TrainConfig* config;
  float* input;
  float* context;
  std::uint64_t total_pairs;
  std::atomic<std::uint64_t>* pairs_done;
  bool track_loss;
};

struct WorkerResult {
  double loss = 0.0;
  std::uint64_t pairs = 0;
};

// Processes users [begin, end) of `order`.
WorkerResult run_worker(const EpochContext& ctx, std::span<const std::uint32_t> order, std::uint64_t seed) {
  const TrainConfig& cfg = *ctx.config;
  const std::size_t d = cfg.dim;
  Rng rng(seed);
  std::vector<float> scratch(d);
  std::vector<std::uint32_t> pool;
  std::vector<float*> negatives(cfg.negatives);
  WorkerResult result;
  std::uint64_t local = 0;
  constexpr std::uint64_t kSyncEvery = 4096;
  const double alpha_span = cfg.alpha - cfg.alpha_min;
  float lr = static_cast<float>(cfg.alpha);

  auto refresh_lr = [&] {
    const std::uint64_t done = ctx.pairs_done->fetch_add(local, std::memory_order_relaxed) + local;
    local = 0;
    const double frac = std::min(1.0, static_cast<double>(done) / static_cast<double>(ctx.total_pairs));
    lr = static_cast<float>(std::max(cfg.alpha_min, cfg.alpha - alpha_span * frac));
  };

  for (std::uint32_t user : order) {
    const auto& followed = (*ctx.users)[user];
    if (followed.size() < 2) continue;
    for (std::size_t f = 0; f < followed.size(); ++f) {
      pool.assign(followed.begin(), followed.end());
      std::swap(pool[f], pool.back());
      pool.pop_back();
      const std::size_t n_ctx = std::min<std::size_t>(cfg.max_contexts, pool.size());
      partial_shuffle(pool.begin(), pool.end(), n_ctx, rng);
      float* focus = ctx.input + static_cast<std::size_t>(followed[f]) * d;
      for (std::size_t c = 0; c < n_ctx; ++c) {
        const std::uint32_t target = pool[c];
        for (auto& neg : negatives) {
          std::uint32_t k;
          do {
            k = ctx.sampler->draw(rng);
          } while (k == target && ctx.sampler->size() > 1);
          neg = ctx.context + static_cast<std::size_t>(k) * d;
        }
        result.loss += sgns_update(focus, ctx.context + static_cast<std::size_t>(target) * d, negatives, d, lr,
                                   scratch.data(), ctx.track_loss);
        ++result.pairs;
        if (++local == kSyncEvery) refresh_lr();
      }
    }
  }
  refresh_lr();
  return result;
}

}  // namespace

EmbeddingTable train(const FollowGraph& graph, const TrainConfig& config, TrainStats* stats) {
  validate(config);
  Vocabulary vocab = build_vocabulary(graph, config.min_count);
  const std::size_t d = config.dim;

  std::vector<std::int64_t> to_vocab(graph.entity_count(), -1);
  for (std::uint32_t e = 0; e < graph.entity_count(); ++e) {
    if (auto idx = vocab.find(graph.entities()[e])) to_vocab[e] = *idx;
  }
  std::vector<std::vector<std::uint32_t>> users(graph.user_count());
  std::uint64_t pairs_per_epoch = 0;
  for (std::uint32_t u = 0; u < graph.user_count(); ++u) {
    for (std::uint32_t e : graph.following(u)) {
      if (to_vocab[e] >= 0) users[u].push_back(static_cast<std::uint32_t>(to_vocab[e]));
    }
    std::sort(users[u].begin(), users[u].end());
    const std::size_t n = users[u].size();
    if (n >= 2) pairs_per_epoch += n * std::min<std::uint64_t>(config.max_contexts, n - 1);
  }

  std::vector<float> input(vocab.size() * d);
  std::vector<float> context(vocab.size() * d, 0.0f);
  {
    Rng init(derive_seed(config.seed, 0));
    const double half = 0.5 / static_cast<double>(d);
    for (auto& v : input) v = static_cast<float>(init.uniform(-half, half));
  }

  const NegativeSampler sampler(vocab.counts(), 0.75);
  std::atomic<std::uint64_t> pairs_done{0};
  EpochContext ctx{&users,        &sampler, &config, input.data(), context.data(),
                   std::max<std::uint64_t>(1, pairs_per_epoch * config.epochs), &pairs_done, stats != nullptr};

  std::vector<std::uint32_t> order(graph.user_count());
  for (std::uint32_t u = 0; u < order.size(); ++u) order[u] = u;

  if (stats) *stats = TrainStats{};
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    Rng order_rng(derive_seed(config.seed, 1, epoch));
    shuffle(order.begin(), order.end(), order_rng);

    const std::size_t workers = std::min<std::size_t>(config.workers, std::max<std::size_t>(1, order.size()));
    std::vector<WorkerResult> results(workers);
    if (workers == 1) {
      results[0] = run_worker(ctx, order, derive_seed(config.seed, 2 + epoch, 0));
    } else {
      // Hogwild: workers update the shared tables without synchronisation.
      std::vector<std::jthread> threads;
      const std::size_t chunk = (order.size() + workers - 1) / workers;
      for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = std::min(order.size(), w * chunk);
        const std::size_t end = std::min(order.size(), begin + chunk);
        threads.emplace_back([&, w, begin, end] {
          results[w] = run_worker(ctx, std::span<const std::uint32_t>(order).subspan(begin, end - begin),
                                  derive_seed(config.seed, 2 + epoch, w));
        });
      }
    }
    if (stats) {
      WorkerResult total;
      for (const auto& r : results) {
        total.loss += r.loss;
        total.pairs += r.pairs;
      }
      stats->pairs += total.pairs;
      stats->epoch_mean_loss.push_back(total.pairs ? total.loss / static_cast<double>(total.pairs) : 0.0);
    }
  }
  return EmbeddingTable(std::move(vocab), d, std::move(input), std::move(context));
}

}  // namespace socialrank
