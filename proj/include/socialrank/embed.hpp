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

#ifndef SOCIALRANK_EMBED_HPP_
#define SOCIALRANK_EMBED_HPP_

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "socialrank/error.hpp"
#include "socialrank/follow_graph.hpp"
#include "socialrank/rng.hpp"

namespace socialrank {

/// Entity id <-> dense index, with follower frequencies from the training graph.
class Vocabulary {
 public:
  Vocabulary() = default;
  /// Throws FormatError on duplicate or empty ids.
  Vocabulary(std::vector<std::string> ids, std::vector<std::uint64_t> counts);

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::vector<std::uint64_t>& counts() const { return counts_; }
  const std::string& id(std::uint32_t index) const { return ids_[index]; }
  std::optional<std::uint32_t> find(std::string_view id) const;
  bool contains(std::string_view id) const { return find(id).has_value(); }

 private:
  std::vector<std::string> ids_;
  std::vector<std::uint64_t> counts_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

/// Entities with at least `min_count` followers, ordered by follower count
/// descending then id. Throws EmptyVocabulary.
Vocabulary build_vocabulary(const FollowGraph& graph, std::uint64_t min_count);

/// Input ("ranking") and context vectors, row-major |V| x dim. The context
/// table is a training internal; tables loaded from disk carry none.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  EmbeddingTable(Vocabulary vocab, std::size_t dim, std::vector<float> input, std::vector<float> context = {});

  const Vocabulary& vocab() const { return vocab_; }
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return vocab_.size(); }
  bool has_context() const { return !context_.empty(); }

  std::span<const float> input(std::uint32_t index) const { return {input_.data() + index * dim_, dim_}; }
  std::span<const float> context(std::uint32_t index) const { return {context_.data() + index * dim_, dim_}; }
  std::span<float> mutable_input() { return input_; }
  std::span<float> mutable_context() { return context_; }
  const std::vector<float>& input_data() const { return input_; }
  const std::vector<float>& context_data() const { return context_; }

  /// Input vector for an entity id, or nullopt when out of vocabulary.
  std::optional<std::span<const float>> find(std::string_view id) const;

 private:
  Vocabulary vocab_;
  std::size_t dim_ = 0;
  std::vector<float> input_;
  std::vector<float> context_;
};

/// Same ids (in order), same dim and bit-identical input vectors.
bool bitwise_equal(const EmbeddingTable& a, const EmbeddingTable& b);

// ---------------------------------------------------------------------------
// Skip-gram negative-sampling objective for one (focus, context) pair:
//   L = -ln sigmoid(f . c) - sum_k ln sigmoid(-f . n_k)
// `negatives` holds K vectors back to back (K * d values).

namespace detail {
template <typename T>
T dot(std::span<const T> a, std::span<const T> b) {
  T s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}
/// -ln sigmoid(-x), computed without overflow.
template <typename T>
T softplus(T x) {
  return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}
inline void check_pair_shapes(std::size_t d, std::size_t c, std::size_t n) {
  if (c != d || d == 0 || n % d != 0) throw DimensionMismatch("skip-gram vectors must share a non-zero dimension");
}
}  // namespace detail

template <typename T>
T skipgram_pair_loss(std::span<const T> focus, std::span<const T> context, std::span<const T> negatives) {
  const std::size_t d = focus.size();
  detail::check_pair_shapes(d, context.size(), negatives.size());
  T loss = detail::softplus(-detail::dot(focus, context));
  for (std::size_t k = 0; k < negatives.size() / d; ++k) {
    loss += detail::softplus(detail::dot(focus, negatives.subspan(k * d, d)));
  }
  return loss;
}

template <typename T>
struct SkipgramGradient {
  T loss = 0;
  std::vector<T> focus;
  std::vector<T> context;
  std::vector<T> negatives;
};

template <typename T>
SkipgramGradient<T> skipgram_pair_gradient(std::span<const T> focus, std::span<const T> context,
                                           std::span<const T> negatives) {
  const std::size_t d = focus.size();
  detail::check_pair_shapes(d, context.size(), negatives.size());
  SkipgramGradient<T> g;
  g.focus.assign(d, T(0));
  g.context.assign(d, T(0));
  g.negatives.assign(negatives.size(), T(0));

  const T s = detail::dot(focus, context);
  g.loss = detail::softplus(-s);
  const T pos = static_cast<T>(sigmoid(static_cast<double>(s))) - T(1);
  for (std::size_t i = 0; i < d; ++i) {
    g.focus[i] += pos * context[i];
    g.context[i] = pos * focus[i];
  }
  for (std::size_t k = 0; k < negatives.size() / d; ++k) {
    auto neg = negatives.subspan(k * d, d);
    const T sk = detail::dot(focus, neg);
    g.loss += detail::softplus(sk);
    const T coef = static_cast<T>(sigmoid(static_cast<double>(sk)));
    for (std::size_t i = 0; i < d; ++i) {
      g.focus[i] += coef * neg[i];
      g.negatives[k * d + i] = coef * focus[i];
    }
  }
  return g;
}

/// One SGD step on a (focus, context, negatives) tuple, in place. The trainer's
/// hot path. Every target sees the pre-step focus vector and the focus update is
/// applied last, so with distinct targets this is exactly x -= lr * dL/dx.
/// `scratch` must hold d floats. Returns the pair loss when `with_loss`.
float sgns_update(float* focus, float* context, std::span<float* const> negatives, std::size_t dim, float lr,
                  float* scratch, bool with_loss);

/// Cosine similarity. Throws ZeroVector if either vector has zero norm and
/// DimensionMismatch on size mismatch.
template <typename A, typename B>
double cosine(std::span<const A> a, std::span<const B> b) {
  if (a.size() != b.size()) throw DimensionMismatch("cosine of vectors with different dimensions");
  double ab = 0, aa = 0, bb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double x = a[i], y = b[i];
    ab += x * y;
    aa += x * x;
    bb += y * y;
  }
  if (aa == 0.0 || bb == 0.0) throw ZeroVector("cosine with a zero vector");
  const double c = ab / (std::sqrt(aa) * std::sqrt(bb));
  return c > 1.0 ? 1.0 : (c < -1.0 ? -1.0 : c);
}

// ---------------------------------------------------------------------------
// Training.

/// Draws entity indices with probability proportional to count^power.
class NegativeSampler {
 public:
  NegativeSampler(std::span<const std::uint64_t> counts, double power = 0.75);

  std::uint32_t draw(Rng& rng) const;
  double probability(std::uint32_t index) const;
  std::size_t size() const { return cumulative_.size(); }

 private:
  std::vector<double> cumulative_;
};

struct TrainConfig {
  std::size_t dim = 100;
  std::size_t epochs = 5;
  std::size_t negatives = 5;
  double alpha = 0.025;
  double alpha_min = 1e-4;
  std::size_t max_contexts = 20;
  std::uint64_t min_count = 5;
  std::size_t workers = 1;
  std::uint64_t seed = 1;
};

struct TrainStats {
  std::vector<double> epoch_mean_loss;
  std::uint64_t pairs = 0;
};

/// Skip-gram with negative sampling where each user's followed set is the
/// context. Per epoch and user, every in-vocabulary followed entity is a focus
/// once, paired with up to max_contexts of the user's other entities sampled
/// without replacement. Bitwise deterministic for workers == 1.
/// Throws EmptyVocabulary or InvalidConfig.
EmbeddingTable train(const FollowGraph& graph, const TrainConfig& config, TrainStats* stats = nullptr);

void validate(const TrainConfig& config);

// ---------------------------------------------------------------------------
// Persistence.

enum class TableFormat { Binary, Text };
enum class EmitMode { Input, Mean };

/// Table whose input vectors are the emitted ranking vectors: the input table,
/// or the mean of input and context (requires a context table).
EmbeddingTable emit_vectors(const EmbeddingTable& table, EmitMode mode);

/// Binary: "SVEC", u8 version (1), u32 |V|, u32 d, then per entity a u32
/// length-prefixed UTF-8 id and d float32, all little-endian.
/// Text: "|V| d" header then "id v1 ... vd" per line.
void save_embeddings(const EmbeddingTable& table, const std::filesystem::path& path, TableFormat format);
std::string serialize_embeddings(const EmbeddingTable& table, TableFormat format);

/// Format detected from the magic bytes. Throws IoError / FormatError.
EmbeddingTable load_embeddings(const std::filesystem::path& path);
EmbeddingTable parse_embeddings(std::string_view bytes);

}  // namespace socialrank

#endif  // SOCIALRANK_EMBED_HPP_
