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

#include "socialrank/embed.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstring>

#include "socialrank/io_util.hpp"

namespace socialrank {

Vocabulary::Vocabulary(std::vector<std::string> ids, std::vector<std::uint64_t> counts)
    : ids_(std::move(ids)), counts_(std::move(counts)) {
  if (counts_.empty()) counts_.assign(ids_.size(), 0);
  if (counts_.size() != ids_.size()) throw FormatError("vocabulary ids and counts differ in length");
  index_.reserve(ids_.size());
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (ids_[i].empty()) throw FormatError("empty entity id in vocabulary");
    if (!index_.emplace(ids_[i], static_cast<std::uint32_t>(i)).second) {
      throw FormatError("duplicate entity id '" + ids_[i] + "' in vocabulary");
    }
  }
}

std::optional<std::uint32_t> Vocabulary::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Vocabulary build_vocabulary(const FollowGraph& graph, std::uint64_t min_count) {
  if (graph.edge_count() == 0) throw EmptyVocabulary("follow graph has no edges");
  std::vector<std::uint32_t> kept;
  for (std::uint32_t e = 0; e < graph.entity_count(); ++e) {
    if (graph.followers(e).size() >= min_count && !graph.followers(e).empty()) kept.push_back(e);
  }
  if (kept.empty()) {
    throw EmptyVocabulary("no entity has at least " + std::to_string(min_count) + " followers");
  }
  std::sort(kept.begin(), kept.end(), [&](std::uint32_t a, std::uint32_t b) {
    const auto fa = graph.followers(a).size(), fb = graph.followers(b).size();
    if (fa != fb) return fa > fb;
    return graph.entities()[a] < graph.entities()[b];
  });
  std::vector<std::string> ids;
  std::vector<std::uint64_t> counts;
  for (std::uint32_t e : kept) {
    ids.push_back(graph.entities()[e]);
    counts.push_back(graph.followers(e).size());
  }
  return Vocabulary(std::move(ids), std::move(counts));
}

EmbeddingTable::EmbeddingTable(Vocabulary vocab, std::size_t dim, std::vector<float> input,
                               std::vector<float> context)
    : vocab_(std::move(vocab)), dim_(dim), input_(std::move(input)), context_(std::move(context)) {
  if (dim_ == 0) throw FormatError("embedding dimension must be positive");
  if (input_.size() != vocab_.size() * dim_) throw FormatError("input table shape does not match |V| x d");
  if (!context_.empty() && context_.size() != input_.size()) {
    throw FormatError("context table shape does not match input table");
  }
}

std::optional<std::span<const float>> EmbeddingTable::find(std::string_view id) const {
  auto idx = vocab_.find(id);
  if (!idx) return std::nullopt;
  return input(*idx);
}

bool bitwise_equal(const EmbeddingTable& a, const EmbeddingTable& b) {
  if (a.dim() != b.dim() || a.vocab().ids() != b.vocab().ids()) return false;
  const auto& x = a.input_data();
  const auto& y = b.input_data();
  return x.size() == y.size() && std::memcmp(x.data(), y.data(), x.size() * sizeof(float)) == 0;
}

namespace {

inline float dot_f32(const float* a, const float* b, std::size_t n) {
  float acc[8] = {0, 0, 0, 0, 0, 0, 0, 0};
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    for (std::size_t j = 0; j < 8; ++j) acc[j] += a[i + j] * b[i + j];
  }
  float s = ((acc[0] + acc[1]) + (acc[2] + acc[3])) + ((acc[4] + acc[5]) + (acc[6] + acc[7]));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

inline float sigmoidf(float x) {
  if (x >= 0) return 1.0f / (1.0f + std::exp(-x));
  const float e = std::exp(x);
  return e / (1.0f + e);
}

}  // namespace

float sgns_update(float* focus, float* context, std::span<float* const> negatives, std::size_t dim, float lr,
                  float* scratch, bool with_loss) {
  std::fill(scratch, scratch + dim, 0.0f);
  float loss = 0.0f;
  auto step = [&](float* target, float label) {
    const float s = dot_f32(focus, target, dim);
    const float g = (label - sigmoidf(s)) * lr;
    if (with_loss) loss += detail::softplus(label > 0 ? -s : s);
    for (std::size_t i = 0; i < dim; ++i) scratch[i] += g * target[i];
    for (std::size_t i = 0; i < dim; ++i) target[i] += g * focus[i];
  };
  step(context, 1.0f);
  for (float* neg : negatives) step(neg, 0.0f);
  for (std::size_t i = 0; i < dim; ++i) focus[i] += scratch[i];
  return loss;
}

NegativeSampler::NegativeSampler(std::span<const std::uint64_t> counts, double power) {
  if (counts.empty()) throw EmptyVocabulary("negative sampler over an empty vocabulary");
  cumulative_.reserve(counts.size());
  double total = 0.0;
  for (auto c : counts) {
    total += std::pow(static_cast<double>(c), power);
    cumulative_.push_back(total);
  }
  if (!(total > 0.0)) throw InvalidConfig("negative sampler needs at least one positive count");
  for (auto& c : cumulative_) c /= total;
  cumulative_.back() = 1.0;
}

std::uint32_t NegativeSampler::draw(Rng& rng) const {
  const double u = rng.uniform();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return static_cast<std::uint32_t>(it - cumulative_.begin());
}

double NegativeSampler::probability(std::uint32_t index) const {
  return cumulative_[index] - (index == 0 ? 0.0 : cumulative_[index - 1]);
}

EmbeddingTable emit_vectors(const EmbeddingTable& table, EmitMode mode) {
  if (mode == EmitMode::Input) return EmbeddingTable(table.vocab(), table.dim(), table.input_data());
  if (!table.has_context()) throw InvalidConfig("mean emission requires a context table");
  std::vector<float> mean(table.input_data().size());
  for (std::size_t i = 0; i < mean.size(); ++i) {
    mean[i] = 0.5f * (table.input_data()[i] + table.context_data()[i]);
  }
  return EmbeddingTable(table.vocab(), table.dim(), std::move(mean));
}

namespace {

constexpr char kMagic[4] = {'S', 'V', 'E', 'C'};
constexpr std::uint8_t kBinaryVersion = 1;

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint32_t get_u32(std::string_view& in) {
  if (in.size() < 4) throw FormatError("truncated embedding file");
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[i])) << (8 * i);
  in.remove_prefix(4);
  return v;
}

void check_id(const std::string& id, TableFormat format) {
  if (format == TableFormat::Text && id.find_first_of(" \t\r\n") != std::string::npos) {
    throw FormatError("entity id '" + id + "' contains whitespace; use the binary format");
  }
}

EmbeddingTable parse_binary(std::string_view in) {
  in.remove_prefix(4);
  if (in.empty()) throw FormatError("truncated embedding file");
  const auto version = static_cast<std::uint8_t>(in[0]);
  in.remove_prefix(1);
  if (version != kBinaryVersion) throw FormatError("unsupported SVEC version " + std::to_string(version));
  const std::uint32_t n = get_u32(in);
  const std::uint32_t d = get_u32(in);
  if (d == 0) throw FormatError("embedding dimension must be positive");
  std::vector<std::string> ids;
  std::vector<float> values;
  ids.reserve(n);
  values.reserve(static_cast<std::size_t>(n) * d);
  for (std::uint32_t r = 0; r < n; ++r) {
    const std::uint32_t len = get_u32(in);
    if (in.size() < len) throw FormatError("truncated entity id at row " + std::to_string(r));
    ids.emplace_back(in.substr(0, len));
    in.remove_prefix(len);
    for (std::uint32_t j = 0; j < d; ++j) values.push_back(std::bit_cast<float>(get_u32(in)));
  }
  if (!in.empty()) throw FormatError("trailing bytes after " + std::to_string(n) + " rows");
  return EmbeddingTable(Vocabulary(std::move(ids), {}), d, std::move(values));
}

std::string_view next_token(std::string_view& line) {
  const auto start = line.find_first_not_of(' ');
  if (start == std::string_view::npos) {
    line = {};
    return {};
  }
  line.remove_prefix(start);
  const auto end = line.find(' ');
  std::string_view tok = line.substr(0, end);
  line = end == std::string_view::npos ? std::string_view{} : line.substr(end);
  return tok;
}

template <typename T>
T parse_number(std::string_view tok, std::size_t line_no) {
  T v{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw FormatError("line " + std::to_string(line_no) + ": bad number '" + std::string(tok) + "'");
  }
  return v;
}

EmbeddingTable parse_text(std::string_view in) {
  std::vector<std::string_view> lines;
  while (!in.empty()) {
    const auto nl = in.find('\n');
    std::string_view line = in.substr(0, nl);
    in = nl == std::string_view::npos ? std::string_view{} : in.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back(line);
  }
  if (lines.empty()) throw FormatError("empty embedding file");
  std::string_view header = lines[0];
  const auto n = parse_number<std::size_t>(next_token(header), 1);
  const auto d = parse_number<std::size_t>(next_token(header), 1);
  if (!next_token(header).empty()) throw FormatError("line 1: header must be '|V| d'");
  if (d == 0) throw FormatError("embedding dimension must be positive");
  if (lines.size() - 1 != n) {
    throw FormatError("header declares " + std::to_string(n) + " rows but file has " +
                      std::to_string(lines.size() - 1));
  }
  std::vector<std::string> ids;
  std::vector<float> values;
  values.reserve(n * d);
  for (std::size_t r = 0; r < n; ++r) {
    std::string_view line = lines[r + 1];
    ids.emplace_back(next_token(line));
    for (std::size_t j = 0; j < d; ++j) {
      auto tok = next_token(line);
      if (tok.empty()) throw FormatError("line " + std::to_string(r + 2) + ": expected " + std::to_string(d) + " values");
      values.push_back(parse_number<float>(tok, r + 2));
    }
    if (!next_token(line).empty()) {
      throw FormatError("line " + std::to_string(r + 2) + ": more than " + std::to_string(d) + " values");
    }
  }
  return EmbeddingTable(Vocabulary(std::move(ids), {}), d, std::move(values));
}

}  // namespace

std::string serialize_embeddings(const EmbeddingTable& table, TableFormat format) {
  std::string out;
  const auto& ids = table.vocab().ids();
  if (format == TableFormat::Binary) {
    out.append(kMagic, 4);
    out.push_back(static_cast<char>(kBinaryVersion));
    put_u32(out, static_cast<std::uint32_t>(ids.size()));
    put_u32(out, static_cast<std::uint32_t>(table.dim()));
    for (std::uint32_t r = 0; r < ids.size(); ++r) {
      put_u32(out, static_cast<std::uint32_t>(ids[r].size()));
      out.append(ids[r]);
      for (float v : table.input(r)) put_u32(out, std::bit_cast<std::uint32_t>(v));
    }
    return out;
  }
  out = std::to_string(ids.size()) + " " + std::to_string(table.dim()) + "\n";
  char buf[32];
  for (std::uint32_t r = 0; r < ids.size(); ++r) {
    check_id(ids[r], format);
    out.append(ids[r]);
    for (float v : table.input(r)) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
      out.push_back(' ');
      out.append(buf, ptr);
    }
    out.push_back('\n');
  }
  return out;
}

void save_embeddings(const EmbeddingTable& table, const std::filesystem::path& path, TableFormat format) {
  write_text_file(path, serialize_embeddings(table, format));
}

EmbeddingTable parse_embeddings(std::string_view bytes) {
  if (bytes.size() >= 4 && bytes.substr(0, 4) == std::string_view(kMagic, 4)) return parse_binary(bytes);
  return parse_text(bytes);
}

EmbeddingTable load_embeddings(const std::filesystem::path& path) {
  return parse_embeddings(read_text_file(path));
}

}  // namespace socialrank
