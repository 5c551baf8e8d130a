// Copyright 2026 The tnpart Authors

// Licensed under the Apache License, Version 2.0 (the License);
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

// http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an AS IS BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tnpart/partitioner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "tnpart/rng.hpp"

namespace tnpart {

std::vector<int> Partitioning::block_of(std::size_t num_vertices) const {
  std::vector<int> out(num_vertices, -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (VertexId v : blocks[b]) {
      if (v >= 0 && static_cast<std::size_t>(v) < num_vertices) out[v] = static_cast<int>(b);
    }
  }
  return out;
}

void Partitioning::normalize() {
  for (auto& b : blocks) std::sort(b.begin(), b.end());
}

ValidationResult validate(const Partitioning& k, const TensorNetwork& net) {
  ValidationResult res;
  const std::size_t n = net.num_vertices();
  auto fail = [&](PartitionViolation kind, std::vector<int> blocks, std::string msg) {
    res.ok = false;
    res.issues.push_back({kind, std::move(blocks), std::move(msg)});
  };
  std::vector<int> owner(n, -1);
  std::vector<int> overlapping;
  for (std::size_t b = 0; b < k.blocks.size(); ++b) {
    if (k.blocks[b].empty()) fail(PartitionViolation::NonEmpty, {static_cast<int>(b)}, "block is empty");
    for (VertexId v : k.blocks[b]) {
      if (v < 0 || static_cast<std::size_t>(v) >= n) {
        fail(PartitionViolation::UnknownVertex, {static_cast<int>(b)}, "vertex " + std::to_string(v) + " is not in the network");
        continue;
      }
      if (owner[v] >= 0) {
        fail(PartitionViolation::Disjoint, {owner[v], static_cast<int>(b)},
             "vertex " + std::to_string(v) + " appears in more than one block");
      } else {
        owner[v] = static_cast<int>(b);
      }
    }
  }
  std::size_t missing = 0;
  for (std::size_t v = 0; v < n; ++v) missing += owner[v] < 0 ? 1 : 0;
  if (missing > 0) fail(PartitionViolation::Cover, {}, std::to_string(missing) + " vertices are not covered");
  return res;
}

std::size_t max_block_size(std::size_t num_vertices, std::size_t k, double epsilon) {
  if (k == 0) throw std::invalid_argument("partition count must be >= 1");
  const std::size_t ceil_avg = (num_vertices + k - 1) / k;
  return static_cast<std::size_t>(std::floor((1.0 + epsilon) * static_cast<double>(ceil_avg) + 1e-9));
}

bool is_balanced(const Partitioning& k, std::size_t num_vertices) {
  const std::size_t cap = max_block_size(num_vertices, k.size(), k.epsilon);
  return std::all_of(k.blocks.begin(), k.blocks.end(), [&](const auto& b) { return b.size() <= cap; });
}

namespace {

struct WeightedAdj {
  VertexId to;
  double w;
};

std::vector<std::vector<WeightedAdj>> weighted_adjacency(const TensorNetwork& net) {
  std::vector<std::vector<WeightedAdj>> adj(net.num_vertices());
  for (EdgeId e : net.bound_edges()) {
    const Edge& ed = net.edge(e);
    if (ed.is_self_loop()) continue;
    const double w = std::log2(static_cast<double>(ed.dim));
    adj[ed.first.vertex].push_back({ed.second.vertex, w});
    adj[ed.second.vertex].push_back({ed.first.vertex, w});
  }
  return adj;
}

double cut_of(const std::vector<std::vector<WeightedAdj>>& adj, const std::vector<int>& block) {
  double cut = 0.0;
  for (std::size_t u = 0; u < adj.size(); ++u) {
    for (const auto& [v, w] : adj[u]) {
      if (static_cast<std::size_t>(v) > u && block[u] != block[v]) cut += w;
    }
  }
  return cut;
}

Partitioning from_assignment(const std::vector<int>& block, int k, double epsilon) {
  Partitioning p;
  p.epsilon = epsilon;
  p.blocks.resize(k);
  for (std::size_t v = 0; v < block.size(); ++v) p.blocks[block[v]].push_back(static_cast<VertexId>(v));
  return p;
}

constexpr double kGainEps = 1e-12;

}  // namespace

double cut_weight(const Partitioning& k, const TensorNetwork& net) {
  if (!validate(k, net)) throw std::invalid_argument("cut_weight needs a valid partitioning");
  return cut_of(weighted_adjacency(net), k.block_of(net.num_vertices()));
}

Partitioning round_robin_partition(const TensorNetwork& net, int k) {
  if (k < 1 || static_cast<std::size_t>(k) > net.num_vertices()) throw std::invalid_argument("bad partition count");
  std::vector<int> block(net.num_vertices());
  for (std::size_t v = 0; v < block.size(); ++v) block[v] = static_cast<int>(v % k);
  return from_assignment(block, k, kDefaultImbalance);
}

Partitioning initial_partition(const TensorNetwork& net, int k, double epsilon, std::uint64_t seed,
                               PartitionTrace* trace) {
  const std::size_t n = net.num_vertices();
  if (k < 1) throw std::invalid_argument("partition count must be >= 1");
  if (static_cast<std::size_t>(k) > n) throw std::invalid_argument("more partitions than tensors");
  if (epsilon < 0.0) throw std::invalid_argument("imbalance must be non-negative");

  const auto adj = weighted_adjacency(net);
  std::vector<int> block(n, -1);

  // Farthest-point seeds by hop distance; unreachable vertices count as farthest.
  Rng rng(seed);
  std::vector<VertexId> seeds{static_cast<VertexId>(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng))};
  std::vector<std::size_t> dist(n, std::numeric_limits<std::size_t>::max());
  auto relax_from = [&](VertexId s) {
    std::queue<VertexId> q;
    std::vector<std::size_t> d(n, std::numeric_limits<std::size_t>::max());
    d[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const VertexId u = q.front();
      q.pop();
      for (const auto& [v, w] : adj[u]) {
        if (d[v] == std::numeric_limits<std::size_t>::max()) {
          d[v] = d[u] + 1;
          q.push(v);
        }
      }
    }
    for (std::size_t v = 0; v < n; ++v) dist[v] = std::min(dist[v], d[v]);
  };
  relax_from(seeds[0]);
  while (seeds.size() < static_cast<std::size_t>(k)) {
    VertexId far = -1;
    for (std::size_t v = 0; v < n; ++v) {
      if (dist[v] == 0) continue;
      if (far < 0 || dist[v] > dist[far]) far = static_cast<VertexId>(v);
    }
    seeds.push_back(far);
    relax_from(far);
  }

  // Round-robin growth towards equal sizes, each block taking its most
  // strongly connected unassigned neighbour.
  std::vector<std::size_t> target(k, n / k);
  for (std::size_t i = 0; i < n % k; ++i) ++target[i];
  std::vector<std::size_t> size(k, 0);
  std::vector<std::vector<double>> conn(k, std::vector<double>(n, 0.0));
  auto assign = [&](VertexId v, int b) {
    block[v] = b;
    ++size[b];
    for (const auto& [u, w] : adj[v]) conn[b][u] += w;
  };
  for (int b = 0; b < k; ++b) assign(seeds[b], b);
  std::size_t assigned = static_cast<std::size_t>(k);
  while (assigned < n) {
    for (int b = 0; b < k && assigned < n; ++b) {
      if (size[b] >= target[b]) continue;
      VertexId pick = -1;
      for (std::size_t v = 0; v < n; ++v) {
        if (block[v] >= 0) continue;
        if (pick < 0 || conn[b][v] > conn[b][pick]) pick = static_cast<VertexId>(v);
      }
      assign(pick, b);
      ++assigned;
    }
  }

  double cut = cut_of(adj, block);
  if (trace) {
    trace->grown_cut = cut;
    trace->pass_cut.clear();
  }

  // Boundary refinement: first-improvement single moves, then pairwise swaps.
  const std::size_t cap = max_block_size(n, k, epsilon);
  std::vector<double> to_block(k);
  auto gather = [&](VertexId v) {
    std::fill(to_block.begin(), to_block.end(), 0.0);
    for (const auto& [u, w] : adj[v]) to_block[block[u]] += w;
  };
  for (int pass = 0; pass < 10; ++pass) {
    bool improved = false;
    for (std::size_t v = 0; v < n; ++v) {
      const int src = block[v];
      if (size[src] <= 1) continue;
      gather(static_cast<VertexId>(v));
      int best = -1;
      double best_gain = kGainEps;
      for (int b = 0; b < k; ++b) {
        if (b == src || size[b] + 1 > cap) continue;
        const double gain = to_block[b] - to_block[src];
        if (gain > best_gain) {
          best_gain = gain;
          best = b;
        }
      }
      if (best >= 0) {
        block[v] = best;
        --size[src];
        ++size[best];
        improved = true;
      }
    }
    for (std::size_t u = 0; u < n; ++u) {
      for (const auto& [v, w_unused] : adj[u]) {
        const int a = block[u], b = block[v];
        if (a == b) continue;
        gather(static_cast<VertexId>(u));
        const double gain_u = to_block[b] - to_block[a];
        gather(v);
        const double gain_v = to_block[a] - to_block[b];
        double w_uv = 0.0;
        for (const auto& [x, w] : adj[u]) w_uv += x == v ? w : 0.0;
        if (gain_u + gain_v - 2.0 * w_uv > kGainEps) {
          block[u] = b;
          block[v] = a;
          improved = true;
          break;
        }
      }
    }
    const double next = cut_of(adj, block);
    if (next > cut + 1e-9) throw std::logic_error("refinement pass increased the cut weight");
    cut = next;
    if (trace) trace->pass_cut.push_back(cut);
    if (!improved) break;
  }
  return from_assignment(block, k, epsilon);
}

nlohmann::json partitioning_to_json(const Partitioning& k) { return {{"blocks", k.blocks}, {"epsilon", k.epsilon}}; }

Partitioning partitioning_from_json(const nlohmann::json& j) {
  Partitioning k;
  k.blocks = j.at("blocks").get<std::vector<std::vector<VertexId>>>();
  k.epsilon = j.value("epsilon", kDefaultImbalance);
  return k;
}

}  // namespace tnpart
