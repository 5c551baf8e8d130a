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

#include "tnpart/pathfind.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "tnpart/cost_model.hpp"
#include "tnpart/rng.hpp"

namespace tnpart {

double memory_reduction(const TensorNetwork& net, const LegSet& a, const LegSet& b) {
  return net.legs_size(a) + net.legs_size(b) - net.legs_size(leg_symmetric_difference(a, b));
}

std::vector<PseudoTensor> vertex_pseudo_tensors(const TensorNetwork& net, std::span<const VertexId> view) {
  std::vector<VertexId> sorted(view.begin(), view.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("view lists a vertex twice");
  }
  std::vector<PseudoTensor> out;
  out.reserve(sorted.size());
  for (VertexId v : sorted) out.push_back({v, net.legs_of(v)});
  return out;
}

namespace {

struct Candidate {
  double score;
  TreeNodeId a;
  TreeNodeId b;
};

// Max-heap order: higher score first, then the lexicographically smaller pair.
struct CandidateLess {
  bool operator()(const Candidate& x, const Candidate& y) const {
    if (x.score != y.score) return x.score < y.score;
    if (x.a != y.a) return x.a > y.a;
    return x.b > y.b;
  }
};

}  // namespace

ContractionTree greedy_over(const TensorNetwork& net, std::span<const PseudoTensor> leaves, double noise_scale,
                            std::uint64_t seed) {
  if (leaves.empty()) throw std::invalid_argument("greedy needs at least one tensor");
  ContractionTree tree(net);
  for (const auto& p : leaves) tree.add_leaf(p.label, p.legs);
  const std::size_t n = leaves.size();
  if (n == 1) return tree;

  Rng rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const std::size_t total = 2 * n - 1;
  std::vector<char> alive(total, 0);
  std::fill_n(alive.begin(), n, 1);
  std::vector<std::array<TreeNodeId, 2>> holders(net.edge_capacity(), {kNoNode, kNoNode});
  for (std::size_t i = 0; i < n; ++i) {
    for (EdgeId e : leaves[i].legs) {
      auto& h = holders.at(e);
      (h[0] == kNoNode ? h[0] : h[1]) = static_cast<TreeNodeId>(i);
    }
  }

  std::priority_queue<Candidate, std::vector<Candidate>, CandidateLess> heap;
  auto push = [&](TreeNodeId a, TreeNodeId b) {
    if (a > b) std::swap(a, b);
    double score = memory_reduction(net, tree.legs(a), tree.legs(b));
    if (noise_scale > 0.0) score *= std::exp(noise_scale * gauss(rng));
    heap.push({score, a, b});
  };

  {
    std::vector<std::pair<TreeNodeId, TreeNodeId>> pairs;
    for (const auto& h : holders) {
      if (h[0] != kNoNode && h[1] != kNoNode) pairs.emplace_back(std::min(h[0], h[1]), std::max(h[0], h[1]));
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    for (const auto& [a, b] : pairs) push(a, b);
  }

  std::size_t active = n;
  while (active > 1) {
    TreeNodeId a = kNoNode, b = kNoNode;
    while (!heap.empty()) {
      const Candidate c = heap.top();
      heap.pop();
      if (alive[c.a] && alive[c.b]) {
        a = c.a;
        b = c.b;
        break;
      }
    }
    if (a == kNoNode) {
      // Disconnected remainder: best outer product.
      double best = -std::numeric_limits<double>::infinity();
      for (TreeNodeId x = 0; x < static_cast<TreeNodeId>(tree.num_nodes()); ++x) {
        if (!alive[x]) continue;
        for (TreeNodeId y = x + 1; y < static_cast<TreeNodeId>(tree.num_nodes()); ++y) {
          if (!alive[y]) continue;
          const double s = memory_reduction(net, tree.legs(x), tree.legs(y));
          if (s > best) {
            best = s;
            a = x;
            b = y;
          }
        }
      }
    }
    const TreeNodeId r = tree.join(a, b);
    alive[a] = alive[b] = 0;
    alive[r] = 1;
    --active;
    std::vector<TreeNodeId> neighbours;
    for (EdgeId e : tree.legs(r)) {
      auto& h = holders[e];
      for (auto& slot : h) {
        if (slot == a || slot == b) slot = r;
      }
      for (TreeNodeId slot : h) {
        if (slot != kNoNode && slot != r && alive[slot]) neighbours.push_back(slot);
      }
    }
    std::sort(neighbours.begin(), neighbours.end());
    neighbours.erase(std::unique(neighbours.begin(), neighbours.end()), neighbours.end());
    for (TreeNodeId c : neighbours) push(c, r);
  }
  return tree;
}

ContractionTree greedy_tree(const TensorNetwork& net, std::span<const VertexId> view) {
  const auto leaves = vertex_pseudo_tensors(net, view);
  return greedy_over(net, leaves, 0.0, 0);
}

ContractionTree greedy_tree(const TensorNetwork& net) {
  std::vector<VertexId> all(net.num_vertices());
  std::iota(all.begin(), all.end(), 0);
  return greedy_tree(net, all);
}

ContractionTree random_greedy_tree(const TensorNetwork& net, std::span<const PseudoTensor> leaves,
                                   const GreedyConfig& cfg) {
  if (cfg.samples < 1) throw std::invalid_argument("RandomGreedy needs at least one sample");
  if (cfg.noise_scale < 0.0) throw std::invalid_argument("noise scale must be non-negative");
  auto cost = [&](const ContractionTree& t) {
    return cfg.select == SampleSelection::ConSerial ? con_serial(t) : mem_cost(t);
  };
  ContractionTree best = greedy_over(net, leaves, 0.0, 0);
  if (leaves.size() <= 2 || cfg.noise_scale == 0.0) return best;
  double best_cost = cost(best);
  for (int i = 1; i < cfg.samples; ++i) {
    ContractionTree t = greedy_over(net, leaves, cfg.noise_scale, derive_seed(cfg.rng_seed, {static_cast<std::uint64_t>(i)}));
    const double c = cost(t);
    if (c < best_cost) {
      best_cost = c;
      best = std::move(t);
    }
  }
  return best;
}

ContractionTree random_greedy_tree(const TensorNetwork& net, std::span<const VertexId> view, const GreedyConfig& cfg) {
  const auto leaves = vertex_pseudo_tensors(net, view);
  return random_greedy_tree(net, leaves, cfg);
}

ContractionTree reduction_path(const TensorNetwork& net, std::span<const LegSet> partition_legs,
                               const GreedyConfig& cfg) {
  std::vector<PseudoTensor> leaves;
  leaves.reserve(partition_legs.size());
  for (std::size_t i = 0; i < partition_legs.size(); ++i) {
    leaves.push_back({static_cast<std::int64_t>(i), partition_legs[i]});
  }
  return random_greedy_tree(net, leaves, cfg);
}

}  // namespace tnpart
