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

#include <doctest.h>

#include "support.hpp"
#include "tnpart/cost_model.hpp"
#include "tnpart/pathfind.hpp"

using namespace tnpart;
using namespace tnpart::testing;

namespace {

using Pairs = std::vector<std::pair<TreeNodeId, TreeNodeId>>;

// Every pairwise elimination sequence over n live nodes (n <= 5).
void enumerate_orders(int n, std::vector<TreeNodeId> alive, TreeNodeId next, Pairs& cur, std::vector<Pairs>& out) {
  if (alive.size() == 1) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = 0; i < alive.size(); ++i) {
    for (std::size_t j = i + 1; j < alive.size(); ++j) {
      std::vector<TreeNodeId> rest;
      for (std::size_t x = 0; x < alive.size(); ++x) {
        if (x != i && x != j) rest.push_back(alive[x]);
      }
      rest.push_back(next);
      cur.emplace_back(alive[i], alive[j]);
      enumerate_orders(n, rest, next + 1, cur, out);
      cur.pop_back();
    }
  }
}

}  // namespace

TEST_CASE("memory reduction objective") {
  const TensorNetwork net = network_from_edges(3, {{0, -1, 2}, {0, 1, 3}, {1, 2, 4}, {2, -1, 5}});
  const auto l = [&](VertexId v) { return net.legs_of(v); };
  CHECK(memory_reduction(net, l(0), l(1)) == 6 + 12 - 8);
  CHECK(memory_reduction(net, l(1), l(2)) == 12 + 20 - 15);
  CHECK(memory_reduction(net, l(0), l(2)) == 6 + 20 - 120);
}

TEST_CASE("greedy picks the best adjacent pair first") {
  const TensorNetwork net = network_from_edges(3, {{0, -1, 2}, {0, 1, 3}, {1, 2, 4}, {2, -1, 5}});
  const ContractionTree t = greedy_tree(net);
  t.check_invariants();
  const auto first = t.internal_post_order(t.root()).front();
  CHECK(t.subtree_leaf_tensors(first) == std::vector<VertexId>{1, 2});

  TensorNetwork two = network_from_edges(2, {{0, 1, 3}});
  CHECK(greedy_tree(two).num_nodes() == 3);
  CHECK_THROWS_AS(greedy_tree(net, std::vector<VertexId>{}), std::invalid_argument);
}

TEST_CASE("greedy on the 4-ring lies within the exhaustive order set") {
  const TensorNetwork ring = ring_network(4, 2);
  std::vector<Pairs> orders;
  Pairs cur;
  enumerate_orders(4, {0, 1, 2, 3}, 4, cur, orders);
  CHECK(orders.size() == 18);
  std::vector<double> costs;
  for (const auto& o : orders) costs.push_back(con_serial(ContractionTree::build_from_pair_sequence(ring, o)));
  const double greedy = con_serial(greedy_tree(ring));
  CHECK(std::find(costs.begin(), costs.end(), greedy) != costs.end());
  CHECK(greedy >= *std::min_element(costs.begin(), costs.end()));
  CHECK(greedy == *std::min_element(costs.begin(), costs.end()));
}

TEST_CASE("greedy is deterministic and handles disconnected views") {
  Rng64 rng(9);
  const TensorNetwork net = random_network(rng, 10, 3, false);
  CHECK(greedy_tree(net).to_json() == greedy_tree(net).to_json());
  TensorNetwork split = network_from_edges(4, {{0, 1, 2}, {2, 3, 2}});
  const ContractionTree t = greedy_tree(split);
  t.check_invariants();
  CHECK(t.num_leaves() == 4);
}

TEST_CASE("random greedy degenerates to greedy and never loses to it") {
  const TensorNetwork chain = network_from_edges(3, {{0, -1, 2}, {0, 1, 3}, {1, 2, 4}, {2, -1, 5}});
  std::vector<VertexId> all{0, 1, 2};
  GreedyConfig one{0.0, 1, 0, SampleSelection::ConSerial};
  CHECK(random_greedy_tree(chain, all, one).to_json() == greedy_tree(chain).to_json());

  Rng64 rng(31);
  for (int seed = 0; seed < 100; ++seed) {
    const TensorNetwork net = random_network(rng, 8, 4, false);
    std::vector<VertexId> vs(net.num_vertices());
    std::iota(vs.begin(), vs.end(), 0);
    GreedyConfig cfg;
    cfg.rng_seed = static_cast<std::uint64_t>(seed);
    const double g = con_serial(greedy_tree(net));
    const auto t = random_greedy_tree(net, vs, cfg);
    CHECK(con_serial(t) <= g);
    CHECK(random_greedy_tree(net, vs, cfg).to_json() == t.to_json());
  }
}

TEST_CASE("random greedy cost is non-increasing in the sample count") {
  Rng64 rng(4);
  const TensorNetwork net = random_network(rng, 12, 4, false, 10, 2);
  std::vector<VertexId> vs(net.num_vertices());
  std::iota(vs.begin(), vs.end(), 0);
  double prev = std::numeric_limits<double>::infinity();
  for (int s = 1; s <= 64; s *= 2) {
    GreedyConfig cfg;
    cfg.samples = s;
    cfg.rng_seed = 77;
    const double c = con_serial(random_greedy_tree(net, vs, cfg));
    CHECK(c <= prev);
    prev = c;
  }
}

TEST_CASE("reduction paths over partition tensors") {
  const TensorNetwork net = network_from_edges(2, {{0, 1, 2}});
  const std::vector<LegSet> one{{}};
  CHECK(reduction_path(net, one, {}).num_nodes() == 1);
  const std::vector<LegSet> two{{0}, {0}};
  const ContractionTree t = reduction_path(net, two, {});
  CHECK(t.num_nodes() == 3);
  CHECK(t.legs(t.root()).empty());
  CHECK(contraction_ops(t, t.root()) == 2.0);
}
