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
#include "tnpart/partitioner.hpp"

using namespace tnpart;
using namespace tnpart::testing;

namespace {

using Pairs = std::vector<std::pair<TreeNodeId, TreeNodeId>>;

// Matrix chain (2x3)(3x4)(4x5) with open outer legs.
TensorNetwork matrix_chain() { return network_from_edges(3, {{0, -1, 2}, {0, 1, 3}, {1, 2, 4}, {2, -1, 5}}); }

// Oracle: max over leaves of the summed ops strictly above the leaf.
double con_par_oracle(const ContractionTree& t) {
  double best = 0.0;
  for (TreeNodeId v = 0; v < static_cast<TreeNodeId>(t.num_nodes()); ++v) {
    if (!t.is_leaf(v)) continue;
    double sum = 0.0;
    for (TreeNodeId u = t.parent(v); u != kNoNode; u = t.parent(u)) sum += contraction_ops(t, u);
    best = std::max(best, sum);
  }
  return best;
}

}  // namespace

TEST_CASE("vertex congestion examples") {
  TensorNetwork mm = network_from_edges(2, {{0, -1, 2}, {0, 1, 3}, {1, -1, 4}});
  const auto t = ContractionTree::build_from_pair_sequence(mm, Pairs{{0, 1}});
  CHECK(vertex_congestion(t, t.root()) == doctest::Approx(std::log2(24.0)));
  CHECK(contraction_ops(t, t.root()) == 24.0);
  CHECK_THROWS(vertex_congestion(t, 0));

  TensorNetwork outer = network_from_edges(2, {{0, -1, 2}, {1, -1, 5}});
  CHECK(contraction_ops(ContractionTree::build_from_pair_sequence(outer, Pairs{{0, 1}}), 2) == 10.0);

  TensorNetwork inner = network_from_edges(2, {{0, 1, 7}});
  CHECK(contraction_ops(ContractionTree::build_from_pair_sequence(inner, Pairs{{0, 1}}), 2) == 7.0);
}

TEST_CASE("mem_cost examples") {
  TensorNetwork mm = network_from_edges(2, {{0, -1, 2}, {0, 1, 3}, {1, -1, 4}});
  CHECK(mem_cost(ContractionTree::build_from_pair_sequence(mm, Pairs{{0, 1}})) == 26.0);

  TensorNetwork scalars;
  scalars.add_tensor({});
  scalars.add_tensor({});
  CHECK(mem_cost(ContractionTree::build_from_pair_sequence(scalars, Pairs{{0, 1}})) == 3.0);

  TensorNetwork one;
  one.add_tensor({2, 3});
  const auto leaf = ContractionTree::leaves_for_all(one);
  CHECK(mem_cost(leaf) == 6.0);
  CHECK(con_serial(leaf) == 0.0);
  CHECK(con_par(leaf) == 0.0);
}

TEST_CASE("con_serial depends on the order") {
  const TensorNetwork net = matrix_chain();
  CHECK(con_serial(ContractionTree::build_from_pair_sequence(net, Pairs{{0, 1}, {3, 2}})) == 64.0);
  CHECK(con_serial(ContractionTree::build_from_pair_sequence(net, Pairs{{1, 2}, {0, 3}})) == 90.0);
}

TEST_CASE("con_par takes the critical path") {
  // A(2x3) B(3x4) -> 24; C(4x2) D(2x5) -> 40; root (2x4)(4x5) -> 40.
  const TensorNetwork net = network_from_edges(4, {{0, -1, 2}, {0, 1, 3}, {1, 2, 4}, {2, 3, 2}, {3, -1, 5}});
  const auto t = ContractionTree::build_from_pair_sequence(net, Pairs{{0, 1}, {2, 3}, {4, 5}});
  CHECK(contraction_ops(t, 4) == 24.0);
  CHECK(contraction_ops(t, 5) == 40.0);
  CHECK(contraction_ops(t, 6) == 40.0);
  CHECK(con_par(t) == 80.0);
  CHECK(con_serial(t) == 104.0);

  const TensorNetwork chain = matrix_chain();
  const auto cat = ContractionTree::build_from_pair_sequence(chain, Pairs{{0, 1}, {3, 2}});
  CHECK(con_par(cat) == con_serial(cat));
}

TEST_CASE("comm_cost examples") {
  const TensorNetwork net = network_from_edges(3, {{0, -1, 2}, {0, -1, 8}, {0, 1, 4}, {1, -1, 16}, {1, 2, 2}, {2, -1, 1}});
  const auto t = ContractionTree::leaves_for_all(net);
  CHECK(comm_cost(t, 0, {}) == 0.0);
  TensorNetwork v;
  v.add_tensor({2, 8});
  CHECK(comm_cost(ContractionTree::leaves_for_all(v), 0, {0.0, 1.0}) == 16.0);
  // Children of sizes 16 and 64 with beta = 1: the smaller transfer is charged.
  TensorNetwork two = network_from_edges(2, {{0, -1, 16}, {1, -1, 64}});
  const auto j = ContractionTree::build_from_pair_sequence(two, Pairs{{0, 1}});
  CHECK(fan_in_cost(j, 0, {0.0, 1.0}) == contraction_ops(j, 2) + 16.0);
  CHECK(fan_in_cost(j, 1, {0.0, 1.0}) == contraction_ops(j, 2) + 16.0);
}

TEST_CASE("con_dist examples") {
  // 4-tensor network, all dims 2, split into two halves.
  const TensorNetwork net = network_from_edges(4, {{0, 1, 2}, {0, 2, 2}, {1, 3, 2}, {2, 3, 2}, {0, -1, 2}, {3, -1, 2}});
  const auto t = ContractionTree::build_from_pair_sequence(net, Pairs{{0, 1}, {2, 3}, {4, 5}});
  const Partitioning all{{{0, 1, 2, 3}}};
  CHECK(con_dist(t, all) == con_serial(t));
  const Partitioning halves{{{0, 1}, {2, 3}}};
  const double l1 = contraction_ops(t, 4), l2 = contraction_ops(t, 5), r = contraction_ops(t, 6);
  CHECK(con_dist(t, halves) == std::max(l1, l2) + r);
  const Partitioning singles{{{0}, {1}, {2}, {3}}};
  CHECK(con_dist(t, singles) == con_par(t));
  const Partitioning mixed{{{0, 2}, {1, 3}}};
  CHECK_THROWS_AS(con_dist(t, mixed), std::invalid_argument);
}

TEST_CASE("metric properties on random trees") {
  Rng64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const TensorNetwork net = random_network(rng, 2 + trial % 11, 4, false);
    ContractionTree t = random_tree(net, rng);
    const double serial = con_serial(t), par = con_par(t), mem = mem_cost(t);
    CHECK(par <= serial);
    CHECK(par == con_par_oracle(t));
    CHECK(mem >= 3.0);

    Partitioning one{{{}}};
    for (std::size_t v = 0; v < net.num_vertices(); ++v) one.blocks[0].push_back(static_cast<VertexId>(v));
    Partitioning singles;
    for (std::size_t v = 0; v < net.num_vertices(); ++v) singles.blocks.push_back({static_cast<VertexId>(v)});
    CHECK(con_dist(t, one) == serial);
    CHECK(con_dist(t, singles) == par);
    CHECK(con_dist(t, singles, IntraNode::Serial, {0.0, 1.0}) >= con_dist(t, singles, IntraNode::Serial, {0.0, 0.5}));

    for (TreeNodeId v = 0; v < static_cast<TreeNodeId>(t.num_nodes()); ++v) {
      if (!t.is_leaf(v) && (rng() & 1)) t.swap_children(v);
    }
    CHECK(con_serial(t) == doctest::Approx(serial).epsilon(1e-12));
    CHECK(con_par(t) == par);
    CHECK(mem_cost(t) == mem);
  }
}

TEST_CASE("cost report carries log2 values and saturates") {
  const TensorNetwork net = matrix_chain();
  const auto t = ContractionTree::build_from_pair_sequence(net, Pairs{{0, 1}, {3, 2}});
  const CostReport r = cost_report(t, {}, {});
  CHECK(r.con_serial == 64.0);
  CHECK(r.log2_con_serial == doctest::Approx(6.0));
  CHECK(r.con_dist == 64.0);
  CHECK_FALSE(r.saturated);
  const auto j = cost_report_to_json(r);
  const CostReport back = cost_report_from_json(j);
  CHECK(back.con_serial == r.con_serial);
  CHECK(back.mem == r.mem);

  CostReport big = r;
  big.con_serial = 0x1p310;
  saturate(big);
  CHECK(big.saturated);
  CHECK(big.con_serial == kCostSaturation);
}
