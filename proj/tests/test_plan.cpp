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
#include "tnpart/plan.hpp"

using namespace tnpart;
using namespace tnpart::testing;

TEST_CASE("plan costs agree with the composed tree") {
  Rng64 rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const TensorNetwork net = random_network(rng, 6 + trial % 12, 4, false);
    const int k = 1 + trial % 4;
    PlanOptions opts;
    opts.cost.intra = trial % 2 ? IntraNode::Par : IntraNode::Serial;
    opts.cost.comm = {trial % 3 == 0 ? 1.0 : 0.0, trial % 3 == 1 ? 0.5 : 0.0};
    const Plan plan(net, initial_partition(net, k, 0.03, trial, nullptr), opts);
    plan.check_invariants();
    const auto composed = plan.compose();
    CHECK(composed.tree.accepts_partitioning(plan.partitioning()));
    CHECK(composed.tree.legs(composed.tree.root()) == net.open_edges());
  }
}

TEST_CASE("serial plan reports con_dist = con_serial") {
  Rng64 rng(3);
  const TensorNetwork net = random_network(rng, 10, 3, false);
  const Plan p = serial_plan(net, {});
  CHECK(p.num_partitions() == 1);
  CHECK(p.report().con_dist == p.report().con_serial);
}

TEST_CASE("move_vertices keeps the plan coherent") {
  Rng64 rng(5);
  const TensorNetwork net = random_network(rng, 12, 3, false);
  Plan p(net, initial_partition(net, 3, 0.03, 1, nullptr), {});
  const VertexId v = p.partitioning().blocks[0].front();
  p.move_vertices(0, 2, {v});
  p.check_invariants();
  CHECK(std::count(p.partitioning().blocks[2].begin(), p.partitioning().blocks[2].end(), v) == 1);
  CHECK_THROWS_AS(p.move_vertices(0, 1, {v}), std::invalid_argument);
  CHECK_THROWS_AS(p.move_vertices(0, 1, p.partitioning().blocks[0]), std::invalid_argument);
}

TEST_CASE("disconnected networks are rejected") {
  const TensorNetwork net = network_from_edges(4, {{0, 1, 2}, {2, 3, 2}});
  CHECK_THROWS_AS(serial_plan(net, {}), std::invalid_argument);
}

TEST_CASE("plan JSON round trip") {
  Rng64 rng(8);
  const TensorNetwork net = random_network(rng, 9, 3, false);
  const Plan p(net, initial_partition(net, 3, 0.03, 2, nullptr), {});
  const auto j = plan_to_json(p);
  const Plan back = plan_from_json(net, j, {});
  CHECK(plan_to_json(back) == j);
  back.check_invariants();
  nlohmann::json only_k{{"partitioning", j["partitioning"]}};
  CHECK(plan_from_json(net, only_k, {}).report().con_dist == p.report().con_dist);
}
