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
#include "tnpart/network.hpp"

using namespace tnpart;
using namespace tnpart::testing;

TEST_CASE("add_tensor shapes and payload checks") {
  TensorNetwork net;
  const VertexId s = net.add_tensor({}, std::vector<cplx>{3.0});
  CHECK(net.tensor_size(s) == 1);
  CHECK(net.edges_of(s).empty());

  const VertexId m = net.add_tensor({2, 3});
  CHECK(net.degree(m) == 2);
  CHECK(net.edge(net.axis_edge(m, 0)).is_open());
  CHECK(net.dim(net.axis_edge(m, 0)) == 2);
  CHECK(net.dim(net.axis_edge(m, 1)) == 3);

  CHECK_THROWS_AS(net.add_tensor({2}, std::vector<cplx>(3)), std::invalid_argument);
}

TEST_CASE("bond joins matching open axes") {
  TensorNetwork net;
  const VertexId a = net.add_tensor({3, 2});
  const VertexId b = net.add_tensor({3, 3});
  const EdgeId e = net.bond(a, 0, b, 1);
  CHECK(net.dim(e) == 3);
  CHECK_FALSE(net.edge(e).is_open());
  CHECK(net.open_edges().size() == 2);

  SUBCASE("dim mismatch") { CHECK_THROWS_AS(net.bond(a, 1, b, 0), std::invalid_argument); }
  SUBCASE("axis already bound") { CHECK_THROWS_AS(net.bond(a, 0, b, 0), std::invalid_argument); }
  SUBCASE("same axis twice") { CHECK_THROWS_AS(net.bond(b, 0, b, 0), std::invalid_argument); }
  SUBCASE("self-loop on distinct axes") {
    TensorNetwork n2;
    const VertexId v = n2.add_tensor({2, 2, 5});
    const EdgeId loop = n2.bond(v, 0, v, 1);
    CHECK(n2.edge(loop).is_self_loop());
    CHECK(n2.edges_of(v).size() == 2);
    CHECK(n2.tensor_size(v) == 2 * 2 * 5);
    CHECK(n2.legs_of(v) == LegSet{n2.axis_edge(v, 2)});
    n2.check_invariants();
  }
}

TEST_CASE("tensor_size is the product of axis dims") {
  TensorNetwork net;
  CHECK(net.tensor_size(net.add_tensor({2, 3, 4})) == 24);
  CHECK(net.tensor_size(net.add_tensor({})) == 1);
  CHECK(net.tensor_size(net.add_tensor({5})) == 5);
}

TEST_CASE("edges_of counts one edge per axis") {
  TensorNetwork net;
  const VertexId a = net.add_tensor({2, 2});
  const VertexId b = net.add_tensor({2});
  net.bond(a, 1, b, 0);
  CHECK(net.edges_of(a).size() == 2);
  CHECK(net.edges_of(net.add_tensor({})).empty());
  CHECK_THROWS(net.edges_of(99));
}

TEST_CASE("random networks keep axis coverage and dim symmetry") {
  Rng64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const TensorNetwork net = random_network(rng, 2 + trial % 10, 4, trial % 2 == 0);
    net.check_invariants();
    for (EdgeId e : net.bound_edges()) {
      const Edge& ed = net.edge(e);
      CHECK(net.dims(ed.first.vertex)[ed.first.axis] == net.dims(ed.second.vertex)[ed.second.axis]);
    }
    for (std::size_t v = 0; v < net.num_vertices(); ++v) {
      std::int64_t prod = 1;
      for (int a = 0; a < net.degree(static_cast<VertexId>(v)); ++a) {
        prod *= net.dim(net.axis_edge(static_cast<VertexId>(v), a));
      }
      CHECK(net.tensor_size(static_cast<VertexId>(v)) == prod);
    }
    CHECK(net.is_connected());
  }
}

TEST_CASE("connectivity is detected") {
  TensorNetwork net;
  net.add_tensor({2});
  net.add_tensor({2});
  CHECK_FALSE(net.is_connected());
  CHECK(net.connected_components().size() == 2);
  net.bond(0, 0, 1, 0);
  CHECK(net.is_connected());
}

TEST_CASE("network JSON round trip") {
  Rng64 rng(3);
  const TensorNetwork net = random_network(rng, 6, 3, true);
  const auto j = network_to_json(net);
  const TensorNetwork back = network_from_json(j);
  CHECK(network_to_json(back) == j);
  CHECK(back.num_vertices() == net.num_vertices());
  for (std::size_t v = 0; v < net.num_vertices(); ++v) {
    CHECK(*back.payload(static_cast<VertexId>(v)) == *net.payload(static_cast<VertexId>(v)));
  }
  CHECK_THROWS(network_from_json(nlohmann::json::parse(R"({"tensors":[{"id":1,"dims":[2]}],"bonds":[]})")));
}

TEST_CASE("induced subnetwork turns cut edges into open legs") {
  const TensorNetwork ring = ring_network(5, 3);
  const std::vector<VertexId> part{1, 2, 3};
  const InducedNetwork sub = induced_subnetwork(ring, part);
  CHECK(sub.network.num_vertices() == 3);
  CHECK(sub.original == part);
  CHECK(sub.network.open_edges().size() == 2);
  CHECK(sub.network.bound_edges().size() == 2);
}
