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

#include "tnpart/corpus.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "tnpart/rng.hpp"

namespace tnpart {

namespace {

Gate make_gate(std::string name, std::vector<int> targets, std::vector<double> params = {}) {
  Gate g{std::move(name), std::move(targets), std::move(params), {}};
  g.matrix = named_gate_matrix(g.name, g.params);
  return g;
}

void require_qubits(int n) {
  if (n < 1) throw std::invalid_argument("circuit needs at least one qubit");
}

}  // namespace

Circuit ghz_circuit(int n) {
  require_qubits(n);
  Circuit c{n, {}};
  c.gates.push_back(make_gate("H", {0}));
  for (int q = 0; q + 1 < n; ++q) c.gates.push_back(make_gate("CX", {q, q + 1}));
  return c;
}

Circuit graph_state_circuit(int n, const std::vector<std::pair<int, int>>& edges) {
  require_qubits(n);
  Circuit c{n, {}};
  for (int q = 0; q < n; ++q) c.gates.push_back(make_gate("H", {q}));
  for (const auto& [a, b] : edges) c.gates.push_back(make_gate("CZ", {a, b}));
  return c;
}

Circuit random_graph_state_circuit(int n, int extra, std::uint64_t seed) {
  require_qubits(n);
  std::vector<std::pair<int, int>> edges;
  for (int q = 0; q < n && n > 1; ++q) {
    const int r = (q + 1) % n;
    if (n > 2 || q == 0) edges.emplace_back(std::min(q, r), std::max(q, r));
  }
  Rng rng(seed);
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (int added = 0, tries = 0; added < extra && tries < 100 * (extra + 1); ++tries) {
    int a = pick(rng), b = pick(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (std::find(edges.begin(), edges.end(), std::pair{a, b}) != edges.end()) continue;
    edges.emplace_back(a, b);
    ++added;
  }
  return graph_state_circuit(n, edges);
}

Circuit qft_circuit(int n) {
  require_qubits(n);
  Circuit c{n, {}};
  for (int q = 0; q < n; ++q) {
    c.gates.push_back(make_gate("H", {q}));
    for (int r = q + 1; r < n; ++r) {
      c.gates.push_back(make_gate("CP", {r, q}, {std::numbers::pi / static_cast<double>(1 << (r - q))}));
    }
  }
  return c;
}

Circuit random_circuit(int n, int depth, std::uint64_t seed) {
  require_qubits(n);
  Circuit c{n, {}};
  Rng rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_int_distribution<int> kind(0, 2);
  static const char* kRot[] = {"RX", "RY", "RZ"};
  std::vector<int> order(n);
  for (int layer = 0; layer < depth; ++layer) {
    for (int q = 0; q < n; ++q) c.gates.push_back(make_gate(kRot[kind(rng)], {q}, {angle(rng)}));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (int i = 0; i + 1 < n; i += 2) {
      c.gates.push_back(make_gate(layer % 2 == 0 ? "CX" : "CZ", {order[i], order[i + 1]}));
    }
  }
  return c;
}

std::vector<NamedCircuit> desk_suite() {
  return {
      {"ghz_8", ghz_circuit(8)},
      {"ghz_12", ghz_circuit(12)},
      {"graph_ring_8", random_graph_state_circuit(8, 0, 1)},
      {"graph_rand_10", random_graph_state_circuit(10, 6, 2)},
      {"graph_rand_12", random_graph_state_circuit(12, 8, 3)},
      {"qft_8", qft_circuit(8)},
      {"qft_10", qft_circuit(10)},
      {"random_6_d12", random_circuit(6, 12, 11)},
      {"random_8_d10", random_circuit(8, 10, 12)},
      {"random_10_d10", random_circuit(10, 10, 13)},
      {"random_12_d8", random_circuit(12, 8, 14)},
  };
}

}  // namespace tnpart
