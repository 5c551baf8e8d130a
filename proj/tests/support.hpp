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

// Shared builders and brute-force oracles for the test suites.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "tnpart/circuit.hpp"
#include "tnpart/contraction_tree.hpp"
#include "tnpart/network.hpp"

namespace tnpart::testing {

using Rng64 = std::mt19937_64;

inline std::vector<cplx> random_payload(Rng64& rng, std::size_t n) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<cplx> out(n);
  for (auto& z : out) z = {g(rng), g(rng)};
  return out;
}

struct EdgeSpec {
  int u, v;
  Dim dim;
};

// Builds a network from an explicit edge list; open legs use v = -1.
inline TensorNetwork network_from_edges(int n, const std::vector<EdgeSpec>& edges, Rng64* payload_rng = nullptr) {
  std::vector<std::vector<Dim>> dims(n);
  std::vector<std::pair<int, int>> axis(edges.size(), {-1, -1});
  for (std::size_t i = 0; i < edges.size(); ++i) {
    axis[i].first = static_cast<int>(dims[edges[i].u].size());
    dims[edges[i].u].push_back(edges[i].dim);
    if (edges[i].v >= 0) {
      axis[i].second = static_cast<int>(dims[edges[i].v].size());
      dims[edges[i].v].push_back(edges[i].dim);
    }
  }
  TensorNetwork net;
  for (int v = 0; v < n; ++v) {
    std::size_t size = 1;
    for (Dim d : dims[v]) size *= static_cast<std::size_t>(d);
    if (payload_rng) {
      net.add_tensor(dims[v], random_payload(*payload_rng, size));
    } else {
      net.add_tensor(dims[v]);
    }
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].v >= 0) net.bond(edges[i].u, axis[i].first, edges[i].v, axis[i].second);
  }
  return net;
}

// Connected random network: random spanning tree plus extra edges and a few open legs.
inline TensorNetwork random_network(Rng64& rng, int n, Dim max_dim, bool payloads, int extra = -1, int open = -1) {
  std::uniform_int_distribution<Dim> dim(2, max_dim);
  std::vector<EdgeSpec> edges;
  for (int v = 1; v < n; ++v) edges.push_back({static_cast<int>(rng() % v), v, dim(rng)});
  if (extra < 0) extra = static_cast<int>(rng() % (n + 1));
  for (int i = 0; i < extra && n > 1; ++i) {
    int a = static_cast<int>(rng() % n), b = static_cast<int>(rng() % n);
    if (a != b) edges.push_back({a, b, dim(rng)});
  }
  if (open < 0) open = static_cast<int>(rng() % 3);
  for (int i = 0; i < open; ++i) edges.push_back({static_cast<int>(rng() % n), -1, dim(rng)});
  std::shuffle(edges.begin(), edges.end(), rng);
  return network_from_edges(n, edges, payloads ? &rng : nullptr);
}

// Uniformly random join order over the given vertices.
inline ContractionTree random_tree(const TensorNetwork& net, Rng64& rng, std::vector<VertexId> verts = {}) {
  if (verts.empty()) {
    verts.resize(net.num_vertices());
    std::iota(verts.begin(), verts.end(), 0);
  }
  ContractionTree t = ContractionTree::leaves_for(net, verts);
  std::vector<TreeNodeId> alive(verts.size());
  std::iota(alive.begin(), alive.end(), 0);
  while (alive.size() > 1) {
    std::shuffle(alive.begin(), alive.end(), rng);
    const TreeNodeId a = alive.back();
    alive.pop_back();
    const TreeNodeId b = alive.back();
    alive.pop_back();
    alive.push_back(t.join(a, b));
  }
  return t;
}

// Full-network einsum by enumeration of every live edge value. The result is
// indexed by the open edges in ascending id order, row-major.
inline std::vector<cplx> einsum_oracle(const TensorNetwork& net) {
  const auto live = net.live_edges();
  std::map<EdgeId, std::size_t> slot;
  for (std::size_t i = 0; i < live.size(); ++i) slot[live[i]] = i;
  const auto open = net.open_edges();
  std::size_t out_size = 1;
  for (EdgeId e : open) out_size *= static_cast<std::size_t>(net.dim(e));
  std::vector<cplx> out(out_size);
  std::vector<Dim> val(live.size(), 0);
  while (true) {
    cplx prod{1.0, 0.0};
    for (std::size_t v = 0; v < net.num_vertices(); ++v) {
      const auto vid = static_cast<VertexId>(v);
      std::size_t flat = 0;
      for (int a = 0; a < net.degree(vid); ++a) flat = flat * net.dims(vid)[a] + val[slot[net.axis_edge(vid, a)]];
      prod *= (*net.payload(vid))[flat];
    }
    std::size_t o = 0;
    for (EdgeId e : open) o = o * net.dim(e) + val[slot[e]];
    out[o] += prod;
    bool done = true;
    for (std::size_t i = live.size(); i-- > 0;) {
      if (++val[i] < net.dim(live[i])) {
        done = false;
        break;
      }
      val[i] = 0;
    }
    if (done) return out;
  }
}

// Dense state-vector simulator; qubit 0 is the most significant bit of the index.
inline std::vector<cplx> simulate(const Circuit& c, const std::string& initial) {
  const int n = c.n_qubits;
  std::vector<cplx> psi(std::size_t{1} << n);
  std::size_t start = 0;
  for (int q = 0; q < n; ++q) start = start * 2 + (initial[q] == '1');
  psi[start] = 1.0;
  for (const Gate& g : c.gates) {
    const int k = static_cast<int>(g.targets.size());
    const std::size_t dim = std::size_t{1} << k;
    std::vector<cplx> next(psi.size());
    for (std::size_t idx = 0; idx < psi.size(); ++idx) {
      if (psi[idx] == cplx{}) continue;
      std::size_t col = 0;
      for (int t = 0; t < k; ++t) col = col * 2 + ((idx >> (n - 1 - g.targets[t])) & 1);
      for (std::size_t row = 0; row < dim; ++row) {
        std::size_t out = idx;
        for (int t = 0; t < k; ++t) {
          const std::size_t bit = (row >> (k - 1 - t)) & 1;
          const std::size_t mask = std::size_t{1} << (n - 1 - g.targets[t]);
          out = bit ? (out | mask) : (out & ~mask);
        }
        next[out] += g.matrix[row * dim + col] * psi[idx];
      }
    }
    psi = std::move(next);
  }
  return psi;
}

inline cplx simulate_amplitude(const Circuit& c, const std::string& bits, const std::string& initial) {
  const auto psi = simulate(c, initial);
  std::size_t idx = 0;
  for (char ch : bits) idx = idx * 2 + (ch == '1');
  return psi[idx];
}

// Closed ring of n tensors with uniform bond dimension.
inline TensorNetwork ring_network(int n, Dim dim) {
  std::vector<EdgeSpec> edges;
  for (int v = 0; v < n; ++v) edges.push_back({v, (v + 1) % n, dim});
  return network_from_edges(n, edges);
}

// Random d-regular multigraph-free network via rejection sampling of pairings.
inline TensorNetwork random_regular_network(Rng64& rng, int n, int d, Dim dim) {
  while (true) {
    std::vector<int> stubs;
    for (int v = 0; v < n; ++v) {
      for (int i = 0; i < d; ++i) stubs.push_back(v);
    }
    std::shuffle(stubs.begin(), stubs.end(), rng);
    std::vector<EdgeSpec> edges;
    bool ok = true;
    for (std::size_t i = 0; i + 1 < stubs.size() && ok; i += 2) {
      const int a = std::min(stubs[i], stubs[i + 1]), b = std::max(stubs[i], stubs[i + 1]);
      ok = a != b && std::none_of(edges.begin(), edges.end(), [&](const EdgeSpec& e) { return e.u == a && e.v == b; });
      edges.push_back({a, b, dim});
    }
    if (!ok) continue;
    TensorNetwork net = network_from_edges(n, edges);
    if (net.is_connected()) return net;
  }
}

}  // namespace tnpart::testing
