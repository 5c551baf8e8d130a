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

#include "tnpart/network.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace tnpart {

LegSet leg_union(const LegSet& a, const LegSet& b) {
  LegSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

LegSet leg_symmetric_difference(const LegSet& a, const LegSet& b) {
  LegSet out;
  out.reserve(a.size() + b.size());
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

LegSet leg_intersection(const LegSet& a, const LegSet& b) {
  LegSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

namespace {

std::int64_t checked_product(const std::vector<Dim>& dims) {
  std::int64_t size = 1;
  for (Dim d : dims) {
    if (d > std::numeric_limits<std::int64_t>::max() / size) {
      throw std::overflow_error("tensor size exceeds 64-bit range");
    }
    size *= d;
  }
  return size;
}

}  // namespace

VertexId TensorNetwork::add_tensor(std::vector<Dim> dims, std::optional<std::vector<cplx>> payload) {
  for (Dim d : dims) {
    if (d < 1) throw std::invalid_argument("tensor dims must be >= 1");
  }
  if (payload && static_cast<std::int64_t>(payload->size()) != checked_product(dims)) {
    throw std::invalid_argument("payload length " + std::to_string(payload->size()) +
                                " does not match tensor size " + std::to_string(checked_product(dims)));
  }
  const auto v = static_cast<VertexId>(vertices_.size());
  Vertex vert;
  vert.axis_edges.reserve(dims.size());
  for (std::size_t a = 0; a < dims.size(); ++a) {
    vert.axis_edges.push_back(static_cast<EdgeId>(edges_.size()));
    edges_.push_back(Edge{{v, static_cast<int>(a)}, {kOpen, 0}, dims[a], true});
  }
  vert.dims = std::move(dims);
  vert.payload = std::move(payload);
  vertices_.push_back(std::move(vert));
  return v;
}

EdgeId TensorNetwork::bond(VertexId u, int a, VertexId v, int b) {
  check_vertex(u);
  check_vertex(v);
  if (a < 0 || a >= degree(u) || b < 0 || b >= degree(v)) {
    throw std::out_of_range("axis index out of range");
  }
  if (u == v && a == b) throw std::invalid_argument("cannot bond an axis to itself");
  const EdgeId eu = vertices_[u].axis_edges[a];
  const EdgeId ev = vertices_[v].axis_edges[b];
  if (!edges_[eu].is_open() || !edges_[ev].is_open()) {
    throw std::invalid_argument("axis already bound");
  }
  if (edges_[eu].dim != edges_[ev].dim) {
    throw std::invalid_argument("dimension mismatch: " + std::to_string(edges_[eu].dim) + " vs " +
                                std::to_string(edges_[ev].dim));
  }
  edges_[eu].alive = false;
  edges_[ev].alive = false;
  const auto e = static_cast<EdgeId>(edges_.size());
  edges_.push_back(Edge{{u, a}, {v, b}, edges_[eu].dim, true});
  vertices_[u].axis_edges[a] = e;
  vertices_[v].axis_edges[b] = e;
  return e;
}

void TensorNetwork::set_payload(VertexId v, std::vector<cplx> payload) {
  check_vertex(v);
  if (static_cast<std::int64_t>(payload.size()) != checked_product(vertices_[v].dims)) {
    throw std::invalid_argument("payload length does not match tensor size");
  }
  vertices_[v].payload = std::move(payload);
}

void TensorNetwork::check_vertex(VertexId v) const {
  if (v < 0 || static_cast<std::size_t>(v) >= vertices_.size()) {
    throw std::out_of_range("unknown vertex " + std::to_string(v));
  }
}

int TensorNetwork::degree(VertexId v) const {
  check_vertex(v);
  return static_cast<int>(vertices_[v].dims.size());
}

const std::vector<Dim>& TensorNetwork::dims(VertexId v) const {
  check_vertex(v);
  return vertices_[v].dims;
}

EdgeId TensorNetwork::axis_edge(VertexId v, int axis) const {
  check_vertex(v);
  return vertices_[v].axis_edges.at(axis);
}

const Edge& TensorNetwork::edge(EdgeId e) const {
  if (e < 0 || static_cast<std::size_t>(e) >= edges_.size() || !edges_[e].alive) {
    throw std::out_of_range("unknown edge " + std::to_string(e));
  }
  return edges_[e];
}

const std::optional<std::vector<cplx>>& TensorNetwork::payload(VertexId v) const {
  check_vertex(v);
  return vertices_[v].payload;
}

bool TensorNetwork::has_all_payloads() const {
  return std::all_of(vertices_.begin(), vertices_.end(), [](const Vertex& v) { return v.payload.has_value(); });
}

std::vector<EdgeId> TensorNetwork::edges_of(VertexId w) const {
  check_vertex(w);
  std::vector<EdgeId> out = vertices_[w].axis_edges;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

LegSet TensorNetwork::legs_of(VertexId w) const {
  LegSet out = edges_of(w);
  std::erase_if(out, [&](EdgeId e) { return edges_[e].is_self_loop(); });
  return out;
}

std::int64_t TensorNetwork::tensor_size(VertexId w) const {
  check_vertex(w);
  return checked_product(vertices_[w].dims);
}

double TensorNetwork::tensor_size_log2(VertexId w) const {
  check_vertex(w);
  double s = 0.0;
  for (Dim d : vertices_[w].dims) s += std::log2(static_cast<double>(d));
  return s;
}

std::vector<EdgeId> TensorNetwork::live_edges() const {
  std::vector<EdgeId> out;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (edges_[e].alive) out.push_back(static_cast<EdgeId>(e));
  }
  return out;
}

std::vector<EdgeId> TensorNetwork::open_edges() const {
  std::vector<EdgeId> out;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (edges_[e].alive && edges_[e].is_open()) out.push_back(static_cast<EdgeId>(e));
  }
  return out;
}

std::vector<EdgeId> TensorNetwork::bound_edges() const {
  std::vector<EdgeId> out;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (edges_[e].alive && !edges_[e].is_open()) out.push_back(static_cast<EdgeId>(e));
  }
  return out;
}

VertexId TensorNetwork::neighbor(EdgeId e, VertexId v) const {
  const Edge& ed = edge(e);
  if (ed.is_open()) return kOpen;
  if (ed.first.vertex == v) return ed.second.vertex;
  if (ed.second.vertex == v) return ed.first.vertex;
  throw std::invalid_argument("edge is not incident to vertex");
}

std::vector<std::vector<VertexId>> TensorNetwork::connected_components() const {
  const auto n = static_cast<VertexId>(vertices_.size());
  std::vector<int> comp(n, -1);
  std::vector<std::vector<VertexId>> out;
  for (VertexId s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    const int c = static_cast<int>(out.size());
    out.emplace_back();
    std::queue<VertexId> q;
    q.push(s);
    comp[s] = c;
    while (!q.empty()) {
      const VertexId u = q.front();
      q.pop();
      out.back().push_back(u);
      for (EdgeId e : vertices_[u].axis_edges) {
        const Edge& ed = edges_[e];
        if (ed.is_open()) continue;
        const VertexId w = ed.first.vertex == u ? ed.second.vertex : ed.first.vertex;
        if (comp[w] < 0) {
          comp[w] = c;
          q.push(w);
        }
      }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

bool TensorNetwork::is_connected() const { return connected_components().size() <= 1; }

double TensorNetwork::legs_size(std::span<const EdgeId> legs) const {
  double s = 1.0;
  for (EdgeId e : legs) s *= static_cast<double>(edges_[e].dim);
  return s;
}

double TensorNetwork::legs_size_log2(std::span<const EdgeId> legs) const {
  double s = 0.0;
  for (EdgeId e : legs) s += std::log2(static_cast<double>(edges_[e].dim));
  return s;
}

void TensorNetwork::check_invariants() const {
  std::vector<int> seen(edges_.size(), 0);
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    const Vertex& vert = vertices_[v];
    if (vert.axis_edges.size() != vert.dims.size()) throw std::logic_error("axis/edge count mismatch");
    for (std::size_t a = 0; a < vert.dims.size(); ++a) {
      const EdgeId e = vert.axis_edges[a];
      const Edge& ed = edges_.at(e);
      if (!ed.alive) throw std::logic_error("axis references retired edge");
      const Endpoint here{static_cast<VertexId>(v), static_cast<int>(a)};
      if (!(ed.first == here) && !(ed.second == here)) throw std::logic_error("edge does not cover its axis");
      if (ed.dim != vert.dims[a]) throw std::logic_error("edge dim disagrees with axis dim");
      ++seen[e];
    }
    if (vert.payload && static_cast<std::int64_t>(vert.payload->size()) != checked_product(vert.dims)) {
      throw std::logic_error("payload size mismatch");
    }
  }
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (!edges_[e].alive) continue;
    const int want = edges_[e].is_open() ? 1 : 2;
    if (seen[e] != want) throw std::logic_error("edge " + std::to_string(e) + " covers the wrong number of axes");
  }
}

InducedNetwork induced_subnetwork(const TensorNetwork& net, std::span<const VertexId> vertices) {
  InducedNetwork out;
  std::vector<VertexId> remap(net.num_vertices(), kOpen);
  for (VertexId v : vertices) {
    remap.at(v) = out.network.add_tensor(net.dims(v), net.payload(v));
    out.original.push_back(v);
  }
  for (EdgeId e : net.bound_edges()) {
    const Edge& ed = net.edge(e);
    const VertexId u = remap[ed.first.vertex];
    const VertexId w = remap[ed.second.vertex];
    if (u != kOpen && w != kOpen) out.network.bond(u, ed.first.axis, w, ed.second.axis);
  }
  return out;
}

nlohmann::json network_to_json(const TensorNetwork& net) {
  nlohmann::json tensors = nlohmann::json::array();
  for (std::size_t v = 0; v < net.num_vertices(); ++v) {
    const auto vid = static_cast<VertexId>(v);
    nlohmann::json t;
    t["id"] = v;
    t["dims"] = net.dims(vid);
    if (const auto& p = net.payload(vid)) {
      std::vector<double> flat;
      flat.reserve(2 * p->size());
      for (const cplx& z : *p) {
        flat.push_back(z.real());
        flat.push_back(z.imag());
      }
      t["data"] = flat;
    } else {
      t["data"] = nullptr;
    }
    tensors.push_back(std::move(t));
  }
  nlohmann::json bonds = nlohmann::json::array();
  for (EdgeId e : net.bound_edges()) {
    const Edge& ed = net.edge(e);
    bonds.push_back({{"u", ed.first.vertex}, {"a", ed.first.axis}, {"v", ed.second.vertex}, {"b", ed.second.axis}});
  }
  return {{"tensors", std::move(tensors)}, {"bonds", std::move(bonds)}};
}

TensorNetwork network_from_json(const nlohmann::json& j) {
  const auto& tensors = j.at("tensors");
  std::vector<const nlohmann::json*> by_id(tensors.size(), nullptr);
  for (const auto& t : tensors) {
    const auto id = t.at("id").get<std::int64_t>();
    if (id < 0 || static_cast<std::size_t>(id) >= tensors.size() || by_id[id] != nullptr) {
      throw std::invalid_argument("tensor ids must be unique and dense from 0");
    }
    by_id[id] = &t;
  }
  TensorNetwork net;
  for (const nlohmann::json* t : by_id) {
    auto dims = t->at("dims").get<std::vector<Dim>>();
    std::optional<std::vector<cplx>> payload;
    if (t->contains("data") && !t->at("data").is_null()) {
      const auto flat = t->at("data").get<std::vector<double>>();
      if (flat.size() % 2 != 0) throw std::invalid_argument("complex data must be interleaved re/im pairs");
      std::vector<cplx> p(flat.size() / 2);
      for (std::size_t i = 0; i < p.size(); ++i) p[i] = {flat[2 * i], flat[2 * i + 1]};
      payload = std::move(p);
    }
    net.add_tensor(std::move(dims), std::move(payload));
  }
  if (j.contains("bonds")) {
    for (const auto& b : j.at("bonds")) {
      net.bond(b.at("u").get<VertexId>(), b.at("a").get<int>(), b.at("v").get<VertexId>(), b.at("b").get<int>());
    }
  }
  return net;
}

}  // namespace tnpart
