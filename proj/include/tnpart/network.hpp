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

#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace tnpart {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;
using Dim = std::int64_t;
using cplx = std::complex<double>;

/// Marker for the unbound end of an open edge.
inline constexpr VertexId kOpen = -1;

/// Sorted, duplicate-free list of edge ids. Used for the legs of (intermediate)
/// tensors throughout the planner.
using LegSet = std::vector<EdgeId>;

LegSet leg_union(const LegSet& a, const LegSet& b);
LegSet leg_symmetric_difference(const LegSet& a, const LegSet& b);
LegSet leg_intersection(const LegSet& a, const LegSet& b);

struct Endpoint {
  VertexId vertex = kOpen;
  int axis = 0;

  bool operator==(const Endpoint&) const = default;
};

/// A pairwise edge. `second` is kOpen for unbound legs; `first` is always bound.
struct Edge {
  Endpoint first;
  Endpoint second;
  Dim dim = 1;
  bool alive = true;

  bool is_open() const { return second.vertex == kOpen; }
  bool is_self_loop() const { return !is_open() && first.vertex == second.vertex; }
};

/// Tensor network G = (V, E) with strictly pairwise edges and optional dense
/// payloads. Vertex and edge ids are dense from 0; edge ids retired by `bond`
/// are never handed out again.
class TensorNetwork {
 public:
  TensorNetwork() = default;

  /// Adds a tensor whose axes all start as open edges. Payload is row-major
  /// over the axis order and must hold exactly product(dims) entries.
  VertexId add_tensor(std::vector<Dim> dims, std::optional<std::vector<cplx>> payload = std::nullopt);

  /// Joins two open axes into one bound edge. u == v with a != b gives a trace edge.
  EdgeId bond(VertexId u, int a, VertexId v, int b);

  void set_payload(VertexId v, std::vector<cplx> payload);

  std::size_t num_vertices() const { return vertices_.size(); }
  /// Upper bound (exclusive) on edge ids, including retired ones.
  std::size_t edge_capacity() const { return edges_.size(); }

  int degree(VertexId v) const;
  const std::vector<Dim>& dims(VertexId v) const;
  EdgeId axis_edge(VertexId v, int axis) const;
  const Edge& edge(EdgeId e) const;
  Dim dim(EdgeId e) const { return edge(e).dim; }
  const std::optional<std::vector<cplx>>& payload(VertexId v) const;
  bool has_all_payloads() const;

  /// Distinct edges incident to w, sorted. A self-loop appears once.
  std::vector<EdgeId> edges_of(VertexId w) const;
  /// edges_of(w) without self-loops; the leg set of w as a contraction operand.
  LegSet legs_of(VertexId w) const;

  /// Product of the axis dims of w. Throws std::overflow_error past 2^63.
  std::int64_t tensor_size(VertexId w) const;
  double tensor_size_log2(VertexId w) const;

  std::vector<EdgeId> live_edges() const;
  std::vector<EdgeId> open_edges() const;
  std::vector<EdgeId> bound_edges() const;

  /// Other endpoint of a bound edge as seen from v; kOpen for open edges.
  VertexId neighbor(EdgeId e, VertexId v) const;

  /// Connected components of the bound-edge graph, each sorted, ordered by
  /// their smallest vertex.
  std::vector<std::vector<VertexId>> connected_components() const;
  bool is_connected() const;

  /// Product of dims over a leg set, as a double.
  double legs_size(std::span<const EdgeId> legs) const;
  double legs_size_log2(std::span<const EdgeId> legs) const;

  /// Throws std::logic_error if any structural invariant is broken.
  void check_invariants() const;

 private:
  struct Vertex {
    std::vector<Dim> dims;
    std::vector<EdgeId> axis_edges;
    std::optional<std::vector<cplx>> payload;
  };

  void check_vertex(VertexId v) const;

  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
};

/// Subnetwork induced by `vertices` (renumbered in the given order), with cut
/// edges turned into open legs. Returns the network and, per new vertex, the
/// original id.
struct InducedNetwork {
  TensorNetwork network;
  std::vector<VertexId> original;
};
InducedNetwork induced_subnetwork(const TensorNetwork& net, std::span<const VertexId> vertices);

// Network JSON: {"tensors":[{"id":0,"dims":[2,2],"data":null|[re,im,...]}],
//                "bonds":[{"u":0,"a":0,"v":1,"b":1}]}
nlohmann::json network_to_json(const TensorNetwork& net);
TensorNetwork network_from_json(const nlohmann::json& j);

}  // namespace tnpart
