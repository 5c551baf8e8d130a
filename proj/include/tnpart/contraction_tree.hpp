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

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tnpart/network.hpp"

namespace tnpart {

struct Partitioning;

using TreeNodeId = std::int32_t;
inline constexpr TreeNodeId kNoNode = -1;

/// Rooted binary contraction tree.
///
/// Leaves carry an integer label and a leg set. For trees over a network the
/// label is the VertexId and the legs are the vertex's edges; for reduction
/// trees the label is a partition index and the legs are that partition's
/// result tensor. Internal nodes are built bottom-up with join().
///
/// Legs of internal nodes are the symmetric difference of the children's legs,
/// computed lazily and cached. Nodes are immutable once joined (swap_children
/// does not change any leg set), so the cache never goes stale. The tree keeps
/// a non-owning pointer to the network for edge dims; the network must outlive
/// the tree.
class ContractionTree {
 public:
  ContractionTree() = default;
  explicit ContractionTree(const TensorNetwork& net) : net_(&net) {}

  /// Tree with one leaf per vertex of `net` (labels = vertex ids, in order).
  static ContractionTree leaves_for(const TensorNetwork& net, std::span<const VertexId> vertices);
  static ContractionTree leaves_for_all(const TensorNetwork& net);

  /// Leaves are nodes 0..n-1 for net's vertices in order; each pair joins two
  /// live nodes and the result receives the next id (n, n+1, ...).
  static ContractionTree build_from_pair_sequence(const TensorNetwork& net,
                                                  std::span<const std::pair<TreeNodeId, TreeNodeId>> pairs);

  TreeNodeId add_leaf(std::int64_t label, LegSet legs);
  TreeNodeId add_vertex_leaf(VertexId v);
  TreeNodeId join(TreeNodeId a, TreeNodeId b);

  const TensorNetwork& network() const { return *net_; }
  std::size_t num_nodes() const { return nodes_.size(); }
  std::size_t num_leaves() const { return num_leaves_; }

  /// The unique parentless node. Throws std::logic_error if the tree is not
  /// yet joined into one component.
  TreeNodeId root() const;
  bool is_complete() const;

  bool is_leaf(TreeNodeId t) const;
  TreeNodeId parent(TreeNodeId t) const;
  std::pair<TreeNodeId, TreeNodeId> children(TreeNodeId t) const;
  std::int64_t leaf_label(TreeNodeId t) const;
  /// Leaf node carrying `label`, or kNoNode.
  TreeNodeId leaf_for(std::int64_t label) const;

  const LegSet& legs(TreeNodeId t) const;
  /// Recomputes legs from the leaves without touching the cache.
  LegSet legs_uncached(TreeNodeId t) const;
  /// Union of the children's legs of an internal node.
  LegSet contracted_edges(TreeNodeId t) const;
  double size(TreeNodeId t) const { return net_->legs_size(legs(t)); }

  /// Inclusive path between two nodes.
  std::vector<TreeNodeId> shortest_path(TreeNodeId u, TreeNodeId v) const;

  /// Internal nodes of the subtree at t in post-order (children before parent,
  /// first child first).
  std::vector<TreeNodeId> internal_post_order(TreeNodeId t) const;
  std::vector<TreeNodeId> subtree_nodes(TreeNodeId t) const;
  /// Leaf labels under t, sorted.
  std::vector<std::int64_t> subtree_leaf_labels(TreeNodeId t) const;
  std::vector<VertexId> subtree_leaf_tensors(TreeNodeId t) const;

  /// Subtree roots, one per block in block order, if every block is exactly
  /// the leaf set of some subtree.
  std::optional<std::vector<TreeNodeId>> partition_roots(const Partitioning& k) const;
  bool accepts_partitioning(const Partitioning& k) const { return partition_roots(k).has_value(); }

  /// Child order carries no meaning; swapping leaves every leg set unchanged.
  void swap_children(TreeNodeId t);
  /// Copies the subtree of `src` rooted at t into this tree as a new
  /// parentless component, preserving child order. Returns the new root id.
  TreeNodeId append_copy(const ContractionTree& src, TreeNodeId t);

  /// Throws std::logic_error on any broken structural invariant.
  void check_invariants() const;

  /// Nested array form: leaf = label, internal = [left, right].
  nlohmann::json to_json() const;
  nlohmann::json to_json(TreeNodeId t) const;
  static ContractionTree from_json(const TensorNetwork& net, const nlohmann::json& j);
  /// Nested form whose leaves refer to `leaf_legs` by index.
  static ContractionTree from_json(const TensorNetwork& net, const nlohmann::json& j, std::span<const LegSet> leaf_legs);

 private:
  struct Node {
    TreeNodeId parent = kNoNode;
    TreeNodeId left = kNoNode;
    TreeNodeId right = kNoNode;
    std::int64_t label = -1;
  };

  void check_node(TreeNodeId t) const;
  void compute_legs(TreeNodeId t) const;

  const TensorNetwork* net_ = nullptr;
  std::vector<Node> nodes_;
  mutable std::vector<LegSet> legs_;
  mutable std::vector<char> legs_valid_;
  std::vector<TreeNodeId> leaf_by_label_;
  std::size_t num_leaves_ = 0;
  std::size_t num_roots_ = 0;
  TreeNodeId root_ = kNoNode;
};

}  // namespace tnpart
