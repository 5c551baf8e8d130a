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

#include "tnpart/contraction_tree.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "tnpart/partitioner.hpp"

namespace tnpart {

ContractionTree ContractionTree::leaves_for(const TensorNetwork& net, std::span<const VertexId> vertices) {
  ContractionTree tree(net);
  for (VertexId v : vertices) tree.add_vertex_leaf(v);
  return tree;
}

ContractionTree ContractionTree::leaves_for_all(const TensorNetwork& net) {
  ContractionTree tree(net);
  for (std::size_t v = 0; v < net.num_vertices(); ++v) tree.add_vertex_leaf(static_cast<VertexId>(v));
  return tree;
}

ContractionTree ContractionTree::build_from_pair_sequence(const TensorNetwork& net,
                                                          std::span<const std::pair<TreeNodeId, TreeNodeId>> pairs) {
  ContractionTree tree = leaves_for_all(net);
  for (const auto& [a, b] : pairs) {
    if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= tree.num_nodes() ||
        static_cast<std::size_t>(b) >= tree.num_nodes()) {
      throw std::invalid_argument("pair references a node that does not exist yet");
    }
    if (tree.parent(a) != kNoNode || tree.parent(b) != kNoNode || a == b) {
      throw std::invalid_argument("pair references an already consumed node");
    }
    tree.join(a, b);
  }
  if (!tree.is_complete()) throw std::invalid_argument("pair sequence does not reduce to a single node");
  return tree;
}

TreeNodeId ContractionTree::add_leaf(std::int64_t label, LegSet legs) {
  if (label < 0) throw std::invalid_argument("leaf labels must be non-negative");
  if (static_cast<std::size_t>(label) >= leaf_by_label_.size()) leaf_by_label_.resize(label + 1, kNoNode);
  if (leaf_by_label_[label] != kNoNode) {
    throw std::invalid_argument("duplicate leaf label " + std::to_string(label));
  }
  const auto id = static_cast<TreeNodeId>(nodes_.size());
  nodes_.push_back(Node{kNoNode, kNoNode, kNoNode, label});
  legs_.push_back(std::move(legs));
  legs_valid_.push_back(1);
  leaf_by_label_[label] = id;
  ++num_leaves_;
  ++num_roots_;
  root_ = id;
  return id;
}

TreeNodeId ContractionTree::add_vertex_leaf(VertexId v) { return add_leaf(v, net_->legs_of(v)); }

TreeNodeId ContractionTree::join(TreeNodeId a, TreeNodeId b) {
  check_node(a);
  check_node(b);
  if (a == b) throw std::invalid_argument("cannot join a node with itself");
  if (nodes_[a].parent != kNoNode || nodes_[b].parent != kNoNode) {
    throw std::invalid_argument("join operands must be parentless");
  }
  const auto id = static_cast<TreeNodeId>(nodes_.size());
  nodes_.push_back(Node{kNoNode, a, b, -1});
  legs_.emplace_back();
  legs_valid_.push_back(0);
  nodes_[a].parent = id;
  nodes_[b].parent = id;
  --num_roots_;
  root_ = id;
  return id;
}

TreeNodeId ContractionTree::root() const {
  if (num_roots_ != 1) throw std::logic_error("contraction tree is not a single rooted tree");
  return root_;
}

bool ContractionTree::is_complete() const { return num_roots_ == 1; }

void ContractionTree::check_node(TreeNodeId t) const {
  if (t < 0 || static_cast<std::size_t>(t) >= nodes_.size()) {
    throw std::out_of_range("unknown tree node " + std::to_string(t));
  }
}

bool ContractionTree::is_leaf(TreeNodeId t) const {
  check_node(t);
  return nodes_[t].left == kNoNode;
}

TreeNodeId ContractionTree::parent(TreeNodeId t) const {
  check_node(t);
  return nodes_[t].parent;
}

std::pair<TreeNodeId, TreeNodeId> ContractionTree::children(TreeNodeId t) const {
  check_node(t);
  return {nodes_[t].left, nodes_[t].right};
}

std::int64_t ContractionTree::leaf_label(TreeNodeId t) const {
  check_node(t);
  return nodes_[t].label;
}

TreeNodeId ContractionTree::leaf_for(std::int64_t label) const {
  if (label < 0 || static_cast<std::size_t>(label) >= leaf_by_label_.size()) return kNoNode;
  return leaf_by_label_[label];
}

void ContractionTree::compute_legs(TreeNodeId t) const {
  // Iterative post-order so caterpillar trees of any depth are fine.
  std::vector<TreeNodeId> stack{t};
  while (!stack.empty()) {
    const TreeNodeId u = stack.back();
    if (legs_valid_[u]) {
      stack.pop_back();
      continue;
    }
    const Node& n = nodes_[u];
    if (!legs_valid_[n.left]) {
      stack.push_back(n.left);
    } else if (!legs_valid_[n.right]) {
      stack.push_back(n.right);
    } else {
      legs_[u] = leg_symmetric_difference(legs_[n.left], legs_[n.right]);
      legs_valid_[u] = 1;
      stack.pop_back();
    }
  }
}

const LegSet& ContractionTree::legs(TreeNodeId t) const {
  check_node(t);
  if (!legs_valid_[t]) compute_legs(t);
  return legs_[t];
}

LegSet ContractionTree::legs_uncached(TreeNodeId t) const {
  check_node(t);
  if (is_leaf(t)) return legs_[t];
  const auto [l, r] = children(t);
  return leg_symmetric_difference(legs_uncached(l), legs_uncached(r));
}

LegSet ContractionTree::contracted_edges(TreeNodeId t) const {
  if (is_leaf(t)) throw std::invalid_argument("leaf nodes have no contraction");
  return leg_union(legs(nodes_[t].left), legs(nodes_[t].right));
}

std::vector<TreeNodeId> ContractionTree::shortest_path(TreeNodeId u, TreeNodeId v) const {
  check_node(u);
  check_node(v);
  std::vector<TreeNodeId> up_u{u};
  for (TreeNodeId p = nodes_[u].parent; p != kNoNode; p = nodes_[p].parent) up_u.push_back(p);
  std::vector<TreeNodeId> up_v{v};
  for (TreeNodeId p = nodes_[v].parent; p != kNoNode; p = nodes_[p].parent) up_v.push_back(p);
  if (up_u.back() != up_v.back()) throw std::invalid_argument("nodes lie in disjoint trees");
  // Strip the common ancestry, keeping the lowest common ancestor once.
  while (up_u.size() >= 2 && up_v.size() >= 2 && up_u[up_u.size() - 2] == up_v[up_v.size() - 2]) {
    up_u.pop_back();
    up_v.pop_back();
  }
  std::vector<TreeNodeId> path = up_u;
  for (auto it = up_v.rbegin() + 1; it != up_v.rend(); ++it) path.push_back(*it);
  return path;
}

std::vector<TreeNodeId> ContractionTree::internal_post_order(TreeNodeId t) const {
  check_node(t);
  std::vector<TreeNodeId> out;
  // Reverse of a (node, right, left) pre-order is (left, right, node) post-order.
  std::vector<TreeNodeId> stack{t};
  while (!stack.empty()) {
    const TreeNodeId u = stack.back();
    stack.pop_back();
    if (nodes_[u].left == kNoNode) continue;
    out.push_back(u);
    stack.push_back(nodes_[u].left);
    stack.push_back(nodes_[u].right);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<TreeNodeId> ContractionTree::subtree_nodes(TreeNodeId t) const {
  check_node(t);
  std::vector<TreeNodeId> out;
  std::vector<TreeNodeId> stack{t};
  while (!stack.empty()) {
    const TreeNodeId u = stack.back();
    stack.pop_back();
    out.push_back(u);
    if (nodes_[u].left != kNoNode) {
      stack.push_back(nodes_[u].right);
      stack.push_back(nodes_[u].left);
    }
  }
  return out;
}

std::vector<std::int64_t> ContractionTree::subtree_leaf_labels(TreeNodeId t) const {
  std::vector<std::int64_t> out;
  for (TreeNodeId u : subtree_nodes(t)) {
    if (nodes_[u].left == kNoNode) out.push_back(nodes_[u].label);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<VertexId> ContractionTree::subtree_leaf_tensors(TreeNodeId t) const {
  const auto labels = subtree_leaf_labels(t);
  return {labels.begin(), labels.end()};
}

std::optional<std::vector<TreeNodeId>> ContractionTree::partition_roots(const Partitioning& k) const {
  // Leaf counts per subtree, then the lowest common ancestor of each block must
  // span exactly the block.
  std::vector<std::size_t> count(nodes_.size(), 0);
  std::vector<std::size_t> depth(nodes_.size(), 0);
  const TreeNodeId r = root();
  const auto nodes = subtree_nodes(r);
  for (TreeNodeId u : nodes) {
    if (nodes_[u].parent != kNoNode) depth[u] = depth[nodes_[u].parent] + 1;
  }
  for (auto it = nodes.rbegin(); it != nodes.rend(); ++it) {
    const Node& n = nodes_[*it];
    count[*it] = n.left == kNoNode ? 1 : count[n.left] + count[n.right];
  }
  std::vector<TreeNodeId> roots;
  roots.reserve(k.blocks.size());
  for (const auto& block : k.blocks) {
    if (block.empty()) return std::nullopt;
    TreeNodeId lca = leaf_for(block.front());
    if (lca == kNoNode) return std::nullopt;
    for (std::size_t i = 1; i < block.size(); ++i) {
      TreeNodeId other = leaf_for(block[i]);
      if (other == kNoNode) return std::nullopt;
      while (depth[other] > depth[lca]) other = nodes_[other].parent;
      while (depth[lca] > depth[other]) lca = nodes_[lca].parent;
      while (lca != other) {
        lca = nodes_[lca].parent;
        other = nodes_[other].parent;
      }
    }
    if (count[lca] != block.size()) return std::nullopt;
    roots.push_back(lca);
  }
  return roots;
}

void ContractionTree::swap_children(TreeNodeId t) {
  check_node(t);
  if (nodes_[t].left == kNoNode) throw std::invalid_argument("leaf has no children to swap");
  std::swap(nodes_[t].left, nodes_[t].right);
}

TreeNodeId ContractionTree::append_copy(const ContractionTree& src, TreeNodeId t) {
  src.check_node(t);
  std::vector<TreeNodeId> mapped(src.nodes_.size(), kNoNode);
  auto nodes = src.subtree_nodes(t);
  for (auto it = nodes.rbegin(); it != nodes.rend(); ++it) {
    const Node& n = src.nodes_[*it];
    mapped[*it] = n.left == kNoNode ? add_leaf(n.label, src.legs_[*it]) : join(mapped[n.left], mapped[n.right]);
  }
  return mapped[t];
}

void ContractionTree::check_invariants() const {
  if (net_ == nullptr) throw std::logic_error("tree has no network");
  const TreeNodeId r = root();
  if (nodes_[r].parent != kNoNode) throw std::logic_error("root has a parent");
  std::size_t leaves = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    const bool has_l = n.left != kNoNode, has_r = n.right != kNoNode;
    if (has_l != has_r) throw std::logic_error("node with exactly one child");
    if (has_l) {
      if (nodes_[n.left].parent != static_cast<TreeNodeId>(i) || nodes_[n.right].parent != static_cast<TreeNodeId>(i)) {
        throw std::logic_error("child/parent links disagree");
      }
    } else {
      ++leaves;
      if (leaf_for(n.label) != static_cast<TreeNodeId>(i)) throw std::logic_error("leaf label map is not bijective");
    }
    if (static_cast<TreeNodeId>(i) != r && n.parent == kNoNode) throw std::logic_error("second parentless node");
  }
  if (leaves != num_leaves_ || nodes_.size() != 2 * leaves - 1) throw std::logic_error("node count is not 2L-1");
  if (subtree_nodes(r).size() != nodes_.size()) throw std::logic_error("nodes unreachable from root");
}

nlohmann::json ContractionTree::to_json() const { return to_json(root()); }

nlohmann::json ContractionTree::to_json(TreeNodeId t) const {
  check_node(t);
  if (nodes_[t].left == kNoNode) return nodes_[t].label;
  return nlohmann::json::array({to_json(nodes_[t].left), to_json(nodes_[t].right)});
}

namespace {

template <typename LeafFn>
TreeNodeId build_nested(ContractionTree& tree, const nlohmann::json& j, LeafFn&& leaf) {
  if (j.is_number_integer()) return leaf(j.get<std::int64_t>());
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("tree nodes must be a label or a [left, right] pair");
  const TreeNodeId l = build_nested(tree, j[0], leaf);
  const TreeNodeId r = build_nested(tree, j[1], leaf);
  return tree.join(l, r);
}

}  // namespace

ContractionTree ContractionTree::from_json(const TensorNetwork& net, const nlohmann::json& j) {
  ContractionTree tree(net);
  build_nested(tree, j, [&](std::int64_t label) {
    if (label < 0 || static_cast<std::size_t>(label) >= net.num_vertices()) {
      throw std::invalid_argument("tree leaf " + std::to_string(label) + " is not a network vertex");
    }
    return tree.add_vertex_leaf(static_cast<VertexId>(label));
  });
  return tree;
}

ContractionTree ContractionTree::from_json(const TensorNetwork& net, const nlohmann::json& j,
                                           std::span<const LegSet> leaf_legs) {
  ContractionTree tree(net);
  build_nested(tree, j, [&](std::int64_t label) {
    if (label < 0 || static_cast<std::size_t>(label) >= leaf_legs.size()) {
      throw std::invalid_argument("tree leaf " + std::to_string(label) + " out of range");
    }
    return tree.add_leaf(label, leaf_legs[label]);
  });
  return tree;
}

}  // namespace tnpart
