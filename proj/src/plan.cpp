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

#include "tnpart/plan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace tnpart {

namespace {

void require_valid(const Partitioning& k, const TensorNetwork& net) {
  if (!net.is_connected()) throw std::invalid_argument("network is disconnected; plan each component separately");
  const auto res = validate(k, net);
  if (!res) throw std::invalid_argument("invalid partitioning: " + res.issues.front().message);
}

bool close(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace

Plan::Plan(const TensorNetwork& net, Partitioning k, const PlanOptions& opts)
    : net_(&net), opts_(opts), partitioning_(std::move(k)) {
  require_valid(partitioning_, net);
  partitioning_.normalize();
  const std::size_t n = partitioning_.size();
  partition_trees_.resize(n);
  local_.resize(n);
  local_serial_.resize(n);
  local_par_.resize(n);
  local_mem_.resize(n);
  for (std::size_t i = 0; i < n; ++i) rebuild_partition(i);
  rebuild_reduction();
  recost();
}

Plan::Plan(const TensorNetwork& net, Partitioning k, std::vector<ContractionTree> partition_trees,
           ContractionTree reduction, const PlanOptions& opts)
    : net_(&net), opts_(opts), partitioning_(std::move(k)), partition_trees_(std::move(partition_trees)),
      reduction_(std::move(reduction)) {
  require_valid(partitioning_, net);
  partitioning_.normalize();
  const std::size_t n = partitioning_.size();
  if (partition_trees_.size() != n) throw std::invalid_argument("one tree per partition is required");
  local_.resize(n);
  local_serial_.resize(n);
  local_par_.resize(n);
  local_mem_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& t = partition_trees_[i];
    t.check_invariants();
    const auto labels = t.subtree_leaf_tensors(t.root());
    if (labels != partitioning_.blocks[i]) throw std::invalid_argument("partition tree leaves do not match its block");
    local_serial_[i] = con_serial(t);
    local_par_[i] = con_par(t);
    local_mem_[i] = mem_cost(t);
    local_[i] = opts_.cost.intra == IntraNode::Serial ? local_serial_[i] : local_par_[i];
  }
  reduction_.check_invariants();
  if (reduction_.num_leaves() != n) throw std::invalid_argument("reduction tree must have one leaf per partition");
  for (std::size_t i = 0; i < n; ++i) {
    const TreeNodeId leaf = reduction_.leaf_for(static_cast<std::int64_t>(i));
    if (leaf == kNoNode || reduction_.legs(leaf) != partition_legs(i)) {
      throw std::invalid_argument("reduction tree leaf legs do not match partition results");
    }
  }
  recost();
}

const LegSet& Plan::partition_legs(std::size_t i) const {
  const auto& t = partition_trees_.at(i);
  return t.legs(t.root());
}

void Plan::rebuild_partition(std::size_t i) {
  partition_trees_[i] = greedy_tree(*net_, partitioning_.blocks[i]);
  const auto& t = partition_trees_[i];
  local_serial_[i] = con_serial(t);
  local_par_[i] = con_par(t);
  local_mem_[i] = mem_cost(t);
  local_[i] = opts_.cost.intra == IntraNode::Serial ? local_serial_[i] : local_par_[i];
}

void Plan::rebuild_reduction() {
  std::vector<LegSet> legs(partitioning_.size());
  for (std::size_t i = 0; i < legs.size(); ++i) legs[i] = partition_legs(i);
  reduction_ = reduction_path(*net_, legs, opts_.reduction);
}

void Plan::recost() {
  const std::size_t n = partitioning_.size();
  CostReport r;
  const CommModel none{};
  double serial = 0.0;
  for (std::size_t i = 0; i < n; ++i) serial += local_serial_[i];
  r.con_serial = serial + con_serial(reduction_);
  r.mem = *std::max_element(local_mem_.begin(), local_mem_.end());
  if (!reduction_.is_leaf(reduction_.root())) r.mem = std::max(r.mem, mem_cost(reduction_));
  for (std::size_t i = 0; i < n; ++i) {
    const TreeNodeId leaf = reduction_.leaf_for(static_cast<std::int64_t>(i));
    PartitionCost pc;
    pc.partition = static_cast<int>(i);
    pc.local = local_[i];
    pc.fan_in = fan_in_cost(reduction_, leaf, opts_.cost.comm);
    pc.mem = local_mem_[i];
    r.con_dist = std::max(r.con_dist, pc.local + pc.fan_in);
    r.con_par = std::max(r.con_par, local_par_[i] + fan_in_cost(reduction_, leaf, none));
    r.per_partition.push_back(pc);
  }
  auto lg = [](double x) { return x > 0.0 ? std::log2(x) : -std::numeric_limits<double>::infinity(); };
  r.log2_mem = lg(r.mem);
  r.log2_con_serial = lg(r.con_serial);
  r.log2_con_par = lg(r.con_par);
  r.log2_con_dist = lg(r.con_dist);
  saturate(r);
  report_ = std::move(r);
}

void Plan::move_vertices(std::size_t src, std::size_t dest, const std::vector<VertexId>& vertices) {
  if (src >= partitioning_.size() || dest >= partitioning_.size() || src == dest) {
    throw std::invalid_argument("bad source/destination partition");
  }
  auto& from = partitioning_.blocks[src];
  auto& to = partitioning_.blocks[dest];
  for (VertexId v : vertices) {
    auto it = std::lower_bound(from.begin(), from.end(), v);
    if (it == from.end() || *it != v) throw std::invalid_argument("vertex is not in the source partition");
    from.erase(it);
    to.insert(std::lower_bound(to.begin(), to.end(), v), v);
  }
  if (from.empty()) throw std::invalid_argument("move would empty the source partition");
  rebuild_partition(src);
  rebuild_partition(dest);
  rebuild_reduction();
  recost();
}

Plan::Composed Plan::compose() const {
  Composed out{ContractionTree(*net_), std::vector<TreeNodeId>(partitioning_.size(), kNoNode)};
  // Post-order over the reduction tree: partition leaves expand into copies of
  // their trees, internal nodes join the mapped children.
  std::vector<TreeNodeId> mapped(reduction_.num_nodes(), kNoNode);
  auto nodes = reduction_.subtree_nodes(reduction_.root());
  for (auto it = nodes.rbegin(); it != nodes.rend(); ++it) {
    if (reduction_.is_leaf(*it)) {
      const auto i = static_cast<std::size_t>(reduction_.leaf_label(*it));
      const auto& t = partition_trees_[i];
      mapped[*it] = out.tree.append_copy(t, t.root());
      out.partition_roots[i] = mapped[*it];
    } else {
      const auto [l, r] = reduction_.children(*it);
      mapped[*it] = out.tree.join(mapped[l], mapped[r]);
    }
  }
  return out;
}

void Plan::check_invariants() const {
  const auto res = validate(partitioning_, *net_);
  if (!res) throw std::logic_error("plan holds an invalid partitioning: " + res.issues.front().message);
  const Composed c = compose();
  c.tree.check_invariants();
  const auto roots = c.tree.partition_roots(partitioning_);
  if (!roots) throw std::logic_error("composed tree does not accept the partitioning");
  if (*roots != c.partition_roots) throw std::logic_error("partition roots disagree with the composition");
  const CostReport full = cost_report(c.tree, partitioning_, opts_.cost);
  if (full.con_dist != report_.con_dist) throw std::logic_error("cached con_dist is stale");
  if (full.mem != report_.mem) throw std::logic_error("cached mem is stale");
  if (!close(full.con_serial, report_.con_serial) || !close(full.con_par, report_.con_par)) {
    throw std::logic_error("cached serial/parallel cost is stale");
  }
}

Plan serial_plan(const TensorNetwork& net, const PlanOptions& opts) {
  Partitioning k;
  k.blocks.emplace_back(net.num_vertices());
  std::iota(k.blocks[0].begin(), k.blocks[0].end(), 0);
  return Plan(net, std::move(k), opts);
}

nlohmann::json plan_to_json(const Plan& plan) {
  nlohmann::json trees = nlohmann::json::array();
  for (const auto& t : plan.partition_trees()) trees.push_back(t.to_json());
  return {{"partitioning", partitioning_to_json(plan.partitioning())},
          {"partition_trees", std::move(trees)},
          {"reduction_tree", plan.reduction_tree().to_json()},
          {"tree", plan.compose().tree.to_json()},
          {"cost_options",
           {{"metric", to_string(plan.options().cost.metric)},
            {"intra_node", to_string(plan.options().cost.intra)},
            {"comm_alpha", plan.options().cost.comm.alpha},
            {"comm_beta", plan.options().cost.comm.beta}}},
          {"cost", cost_report_to_json(plan.report())}};
}

Plan plan_from_json(const TensorNetwork& net, const nlohmann::json& j, const PlanOptions& opts) {
  Partitioning k = partitioning_from_json(j.at("partitioning"));
  if (!j.contains("partition_trees") || !j.contains("reduction_tree")) return Plan(net, std::move(k), opts);
  std::vector<ContractionTree> trees;
  for (const auto& t : j.at("partition_trees")) trees.push_back(ContractionTree::from_json(net, t));
  std::vector<LegSet> legs;
  for (const auto& t : trees) legs.push_back(t.legs(t.root()));
  ContractionTree reduction = ContractionTree::from_json(net, j.at("reduction_tree"), legs);
  return Plan(net, std::move(k), std::move(trees), std::move(reduction), opts);
}

}  // namespace tnpart
