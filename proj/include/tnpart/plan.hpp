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

#include <vector>

#include <json.hpp>

#include "tnpart/contraction_tree.hpp"
#include "tnpart/cost_model.hpp"
#include "tnpart/partitioner.hpp"
#include "tnpart/pathfind.hpp"

namespace tnpart {

struct PlanOptions {
  /// Reduction paths use RandomGreedy; partition trees use plain greedy.
  GreedyConfig reduction;
  CostOptions cost;
};

/// Distributed contraction plan: a partitioning, one greedy tree per block and
/// a fan-in tree over the block results. Costs are evaluated from the pieces
/// and agree with cost_report() on the composed tree.
class Plan {
 public:
  Plan() = default;
  Plan(const TensorNetwork& net, Partitioning k, const PlanOptions& opts);
  /// Adopts explicit trees (e.g. read back from JSON).
  Plan(const TensorNetwork& net, Partitioning k, std::vector<ContractionTree> partition_trees,
       ContractionTree reduction, const PlanOptions& opts);

  const TensorNetwork& network() const { return *net_; }
  const Partitioning& partitioning() const { return partitioning_; }
  const ContractionTree& partition_tree(std::size_t i) const { return partition_trees_.at(i); }
  const std::vector<ContractionTree>& partition_trees() const { return partition_trees_; }
  const ContractionTree& reduction_tree() const { return reduction_; }
  const PlanOptions& options() const { return opts_; }
  std::size_t num_partitions() const { return partitioning_.size(); }

  const CostReport& report() const { return report_; }
  /// The configured objective (con_dist by default).
  double cost() const { return report_.value(opts_.cost.metric); }

  /// Legs of partition i's result tensor.
  const LegSet& partition_legs(std::size_t i) const;

  /// Moves `vertices` from block src to block dest, re-finds both blocks'
  /// trees and the reduction path, and re-costs. Block src must keep at least
  /// one vertex.
  void move_vertices(std::size_t src, std::size_t dest, const std::vector<VertexId>& vertices);

  struct Composed {
    ContractionTree tree;
    std::vector<TreeNodeId> partition_roots;
  };
  /// Single tree over the whole network: the reduction tree with each leaf
  /// replaced by its partition's tree, child order preserved.
  Composed compose() const;

  /// Throws std::logic_error if the partitioning is invalid, the composed tree
  /// does not accept it, or the cached report disagrees with a recomputation.
  void check_invariants() const;

 private:
  void rebuild_partition(std::size_t i);
  void rebuild_reduction();
  void recost();

  const TensorNetwork* net_ = nullptr;
  PlanOptions opts_;
  Partitioning partitioning_;
  std::vector<ContractionTree> partition_trees_;
  std::vector<double> local_;
  std::vector<double> local_serial_;
  std::vector<double> local_par_;
  std::vector<double> local_mem_;
  ContractionTree reduction_;
  CostReport report_;
};

/// Serial baseline: one greedy tree over the whole network as a single-block plan.
Plan serial_plan(const TensorNetwork& net, const PlanOptions& opts);

nlohmann::json plan_to_json(const Plan& plan);
Plan plan_from_json(const TensorNetwork& net, const nlohmann::json& j, const PlanOptions& opts);

}  // namespace tnpart
