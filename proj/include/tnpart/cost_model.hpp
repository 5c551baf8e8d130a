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

#include <string_view>
#include <vector>

#include <json.hpp>

#include "tnpart/contraction_tree.hpp"
#include "tnpart/partitioner.hpp"

namespace tnpart {

/// Linear costs at or above this value are clamped and flagged.
inline constexpr double kCostSaturation = 0x1p300;

/// comm(c) = alpha + beta * |T_c|. The defaults leave communication out.
struct CommModel {
  double alpha = 0.0;
  double beta = 0.0;
};

enum class IntraNode { Serial, Par };
enum class CostMetric { Serial, Par, Dist };

struct CostOptions {
  CostMetric metric = CostMetric::Dist;
  IntraNode intra = IntraNode::Serial;
  CommModel comm;
};

std::string_view to_string(CostMetric m);
std::string_view to_string(IntraNode m);
CostMetric cost_metric_from_string(std::string_view s);
IntraNode intra_node_from_string(std::string_view s);

/// Sum of log2(n(e)) over the union of the children's legs of internal node t.
double vertex_congestion(const ContractionTree& tree, TreeNodeId t);
/// 2^vc(t) computed as an exact product of dims (exact below 2^53).
double contraction_ops(const ContractionTree& tree, TreeNodeId t);

/// Largest |result| + |child1| + |child2| over internal nodes of the subtree at
/// t; the leaf size for a lone leaf.
double mem_cost(const ContractionTree& tree, TreeNodeId t);
double mem_cost(const ContractionTree& tree);

/// Sum of 2^vc over internal nodes of the subtree at t, in post-order.
double con_serial(const ContractionTree& tree, TreeNodeId t);
double con_serial(const ContractionTree& tree);

/// Critical-path cost of the subtree at t: max over its leaves of the costs on
/// the path from the leaf (exclusive) up to t, accumulated bottom-up.
double con_par(const ContractionTree& tree, TreeNodeId t);
double con_par(const ContractionTree& tree);

double comm_cost(const ContractionTree& tree, TreeNodeId t, const CommModel& comm);

/// Sum over nodes strictly above `from` up to the root of 2^vc plus the
/// cheaper child's communication, accumulated bottom-up.
double fan_in_cost(const ContractionTree& tree, TreeNodeId from, const CommModel& comm);

/// Intra-node cost of the subtree at t.
double local_cost(const ContractionTree& tree, TreeNodeId t, IntraNode intra);

/// Distributed cost. Throws std::invalid_argument if the tree does not accept k.
double con_dist(const ContractionTree& tree, const Partitioning& k, IntraNode intra = IntraNode::Serial,
                const CommModel& comm = {});

struct PartitionCost {
  int partition = 0;
  double local = 0.0;
  double fan_in = 0.0;
  double mem = 0.0;
};

struct CostReport {
  double mem = 0.0;
  double con_serial = 0.0;
  double con_par = 0.0;
  double con_dist = 0.0;
  double log2_mem = 0.0;
  double log2_con_serial = 0.0;
  double log2_con_par = 0.0;
  double log2_con_dist = 0.0;
  bool saturated = false;
  std::vector<PartitionCost> per_partition;

  double value(CostMetric m) const;
};

/// All four metrics for a tree that accepts k. With an empty k the tree is
/// treated as a single partition.
CostReport cost_report(const ContractionTree& tree, const Partitioning& k, const CostOptions& opts);

/// Clamps the linear values at kCostSaturation and sets `saturated` if needed.
void saturate(CostReport& r);

nlohmann::json cost_report_to_json(const CostReport& r);
CostReport cost_report_from_json(const nlohmann::json& j);

}  // namespace tnpart
