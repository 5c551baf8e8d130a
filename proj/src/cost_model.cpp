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

#include "tnpart/cost_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace tnpart {

std::string_view to_string(CostMetric m) {
  switch (m) {
    case CostMetric::Serial:
      return "serial";
    case CostMetric::Par:
      return "par";
    case CostMetric::Dist:
      return "dist";
  }
  return "?";
}

std::string_view to_string(IntraNode m) { return m == IntraNode::Serial ? "serial" : "par"; }

CostMetric cost_metric_from_string(std::string_view s) {
  if (s == "serial") return CostMetric::Serial;
  if (s == "par") return CostMetric::Par;
  if (s == "dist") return CostMetric::Dist;
  throw std::invalid_argument("unknown cost metric '" + std::string(s) + "'");
}

IntraNode intra_node_from_string(std::string_view s) {
  if (s == "serial") return IntraNode::Serial;
  if (s == "par") return IntraNode::Par;
  throw std::invalid_argument("unknown intra-node mode '" + std::string(s) + "'");
}

double vertex_congestion(const ContractionTree& tree, TreeNodeId t) {
  const LegSet e = tree.contracted_edges(t);
  return tree.network().legs_size_log2(e);
}

double contraction_ops(const ContractionTree& tree, TreeNodeId t) {
  const LegSet e = tree.contracted_edges(t);
  return tree.network().legs_size(e);
}

double mem_cost(const ContractionTree& tree, TreeNodeId t) {
  if (tree.is_leaf(t)) return tree.size(t);
  double best = 0.0;
  for (TreeNodeId v : tree.internal_post_order(t)) {
    const auto [l, r] = tree.children(v);
    best = std::max(best, tree.size(v) + tree.size(l) + tree.size(r));
  }
  return best;
}

double mem_cost(const ContractionTree& tree) { return mem_cost(tree, tree.root()); }

double con_serial(const ContractionTree& tree, TreeNodeId t) {
  double sum = 0.0;
  for (TreeNodeId v : tree.internal_post_order(t)) sum += contraction_ops(tree, v);
  return sum;
}

double con_serial(const ContractionTree& tree) { return con_serial(tree, tree.root()); }

double con_par(const ContractionTree& tree, TreeNodeId t) {
  const auto nodes = tree.subtree_nodes(t);
  std::vector<double> ops(tree.num_nodes(), 0.0);
  for (TreeNodeId v : nodes) {
    if (!tree.is_leaf(v)) ops[v] = contraction_ops(tree, v);
  }
  double best = 0.0;
  for (TreeNodeId leaf : nodes) {
    if (!tree.is_leaf(leaf) || leaf == t) continue;
    double sum = 0.0;
    TreeNodeId v = leaf;
    do {
      v = tree.parent(v);
      sum += ops[v];
    } while (v != t);
    best = std::max(best, sum);
  }
  return best;
}

double con_par(const ContractionTree& tree) { return con_par(tree, tree.root()); }

double comm_cost(const ContractionTree& tree, TreeNodeId t, const CommModel& comm) {
  if (comm.alpha == 0.0 && comm.beta == 0.0) return 0.0;
  return comm.alpha + comm.beta * tree.size(t);
}

double fan_in_cost(const ContractionTree& tree, TreeNodeId from, const CommModel& comm) {
  double sum = 0.0;
  for (TreeNodeId v = tree.parent(from); v != kNoNode; v = tree.parent(v)) {
    const auto [l, r] = tree.children(v);
    sum += contraction_ops(tree, v) + std::min(comm_cost(tree, l, comm), comm_cost(tree, r, comm));
  }
  return sum;
}

double local_cost(const ContractionTree& tree, TreeNodeId t, IntraNode intra) {
  return intra == IntraNode::Serial ? con_serial(tree, t) : con_par(tree, t);
}

namespace {

std::vector<TreeNodeId> roots_or_throw(const ContractionTree& tree, const Partitioning& k) {
  auto roots = tree.partition_roots(k);
  if (!roots) throw std::invalid_argument("contraction tree does not accept the partitioning");
  return *roots;
}

// log2(2^a + 2^b) without leaving the log domain.
double log2_add(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log2(1.0 + std::exp2(lo - hi));
}

constexpr double kLog2Zero = -std::numeric_limits<double>::infinity();

double log2_comm(const ContractionTree& tree, TreeNodeId t, const CommModel& comm) {
  if (comm.alpha == 0.0 && comm.beta == 0.0) return kLog2Zero;
  double out = comm.alpha > 0.0 ? std::log2(comm.alpha) : kLog2Zero;
  if (comm.beta > 0.0) out = log2_add(out, std::log2(comm.beta) + tree.network().legs_size_log2(tree.legs(t)));
  return out;
}

double log2_fan_in(const ContractionTree& tree, TreeNodeId from, const CommModel& comm) {
  double sum = kLog2Zero;
  for (TreeNodeId v = tree.parent(from); v != kNoNode; v = tree.parent(v)) {
    const auto [l, r] = tree.children(v);
    sum = log2_add(sum, log2_add(vertex_congestion(tree, v), std::min(log2_comm(tree, l, comm), log2_comm(tree, r, comm))));
  }
  return sum;
}

double log2_serial(const ContractionTree& tree, TreeNodeId t) {
  double sum = kLog2Zero;
  for (TreeNodeId v : tree.internal_post_order(t)) sum = log2_add(sum, vertex_congestion(tree, v));
  return sum;
}

double log2_par(const ContractionTree& tree, TreeNodeId t) {
  double best = kLog2Zero;
  for (TreeNodeId leaf : tree.subtree_nodes(t)) {
    if (!tree.is_leaf(leaf) || leaf == t) continue;
    double sum = kLog2Zero;
    TreeNodeId v = leaf;
    do {
      v = tree.parent(v);
      sum = log2_add(sum, vertex_congestion(tree, v));
    } while (v != t);
    best = std::max(best, sum);
  }
  return best;
}

double log2_mem(const ContractionTree& tree, TreeNodeId t) {
  const auto& net = tree.network();
  if (tree.is_leaf(t)) return net.legs_size_log2(tree.legs(t));
  double best = kLog2Zero;
  for (TreeNodeId v : tree.internal_post_order(t)) {
    const auto [l, r] = tree.children(v);
    best = std::max(best, log2_add(net.legs_size_log2(tree.legs(v)),
                                   log2_add(net.legs_size_log2(tree.legs(l)), net.legs_size_log2(tree.legs(r)))));
  }
  return best;
}

}  // namespace

double con_dist(const ContractionTree& tree, const Partitioning& k, IntraNode intra, const CommModel& comm) {
  double best = 0.0;
  for (TreeNodeId r : roots_or_throw(tree, k)) {
    best = std::max(best, local_cost(tree, r, intra) + fan_in_cost(tree, r, comm));
  }
  return best;
}

double CostReport::value(CostMetric m) const {
  switch (m) {
    case CostMetric::Serial:
      return con_serial;
    case CostMetric::Par:
      return con_par;
    case CostMetric::Dist:
      return con_dist;
  }
  return con_dist;
}

CostReport cost_report(const ContractionTree& tree, const Partitioning& k, const CostOptions& opts) {
  const TreeNodeId root = tree.root();
  std::vector<TreeNodeId> roots = k.blocks.empty() ? std::vector<TreeNodeId>{root} : roots_or_throw(tree, k);

  CostReport r;
  r.mem = mem_cost(tree, root);
  r.con_serial = con_serial(tree, root);
  r.con_par = con_par(tree, root);
  r.log2_mem = log2_mem(tree, root);
  r.log2_con_serial = log2_serial(tree, root);
  r.log2_con_par = log2_par(tree, root);
  r.log2_con_dist = kLog2Zero;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    PartitionCost pc;
    pc.partition = static_cast<int>(i);
    pc.local = local_cost(tree, roots[i], opts.intra);
    pc.fan_in = fan_in_cost(tree, roots[i], opts.comm);
    pc.mem = mem_cost(tree, roots[i]);
    r.con_dist = std::max(r.con_dist, pc.local + pc.fan_in);
    const double log_local = opts.intra == IntraNode::Serial ? log2_serial(tree, roots[i]) : log2_par(tree, roots[i]);
    r.log2_con_dist = std::max(r.log2_con_dist, log2_add(log_local, log2_fan_in(tree, roots[i], opts.comm)));
    r.per_partition.push_back(pc);
  }
  saturate(r);
  return r;
}

void saturate(CostReport& r) {
  for (double* v : {&r.mem, &r.con_serial, &r.con_par, &r.con_dist}) {
    if (!(*v < kCostSaturation)) {
      *v = kCostSaturation;
      r.saturated = true;
    }
  }
}

namespace {

// JSON has no infinities; log2 of a zero cost is written as null.
nlohmann::json log_json(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }
double log_from_json(const nlohmann::json& j) { return j.is_null() ? kLog2Zero : j.get<double>(); }

}  // namespace

nlohmann::json cost_report_to_json(const CostReport& r) {
  nlohmann::json parts = nlohmann::json::array();
  for (const auto& p : r.per_partition) {
    parts.push_back({{"partition", p.partition}, {"local", p.local}, {"fan_in", p.fan_in}, {"mem", p.mem}});
  }
  return {{"mem", r.mem},
          {"con_serial", r.con_serial},
          {"con_par", r.con_par},
          {"con_dist", r.con_dist},
          {"log2",
           {{"mem", log_json(r.log2_mem)},
            {"con_serial", log_json(r.log2_con_serial)},
            {"con_par", log_json(r.log2_con_par)},
            {"con_dist", log_json(r.log2_con_dist)}}},
          {"saturated", r.saturated},
          {"per_partition", std::move(parts)}};
}

CostReport cost_report_from_json(const nlohmann::json& j) {
  CostReport r;
  r.mem = j.at("mem").get<double>();
  r.con_serial = j.at("con_serial").get<double>();
  r.con_par = j.at("con_par").get<double>();
  r.con_dist = j.at("con_dist").get<double>();
  const auto& l = j.at("log2");
  r.log2_mem = log_from_json(l.at("mem"));
  r.log2_con_serial = log_from_json(l.at("con_serial"));
  r.log2_con_par = log_from_json(l.at("con_par"));
  r.log2_con_dist = log_from_json(l.at("con_dist"));
  r.saturated = j.value("saturated", false);
  for (const auto& p : j.at("per_partition")) {
    r.per_partition.push_back({p.at("partition").get<int>(), p.at("local").get<double>(), p.at("fan_in").get<double>(),
                               p.at("mem").get<double>()});
  }
  return r;
}

}  // namespace tnpart
