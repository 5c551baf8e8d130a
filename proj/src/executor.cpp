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

#include "tnpart/executor.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "tnpart/cost_model.hpp"
#include "tnpart/kernels/cgemm.hpp"
#include "tnpart/pathfind.hpp"
#include "tnpart/plan.hpp"

namespace tnpart {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("tensor size overflows int64");
  return out;
}

std::int64_t product(const std::vector<Dim>& dims, const std::vector<std::size_t>& axes) {
  std::int64_t p = 1;
  for (std::size_t a : axes) p = checked_mul(p, dims[a]);
  return p;
}

bool is_identity(const std::vector<std::size_t>& perm) {
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[i] != i) return false;
  }
  return true;
}

std::vector<cplx> permute_data(const DenseTensor& t, const std::vector<std::size_t>& perm) {
  if (is_identity(perm)) return t.data;
  std::vector<cplx> out(t.data.size());
  std::vector<std::size_t> dims(t.dims.begin(), t.dims.end());
  kernels::permute(t.rank(), dims.data(), perm.data(), t.data.data(), out.data());
  return out;
}

void check_labels_unique(const DenseTensor& t) {
  auto sorted = t.labels;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("tensor has a repeated label");
  }
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Post-order execution over any tree; leaf tensors come from the callback.
struct TreeRun {
  ExecutionTrace trace;
  std::vector<double> node_seconds;
};

TreeRun run_tree(const ContractionTree& tree, const std::function<DenseTensor(TreeNodeId)>& leaf,
                 const ExecOptions& opts, int timing_repeats) {
  TreeRun run;
  const TreeNodeId root = tree.root();
  run.node_seconds.assign(tree.num_nodes(), 0.0);
  if (tree.is_leaf(root)) {
    run.trace.result = leaf(root);
    run.trace.peak_entries = run.trace.resident_peak_entries = static_cast<std::int64_t>(run.trace.result.entries());
    return run;
  }
  std::vector<DenseTensor> held(tree.num_nodes());
  std::int64_t resident = 0;
  auto materialize = [&](TreeNodeId c) {
    if (tree.is_leaf(c)) {
      held[c] = leaf(c);
      resident += static_cast<std::int64_t>(held[c].entries());
    }
  };
  for (TreeNodeId v : tree.internal_post_order(root)) {
    const auto [l, r] = tree.children(v);
    materialize(l);
    materialize(r);
    ContractionRecord rec;
    rec.node = v;
    double best = std::numeric_limits<double>::infinity();
    DenseTensor out;
    for (int rep = 0; rep < std::max(1, timing_repeats); ++rep) {
      std::int64_t mults = 0;
      const auto t0 = Clock::now();
      out = contract_pair(held[l], held[r], &mults, opts.kernel);
      best = std::min(best, seconds_since(t0));
      rec.ops = mults;
    }
    rec.seconds = best;
    rec.vc = std::log2(static_cast<double>(rec.ops));
    const auto sl = static_cast<std::int64_t>(held[l].entries());
    const auto sr = static_cast<std::int64_t>(held[r].entries());
    const auto so = static_cast<std::int64_t>(out.entries());
    rec.entries = sl + sr + so;
    run.trace.mult_count += rec.ops;
    run.trace.peak_entries = std::max(run.trace.peak_entries, rec.entries);
    resident += so;
    run.trace.resident_peak_entries = std::max(run.trace.resident_peak_entries, resident);
    resident -= sl + sr;
    held[l] = {};
    held[r] = {};
    held[v] = std::move(out);
    run.node_seconds[v] = best;
    run.trace.contractions.push_back(rec);
  }
  run.trace.result = std::move(held[root]);
  return run;
}

void check_budget(const ContractionTree& tree, const ExecOptions& opts) {
  const double need = mem_cost(tree);
  if (need > static_cast<double>(opts.max_entries)) {
    throw std::overflow_error("plan needs " + std::to_string(need) + " entries, budget is " +
                              std::to_string(opts.max_entries));
  }
}

}  // namespace

DenseTensor DenseTensor::permuted_to(const std::vector<EdgeId>& order) const {
  if (order.size() != labels.size()) throw std::invalid_argument("order must list every label once");
  std::vector<std::size_t> perm(order.size());
  for (std::size_t a = 0; a < order.size(); ++a) {
    const auto it = std::find(labels.begin(), labels.end(), order[a]);
    if (it == labels.end()) throw std::invalid_argument("order names an unknown label");
    perm[a] = static_cast<std::size_t>(it - labels.begin());
  }
  DenseTensor out;
  out.labels = order;
  for (std::size_t a : perm) out.dims.push_back(dims[a]);
  out.data = permute_data(*this, perm);
  return out;
}

DenseTensor leaf_tensor(const TensorNetwork& net, VertexId v) {
  const auto& payload = net.payload(v);
  if (!payload) throw std::invalid_argument("tensor " + std::to_string(v) + " has no payload");
  const auto& dims = net.dims(v);
  const int rank = net.degree(v);
  std::vector<EdgeId> raw(rank);
  for (int a = 0; a < rank; ++a) raw[a] = net.axis_edge(v, a);

  DenseTensor out;
  std::vector<int> partner(rank, -1);
  for (int a = 0; a < rank; ++a) {
    for (int b = 0; b < rank; ++b) {
      if (a != b && raw[a] == raw[b]) partner[a] = b;
    }
    if (partner[a] < 0) {
      out.labels.push_back(raw[a]);
      out.dims.push_back(dims[a]);
    }
  }
  if (out.labels.size() == raw.size()) {
    out.data = *payload;
    return out;
  }
  // Trace out self-loop axis pairs.
  std::int64_t total = 1;
  for (Dim d : out.dims) total = checked_mul(total, d);
  out.data.assign(static_cast<std::size_t>(total), cplx{});
  std::vector<Dim> idx(rank, 0);
  for (std::size_t flat = 0; flat < payload->size(); ++flat) {
    bool diagonal = true;
    std::int64_t o = 0;
    for (int a = 0; a < rank; ++a) {
      if (partner[a] >= 0) {
        diagonal = diagonal && idx[a] == idx[partner[a]];
      } else {
        o = o * dims[a] + idx[a];
      }
    }
    if (diagonal) out.data[o] += (*payload)[flat];
    for (int a = rank; a-- > 0;) {
      if (++idx[a] < dims[a]) break;
      idx[a] = 0;
    }
  }
  return out;
}

DenseTensor contract_pair(const DenseTensor& s, const DenseTensor& t, std::int64_t* mults, ContractKernel kernel) {
  check_labels_unique(s);
  check_labels_unique(t);
  std::vector<std::size_t> free_s, shared_s, shared_t, free_t;
  for (std::size_t a = 0; a < s.rank(); ++a) {
    const auto it = std::find(t.labels.begin(), t.labels.end(), s.labels[a]);
    if (it == t.labels.end()) {
      free_s.push_back(a);
    } else {
      const auto b = static_cast<std::size_t>(it - t.labels.begin());
      if (s.dims[a] != t.dims[b]) throw std::invalid_argument("dimension mismatch on a shared leg");
      shared_s.push_back(a);
      shared_t.push_back(b);
    }
  }
  for (std::size_t b = 0; b < t.rank(); ++b) {
    if (std::find(shared_t.begin(), shared_t.end(), b) == shared_t.end()) free_t.push_back(b);
  }
  const std::int64_t m = product(s.dims, free_s);
  const std::int64_t k = product(s.dims, shared_s);
  const std::int64_t n = product(t.dims, free_t);

  DenseTensor out;
  for (std::size_t a : free_s) {
    out.labels.push_back(s.labels[a]);
    out.dims.push_back(s.dims[a]);
  }
  for (std::size_t b : free_t) {
    out.labels.push_back(t.labels[b]);
    out.dims.push_back(t.dims[b]);
  }
  out.data.assign(static_cast<std::size_t>(checked_mul(m, n)), cplx{});
  const std::int64_t ops = checked_mul(checked_mul(m, k), n);
  if (mults) *mults += ops;

  std::vector<std::size_t> perm_s(free_s);
  perm_s.insert(perm_s.end(), shared_s.begin(), shared_s.end());
  std::vector<std::size_t> perm_t(shared_t);
  perm_t.insert(perm_t.end(), free_t.begin(), free_t.end());

  if (kernel == ContractKernel::Gemm) {
    const auto a = permute_data(s, perm_s);
    const auto b = permute_data(t, perm_t);
    kernels::cgemm(m, k, n, a.data(), b.data(), out.data.data());
    return out;
  }

  // Index loops straight over the unpermuted operands.
  auto strides = [](const std::vector<Dim>& dims) {
    std::vector<std::int64_t> st(dims.size(), 1);
    for (std::size_t a = dims.size(); a-- > 1;) st[a - 1] = st[a] * dims[a];
    return st;
  };
  const auto st_s = strides(s.dims), st_t = strides(t.dims);
  auto offsets = [](const std::vector<Dim>& dims, const std::vector<std::int64_t>& st,
                    const std::vector<std::size_t>& axes, std::int64_t count) {
    std::vector<std::int64_t> off(count, 0);
    std::vector<Dim> idx(axes.size(), 0);
    for (std::int64_t f = 0; f < count; ++f) {
      std::int64_t o = 0;
      for (std::size_t i = 0; i < axes.size(); ++i) o += idx[i] * st[axes[i]];
      off[f] = o;
      for (std::size_t i = axes.size(); i-- > 0;) {
        if (++idx[i] < dims[axes[i]]) break;
        idx[i] = 0;
      }
    }
    return off;
  };
  const auto off_fs = offsets(s.dims, st_s, free_s, m);
  const auto off_ss = offsets(s.dims, st_s, shared_s, k);
  const auto off_st = offsets(t.dims, st_t, shared_t, k);
  const auto off_ft = offsets(t.dims, st_t, free_t, n);
  for (std::int64_t i = 0; i < m; ++i) {
    for (std::int64_t j = 0; j < n; ++j) {
      double re = 0.0, im = 0.0;
      for (std::int64_t p = 0; p < k; ++p) {
        const cplx x = s.data[off_fs[i] + off_ss[p]];
        const cplx y = t.data[off_st[p] + off_ft[j]];
        re += x.real() * y.real() - x.imag() * y.imag();
        im += x.real() * y.imag() + x.imag() * y.real();
      }
      out.data[i * n + j] = {re, im};
    }
  }
  return out;
}

ExecutionTrace execute_plan(const TensorNetwork& net, const ContractionTree& tree, const ExecOptions& opts) {
  if (!tree.is_complete()) throw std::invalid_argument("tree is not complete");
  check_budget(tree, opts);
  auto leaf = [&](TreeNodeId c) { return leaf_tensor(net, static_cast<VertexId>(tree.leaf_label(c))); };
  return run_tree(tree, leaf, opts, 1).trace;
}

cplx execute_scalar(const TensorNetwork& net, const ContractionTree& tree, const ExecOptions& opts) {
  const auto trace = execute_plan(net, tree, opts);
  if (trace.result.rank() != 0) throw std::invalid_argument("network has open legs; the result is not a scalar");
  return trace.result.data.at(0);
}

cplx amplitude_by_components(const TensorNetwork& net, const ExecOptions& opts) {
  cplx out{1.0, 0.0};
  for (const auto& comp : net.connected_components()) {
    const InducedNetwork sub = induced_subnetwork(net, comp);
    out *= execute_scalar(sub.network, greedy_tree(sub.network), opts);
  }
  return out;
}

DistributedEmulation execute_distributed_emulation(const Plan& plan, const EmulationOptions& opts) {
  const TensorNetwork& net = plan.network();
  if (!net.has_all_payloads()) throw std::invalid_argument("every tensor needs a payload");
  const std::size_t k = plan.num_partitions();
  for (std::size_t i = 0; i < k; ++i) check_budget(plan.partition_tree(i), opts.exec);
  check_budget(plan.reduction_tree(), opts.exec);

  DistributedEmulation em;
  std::vector<DenseTensor> partials(k);
  em.partition_seconds.assign(k, 0.0);
  ExecutionTrace& total = em.trace;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& tree = plan.partition_tree(i);
    auto leaf = [&](TreeNodeId c) { return leaf_tensor(net, static_cast<VertexId>(tree.leaf_label(c))); };
    TreeRun run = run_tree(tree, leaf, opts.exec, opts.timing_repeats);
    for (double s : run.node_seconds) em.partition_seconds[i] += s;
    total.mult_count += run.trace.mult_count;
    total.peak_entries = std::max(total.peak_entries, run.trace.peak_entries);
    total.resident_peak_entries = std::max(total.resident_peak_entries, run.trace.resident_peak_entries);
    total.contractions.insert(total.contractions.end(), run.trace.contractions.begin(), run.trace.contractions.end());
    partials[i] = std::move(run.trace.result);
  }
  const auto& red = plan.reduction_tree();
  auto leaf = [&](TreeNodeId c) { return partials[static_cast<std::size_t>(red.leaf_label(c))]; };
  TreeRun run = run_tree(red, leaf, opts.exec, opts.timing_repeats);
  em.reduction_seconds = run.node_seconds;
  total.mult_count += run.trace.mult_count;
  total.peak_entries = std::max(total.peak_entries, run.trace.peak_entries);
  total.resident_peak_entries = std::max(total.resident_peak_entries, run.trace.resident_peak_entries);
  total.contractions.insert(total.contractions.end(), run.trace.contractions.begin(), run.trace.contractions.end());
  total.result = std::move(run.trace.result);

  em.serial_seconds = std::accumulate(em.partition_seconds.begin(), em.partition_seconds.end(), 0.0) +
                      std::accumulate(em.reduction_seconds.begin(), em.reduction_seconds.end(), 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    double t = em.partition_seconds[i];
    for (TreeNodeId v = red.parent(red.leaf_for(static_cast<std::int64_t>(i))); v != kNoNode; v = red.parent(v)) {
      t += em.reduction_seconds[v];
    }
    em.emulated_seconds = std::max(em.emulated_seconds, t);
  }
  return em;
}

nlohmann::json dense_tensor_to_json(const DenseTensor& t) {
  nlohmann::json data = nlohmann::json::array();
  for (const cplx& z : t.data) {
    data.push_back(z.real());
    data.push_back(z.imag());
  }
  return {{"labels", t.labels}, {"dims", t.dims}, {"data", std::move(data)}};
}

nlohmann::json execution_trace_to_json(const ExecutionTrace& t) {
  nlohmann::json recs = nlohmann::json::array();
  for (const auto& r : t.contractions) {
    recs.push_back({{"node", r.node}, {"vc", r.vc}, {"ops", r.ops}, {"entries", r.entries}});
  }
  return {{"result", dense_tensor_to_json(t.result)},
          {"mult_count", t.mult_count},
          {"peak_entries", t.peak_entries},
          {"resident_peak_entries", t.resident_peak_entries},
          {"contractions", std::move(recs)}};
}

nlohmann::json emulation_to_json(const DistributedEmulation& e) {
  return {{"trace", execution_trace_to_json(e.trace)},
          {"timing",
           {{"partition_seconds", e.partition_seconds},
            {"emulated_seconds", e.emulated_seconds},
            {"serial_seconds", e.serial_seconds}}}};
}

}  // namespace tnpart
