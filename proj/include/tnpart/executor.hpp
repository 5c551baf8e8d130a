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
#include <vector>

#include <json.hpp>

#include "tnpart/contraction_tree.hpp"
#include "tnpart/network.hpp"

namespace tnpart {

class Plan;

/// Row-major dense tensor; axis a carries edge labels[a].
struct DenseTensor {
  std::vector<EdgeId> labels;
  std::vector<Dim> dims;
  std::vector<cplx> data;

  std::size_t rank() const { return labels.size(); }
  std::size_t entries() const { return data.size(); }
  /// Same tensor with axes reordered to match `order` (a permutation of labels).
  DenseTensor permuted_to(const std::vector<EdgeId>& order) const;
};

enum class ContractKernel {
  /// Permute both operands, then one complex GEMM.
  Gemm,
  /// Direct index loops; same summation order as Gemm with the scalar kernel.
  Loops,
};

/// Leaf tensor of vertex v from its payload, with self-loop axis pairs traced out.
DenseTensor leaf_tensor(const TensorNetwork& net, VertexId v);

/// Contracts all labels common to s and t. Result axes: s's free axes in order,
/// then t's. Adds the number of complex multiplications to *mults if given.
DenseTensor contract_pair(const DenseTensor& s, const DenseTensor& t, std::int64_t* mults = nullptr,
                          ContractKernel kernel = ContractKernel::Gemm);

inline constexpr std::int64_t kDefaultMaxEntries = std::int64_t{1} << 28;

struct ExecOptions {
  std::int64_t max_entries = kDefaultMaxEntries;
  ContractKernel kernel = ContractKernel::Gemm;
};

struct ContractionRecord {
  TreeNodeId node = kNoNode;
  double vc = 0.0;
  std::int64_t ops = 0;
  /// |S| + |T| + |R| for this contraction.
  std::int64_t entries = 0;
  double seconds = 0.0;
};

struct ExecutionTrace {
  DenseTensor result;
  std::int64_t mult_count = 0;
  /// Max over contractions of the three operand sizes.
  std::int64_t peak_entries = 0;
  /// Max over time of all live tensors, including pending intermediates.
  std::int64_t resident_peak_entries = 0;
  std::vector<ContractionRecord> contractions;
};

/// Post-order execution of a network tree. Throws std::invalid_argument on
/// missing payloads and std::overflow_error when mem_cost(tree) exceeds
/// opts.max_entries.
ExecutionTrace execute_plan(const TensorNetwork& net, const ContractionTree& tree, const ExecOptions& opts = {});

/// Amplitude of a closed network: the scalar result.
cplx execute_scalar(const TensorNetwork& net, const ContractionTree& tree, const ExecOptions& opts = {});

/// Scalar of a closed, possibly disconnected network: each connected component
/// is contracted along its greedy tree and the results are multiplied.
cplx amplitude_by_components(const TensorNetwork& net, const ExecOptions& opts = {});

struct EmulationOptions {
  ExecOptions exec;
  /// Each contraction is timed this many times; the minimum is kept.
  int timing_repeats = 1;
};

struct DistributedEmulation {
  ExecutionTrace trace;
  std::vector<double> partition_seconds;
  /// Wall time of each reduction-tree contraction, indexed by reduction node.
  std::vector<double> reduction_seconds;
  /// max_k (partition_seconds[k] + contraction times on k's fan-in path).
  double emulated_seconds = 0.0;
  double serial_seconds = 0.0;
};

/// Contracts every partition serially and then the reduction tree, timing
/// each step. The result matches execute_plan on plan.compose().tree.
DistributedEmulation execute_distributed_emulation(const Plan& plan, const EmulationOptions& opts = {});

nlohmann::json dense_tensor_to_json(const DenseTensor& t);
nlohmann::json execution_trace_to_json(const ExecutionTrace& t);
nlohmann::json emulation_to_json(const DistributedEmulation& e);

}  // namespace tnpart
