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
#include <span>
#include <vector>

#include "tnpart/contraction_tree.hpp"

namespace tnpart {

enum class SampleSelection { ConSerial, Mem };

struct GreedyConfig {
  /// Log-normal score perturbation; 0 is plain greedy.
  double noise_scale = 0.3;
  int samples = 32;
  std::uint64_t rng_seed = 0;
  /// Cost that picks the winning RandomGreedy sample.
  SampleSelection select = SampleSelection::ConSerial;
};

/// A leaf handed to the greedy core: a label and the tensor's legs.
struct PseudoTensor {
  std::int64_t label = 0;
  LegSet legs;
};

/// |a| + |b| - |a (x) b|, the memory reduction of contracting a with b.
double memory_reduction(const TensorNetwork& net, const LegSet& a, const LegSet& b);

/// Deterministic greedy over the subnetwork induced by `view`; cut edges act as
/// open legs. Only pairs sharing an edge are candidates while any exist; when
/// none remain the two tensors with the largest (outer product) score are
/// joined. Ties go to the smallest (node, node) pair, leaves numbered in
/// ascending vertex order.
ContractionTree greedy_tree(const TensorNetwork& net, std::span<const VertexId> view);
ContractionTree greedy_tree(const TensorNetwork& net);

/// Greedy over arbitrary pseudo-tensors with multiplicative exp(noise * g)
/// score noise drawn from `seed`.
ContractionTree greedy_over(const TensorNetwork& net, std::span<const PseudoTensor> leaves, double noise_scale,
                            std::uint64_t seed);

/// cfg.samples greedy passes; sample 0 is always the unperturbed greedy and
/// sample i > 0 uses a seed derived from (cfg.rng_seed, i). Returns the
/// sample with the lowest selection cost, earliest index on ties.
ContractionTree random_greedy_tree(const TensorNetwork& net, std::span<const PseudoTensor> leaves,
                                   const GreedyConfig& cfg);
ContractionTree random_greedy_tree(const TensorNetwork& net, std::span<const VertexId> view, const GreedyConfig& cfg);

/// Fan-in tree over partition result tensors; leaf i is partition i.
ContractionTree reduction_path(const TensorNetwork& net, std::span<const LegSet> partition_legs,
                               const GreedyConfig& cfg);

std::vector<PseudoTensor> vertex_pseudo_tensors(const TensorNetwork& net, std::span<const VertexId> view);

}  // namespace tnpart
