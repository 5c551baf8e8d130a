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
#include <string>
#include <vector>

#include <json.hpp>

#include "tnpart/network.hpp"

namespace tnpart {

inline constexpr double kDefaultImbalance = 0.03;

/// Grouping of network vertices into blocks, each contracted on one node.
struct Partitioning {
  std::vector<std::vector<VertexId>> blocks;
  double epsilon = kDefaultImbalance;

  std::size_t size() const { return blocks.size(); }
  /// Block index per vertex; -1 for uncovered vertices.
  std::vector<int> block_of(std::size_t num_vertices) const;
  /// Sorts every block in place.
  void normalize();

  bool operator==(const Partitioning& o) const { return blocks == o.blocks; }
};

enum class PartitionViolation { Cover, Disjoint, NonEmpty, UnknownVertex };

struct ValidationResult {
  bool ok = true;
  struct Issue {
    PartitionViolation kind;
    std::vector<int> blocks;
    std::string message;
  };
  std::vector<Issue> issues;

  explicit operator bool() const { return ok; }
};

/// Checks the cover, disjointness and non-emptiness conditions. Never throws;
/// every violation is reported with the offending block indices.
ValidationResult validate(const Partitioning& k, const TensorNetwork& net);

/// Largest block size admitted by the imbalance bound (1+eps)*ceil(|V|/k).
std::size_t max_block_size(std::size_t num_vertices, std::size_t k, double epsilon);
bool is_balanced(const Partitioning& k, std::size_t num_vertices);

/// Sum of log2(n(e)) over bound edges whose endpoints lie in different blocks.
/// Throws std::invalid_argument for an invalid partitioning.
double cut_weight(const Partitioning& k, const TensorNetwork& net);

struct PartitionTrace {
  double grown_cut = 0.0;
  /// Cut weight after each refinement pass.
  std::vector<double> pass_cut;
};

/// Balanced min-cut style partitioning: farthest-point seeds, round-robin BFS
/// growth, then first-improvement boundary refinement (single moves and
/// pairwise swaps) capped at 10 passes. Deterministic given the seed.
Partitioning initial_partition(const TensorNetwork& net, int k, double epsilon, std::uint64_t seed,
                               PartitionTrace* trace = nullptr);

/// Vertex v goes to block v mod k.
Partitioning round_robin_partition(const TensorNetwork& net, int k);

nlohmann::json partitioning_to_json(const Partitioning& k);
Partitioning partitioning_from_json(const nlohmann::json& j);

}  // namespace tnpart
