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

#include "tnpart/circuit.hpp"

namespace tnpart {

/// H on qubit 0 followed by a CX ladder.
Circuit ghz_circuit(int n);
/// H on every qubit, then CZ on each listed pair.
Circuit graph_state_circuit(int n, const std::vector<std::pair<int, int>>& edges);
/// Graph state on a ring plus `extra` random chords.
Circuit random_graph_state_circuit(int n, int extra, std::uint64_t seed);
/// QFT without the final swaps: H and controlled phases.
Circuit qft_circuit(int n);
/// `depth` layers of random single-qubit rotations and a random CX/CZ matching.
Circuit random_circuit(int n, int depth, std::uint64_t seed);

struct NamedCircuit {
  std::string name;
  Circuit circuit;
};

/// Bundled desk-scale suite: GHZ, graph-state, QFT and random circuits on
/// 6 to 12 qubits.
std::vector<NamedCircuit> desk_suite();

}  // namespace tnpart
