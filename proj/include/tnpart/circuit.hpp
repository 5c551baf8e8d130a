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

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tnpart/network.hpp"

namespace tnpart {

/// A k-qubit gate. `matrix` is 2^k x 2^k, row-major; targets[0] is the most
/// significant bit of the row/column index.
struct Gate {
  std::string name;
  std::vector<int> targets;
  std::vector<double> params;
  std::vector<cplx> matrix;
};

struct Circuit {
  int n_qubits = 0;
  std::vector<Gate> gates;
};

/// Canonical matrix for a named gate (H, X, Y, Z, S, T, RX, RY, RZ, CX, CZ, CP,
/// SWAP, CCX). Throws std::invalid_argument for unknown names or wrong arity.
std::vector<cplx> named_gate_matrix(std::string_view name, std::span<const double> params);

bool is_unitary(std::span<const cplx> matrix, std::size_t dim, double tol = 1e-10);

/// Circuit JSON: {"qubits":N,"gates":[{"name":"CX","targets":[0,1]},
///   {"name":"RZ","targets":[2],"params":[0.5]},
///   {"name":"custom","targets":[0],"matrix":[[re,im],...]}]}
Circuit parse_circuit(std::string_view text);
Circuit circuit_from_json(const nlohmann::json& j);
nlohmann::json circuit_to_json(const Circuit& c);

/// Closed network whose full contraction is <bitstring| C |initial>.
/// Character q of each string is the basis value of qubit q. Tensors are laid
/// out as n initial vectors, one tensor per gate in order, then n projections.
TensorNetwork circuit_to_network(const Circuit& c, std::string_view bitstring, std::string_view initial);

}  // namespace tnpart
