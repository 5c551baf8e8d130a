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

#include "tnpart/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tnpart {

namespace {

using namespace std::complex_literals;

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::toupper(c); });
  return out;
}

void want_params(std::string_view name, std::span<const double> params, std::size_t n) {
  if (params.size() != n) {
    throw std::invalid_argument(std::string(name) + " expects " + std::to_string(n) + " parameter(s)");
  }
}

// Controlled version of a 2x2 matrix; control is the most significant bit.
std::vector<cplx> controlled(const std::vector<cplx>& u) {
  std::vector<cplx> m(16, 0.0);
  m[0] = m[5] = 1.0;
  m[10] = u[0];
  m[11] = u[1];
  m[14] = u[2];
  m[15] = u[3];
  return m;
}

int gate_arity(const std::string& name) {
  if (name == "CX" || name == "CNOT" || name == "CZ" || name == "CP" || name == "SWAP") return 2;
  if (name == "CCX" || name == "TOFFOLI") return 3;
  return 1;
}

}  // namespace

std::vector<cplx> named_gate_matrix(std::string_view raw_name, std::span<const double> params) {
  const std::string name = upper(raw_name);
  const double r = std::numbers::sqrt2 / 2.0;
  if (name == "I" || name == "ID") {
    want_params(name, params, 0);
    return {1.0, 0.0, 0.0, 1.0};
  }
  if (name == "H") {
    want_params(name, params, 0);
    return {r, r, r, -r};
  }
  if (name == "X") {
    want_params(name, params, 0);
    return {0.0, 1.0, 1.0, 0.0};
  }
  if (name == "Y") {
    want_params(name, params, 0);
    return {0.0, -1i, 1i, 0.0};
  }
  if (name == "Z") {
    want_params(name, params, 0);
    return {1.0, 0.0, 0.0, -1.0};
  }
  if (name == "S") {
    want_params(name, params, 0);
    return {1.0, 0.0, 0.0, 1i};
  }
  if (name == "T") {
    want_params(name, params, 0);
    return {1.0, 0.0, 0.0, std::polar(1.0, std::numbers::pi / 4.0)};
  }
  if (name == "RX") {
    want_params(name, params, 1);
    const double c = std::cos(params[0] / 2.0), s = std::sin(params[0] / 2.0);
    return {c, -1i * s, -1i * s, c};
  }
  if (name == "RY") {
    want_params(name, params, 1);
    const double c = std::cos(params[0] / 2.0), s = std::sin(params[0] / 2.0);
    return {c, -s, s, c};
  }
  if (name == "RZ") {
    want_params(name, params, 1);
    return {std::polar(1.0, -params[0] / 2.0), 0.0, 0.0, std::polar(1.0, params[0] / 2.0)};
  }
  if (name == "CX" || name == "CNOT") {
    want_params(name, params, 0);
    return controlled({0.0, 1.0, 1.0, 0.0});
  }
  if (name == "CZ") {
    want_params(name, params, 0);
    return controlled({1.0, 0.0, 0.0, -1.0});
  }
  if (name == "CP") {
    want_params(name, params, 1);
    return controlled({1.0, 0.0, 0.0, std::polar(1.0, params[0])});
  }
  if (name == "SWAP") {
    want_params(name, params, 0);
    std::vector<cplx> m(16, 0.0);
    m[0] = m[6] = m[9] = m[15] = 1.0;
    return m;
  }
  if (name == "CCX" || name == "TOFFOLI") {
    want_params(name, params, 0);
    std::vector<cplx> m(64, 0.0);
    for (int i = 0; i < 6; ++i) m[i * 8 + i] = 1.0;
    m[6 * 8 + 7] = m[7 * 8 + 6] = 1.0;
    return m;
  }
  throw std::invalid_argument("unknown gate '" + std::string(raw_name) + "' without explicit matrix");
}

bool is_unitary(std::span<const cplx> m, std::size_t dim, double tol) {
  if (m.size() != dim * dim) return false;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      cplx acc = 0.0;
      for (std::size_t k = 0; k < dim; ++k) acc += std::conj(m[k * dim + i]) * m[k * dim + j];
      if (std::abs(acc - (i == j ? 1.0 : 0.0)) > tol) return false;
    }
  }
  return true;
}

namespace {

// Accepts either a flat list of 4^k [re,im] pairs or 2^k rows of 2^k entries,
// where an entry is a real number or an [re,im] pair.
std::vector<cplx> parse_matrix(const nlohmann::json& j, std::size_t dim) {
  auto entry = [](const nlohmann::json& e) -> cplx {
    if (e.is_number()) return {e.get<double>(), 0.0};
    if (e.is_array() && e.size() == 2) return {e[0].get<double>(), e[1].get<double>()};
    throw std::invalid_argument("matrix entries must be numbers or [re,im] pairs");
  };
  if (!j.is_array()) throw std::invalid_argument("gate matrix must be an array");
  std::vector<cplx> out;
  if (j.size() == dim * dim) {
    for (const auto& e : j) out.push_back(entry(e));
  } else if (j.size() == dim) {
    for (const auto& row : j) {
      if (!row.is_array() || row.size() != dim) throw std::invalid_argument("gate matrix row has wrong length");
      for (const auto& e : row) out.push_back(entry(e));
    }
  } else {
    throw std::invalid_argument("gate matrix has wrong size for its target count");
  }
  return out;
}

}  // namespace

Circuit circuit_from_json(const nlohmann::json& j) {
  Circuit c;
  c.n_qubits = j.at("qubits").get<int>();
  if (c.n_qubits < 1) throw std::invalid_argument("circuit needs at least one qubit");
  for (const auto& g : j.at("gates")) {
    Gate gate;
    gate.name = g.at("name").get<std::string>();
    gate.targets = g.at("targets").get<std::vector<int>>();
    if (g.contains("params")) gate.params = g.at("params").get<std::vector<double>>();
    if (gate.targets.empty()) throw std::invalid_argument("gate '" + gate.name + "' has no targets");
    for (int q : gate.targets) {
      if (q < 0 || q >= c.n_qubits) {
        throw std::invalid_argument("gate '" + gate.name + "' targets qubit " + std::to_string(q) + " outside a " +
                                    std::to_string(c.n_qubits) + "-qubit circuit");
      }
    }
    auto sorted = gate.targets;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("gate '" + gate.name + "' has repeated targets");
    }
    const std::size_t dim = std::size_t{1} << gate.targets.size();
    if (g.contains("matrix")) {
      gate.matrix = parse_matrix(g.at("matrix"), dim);
      if (!is_unitary(gate.matrix, dim)) throw std::invalid_argument("gate '" + gate.name + "' matrix is not unitary");
    } else {
      if (gate_arity(upper(gate.name)) != static_cast<int>(gate.targets.size())) {
        throw std::invalid_argument("gate '" + gate.name + "' has the wrong number of targets");
      }
      gate.matrix = named_gate_matrix(gate.name, gate.params);
    }
    c.gates.push_back(std::move(gate));
  }
  return c;
}

Circuit parse_circuit(std::string_view text) {
  return circuit_from_json(nlohmann::json::parse(text.begin(), text.end()));
}

nlohmann::json circuit_to_json(const Circuit& c) {
  nlohmann::json gates = nlohmann::json::array();
  for (const Gate& g : c.gates) {
    nlohmann::json jg{{"name", g.name}, {"targets", g.targets}};
    if (!g.params.empty()) jg["params"] = g.params;
    bool canonical = false;
    try {
      canonical = named_gate_matrix(g.name, g.params) == g.matrix;
    } catch (const std::invalid_argument&) {
    }
    if (!canonical) {
      nlohmann::json m = nlohmann::json::array();
      for (const cplx& z : g.matrix) m.push_back({z.real(), z.imag()});
      jg["matrix"] = std::move(m);
    }
    gates.push_back(std::move(jg));
  }
  return {{"qubits", c.n_qubits}, {"gates", std::move(gates)}};
}

TensorNetwork circuit_to_network(const Circuit& c, std::string_view bitstring, std::string_view initial) {
  const auto n = static_cast<std::size_t>(c.n_qubits);
  if (bitstring.size() != n || initial.size() != n) {
    throw std::invalid_argument("bitstring and initial state must have one character per qubit");
  }
  auto basis = [](char ch) -> std::vector<cplx> {
    if (ch == '0') return {1.0, 0.0};
    if (ch == '1') return {0.0, 1.0};
    throw std::invalid_argument("basis strings may only contain '0' and '1'");
  };

  TensorNetwork net;
  // Open end of each qubit's world-line.
  std::vector<Endpoint> wire(n);
  for (std::size_t q = 0; q < n; ++q) {
    wire[q] = {net.add_tensor({2}, basis(initial[q])), 0};
  }
  for (const Gate& g : c.gates) {
    const auto k = static_cast<int>(g.targets.size());
    // Axes [out_0..out_{k-1}, in_0..in_{k-1}] so the payload is the matrix itself.
    const VertexId v = net.add_tensor(std::vector<Dim>(2 * k, 2), g.matrix);
    for (int j = 0; j < k; ++j) {
      const auto q = static_cast<std::size_t>(g.targets[j]);
      net.bond(wire[q].vertex, wire[q].axis, v, k + j);
      wire[q] = {v, j};
    }
  }
  for (std::size_t q = 0; q < n; ++q) {
    const VertexId p = net.add_tensor({2}, basis(bitstring[q]));
    net.bond(wire[q].vertex, wire[q].axis, p, 0);
  }
  return net;
}

}  // namespace tnpart
