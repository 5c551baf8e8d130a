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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tnpart/annealer.hpp"
#include "tnpart/circuit.hpp"
#include "tnpart/corpus.hpp"
#include "tnpart/cost_model.hpp"
#include "tnpart/plan.hpp"

namespace tnpart {

enum class Method { SerialBaseline, PartitionOnly, SaNaive, SaDirected };
std::string_view to_string(Method m);
Method method_from_string(std::string_view s);

/// Either a file path (circuit or network JSON) or an in-memory circuit.
struct BenchInput {
  std::string name;
  std::string path;
  std::optional<Circuit> circuit;
};

struct RunConfig {
  std::vector<BenchInput> inputs;
  /// Empty means all zeros.
  std::string amplitude;
  std::vector<int> sweep{4, 8, 16, 32, 64, 128, 256};
  std::vector<Method> methods{Method::SerialBaseline, Method::PartitionOnly, Method::SaNaive, Method::SaDirected};
  double imbalance = 0.03;
  GreedyConfig reduction;
  CostOptions cost;
  /// Annealer settings; mode, seed and time_limit are set per run.
  AnnealConfig anneal;
  /// Planning budget per (circuit, method), split evenly across sweep values.
  double time_budget = 10.0;
  int repeats = 2;
  std::uint64_t seed = 0;
  bool execute = false;
  std::int64_t max_entries = std::int64_t{1} << 28;

  void validate() const;
};

/// Loads a JSON file holding either a circuit ("qubits") or a network ("tensors").
TensorNetwork load_network(const std::string& path, const std::string& amplitude);
TensorNetwork circuit_network(const Circuit& c, const std::string& amplitude);

struct SweepEntry {
  int k = 0;
  /// Mean over repeats.
  CostReport cost;
  std::vector<double> run_costs;
  double ratio = 0.0;
  bool best = false;
  std::int64_t anneal_iterations = 0;
  double seconds = 0.0;
  std::string skipped;
};

struct MethodResult {
  Method method = Method::SerialBaseline;
  std::vector<SweepEntry> entries;
  int best_k = 0;
  double best_ratio = 0.0;
  double best_cost = 0.0;
  std::optional<cplx> amplitude;
};

struct CircuitResult {
  std::string name;
  std::string error;
  std::size_t tensors = 0;
  CostReport baseline;
  std::vector<MethodResult> methods;

  bool ok() const { return error.empty(); }
};

struct BenchmarkReport {
  nlohmann::json config;
  std::vector<CircuitResult> circuits;

  bool all_ok() const;
};

/// Runs every method on every input. Input failures become error entries.
BenchmarkReport run_pipeline(const RunConfig& cfg);

/// Best plan for one network and method at partition count k.
struct MethodRun {
  Plan plan;
  std::int64_t anneal_iterations = 0;
};
MethodRun run_method(const TensorNetwork& net, Method method, int k, const RunConfig& cfg, std::uint64_t seed,
                     double time_limit);

/// "results" is a pure function of the config when annealing runs on an
/// iteration budget; wall times live under "timing".
nlohmann::json report_to_json(const BenchmarkReport& r);
BenchmarkReport report_from_json(const nlohmann::json& j);

struct MethodSummary {
  std::string method;
  std::size_t circuits = 0;
  double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
  double geomean = 0.0;
  double mean_con_dist = 0.0;
  double mean_mem = 0.0;
};

/// Distribution of best-k ratios per method over all successful circuits.
std::vector<MethodSummary> compare_report(const std::vector<BenchmarkReport>& reports);
nlohmann::json summary_to_json(const std::vector<MethodSummary>& s);
std::string summary_to_table(const std::vector<MethodSummary>& s);

/// Linear-interpolation quantile of a non-empty sample, q in [0, 1].
double quantile(std::vector<double> xs, double q);

}  // namespace tnpart
