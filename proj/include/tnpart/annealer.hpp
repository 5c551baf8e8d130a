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
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tnpart/plan.hpp"
#include "tnpart/rng.hpp"

namespace tnpart {

enum class TargetMode { Naive, Directed };
std::string_view to_string(TargetMode m);
TargetMode target_mode_from_string(std::string_view s);

struct AnnealConfig {
  double t0 = 1.0;
  double tf = 0.001;
  int steps = 64;
  /// Logical workers p; each runs ceil(steps / p) steps per iteration.
  int workers = 1;
  /// OS threads used to run the workers; 0 picks min(workers, hardware threads).
  /// Results do not depend on this value.
  int threads = 0;
  double time_limit = 10.0;
  /// When > 0 the run stops after this many iterations and the schedule uses
  /// t = i / max_iterations, making the result independent of timing.
  int max_iterations = 0;
  int restart_threshold = 20;
  TargetMode mode = TargetMode::Directed;
  std::uint64_t seed = 0;
  /// Runs Plan::check_invariants() on every proposed state.
  bool check_invariants = false;

  void validate() const;
};

/// Number of logical workers matching the machine.
int default_workers();

double acceptance_probability(double c, double c_new, double temperature);
double temperature_at(double t, const AnnealConfig& cfg);

int select_target_naive(std::size_t num_partitions, int k_src, Rng& rng);
/// Ties go to the lowest partition id.
int select_target_directed(const Plan& plan, int k_src, TreeNodeId v);

struct Move {
  int k_src = -1;
  TreeNodeId node = kNoNode;
  int k_dest = -1;
};

/// Draws a move: source among partitions with at least two tensors, a non-root
/// node of its tree, then the target. Throws std::logic_error if none exists.
Move propose_move(const Plan& plan, TargetMode mode, Rng& rng);
/// Moves the leaf tensors under move.node to move.k_dest and re-plans.
void apply_move(Plan& plan, const Move& move);
Plan select_neighbor(const Plan& plan, TargetMode mode, Rng& rng);

struct StepStats {
  std::int64_t proposals = 0;
  std::int64_t accepted = 0;
};

/// Called with every proposed state (accepted or not).
using VisitFn = std::function<void(const Plan&)>;

Plan do_steps(int n, Plan current, double temperature, TargetMode mode, Rng& rng, StepStats* stats = nullptr,
              const VisitFn& visit = {});

struct AnnealTraceEntry {
  int iteration = 0;
  double temperature = 0.0;
  double current = 0.0;
  double best = 0.0;
  std::int64_t accepted = 0;
  std::int64_t proposals = 0;
  bool restarted = false;
};

struct AnnealResult {
  Plan best;
  double initial_cost = 0.0;
  double best_cost = 0.0;
  int iterations = 0;
  std::int64_t proposals = 0;
  std::int64_t accepted = 0;
  std::vector<AnnealTraceEntry> trace;
};

/// Simulated annealing over plans. Returns the best state observed, so the
/// returned cost never exceeds the initial one.
AnnealResult anneal(const Plan& initial, const AnnealConfig& cfg, const VisitFn& visit = {});

nlohmann::json trace_entry_to_json(const AnnealTraceEntry& e);
/// One JSON object per line.
std::string trace_to_json_lines(const std::vector<AnnealTraceEntry>& trace);

}  // namespace tnpart
