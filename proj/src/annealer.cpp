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

#include "tnpart/annealer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace tnpart {

std::string_view to_string(TargetMode m) { return m == TargetMode::Naive ? "naive" : "directed"; }

TargetMode target_mode_from_string(std::string_view s) {
  if (s == "naive") return TargetMode::Naive;
  if (s == "directed") return TargetMode::Directed;
  throw std::invalid_argument("unknown target mode: " + std::string(s));
}

void AnnealConfig::validate() const {
  if (!(t0 > 0.0)) throw std::invalid_argument("t0 must be positive");
  if (!(tf > 0.0) || tf > t0) throw std::invalid_argument("tf must lie in (0, t0]");
  if (steps < 1) throw std::invalid_argument("steps must be >= 1");
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
  if (threads < 0) throw std::invalid_argument("threads must be >= 0");
  if (max_iterations < 0) throw std::invalid_argument("max_iterations must be >= 0");
  if (max_iterations == 0 && !(time_limit > 0.0)) throw std::invalid_argument("time_limit must be positive");
  if (restart_threshold < 1) throw std::invalid_argument("restart_threshold must be >= 1");
}

int default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

double acceptance_probability(double c, double c_new, double temperature) {
  if (!(c > 0.0) || !(c_new > 0.0) || !(temperature > 0.0)) {
    throw std::invalid_argument("acceptance probability needs positive costs and temperature");
  }
  return std::exp(-std::log(c_new / c) / temperature);
}

double temperature_at(double t, const AnnealConfig& cfg) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("time fraction must lie in [0, 1]");
  if (t == 0.0) return cfg.t0;
  if (t == 1.0) return cfg.tf;
  return cfg.t0 * std::pow(cfg.tf / cfg.t0, t);
}

int select_target_naive(std::size_t num_partitions, int k_src, Rng& rng) {
  if (num_partitions < 2) throw std::invalid_argument("target selection needs at least two partitions");
  int r = static_cast<int>(std::uniform_int_distribution<std::size_t>(0, num_partitions - 2)(rng));
  return r >= k_src ? r + 1 : r;
}

int select_target_directed(const Plan& plan, int k_src, TreeNodeId v) {
  const std::size_t n = plan.num_partitions();
  if (n < 2) throw std::invalid_argument("target selection needs at least two partitions");
  const LegSet& moved = plan.partition_tree(k_src).legs(v);
  int best = -1;
  double best_score = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (static_cast<int>(k) == k_src) continue;
    const double s = memory_reduction(plan.network(), moved, plan.partition_legs(k));
    if (best < 0 || s > best_score) {
      best = static_cast<int>(k);
      best_score = s;
    }
  }
  return best;
}

Move propose_move(const Plan& plan, TargetMode mode, Rng& rng) {
  const std::size_t n = plan.num_partitions();
  if (n < 2) throw std::logic_error("a move needs at least two partitions");
  std::vector<int> sources;
  for (std::size_t k = 0; k < n; ++k) {
    if (plan.partitioning().blocks[k].size() >= 2) sources.push_back(static_cast<int>(k));
  }
  if (sources.empty()) throw std::logic_error("no partition holds a movable subtree");
  Move m;
  m.k_src = sources[std::uniform_int_distribution<std::size_t>(0, sources.size() - 1)(rng)];
  const ContractionTree& tree = plan.partition_tree(m.k_src);
  const auto root = tree.root();
  auto pick = static_cast<TreeNodeId>(std::uniform_int_distribution<std::size_t>(0, tree.num_nodes() - 2)(rng));
  m.node = pick >= root ? pick + 1 : pick;
  m.k_dest = mode == TargetMode::Naive ? select_target_naive(n, m.k_src, rng)
                                       : select_target_directed(plan, m.k_src, m.node);
  return m;
}

void apply_move(Plan& plan, const Move& move) {
  const ContractionTree& tree = plan.partition_tree(move.k_src);
  if (move.node == tree.root()) throw std::invalid_argument("moving the root would empty the partition");
  const auto vertices = tree.subtree_leaf_tensors(move.node);
  plan.move_vertices(move.k_src, move.k_dest, vertices);
}

Plan select_neighbor(const Plan& plan, TargetMode mode, Rng& rng) {
  const Move m = propose_move(plan, mode, rng);
  Plan next = plan;
  apply_move(next, m);
  return next;
}

Plan do_steps(int n, Plan current, double temperature, TargetMode mode, Rng& rng, StepStats* stats,
              const VisitFn& visit) {
  double c = current.cost();
  for (int j = 0; j < n; ++j) {
    Plan cand = select_neighbor(current, mode, rng);
    if (visit) visit(cand);
    const double c_new = cand.cost();
    const double u = uniform_open_closed(rng);
    bool accept;
    if (c_new <= c) {
      accept = true;
    } else if (c <= 0.0) {
      accept = false;
    } else {
      accept = acceptance_probability(c, c_new, temperature) >= u;
    }
    if (stats) ++stats->proposals;
    if (accept) {
      current = std::move(cand);
      c = c_new;
      if (stats) ++stats->accepted;
    }
  }
  return current;
}

AnnealResult anneal(const Plan& initial, const AnnealConfig& cfg, const VisitFn& visit) {
  const auto start = std::chrono::steady_clock::now();
  cfg.validate();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };

  AnnealResult res;
  res.best = initial;
  res.initial_cost = res.best_cost = initial.cost();
  Plan current = initial;
  double c_current = res.best_cost;

  std::vector<int> sources;
  for (std::size_t k = 0; k < initial.num_partitions(); ++k) {
    if (initial.partitioning().blocks[k].size() >= 2) sources.push_back(static_cast<int>(k));
  }
  // Nothing to move: the plan is its own neighbourhood.
  if (initial.num_partitions() < 2 || sources.empty()) return res;

  const int p = cfg.workers;
  const int steps_per_worker = (cfg.steps + p - 1) / p;
  const int threads = std::max(1, std::min(p, cfg.threads > 0 ? cfg.threads : default_workers()));
  int i = -1, i_best = -1;

  std::vector<std::optional<Plan>> out(p);
  std::vector<StepStats> stats(p);
  while (true) {
    double t;
    if (cfg.max_iterations > 0) {
      if (i + 1 >= cfg.max_iterations) break;
      t = static_cast<double>(i + 1) / cfg.max_iterations;
    } else {
      const double e = elapsed();
      if (e >= cfg.time_limit) break;
      t = e / cfg.time_limit;
    }
    ++i;
    const double temp = temperature_at(std::min(t, 1.0), cfg);

    auto run_worker = [&](int w) {
      Rng rng(derive_seed(cfg.seed, {static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(w)}));
      stats[w] = {};
      out[w] = do_steps(steps_per_worker, current, temp, cfg.mode, rng, &stats[w],
                        cfg.check_invariants ? VisitFn([&](const Plan& s) {
                          s.check_invariants();
                          if (visit) visit(s);
                        })
                                             : visit);
    };
    if (threads == 1) {
      for (int w = 0; w < p; ++w) run_worker(w);
    } else {
      std::vector<std::thread> pool;
      std::vector<std::exception_ptr> errors(threads);
      for (int th = 0; th < threads; ++th) {
        pool.emplace_back([&, th] {
          try {
            for (int w = th; w < p; w += threads) run_worker(w);
          } catch (...) {
            errors[th] = std::current_exception();
          }
        });
      }
      for (auto& th : pool) th.join();
      for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
    }

    int winner = 0;
    for (int w = 1; w < p; ++w) {
      if (out[w]->cost() < out[winner]->cost()) winner = w;
    }
    current = std::move(*out[winner]);
    c_current = current.cost();

    AnnealTraceEntry entry;
    entry.iteration = i;
    entry.temperature = temp;
    for (const auto& s : stats) {
      entry.accepted += s.accepted;
      entry.proposals += s.proposals;
    }
    res.accepted += entry.accepted;
    res.proposals += entry.proposals;

    if (c_current < res.best_cost) {
      i_best = i;
      res.best = current;
      res.best_cost = c_current;
    } else if (i - i_best >= cfg.restart_threshold) {
      i_best = i;
      current = res.best;
      c_current = res.best_cost;
      entry.restarted = true;
    }
    entry.current = c_current;
    entry.best = res.best_cost;
    res.trace.push_back(entry);
  }
  res.iterations = i + 1;
  return res;
}

nlohmann::json trace_entry_to_json(const AnnealTraceEntry& e) {
  return {{"iteration", e.iteration}, {"temperature", e.temperature}, {"current", e.current},
          {"best", e.best},           {"accepted", e.accepted},       {"proposals", e.proposals},
          {"restarted", e.restarted}};
}

std::string trace_to_json_lines(const std::vector<AnnealTraceEntry>& trace) {
  std::ostringstream os;
  for (const auto& e : trace) os << trace_entry_to_json(e).dump() << '\n';
  return os.str();
}

}  // namespace tnpart
