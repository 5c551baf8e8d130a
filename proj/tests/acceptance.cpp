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

// Acceptance suite: one PASS/FAIL line per criterion. Pass criterion numbers as
// arguments to run a subset.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <string>

#include "support.hpp"
#include "tnpart/annealer.hpp"
#include "tnpart/corpus.hpp"
#include "tnpart/cost_model.hpp"
#include "tnpart/executor.hpp"
#include "tnpart/partitioner.hpp"
#include "tnpart/pathfind.hpp"
#include "tnpart/pipeline.hpp"
#include "tnpart/plan.hpp"

using namespace tnpart;
using namespace tnpart::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double a = 0, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Outcome op_count_identity() {
  Rng64 rng(101);
  int checked = 0, bad = 0;
  for (int i = 0; i < 200; ++i) {
    const TensorNetwork net = random_network(rng, 2 + i % 11, 4, true);
    const auto tree = i % 2 ? random_tree(net, rng) : greedy_tree(net);
    const auto trace = execute_plan(net, tree);
    bad += static_cast<double>(trace.mult_count) != con_serial(tree) ? 1 : 0;
    ++checked;
  }
  return {bad == 0, fmt("%g networks, %g mismatches", checked, bad)};
}

Outcome amplitude_oracle() {
  double worst_ghz = 0.0, worst_zero = 0.0, worst_sim = 0.0;
  for (int n = 2; n <= 10; ++n) {
    const Circuit c = ghz_circuit(n);
    const std::string zeros(n, '0');
    std::string off = zeros;
    off.back() = '1';
    const TensorNetwork a = circuit_to_network(c, zeros, zeros);
    const TensorNetwork b = circuit_to_network(c, off, zeros);
    worst_ghz = std::max(worst_ghz, std::abs(execute_scalar(a, greedy_tree(a)) - cplx(M_SQRT1_2)));
    worst_zero = std::max(worst_zero, std::abs(execute_scalar(b, greedy_tree(b))));
  }
  Rng64 rng(102);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Circuit c = random_circuit(6, 6, seed);
    const std::string initial(6, '0');
    const auto state = simulate(c, initial);
    for (int trial = 0; trial < 8; ++trial) {
      const std::size_t idx = rng() % state.size();
      std::string bits(6, '0');
      for (int q = 0; q < 6; ++q) bits[q] = (idx >> (5 - q)) & 1 ? '1' : '0';
      const TensorNetwork net = circuit_to_network(c, bits, initial);
      worst_sim = std::max(worst_sim, std::abs(execute_scalar(net, greedy_tree(net)) - state[idx]));
    }
  }
  return {worst_ghz <= 1e-9 && worst_zero <= 1e-12 && worst_sim <= 1e-9,
          fmt("GHZ err %.2e, mismatched %.2e, random vs state vector %.2e", worst_ghz, worst_zero, worst_sim)};
}

Outcome metric_recovery() {
  Rng64 rng(103);
  int bad_serial = 0, bad_par = 0, trees = 0;
  for (int i = 0; i < 150; ++i) {
    const TensorNetwork net = random_network(rng, 2 + i % 14, 4, false);
    const auto tree = i % 3 ? random_tree(net, rng) : greedy_tree(net);
    Partitioning one{{{}}};
    Partitioning singletons;
    for (std::size_t v = 0; v < net.num_vertices(); ++v) {
      one.blocks[0].push_back(static_cast<VertexId>(v));
      singletons.blocks.push_back({static_cast<VertexId>(v)});
    }
    bad_serial += con_dist(tree, one, IntraNode::Serial, {0.0, 0.0}) != con_serial(tree) ? 1 : 0;
    bad_par += con_dist(tree, singletons, IntraNode::Serial, {0.0, 0.0}) != con_par(tree) ? 1 : 0;
    ++trees;
  }
  return {bad_serial == 0 && bad_par == 0,
          fmt("%g trees, %g one-partition mismatches, %g singleton mismatches", trees, bad_serial, bad_par)};
}

Outcome annealer_soundness() {
  std::atomic<long> visited{0}, invalid{0};
  int worse = 0, runs = 0;
  Rng64 rng(104);
  for (int i = 0; i < 6; ++i) {
    const TensorNetwork net = random_network(rng, 16 + 4 * i, 3, false);
    const Plan start(net, initial_partition(net, 2 + i % 4, 0.03, i, nullptr), {});
    AnnealConfig cfg;
    cfg.steps = 50;
    cfg.max_iterations = 20;
    cfg.workers = 1 + i % 2;
    cfg.seed = 1000 + i;
    cfg.check_invariants = true;
    const auto result = anneal(start, cfg, [&](const Plan& p) {
      ++visited;
      const bool ok = validate(p.partitioning(), p.network()).ok &&
                      p.compose().tree.accepts_partitioning(p.partitioning());
      invalid += ok ? 0 : 1;
    });
    worse += result.best_cost > result.initial_cost ? 1 : 0;
    ++runs;
  }
  return {worse == 0 && invalid == 0 && visited >= 1000,
          fmt("%g runs, %g visited states, %g invalid", runs, static_cast<double>(visited), static_cast<double>(invalid)) +
              fmt(", %g runs worse than initial", worse)};
}

Outcome annealer_efficacy() {
  RunConfig cfg;
  for (auto& c : desk_suite()) cfg.inputs.push_back({c.name, "", c.circuit});
  cfg.sweep = {2, 4, 8};
  cfg.methods = {Method::SerialBaseline, Method::SaNaive, Method::SaDirected};
  cfg.time_budget = 10.0;
  cfg.repeats = 1;
  cfg.seed = 7;
  cfg.anneal.workers = default_workers();
  const BenchmarkReport report = run_pipeline(cfg);
  if (!report.all_ok()) return {false, "pipeline reported errors"};
  const auto summary = compare_report({report});
  double geo = 0.0, med_dir = 0.0, med_naive = 0.0;
  for (const auto& s : summary) {
    if (s.method == "sa-directed") {
      geo = s.geomean;
      med_dir = s.median;
    }
    if (s.method == "sa-naive") med_naive = s.median;
  }
  std::fputs(summary_to_table(summary).c_str(), stdout);
  return {geo <= 0.5 && med_dir <= med_naive,
          fmt("%g circuits; sa-directed geomean %.4f, median %.4f", cfg.inputs.size(), geo, med_dir) +
              fmt(" vs sa-naive median %.4f", med_naive)};
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / n;
    my += y[i] / n;
  }
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

Outcome cost_time_correlation() {
  std::vector<double> cost, seconds;
  EmulationOptions eo;
  eo.timing_repeats = 3;
  // Unannealed plans of small random circuits span several decades of cost;
  // plans too large to execute quickly are skipped.
  for (int depth : {6, 8}) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const TensorNetwork net = circuit_network(random_circuit(12, depth, 500 + seed), std::string(12, '0'));
      for (int k : {1, 2, 4, 8}) {
        const Plan plan(net, initial_partition(net, k, 0.03, seed, nullptr), {});
        if (plan.report().con_serial > 5e8 || plan.report().mem > 0x1p24) continue;
        const auto em = execute_distributed_emulation(plan, eo);
        cost.push_back(plan.report().con_dist);
        seconds.push_back(em.emulated_seconds);
      }
    }
  }
  const double r = pearson(cost, seconds);
  return {cost.size() >= 10 && r >= 0.9, fmt("%g plans, Pearson r = %.4f", cost.size(), r)};
}

Outcome determinism() {
  Rng64 rng(107);
  const TensorNetwork net = random_network(rng, 40, 3, false);
  const Plan start(net, initial_partition(net, 4, 0.03, 0, nullptr), {});
  AnnealConfig cfg;
  cfg.max_iterations = 30;
  cfg.steps = 16;
  cfg.workers = 4;
  cfg.seed = 99;
  std::vector<std::string> plans;
  for (int threads : {1, 1, 2, 4}) {
    cfg.threads = threads;
    const auto r = anneal(start, cfg);
    plans.push_back(plan_to_json(r.best).dump() + trace_to_json_lines(r.trace));
  }
  bool plans_same = std::all_of(plans.begin(), plans.end(), [&](const auto& p) { return p == plans[0]; });

  RunConfig rc;
  rc.inputs = {{"graph", "", random_graph_state_circuit(10, 5, 1)}, {"rand", "", random_circuit(8, 5, 2)}};
  rc.sweep = {2, 4};
  rc.repeats = 2;
  rc.seed = 5;
  rc.anneal.max_iterations = 10;
  rc.anneal.steps = 16;
  rc.anneal.workers = 3;
  std::vector<std::string> reports;
  for (int threads : {1, 1, 3}) {
    rc.anneal.threads = threads;
    const auto j = report_to_json(run_pipeline(rc));
    reports.push_back(j["config"].dump() + j["results"].dump());
  }
  bool reports_same = std::all_of(reports.begin(), reports.end(), [&](const auto& p) { return p == reports[0]; });
  return {plans_same && reports_same, std::string("anneal plans ") + (plans_same ? "identical" : "differ") +
                                          " across runs and thread counts; reports " +
                                          (reports_same ? "identical" : "differ")};
}

Outcome partitioner() {
  // Brute-force the best balanced bisection of the 8-ring.
  const TensorNetwork ring = ring_network(8, 2);
  double best = 1e9;
  for (unsigned mask = 0; mask < 256; ++mask) {
    if (__builtin_popcount(mask) != 4) continue;
    Partitioning p{{{}, {}}};
    for (int v = 0; v < 8; ++v) p.blocks[(mask >> v) & 1].push_back(v);
    best = std::min(best, cut_weight(p, ring));
  }
  const Partitioning found = initial_partition(ring, 2, 0.0, 1, nullptr);
  const double found_cut = cut_weight(found, ring);
  const bool ring_ok = best == 2.0 && found_cut == best && is_balanced(found, 8);

  Rng64 rng(108);
  int invalid = 0, increases = 0;
  for (int i = 0; i < 200; ++i) {
    const TensorNetwork net = random_network(rng, 4 + i % 40, 4, false);
    const int k = 1 + static_cast<int>(rng() % std::min<std::size_t>(8, net.num_vertices()));
    PartitionTrace trace;
    const Partitioning p = initial_partition(net, k, 0.03, i, &trace);
    invalid += validate(p, net).ok && is_balanced(p, net.num_vertices()) ? 0 : 1;
    double prev = trace.grown_cut;
    for (double c : trace.pass_cut) {
      increases += c > prev + 1e-9 ? 1 : 0;
      prev = c;
    }
  }
  return {ring_ok && invalid == 0 && increases == 0,
          fmt("8-ring cut %g (brute force %g); ", found_cut, best) +
              fmt("%g invalid outputs, %g increasing passes over 200 runs", invalid, increases)};
}

Outcome acceptance_probability_units() {
  bool ok = true;
  ok = ok && acceptance_probability(3.0, 3.0, 0.7) == 1.0;
  const double half = acceptance_probability(1.0, 2.0, 1.0);
  ok = ok && std::abs(half - 0.5) <= 1e-15;
  Rng64 rng(109);
  std::uniform_real_distribution<double> lam(0.0, 1e6), cost(1e-3, 1e3), temp(1e-2, 10.0);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    double l = lam(rng);
    if (l == 0.0) l = 1e6;
    const double c = cost(rng), cn = cost(rng), t = temp(rng);
    const double p = acceptance_probability(c, cn, t), q = acceptance_probability(l * c, l * cn, t);
    worst = std::max(worst, std::abs(p - q) / std::max(p, 1e-300));
  }
  ok = ok && worst <= 1e-9;
  return {ok, fmt("P(c, 2c, T=1) = %.17g, worst relative scale error %.2e", half, worst)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"op-count identity", op_count_identity},
      {"amplitude oracle", amplitude_oracle},
      {"metric recovery", metric_recovery},
      {"annealer soundness", annealer_soundness},
      {"annealer efficacy", annealer_efficacy},
      {"cost-time correlation", cost_time_correlation},
      {"determinism", determinism},
      {"partitioner", partitioner},
      {"acceptance probability", acceptance_probability_units},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %d. %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first, o.detail.c_str(), s);
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
