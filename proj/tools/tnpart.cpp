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

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tnpart/annealer.hpp"
#include "tnpart/circuit.hpp"
#include "tnpart/corpus.hpp"
#include "tnpart/executor.hpp"
#include "tnpart/partitioner.hpp"
#include "tnpart/pipeline.hpp"
#include "tnpart/plan.hpp"

using namespace tnpart;
using nlohmann::json;

namespace {

struct Common {
  std::string amplitude;
  std::string metric = "dist";
  std::string intra = "serial";
  double alpha = 0.0;
  double beta = 0.0;
  int samples = 32;
  double noise = 0.3;
  std::uint64_t seed = 0;
  std::string output;
};

struct AnnealFlags {
  double t0 = 1.0, tf = 0.001, time_limit = 10.0;
  int steps = 64, workers = 0, restart = 20, max_iterations = 0;
  std::string mode = "directed";
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--amplitude", c.amplitude, "Output bitstring (default all zeros)");
  app->add_option("--cost-metric", c.metric, "Objective: serial, par or dist")
      ->check(CLI::IsMember({"serial", "par", "dist"}));
  app->add_option("--intra-node", c.intra, "Intra-partition cost: serial or par")->check(CLI::IsMember({"serial", "par"}));
  app->add_option("--comm-alpha", c.alpha, "Per-message latency")->check(CLI::NonNegativeNumber);
  app->add_option("--comm-beta", c.beta, "Per-entry transfer cost")->check(CLI::NonNegativeNumber);
  app->add_option("--greedy-samples", c.samples, "RandomGreedy samples for reduction paths")->check(CLI::PositiveNumber);
  app->add_option("--greedy-noise", c.noise, "RandomGreedy noise scale")->check(CLI::NonNegativeNumber);
  app->add_option("--seed", c.seed, "Master seed");
  app->add_option("-o,--output", c.output, "Output file (default stdout)");
}

void add_anneal(CLI::App* app, AnnealFlags& a) {
  app->add_option("--t0", a.t0, "Initial temperature")->check(CLI::PositiveNumber);
  app->add_option("--tf", a.tf, "Final temperature")->check(CLI::PositiveNumber);
  app->add_option("--steps", a.steps, "Steps per temperature iteration")->check(CLI::PositiveNumber);
  app->add_option("--workers", a.workers, "Parallel workers (default: hardware threads)")->check(CLI::NonNegativeNumber);
  app->add_option("--time-limit", a.time_limit, "Seconds")->check(CLI::PositiveNumber);
  app->add_option("--max-iterations", a.max_iterations, "Fixed iteration budget; overrides the time schedule")
      ->check(CLI::NonNegativeNumber);
  app->add_option("--restart-threshold", a.restart, "Iterations without improvement before restart")
      ->check(CLI::PositiveNumber);
  app->add_option("--mode", a.mode, "Target selection")->check(CLI::IsMember({"naive", "directed"}));
}

PlanOptions plan_options(const Common& c) {
  PlanOptions o;
  o.reduction.samples = c.samples;
  o.reduction.noise_scale = c.noise;
  o.cost.metric = cost_metric_from_string(c.metric);
  o.cost.intra = intra_node_from_string(c.intra);
  o.cost.comm = {c.alpha, c.beta};
  return o;
}

AnnealConfig anneal_config(const AnnealFlags& a, std::uint64_t seed) {
  AnnealConfig cfg;
  cfg.t0 = a.t0;
  cfg.tf = a.tf;
  cfg.steps = a.steps;
  cfg.workers = a.workers > 0 ? a.workers : default_workers();
  cfg.time_limit = a.time_limit;
  cfg.max_iterations = a.max_iterations;
  cfg.restart_threshold = a.restart;
  cfg.mode = target_mode_from_string(a.mode);
  cfg.seed = seed;
  return cfg;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return json::parse(in);
}

void emit(const json& j, const std::string& path) {
  if (path.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stoi(item));
  }
  return out;
}

json execution_json(const TensorNetwork& net, const Plan& plan, std::int64_t max_entries, bool emulate) {
  ExecOptions eo;
  eo.max_entries = max_entries;
  if (emulate) {
    EmulationOptions opts;
    opts.exec = eo;
    return emulation_to_json(execute_distributed_emulation(plan, opts));
  }
  return execution_trace_to_json(execute_plan(net, plan.compose().tree, eo));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed tensor network contraction planner"};
  app.require_subcommand(1);

  Common common;
  AnnealFlags af;
  std::string input, plan_path, trace_path, suite, sweep = "4,8,16,32,64,128,256", methods;
  std::vector<std::string> inputs;
  int partitions = 4, repeats = 2;
  double imbalance = kDefaultImbalance, budget = 10.0;
  bool execute = false, emulate = false, as_json = false;
  std::int64_t max_entries = kDefaultMaxEntries;

  auto* ingest = app.add_subcommand("ingest", "Convert a circuit to a closed tensor network");
  ingest->add_option("input", input, "Circuit JSON")->required();
  add_common(ingest, common);

  auto* plan = app.add_subcommand("plan", "Partition a network and build its contraction plan");
  plan->add_option("input", input, "Circuit or network JSON")->required();
  plan->add_option("-k,--partitions", partitions, "Number of partitions")->check(CLI::PositiveNumber);
  plan->add_option("--imbalance", imbalance, "Allowed block imbalance epsilon")->check(CLI::NonNegativeNumber);
  plan->add_flag("--execute", execute, "Execute the plan and attach the trace");
  plan->add_option("--max-entries", max_entries, "Entry budget for execution");
  add_common(plan, common);

  auto* ann = app.add_subcommand("anneal", "Refine a plan with simulated annealing");
  ann->add_option("input", input, "Circuit or network JSON")->required();
  ann->add_option("--plan", plan_path, "Starting plan JSON (default: fresh partitioning)");
  ann->add_option("-k,--partitions", partitions, "Number of partitions")->check(CLI::PositiveNumber);
  ann->add_option("--imbalance", imbalance, "Allowed block imbalance epsilon")->check(CLI::NonNegativeNumber);
  ann->add_option("--trace", trace_path, "Write the convergence trace as JSON lines");
  ann->add_flag("--execute", execute, "Execute the result and attach the trace");
  ann->add_option("--max-entries", max_entries, "Entry budget for execution");
  add_common(ann, common);
  add_anneal(ann, af);

  auto* exe = app.add_subcommand("execute", "Contract a network along a plan");
  exe->add_option("input", input, "Circuit or network JSON (with payloads)")->required();
  exe->add_option("--plan", plan_path, "Plan JSON (default: serial greedy plan)");
  exe->add_flag("--emulate", emulate, "Time partitions and fan-in separately");
  exe->add_option("--max-entries", max_entries, "Entry budget");
  add_common(exe, common);

  auto* bench = app.add_subcommand("bench", "Run the comparison pipeline over a batch");
  bench->add_option("inputs", inputs, "Circuit or network JSON files");
  bench->add_option("--suite", suite, "Bundled suite")->check(CLI::IsMember({"desk"}));
  bench->add_option("--sweep", sweep, "Comma-separated partition counts");
  bench->add_option("--methods", methods, "Comma-separated methods (default: all)");
  bench->add_option("-k,--partitions", partitions, "Single partition count (overrides --sweep)");
  bench->add_option("--imbalance", imbalance, "Allowed block imbalance epsilon")->check(CLI::NonNegativeNumber);
  bench->add_option("--time-budget", budget, "Seconds per circuit and method")->check(CLI::PositiveNumber);
  bench->add_option("--repeats", repeats, "Runs averaged per sweep value")->check(CLI::PositiveNumber);
  bench->add_flag("--execute", execute, "Execute each method's best plan");
  bench->add_option("--max-entries", max_entries, "Entry budget for execution");
  add_common(bench, common);
  add_anneal(bench, af);

  auto* rep = app.add_subcommand("report", "Summarize benchmark reports");
  rep->add_option("inputs", inputs, "Benchmark report JSON files")->required();
  rep->add_flag("--json", as_json, "Emit JSON instead of a table");
  rep->add_option("-o,--output", common.output, "Output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (ingest->parsed()) {
      const Circuit c = circuit_from_json(read_json(input));
      const TensorNetwork net = circuit_network(c, common.amplitude);
      std::cerr << "tensors " << net.num_vertices() << ", bonds " << net.bound_edges().size() << ", components "
                << net.connected_components().size() << '\n';
      emit(network_to_json(net), common.output);
      return 0;
    }
    if (plan->parsed() || ann->parsed()) {
      const TensorNetwork net = load_network(input, common.amplitude);
      const PlanOptions opts = plan_options(common);
      Plan p = !plan_path.empty() ? plan_from_json(net, read_json(plan_path), opts)
               : partitions == 1  ? serial_plan(net, opts)
                                  : Plan(net, initial_partition(net, partitions, imbalance, common.seed, nullptr), opts);
      json out;
      if (ann->parsed()) {
        const AnnealResult res = anneal(p, anneal_config(af, common.seed));
        std::cerr << "anneal: " << res.iterations << " iterations, cost " << res.initial_cost << " -> "
                  << res.best_cost << '\n';
        if (!trace_path.empty()) {
          std::ofstream t(trace_path);
          t << trace_to_json_lines(res.trace);
        }
        p = res.best;
        out = plan_to_json(p);
        out["anneal"] = {{"initial_cost", res.initial_cost},
                         {"best_cost", res.best_cost},
                         {"iterations", res.iterations},
                         {"proposals", res.proposals},
                         {"accepted", res.accepted}};
      } else {
        out = plan_to_json(p);
      }
      if (execute) out["execution"] = execution_json(net, p, max_entries, false);
      emit(out, common.output);
      return 0;
    }
    if (exe->parsed()) {
      const TensorNetwork net = load_network(input, common.amplitude);
      if (plan_path.empty() && !net.is_connected()) {
        ExecOptions eo;
        eo.max_entries = max_entries;
        const cplx z = amplitude_by_components(net, eo);
        emit({{"amplitude", {z.real(), z.imag()}}, {"components", net.connected_components().size()}}, common.output);
        return 0;
      }
      const PlanOptions opts = plan_options(common);
      const Plan p = plan_path.empty() ? serial_plan(net, opts) : plan_from_json(net, read_json(plan_path), opts);
      emit(execution_json(net, p, max_entries, emulate), common.output);
      return 0;
    }
    if (bench->parsed()) {
      RunConfig cfg;
      for (const auto& path : inputs) cfg.inputs.push_back({path, path, std::nullopt});
      if (suite == "desk") {
        for (auto& nc : desk_suite()) cfg.inputs.push_back({nc.name, "", std::move(nc.circuit)});
      }
      if (cfg.inputs.empty()) throw std::invalid_argument("bench needs input files or --suite");
      cfg.amplitude = common.amplitude;
      cfg.sweep = bench->count("--partitions") > 0 ? std::vector<int>{partitions} : parse_int_list(sweep);
      if (!methods.empty()) {
        cfg.methods.clear();
        std::stringstream ss(methods);
        std::string m;
        while (std::getline(ss, m, ',')) cfg.methods.push_back(method_from_string(m));
      }
      cfg.imbalance = imbalance;
      const PlanOptions opts = plan_options(common);
      cfg.reduction = opts.reduction;
      cfg.cost = opts.cost;
      cfg.anneal = anneal_config(af, common.seed);
      cfg.time_budget = budget;
      cfg.repeats = repeats;
      cfg.seed = common.seed;
      cfg.execute = execute;
      cfg.max_entries = max_entries;
      const BenchmarkReport report = run_pipeline(cfg);
      for (const auto& c : report.circuits) {
        if (!c.ok()) std::cerr << "error: " << c.name << ": " << c.error << '\n';
      }
      emit(report_to_json(report), common.output);
      return report.all_ok() ? 0 : 2;
    }
    if (rep->parsed()) {
      std::vector<BenchmarkReport> reports;
      for (const auto& path : inputs) reports.push_back(report_from_json(read_json(path)));
      const auto summary = compare_report(reports);
      if (as_json) {
        emit(summary_to_json(summary), common.output);
      } else if (common.output.empty()) {
        std::cout << summary_to_table(summary);
      } else {
        std::ofstream(common.output) << summary_to_table(summary);
      }
      return 0;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
  return 0;
}
