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

#include "tnpart/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

#include "tnpart/executor.hpp"
#include "tnpart/partitioner.hpp"
#include "tnpart/rng.hpp"

namespace tnpart {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::SerialBaseline: return "serial-baseline";
    case Method::PartitionOnly: return "partition-only";
    case Method::SaNaive: return "sa-naive";
    case Method::SaDirected: return "sa-directed";
  }
  return "?";
}

Method method_from_string(std::string_view s) {
  for (Method m : {Method::SerialBaseline, Method::PartitionOnly, Method::SaNaive, Method::SaDirected}) {
    if (s == to_string(m)) return m;
  }
  throw std::invalid_argument("unknown method: " + std::string(s));
}

void RunConfig::validate() const {
  if (sweep.empty()) throw std::invalid_argument("partition sweep is empty");
  for (int k : sweep) {
    if (k < 1) throw std::invalid_argument("sweep values must be >= 1");
  }
  if (methods.empty()) throw std::invalid_argument("no methods selected");
  if (repeats < 1) throw std::invalid_argument("repeats must be >= 1");
  if (!(time_budget > 0.0) && anneal.max_iterations == 0) throw std::invalid_argument("time budget must be positive");
  if (imbalance < 0.0) throw std::invalid_argument("imbalance must be non-negative");
}

TensorNetwork circuit_network(const Circuit& c, const std::string& amplitude) {
  const std::string zeros(static_cast<std::size_t>(c.n_qubits), '0');
  return circuit_to_network(c, amplitude.empty() ? zeros : amplitude, zeros);
}

TensorNetwork load_network(const std::string& path, const std::string& amplitude) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  const nlohmann::json j = nlohmann::json::parse(in);
  if (j.contains("qubits")) return circuit_network(circuit_from_json(j), amplitude);
  if (j.contains("tensors")) return network_from_json(j);
  throw std::invalid_argument(path + " is neither a circuit nor a network");
}

namespace {

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

PlanOptions plan_options(const RunConfig& cfg) { return {cfg.reduction, cfg.cost}; }

CostReport mean_report(const std::vector<CostReport>& runs) {
  CostReport m;
  const double n = static_cast<double>(runs.size());
  for (const auto& r : runs) {
    m.mem += r.mem / n;
    m.con_serial += r.con_serial / n;
    m.con_par += r.con_par / n;
    m.con_dist += r.con_dist / n;
    m.saturated = m.saturated || r.saturated;
  }
  auto lg = [](double x) { return x > 0.0 ? std::log2(x) : -std::numeric_limits<double>::infinity(); };
  m.log2_mem = lg(m.mem);
  m.log2_con_serial = lg(m.con_serial);
  m.log2_con_par = lg(m.con_par);
  m.log2_con_dist = lg(m.con_dist);
  if (runs.size() == 1) m.per_partition = runs[0].per_partition;
  return m;
}

std::uint64_t name_hash(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
  return h;
}

}  // namespace

MethodRun run_method(const TensorNetwork& net, Method method, int k, const RunConfig& cfg, std::uint64_t seed,
                     double time_limit) {
  const PlanOptions opts = plan_options(cfg);
  if (method == Method::SerialBaseline) return {serial_plan(net, opts), 0};
  Plan plan(net, initial_partition(net, k, cfg.imbalance, derive_seed(seed, {0}), nullptr), opts);
  if (method == Method::PartitionOnly || k < 2) return {std::move(plan), 0};
  AnnealConfig ac = cfg.anneal;
  ac.mode = method == Method::SaNaive ? TargetMode::Naive : TargetMode::Directed;
  ac.seed = derive_seed(seed, {1});
  ac.time_limit = time_limit;
  AnnealResult res = anneal(plan, ac);
  return {std::move(res.best), res.iterations};
}

bool BenchmarkReport::all_ok() const {
  return std::all_of(circuits.begin(), circuits.end(), [](const CircuitResult& c) { return c.ok(); });
}

BenchmarkReport run_pipeline(const RunConfig& cfg) {
  cfg.validate();
  BenchmarkReport report;
  nlohmann::json methods = nlohmann::json::array();
  for (Method m : cfg.methods) methods.push_back(to_string(m));
  report.config = {{"sweep", cfg.sweep},
                   {"methods", methods},
                   {"imbalance", cfg.imbalance},
                   {"repeats", cfg.repeats},
                   {"seed", cfg.seed},
                   {"amplitude", cfg.amplitude},
                   {"cost_metric", to_string(cfg.cost.metric)},
                   {"intra_node", to_string(cfg.cost.intra)},
                   {"comm_alpha", cfg.cost.comm.alpha},
                   {"comm_beta", cfg.cost.comm.beta},
                   {"greedy_samples", cfg.reduction.samples},
                   {"greedy_noise", cfg.reduction.noise_scale},
                   {"t0", cfg.anneal.t0},
                   {"tf", cfg.anneal.tf},
                   {"steps", cfg.anneal.steps},
                   {"workers", cfg.anneal.workers},
                   {"restart_threshold", cfg.anneal.restart_threshold},
                   {"max_iterations", cfg.anneal.max_iterations},
                   {"time_budget", cfg.time_budget}};

  for (const BenchInput& input : cfg.inputs) {
    CircuitResult cr;
    cr.name = input.name.empty() ? input.path : input.name;
    try {
      const TensorNetwork net = input.circuit ? circuit_network(*input.circuit, cfg.amplitude)
                                              : load_network(input.path, cfg.amplitude);
      cr.tensors = net.num_vertices();
      const Plan baseline = serial_plan(net, plan_options(cfg));
      cr.baseline = baseline.report();
      const double base = cr.baseline.con_serial;
      const std::uint64_t circuit_seed = derive_seed(cfg.seed, {name_hash(cr.name)});

      for (Method method : cfg.methods) {
        MethodResult mr;
        mr.method = method;
        const std::vector<int> sweep = method == Method::SerialBaseline ? std::vector<int>{1} : cfg.sweep;
        const double per_k = cfg.time_budget / static_cast<double>(sweep.size());
        std::optional<Plan> best_plan;
        for (int k : sweep) {
          SweepEntry e;
          e.k = k;
          if (static_cast<std::size_t>(k) > net.num_vertices()) {
            e.skipped = "more partitions than tensors";
            mr.entries.push_back(std::move(e));
            continue;
          }
          const double per_run = per_k / static_cast<double>(cfg.repeats);
          std::vector<CostReport> runs;
          std::optional<Plan> best_run;
          const auto t0 = std::chrono::steady_clock::now();
          for (int r = 0; r < cfg.repeats; ++r) {
            const std::uint64_t s = derive_seed(circuit_seed, {static_cast<std::uint64_t>(method),
                                                               static_cast<std::uint64_t>(k),
                                                               static_cast<std::uint64_t>(r)});
            MethodRun run = run_method(net, method, k, cfg, s, per_run);
            e.anneal_iterations += run.anneal_iterations;
            runs.push_back(run.plan.report());
            e.run_costs.push_back(run.plan.report().con_dist);
            if (!best_run || run.plan.report().con_dist < best_run->report().con_dist) best_run = std::move(run.plan);
          }
          e.seconds = elapsed_since(t0);
          e.cost = mean_report(runs);
          e.ratio = base > 0.0 ? e.cost.con_dist / base : 1.0;
          const bool better = mr.best_k == 0 || e.cost.con_dist < mr.best_cost;
          if (better) {
            mr.best_k = k;
            mr.best_cost = e.cost.con_dist;
            mr.best_ratio = e.ratio;
            best_plan = std::move(best_run);
          }
          mr.entries.push_back(std::move(e));
        }
        for (auto& e : mr.entries) e.best = e.k == mr.best_k && e.skipped.empty();
        if (mr.best_k == 0) throw std::invalid_argument("no sweep value fits the network");
        if (cfg.execute && best_plan) {
          ExecOptions eo;
          eo.max_entries = cfg.max_entries;
          const auto trace = execute_plan(net, best_plan->compose().tree, eo);
          if (trace.result.rank() == 0) mr.amplitude = trace.result.data.at(0);
        }
        cr.methods.push_back(std::move(mr));
      }
    } catch (const std::exception& ex) {
      cr.error = ex.what();
      cr.methods.clear();
    }
    report.circuits.push_back(std::move(cr));
  }
  return report;
}

namespace {

nlohmann::json cost_brief(const CostReport& c) {
  return {{"mem", c.mem}, {"con_serial", c.con_serial}, {"con_par", c.con_par}, {"con_dist", c.con_dist}};
}

CostReport cost_from_brief(const nlohmann::json& j) {
  CostReport c;
  c.mem = j.at("mem").get<double>();
  c.con_serial = j.at("con_serial").get<double>();
  c.con_par = j.at("con_par").get<double>();
  c.con_dist = j.at("con_dist").get<double>();
  return c;
}

}  // namespace

nlohmann::json report_to_json(const BenchmarkReport& r) {
  nlohmann::json results = nlohmann::json::array();
  nlohmann::json timing = nlohmann::json::array();
  for (const auto& c : r.circuits) {
    nlohmann::json jc{{"circuit", c.name}};
    if (!c.ok()) {
      jc["error"] = c.error;
      results.push_back(std::move(jc));
      continue;
    }
    jc["tensors"] = c.tensors;
    jc["baseline"] = cost_brief(c.baseline);
    nlohmann::json jm = nlohmann::json::array();
    for (const auto& m : c.methods) {
      nlohmann::json entries = nlohmann::json::array();
      for (const auto& e : m.entries) {
        nlohmann::json je{{"k", e.k}};
        if (!e.skipped.empty()) {
          je["skipped"] = e.skipped;
        } else {
          je["cost"] = cost_brief(e.cost);
          je["run_con_dist"] = e.run_costs;
          je["ratio"] = e.ratio;
          je["best"] = e.best;
          timing.push_back({{"circuit", c.name},
                            {"method", to_string(m.method)},
                            {"k", e.k},
                            {"seconds", e.seconds},
                            {"anneal_iterations", e.anneal_iterations}});
        }
        entries.push_back(std::move(je));
      }
      nlohmann::json one{{"method", to_string(m.method)},
                         {"best_k", m.best_k},
                         {"best_ratio", m.best_ratio},
                         {"best_con_dist", m.best_cost},
                         {"sweep", std::move(entries)}};
      if (m.amplitude) one["amplitude"] = {m.amplitude->real(), m.amplitude->imag()};
      jm.push_back(std::move(one));
    }
    jc["methods"] = std::move(jm);
    results.push_back(std::move(jc));
  }
  return {{"config", r.config}, {"results", std::move(results)}, {"timing", std::move(timing)}};
}

BenchmarkReport report_from_json(const nlohmann::json& j) {
  BenchmarkReport r;
  r.config = j.value("config", nlohmann::json::object());
  for (const auto& jc : j.at("results")) {
    CircuitResult c;
    c.name = jc.at("circuit").get<std::string>();
    if (jc.contains("error")) {
      c.error = jc.at("error").get<std::string>();
      r.circuits.push_back(std::move(c));
      continue;
    }
    c.tensors = jc.at("tensors").get<std::size_t>();
    c.baseline = cost_from_brief(jc.at("baseline"));
    for (const auto& jm : jc.at("methods")) {
      MethodResult m;
      m.method = method_from_string(jm.at("method").get<std::string>());
      m.best_k = jm.at("best_k").get<int>();
      m.best_ratio = jm.at("best_ratio").get<double>();
      m.best_cost = jm.at("best_con_dist").get<double>();
      for (const auto& je : jm.at("sweep")) {
        SweepEntry e;
        e.k = je.at("k").get<int>();
        if (je.contains("skipped")) {
          e.skipped = je.at("skipped").get<std::string>();
        } else {
          e.cost = cost_from_brief(je.at("cost"));
          e.run_costs = je.at("run_con_dist").get<std::vector<double>>();
          e.ratio = je.at("ratio").get<double>();
          e.best = je.at("best").get<bool>();
        }
        m.entries.push_back(std::move(e));
      }
      if (jm.contains("amplitude")) m.amplitude = cplx(jm["amplitude"][0].get<double>(), jm["amplitude"][1].get<double>());
      c.methods.push_back(std::move(m));
    }
    r.circuits.push_back(std::move(c));
  }
  return r;
}

double quantile(std::vector<double> xs, double q) {
  if (xs.empty()) throw std::invalid_argument("quantile of an empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("quantile level must lie in [0, 1]");
  std::sort(xs.begin(), xs.end());
  const double pos = q * static_cast<double>(xs.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, xs.size() - 1);
  return xs[lo] + (pos - static_cast<double>(lo)) * (xs[hi] - xs[lo]);
}

std::vector<MethodSummary> compare_report(const std::vector<BenchmarkReport>& reports) {
  if (reports.empty()) throw std::invalid_argument("no reports to compare");
  struct Acc {
    std::vector<double> ratios, dist, mem;
  };
  std::vector<std::string> order;
  std::map<std::string, Acc> acc;
  for (const auto& r : reports) {
    for (const auto& c : r.circuits) {
      if (!c.ok()) continue;
      for (const auto& m : c.methods) {
        const std::string name(to_string(m.method));
        if (!acc.count(name)) order.push_back(name);
        auto& a = acc[name];
        a.ratios.push_back(m.best_ratio);
        a.dist.push_back(m.best_cost);
        for (const auto& e : m.entries) {
          if (e.best) a.mem.push_back(e.cost.mem);
        }
      }
    }
  }
  if (order.empty()) throw std::invalid_argument("reports contain no successful results");
  std::vector<MethodSummary> out;
  for (const auto& name : order) {
    const Acc& a = acc[name];
    MethodSummary s;
    s.method = name;
    s.circuits = a.ratios.size();
    s.min = quantile(a.ratios, 0.0);
    s.q1 = quantile(a.ratios, 0.25);
    s.median = quantile(a.ratios, 0.5);
    s.q3 = quantile(a.ratios, 0.75);
    s.max = quantile(a.ratios, 1.0);
    double log_sum = 0.0;
    for (double x : a.ratios) log_sum += std::log(x);
    s.geomean = std::exp(log_sum / static_cast<double>(a.ratios.size()));
    for (double x : a.dist) s.mean_con_dist += x / static_cast<double>(a.dist.size());
    for (double x : a.mem) s.mean_mem += x / static_cast<double>(a.mem.size());
    out.push_back(s);
  }
  return out;
}

nlohmann::json summary_to_json(const std::vector<MethodSummary>& s) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& m : s) {
    out.push_back({{"method", m.method},
                   {"circuits", m.circuits},
                   {"ratio", {{"min", m.min}, {"q1", m.q1}, {"median", m.median}, {"q3", m.q3}, {"max", m.max}}},
                   {"geomean_ratio", m.geomean},
                   {"mean_con_dist", m.mean_con_dist},
                   {"mean_mem", m.mean_mem}});
  }
  return out;
}

std::string summary_to_table(const std::vector<MethodSummary>& s) {
  std::ostringstream os;
  os << std::left << std::setw(16) << "method" << std::right << std::setw(5) << "n" << std::setw(10) << "min"
     << std::setw(10) << "q1" << std::setw(10) << "median" << std::setw(10) << "q3" << std::setw(10) << "max"
     << std::setw(10) << "geomean" << std::setw(14) << "mean_dist" << '\n';
  os << std::setprecision(4);
  for (const auto& m : s) {
    os << std::left << std::setw(16) << m.method << std::right << std::setw(5) << m.circuits << std::setw(10) << m.min
       << std::setw(10) << m.q1 << std::setw(10) << m.median << std::setw(10) << m.q3 << std::setw(10) << m.max
       << std::setw(10) << m.geomean << std::setw(14) << m.mean_con_dist << '\n';
  }
  return os.str();
}

}  // namespace tnpart
