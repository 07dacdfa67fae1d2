// Copyright 2026 The vrpq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vrpq/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "vrpq/baseline.hpp"
#include "vrpq/encode.hpp"
#include "vrpq/errors.hpp"
#include "vrpq/sim.hpp"

namespace vrpq {

namespace {

using Json = nlohmann::ordered_json;

// Resource accounting only needs nonzero angles.
constexpr double kNominalAngle = 0.5;

Circuit nominal_circuit(const IsingModel& m) {
  const std::vector<double> g{kNominalAngle}, b{kNominalAngle};
  return build_qaoa(m, g, b);
}

IsingModel edge_ising(const VrpInstance& inst, double lambda) {
  return qubo_to_ising(build_qubo(inst, lambda > 0.0 ? lambda : default_lambda(inst)));
}

auto size_key(const CircuitMetrics& m) { return std::tuple(m.qubits, m.two_qubit_gates, m.depth); }

StageMetrics stage_of(const std::string& name, const CircuitMetrics& m) {
  return {name, m.qubits, m.depth, m.two_qubit_gates};
}

std::string block_label(const std::string& base, std::size_t k) {
  return base + static_cast<char>('a' + k % 26) + (k >= 26 ? std::to_string(k / 26) : "");
}

Json routes_json(const std::optional<RouteSet>& rs) {
  if (!rs) return nullptr;
  return Json{{"routes", rs->routes}, {"total_cost", rs->total_cost}};
}

BlockSummary new_block(std::string label, std::vector<int> nodes, VrpInstance tsp) {
  return {std::move(label), std::move(nodes), std::move(tsp), {}, {}, {}, {}, {}, {}, {}, 0.0, {}, {}};
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::filesystem::filesystem_error("cannot open for writing", p, std::make_error_code(std::errc::io_error));
  f << text;
  if (!f) throw std::filesystem::filesystem_error("write failed", p, std::make_error_code(std::errc::io_error));
}

void plan_block(BlockSummary& b, const SolveOptions& opts, const Circuit& c) {
  const int xi = opts.xi_max > 0 ? opts.xi_max : (c.num_qubits() + 1) / 2;
  try {
    b.plan = find_cut(c, xi, opts.seed);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Infeasible) throw;
    raise(ErrorKind::Resource, "block " + b.label + ": " + e.what());
  }
  b.overhead = overhead_report(*b.plan, opts.overhead_budget_log10);
  b.cut_metrics = largest_subcircuit_metrics(c, *b.plan);
  if (!b.overhead->within_budget) {
    raise(ErrorKind::Resource, "block " + b.label + ": sampling overhead gamma = 10^" +
                                   fixed(b.overhead->log10_gamma, 2) + " exceeds budget 10^" +
                                   fixed(opts.overhead_budget_log10, 2));
  }
}

void verify_cut(BlockSummary& b) {
  const QaoaResult& r = b.solution->result;
  const std::vector<double> g{r.gammas.front()}, be{r.betas.front()};
  const Circuit c = build_qaoa(b.ising, g, be);
  b.uncut_expectation = expectation_ising(simulate(c), b.ising);
  b.reconstructed_expectation = reconstruct_expectation(c, *b.plan, b.ising);
}

}  // namespace

SolveReport run_solve(const SolveOptions& opts) {
  opts.qaoa.validate();
  require(opts.xi_max >= 0, ErrorKind::Parameter, "--xi-max must be non-negative");
  SolveReport rep{.label = {}, .options = opts,
                  .instance = opts.instance_path ? load_json(*opts.instance_path)
                                                 : generate_random(opts.nodes, opts.vehicles, opts.seed),
                  .partition = {}, .stages = {}, .blocks = {}, .quantum = {}, .classical = {},
                  .optimal = {}};
  const VrpInstance& inst = rep.instance;
  rep.label = std::to_string(inst.nodes()) + "." + std::to_string(inst.vehicles());
  rep.partition = partition(inst, opts.seed);

  if (opts.encoding == Encoding::Amplitude) {
    require(opts.resources_only, ErrorKind::Parameter,
            "the amplitude encoding supports resource accounting only (--resources-only)");
    require(!opts.cut, ErrorKind::Parameter, "--cut is not available for the amplitude encoding");
    rep.stages.push_back({"full", qubit_count_amplitude(inst.nodes()), std::nullopt, std::nullopt});
    int widest = 0;
    for (std::size_t k = 0; k < rep.partition.blocks.size(); ++k) {
      BlockSummary b = new_block(block_label(rep.label, k), rep.partition.blocks[k],
                                 extract_tsp(inst, rep.partition.blocks[k]));
      b.metrics.qubits = qubit_count_amplitude(b.tsp.nodes());
      b.cut_metrics = b.metrics;
      widest = std::max(widest, b.metrics.qubits);
      rep.blocks.push_back(std::move(b));
    }
    rep.stages.push_back({"pld", widest, std::nullopt, std::nullopt});
    return rep;
  }

  const IsingModel full = edge_ising(inst, opts.qaoa.lambda);
  rep.stages.push_back(stage_of("full", metrics(nominal_circuit(full))));

  CircuitMetrics widest{}, narrowest_cut{};
  for (std::size_t k = 0; k < rep.partition.blocks.size(); ++k) {
    BlockSummary b = new_block(block_label(rep.label, k), rep.partition.blocks[k],
                               extract_tsp(inst, rep.partition.blocks[k]));
    b.ising = edge_ising(b.tsp, opts.qaoa.lambda);
    const Circuit c = nominal_circuit(b.ising);
    b.metrics = metrics(c);
    b.cut_metrics = b.metrics;
    if (opts.cut) plan_block(b, opts, c);
    if (size_key(b.metrics) > size_key(widest)) widest = b.metrics;
    if (size_key(b.cut_metrics) > size_key(narrowest_cut)) narrowest_cut = b.cut_metrics;
    rep.blocks.push_back(std::move(b));
  }
  rep.stages.push_back(stage_of("pld", widest));
  rep.stages.push_back(stage_of("cld", narrowest_cut));
  if (opts.resources_only) return rep;

  QaoaConfig cfg = opts.qaoa;
  cfg.seed = opts.seed;
  PldSolution pld = solve_vrp_pld(inst, cfg, opts.seed);
  require(pld.partition.blocks == rep.partition.blocks, ErrorKind::Contract,
          "partition is not deterministic per seed");
  for (std::size_t k = 0; k < rep.blocks.size(); ++k) {
    BlockSummary& b = rep.blocks[k];
    b.solution = std::move(pld.blocks[k].solution);
    b.route = pld.blocks[k].route;
    b.cost = pld.blocks[k].cost;
    if (opts.cut) verify_cut(b);
  }
  rep.quantum = pld.routes;
  rep.classical = classical_vrp(inst, opts.seed);
  if (inst.nodes() <= kMaxBruteForceVrp) rep.optimal = brute_force_vrp(inst);
  return rep;
}

std::string to_json(const SolveReport& r) {
  const SolveOptions& o = r.options;
  Json j;
  j["label"] = r.label;
  j["nodes"] = r.instance.nodes();
  j["vehicles"] = r.instance.vehicles();
  j["seed"] = o.seed;
  j["encoding"] = o.encoding == Encoding::Edge ? "edge" : "amplitude";
  Json cfg;
  cfg["p"] = o.qaoa.p;
  cfg["shots"] = o.qaoa.shots;
  cfg["restarts"] = o.qaoa.restarts;
  cfg["max_iterations"] = o.qaoa.max_iterations;
  cfg["optimizer"] = o.qaoa.optimizer == OptimizerKind::LinearTrust ? "lintrust" : "neldermead";
  cfg["lambda"] = o.qaoa.lambda > 0.0 ? Json(o.qaoa.lambda) : Json("default");
  cfg["cut"] = o.cut;
  cfg["xi_max"] = o.xi_max > 0 ? Json(o.xi_max) : Json("auto");
  cfg["overhead_budget_log10"] =
      std::isfinite(o.overhead_budget_log10) ? Json(o.overhead_budget_log10) : Json(nullptr);
  cfg["resources_only"] = o.resources_only;
  j["config"] = cfg;

  Json stages = Json::array();
  for (const auto& s : r.stages) {
    Json e;
    e["stage"] = s.stage;
    e["qubits"] = s.qubits;
    e["depth"] = s.depth ? Json(*s.depth) : Json(nullptr);
    e["two_qubit_gates"] = s.two_qubit_gates ? Json(*s.two_qubit_gates) : Json(nullptr);
    stages.push_back(e);
  }
  j["resources"] = stages;
  j["partition"] = Json{{"blocks", r.partition.blocks}, {"cut_weight", r.partition.cut_weight}};

  const bool amplitude = o.encoding == Encoding::Amplitude;
  Json blocks = Json::array();
  for (const auto& b : r.blocks) {
    Json e;
    e["label"] = b.label;
    e["nodes"] = b.nodes;
    e["qubits"] = b.metrics.qubits;
    e["depth"] = amplitude ? Json(nullptr) : Json(b.metrics.depth);
    e["two_qubit_gates"] = amplitude ? Json(nullptr) : Json(b.metrics.two_qubit_gates);
    if (b.plan) {
      Json cut;
      cut["parts"] = b.plan->parts;
      cut["cut_gates"] = b.plan->cut_gates.size();
      cut["log10_gamma"] = b.overhead->log10_gamma;
      cut["log10_subexperiment_count"] = b.overhead->log10_subexperiments;
      cut["log10_memoized_count"] = b.overhead->log10_memoized;
      cut["largest_qubits"] = b.cut_metrics.qubits;
      cut["largest_depth"] = b.cut_metrics.depth;
      cut["largest_two_qubit_gates"] = b.cut_metrics.two_qubit_gates;
      e["cut"] = cut;
    } else {
      e["cut"] = nullptr;
    }
    if (b.solution) {
      e["route"] = b.route;
      e["cost"] = b.cost;
      e["qaoa"] = Json::parse(to_json(b.solution->result));
    }
    if (b.reconstructed_expectation) {
      e["uncut_expectation"] = *b.uncut_expectation;
      e["reconstructed_expectation"] = *b.reconstructed_expectation;
      e["cut_delta"] = std::abs(*b.reconstructed_expectation - *b.uncut_expectation);
    }
    blocks.push_back(e);
  }
  j["blocks"] = blocks;
  if (!o.resources_only) {
    j["quantum"] = routes_json(r.quantum);
    j["classical"] = routes_json(r.classical);
    j["optimal"] = routes_json(r.optimal);
  }
  return j.dump(2) + "\n";
}

void write_artifacts(const SolveReport& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_text(dir / "report.json", to_json(r));
  write_text(dir / "instance.json", to_json(r.instance));
  write_text(dir / "partition.json", to_json(r.partition));

  std::ostringstream res;
  res << "instance,stage,qubits,depth,two_qubit_gates\n";
  for (const auto& s : r.stages) {
    res << r.label << ',' << s.stage << ',' << s.qubits << ','
        << (s.depth ? std::to_string(*s.depth) : "") << ','
        << (s.two_qubit_gates ? std::to_string(*s.two_qubit_gates) : "") << '\n';
  }
  write_text(dir / "resources.csv", res.str());

  if (r.options.encoding == Encoding::Amplitude) return;

  std::ostringstream blk;
  blk << "block,nodes,qubits,depth,two_qubit_gates,cuts,log10_gamma,cut_qubits,cut_depth,"
         "cut_two_qubit_gates,cost,feasible_probability,cut_delta\n";
  std::ostringstream traces;
  traces << "block,iteration,expectation\n";
  traces.precision(17);
  for (const auto& b : r.blocks) {
    write_text(dir / ("block_" + b.label + "_ising.json"), to_json(b.ising));
    std::string members;
    for (int v : b.nodes) members += (members.empty() ? "" : " ") + std::to_string(v);
    blk << b.label << ',' << members << ',' << b.metrics.qubits << ',' << b.metrics.depth << ','
        << b.metrics.two_qubit_gates << ',' << (b.plan ? std::to_string(b.plan->cut_gates.size()) : "")
        << ',' << (b.plan ? fixed(b.plan->log10_gamma, 4) : "") << ',' << b.cut_metrics.qubits << ','
        << b.cut_metrics.depth << ',' << b.cut_metrics.two_qubit_gates << ','
        << (b.solution ? fixed(b.cost, 6) : "") << ','
        << (b.solution ? fixed(b.solution->result.feasible_probability, 6) : "") << ','
        << (b.reconstructed_expectation
                ? fixed(std::abs(*b.reconstructed_expectation - *b.uncut_expectation), 12)
                : "")
        << '\n';
    if (b.solution) {
      const auto& trace = b.solution->result.expectation_trace;
      for (std::size_t i = 0; i < trace.size(); ++i)
        traces << b.label << ',' << i + 1 << ',' << trace[i] << '\n';
    }
  }
  write_text(dir / "blocks.csv", blk.str());
  if (r.options.resources_only) return;
  write_text(dir / "traces.csv", traces.str());

  std::ostringstream costs;
  costs << "instance,method,total_cost\n";
  auto row = [&](const char* method, const std::optional<RouteSet>& rs) {
    if (rs) costs << r.label << ',' << method << ',' << fixed(rs->total_cost, 6) << '\n';
  };
  row("quantum", r.quantum);
  row("classical", r.classical);
  row("optimal", r.optimal);
  write_text(dir / "costs.csv", costs.str());
}

std::string reductions_csv(const std::vector<std::string>& report_json) {
  std::ostringstream os;
  os << "instance,stage,qubits,depth,two_qubit_gates,qubit_reduction_pct,depth_reduction_pct,"
        "two_qubit_reduction_pct\n";
  for (const auto& text : report_json) {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::exception& e) {
      raise(ErrorKind::Format, std::string("report is not valid JSON: ") + e.what());
    }
    if (!j.contains("label") || !j.contains("resources") || !j["resources"].is_array())
      raise(ErrorKind::Format, "report lacks label or resources");
    const std::string label = j["label"].get<std::string>();
    const Json* full = nullptr;
    for (const auto& s : j["resources"])
      if (s.value("stage", "") == "full") full = &s;
    if (!full) raise(ErrorKind::Format, "report " + label + " has no full-instance stage");
    auto pct = [](const Json& base, const Json& v) -> std::string {
      if (base.is_null() || v.is_null()) return "";
      const double b = base.get<double>();
      if (b <= 0.0) return "";
      return fixed(100.0 * (b - v.get<double>()) / b, 1);
    };
    auto field = [](const Json& v) { return v.is_null() ? std::string() : v.dump(); };
    for (const auto& s : j["resources"]) {
      os << label << ',' << s.at("stage").get<std::string>() << ',' << field(s.at("qubits")) << ','
         << field(s.at("depth")) << ',' << field(s.at("two_qubit_gates")) << ','
         << pct(full->at("qubits"), s.at("qubits")) << ',' << pct(full->at("depth"), s.at("depth"))
         << ',' << pct(full->at("two_qubit_gates"), s.at("two_qubit_gates")) << '\n';
    }
  }
  return os.str();
}

AmplitudeRow amplitude_row(const std::string& label, int nodes) {
  return {label, nodes, qubit_count_amplitude(nodes), qubit_count_edge(nodes)};
}

std::vector<AmplitudeRow> amplitude_rows(const VrpInstance& inst, std::uint64_t seed) {
  const std::string base = std::to_string(inst.nodes()) + "." + std::to_string(inst.vehicles());
  std::vector<AmplitudeRow> rows{amplitude_row(base, inst.nodes())};
  const Partition p = partition(inst, seed);
  for (std::size_t k = 0; k < p.blocks.size(); ++k)
    rows.push_back(amplitude_row(block_label(base, k), static_cast<int>(p.blocks[k].size()) + 1));
  return rows;
}

std::string amplitude_csv(const std::vector<AmplitudeRow>& rows,
                          const std::map<std::string, int>& reference) {
  std::ostringstream os;
  os << "label,nodes,amplitude_qubits,edge_qubits,reference_qubits,note\n";
  for (const auto& r : rows) {
    os << r.label << ',' << r.nodes << ',' << r.amplitude_qubits << ',' << r.edge_qubits << ',';
    auto it = reference.find(r.label);
    if (it != reference.end()) {
      os << it->second << ',';
      if (it->second != r.amplitude_qubits) {
        os << "\"reference " << it->second << " differs from ceil(log2(" << r.nodes * (r.nodes - 1)
           << ")) = " << r.amplitude_qubits << "\"";
      }
    } else {
      os << ',';
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace vrpq
