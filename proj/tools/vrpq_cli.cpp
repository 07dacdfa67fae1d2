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

// vrpq command-line front end. Links only the C interface.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vrpq/vrpq.h"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitParameter = 2;
constexpr int kExitResource = 3;

int exit_code(vrpq_status s) {
  switch (s) {
    case VRPQ_OK: return 0;
    case VRPQ_ERR_PARAMETER: return kExitParameter;
    case VRPQ_ERR_RESOURCE: return kExitResource;
    default: return kExitFailure;
  }
}

int fail(vrpq_status s) {
  std::cerr << "vrpq: " << vrpq_status_name(s) << ": " << vrpq_last_error() << "\n";
  return exit_code(s);
}

// Writes text to path, or stdout when path is empty.
int emit(const std::string& path, const char* text) {
  if (path.empty()) {
    std::fputs(text, stdout);
    return 0;
  }
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) {
    std::cerr << "vrpq: cannot write " << path << "\n";
    return kExitFailure;
  }
  return 0;
}

struct SolveArgs {
  int nodes = 7;
  int vehicles = 2;
  std::uint64_t seed = 1;
  int p = 1;
  std::uint64_t shots = 100000;
  double lambda = 0.0;
  std::string optimizer = "lintrust";
  int restarts = 5;
  int max_iterations = 400;
  bool cut = false;
  int xi_max = 0;
  double budget = std::numeric_limits<double>::infinity();
  std::string encoding = "edge";
  bool resources_only = false;
  std::string instance;
  std::string out;
};

int run_solve(const SolveArgs& a) {
  vrpq_solve_options o;
  vrpq_solve_options_init(&o);
  o.nodes = a.nodes;
  o.vehicles = a.vehicles;
  o.seed = a.seed;
  o.instance_path = a.instance.empty() ? nullptr : a.instance.c_str();
  o.p = a.p;
  o.shots = a.shots;
  o.lambda = a.lambda;
  o.optimizer = a.optimizer == "lintrust" ? VRPQ_OPTIMIZER_LINTRUST : VRPQ_OPTIMIZER_NELDERMEAD;
  o.restarts = a.restarts;
  o.max_iterations = a.max_iterations;
  o.cut = a.cut;
  o.xi_max = a.xi_max;
  o.overhead_budget_log10 = a.budget;
  o.encoding = a.encoding == "edge" ? VRPQ_ENCODING_EDGE : VRPQ_ENCODING_AMPLITUDE;
  o.resources_only = a.resources_only;

  vrpq_report* report = nullptr;
  if (vrpq_status s = vrpq_solve(&o, &report); s != VRPQ_OK) return fail(s);
  int code = 0;
  if (!a.out.empty()) {
    if (vrpq_status s = vrpq_report_write(report, a.out.c_str()); s != VRPQ_OK) code = fail(s);
    else std::printf("wrote %s\n", a.out.c_str());
  } else {
    char* json = nullptr;
    if (vrpq_status s = vrpq_report_json(report, &json); s != VRPQ_OK) {
      code = fail(s);
    } else {
      std::fputs(json, stdout);
      vrpq_string_free(json);
    }
  }
  vrpq_report_free(report);
  return code;
}

int run_reductions(const std::vector<std::string>& reports, const std::string& out) {
  std::vector<const char*> paths;
  for (const auto& r : reports) paths.push_back(r.c_str());
  char* csv = nullptr;
  if (vrpq_status s = vrpq_reductions_csv(paths.data(), paths.size(), &csv); s != VRPQ_OK)
    return fail(s);
  const int code = emit(out, csv);
  vrpq_string_free(csv);
  return code;
}

struct AmplitudeArgs {
  int nodes = 0;
  int vehicles = 1;
  std::uint64_t seed = 1;
  std::vector<int> sizes;
  std::vector<std::string> references;
  std::string out;
};

int run_amplitude(const AmplitudeArgs& a) {
  std::vector<std::string> labels;
  std::vector<int> values;
  for (const auto& r : a.references) {
    const auto eq = r.find('=');
    int v = 0;
    try {
      if (eq == std::string::npos || eq == 0) throw std::invalid_argument(r);
      std::size_t used = 0;
      v = std::stoi(r.substr(eq + 1), &used);
      if (used != r.size() - eq - 1) throw std::invalid_argument(r);
    } catch (const std::exception&) {
      std::cerr << "vrpq: --reference expects LABEL=QUBITS, got '" << r << "'\n";
      return kExitParameter;
    }
    labels.push_back(r.substr(0, eq));
    values.push_back(v);
  }
  std::vector<const char*> label_ptrs;
  for (const auto& l : labels) label_ptrs.push_back(l.c_str());
  char* csv = nullptr;
  const vrpq_status s =
      vrpq_amplitude_csv(a.nodes, a.vehicles, a.seed, a.sizes.data(), a.sizes.size(),
                         label_ptrs.data(), values.data(), values.size(), &csv);
  if (s != VRPQ_OK) return fail(s);
  const int code = emit(a.out, csv);
  vrpq_string_free(csv);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-level decomposition VRP solver: partitioning, QAOA and circuit cutting"};
  app.require_subcommand(1);
  app.set_version_flag("--version", vrpq_version());

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "Run the pipeline on a generated or loaded instance");
  solve->add_option("--nodes", sa.nodes, "Number of nodes including the depot")->capture_default_str();
  solve->add_option("--vehicles", sa.vehicles, "Number of vehicles")->capture_default_str();
  solve->add_option("--seed", sa.seed, "Seed for generation, partitioning and QAOA")->capture_default_str();
  solve->add_option("--p", sa.p, "QAOA layers")->capture_default_str();
  solve->add_option("--shots", sa.shots, "Samples drawn from the final state")->capture_default_str();
  solve->add_option("--lambda", sa.lambda, "Penalty weight; 0 selects 2 n max(w)")->capture_default_str();
  solve->add_option("--optimizer", sa.optimizer, "Classical optimizer")
      ->check(CLI::IsMember({"lintrust", "neldermead"}))
      ->capture_default_str();
  solve->add_option("--restarts", sa.restarts, "Optimizer restarts per block")->capture_default_str();
  solve->add_option("--max-iterations", sa.max_iterations, "Objective evaluations per restart")
      ->capture_default_str();
  solve->add_flag("--cut", sa.cut, "Plan gate cuts and verify the reconstructed expectation");
  solve->add_option("--xi-max", sa.xi_max, "Maximum subcircuit width; 0 halves each block")
      ->capture_default_str();
  solve->add_option("--overhead-budget-log10", sa.budget, "Refuse cut plans with log10(gamma) above this");
  solve->add_option("--encoding", sa.encoding, "Qubit encoding")
      ->check(CLI::IsMember({"edge", "amplitude"}))
      ->capture_default_str();
  solve->add_flag("--resources-only", sa.resources_only, "Report resources without simulating");
  solve->add_option("--instance", sa.instance, "Instance JSON to load instead of generating")
      ->check(CLI::ExistingFile);
  solve->add_option("--out", sa.out, "Directory for the report and artifacts");

  std::vector<std::string> reports;
  std::string reductions_out;
  auto* red = app.add_subcommand("report-reductions",
                                 "Tabulate qubit, depth and gate reductions from solve reports");
  red->add_option("reports", reports, "report.json files or solve output directories")->required();
  red->add_option("--out", reductions_out, "CSV path (default stdout)");

  AmplitudeArgs aa;
  auto* amp = app.add_subcommand("amplitude-resources", "Amplitude-encoding qubit counts");
  amp->add_option("--nodes", aa.nodes, "Instance size; adds rows for it and its blocks");
  amp->add_option("--vehicles", aa.vehicles, "Number of vehicles")->capture_default_str();
  amp->add_option("--seed", aa.seed, "Instance and partition seed")->capture_default_str();
  amp->add_option("--sizes", aa.sizes, "Bare TSP sizes")->delimiter(',');
  amp->add_option("--reference", aa.references, "LABEL=QUBITS reference values to compare against");
  amp->add_option("--out", aa.out, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParameter;
  }

  if (solve->parsed()) return run_solve(sa);
  if (red->parsed()) return run_reductions(reports, reductions_out);
  return run_amplitude(aa);
}
