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

#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vrpq/circuit.hpp"
#include "vrpq/cut.hpp"
#include "vrpq/instance.hpp"
#include "vrpq/partition.hpp"
#include "vrpq/qaoa.hpp"

namespace vrpq {

enum class Encoding { Edge, Amplitude };

struct SolveOptions {
  int nodes = 7;
  int vehicles = 2;
  std::uint64_t seed = 1;
  std::optional<std::filesystem::path> instance_path;  ///< overrides nodes/vehicles

  QaoaConfig qaoa;  ///< seed is taken from `seed`
  bool cut = false;
  int xi_max = 0;   ///< 0 = half the block width, rounded up
  double overhead_budget_log10 = std::numeric_limits<double>::infinity();
  Encoding encoding = Encoding::Edge;
  bool resources_only = false;
};

/// Resource row; depth and gate counts are absent for the amplitude encoding.
struct StageMetrics {
  std::string stage;  ///< "full", "pld" or "cld"
  int qubits = 0;
  std::optional<int> depth;
  std::optional<long long> two_qubit_gates;
};

struct BlockSummary {
  std::string label;       ///< instance label plus a letter
  std::vector<int> nodes;  ///< original customer labels
  VrpInstance tsp;
  IsingModel ising;
  CircuitMetrics metrics;  ///< p = 1 circuit

  std::optional<CutPlan> plan;
  std::optional<OverheadReport> overhead;
  CircuitMetrics cut_metrics;  ///< largest part; equals `metrics` when uncut

  std::optional<TspSolution> solution;
  Route route;
  double cost = 0.0;

  // p = 1 circuit at the optimized first-layer angles.
  std::optional<double> uncut_expectation;
  std::optional<double> reconstructed_expectation;
};

struct SolveReport {
  std::string label;  ///< "<nodes>.<vehicles>"
  SolveOptions options;
  VrpInstance instance;
  Partition partition;
  std::vector<StageMetrics> stages;
  std::vector<BlockSummary> blocks;
  std::optional<RouteSet> quantum;
  std::optional<RouteSet> classical;
  std::optional<RouteSet> optimal;  ///< exhaustive, small instances only
};

SolveReport run_solve(const SolveOptions& opts);

std::string to_json(const SolveReport& r);

/// report.json, instance.json, partition.json, block_<label>_ising.json,
/// resources.csv, blocks.csv, costs.csv and traces.csv.
void write_artifacts(const SolveReport& r, const std::filesystem::path& dir);

/// One row per (report, stage) with percentage reductions against "full".
std::string reductions_csv(const std::vector<std::string>& report_json);

struct AmplitudeRow {
  std::string label;
  int nodes = 0;
  int amplitude_qubits = 0;
  long long edge_qubits = 0;
};

/// Rows for an instance and each of its partition blocks.
std::vector<AmplitudeRow> amplitude_rows(const VrpInstance& inst, std::uint64_t seed);
AmplitudeRow amplitude_row(const std::string& label, int nodes);

/// CSV with a reference column and a note wherever a reference disagrees.
std::string amplitude_csv(const std::vector<AmplitudeRow>& rows,
                          const std::map<std::string, int>& reference);

}  // namespace vrpq
