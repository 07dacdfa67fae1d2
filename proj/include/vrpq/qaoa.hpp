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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vrpq/encode.hpp"
#include "vrpq/instance.hpp"
#include "vrpq/partition.hpp"
#include "vrpq/sim.hpp"

namespace vrpq {

enum class OptimizerKind { LinearTrust, NelderMead };

struct QaoaConfig {
  int p = 1;
  int max_iterations = 400;      ///< objective evaluations per restart
  double initial_step = 0.25;
  double convergence_tolerance = 1e-4;
  std::uint64_t shots = 100000;
  std::uint64_t seed = 1;
  int restarts = 5;
  OptimizerKind optimizer = OptimizerKind::LinearTrust;
  /// Optimize over angles scaled by 1 / max|coefficient| so that the initial
  /// range (0, pi/4) is meaningful whatever the penalty weight.
  bool normalize_angles = true;
  double lambda = 0.0;  ///< <= 0 selects default_lambda()

  void validate() const;
};

/// Maps circuit angles (gammas, betas) to an expectation of the cost operator.
using Evaluator = std::function<double(std::span<const double>, std::span<const double>)>;

struct QaoaResult {
  std::vector<double> gammas;  ///< circuit angles, as passed to build_qaoa
  std::vector<double> betas;
  double best_expectation = 0.0;
  std::vector<double> expectation_trace;  ///< best-so-far per evaluation, best restart
  int evaluations = 0;                    ///< over all restarts
  int best_restart = 0;

  // Filled by solve_tsp after sampling.
  std::optional<std::uint64_t> best_feasible_state;
  std::optional<double> best_feasible_cost;
  std::uint64_t feasible_hit_count = 0;
  std::uint64_t distinct_feasible_states = 0;
  double feasible_probability = 0.0;  ///< exact mass on feasible states
  std::uint64_t shots = 0;
};

/// Exact statevector evaluator. Precomputes the cost diagonal once; each call
/// applies the cost layer as a phase and the mixer as RX on every qubit.
class StatevectorEvaluator {
 public:
  explicit StatevectorEvaluator(const IsingModel& m);

  StateVector state(std::span<const double> gammas, std::span<const double> betas) const;
  double operator()(std::span<const double> gammas, std::span<const double> betas) const;
  std::span<const double> energies() const noexcept { return energies_; }

 private:
  int width_;
  std::vector<double> energies_;  ///< minus the offset
  double offset_ = 0.0;
};

/// Restarted derivative-free minimization of the evaluator from seeded
/// initial angles; returns the best restart.
QaoaResult optimize(const IsingModel& m, const QaoaConfig& cfg, const Evaluator& evaluator);
QaoaResult optimize(const IsingModel& m, const QaoaConfig& cfg);

struct TspSolution {
  std::optional<RouteSet> routes;  ///< absent when no shot decoded to a tour
  QaoaResult result;
  IsingModel ising;
};

/// QUBO -> Ising -> QAOA -> sample -> lowest-cost feasible decoded tour.
TspSolution solve_tsp(const VrpInstance& tsp, const QaoaConfig& cfg);

struct BlockReport {
  std::vector<int> nodes;  ///< original customer indices
  VrpInstance tsp;
  TspSolution solution;
  Route route;             ///< in original node labels
  double cost = 0.0;
};

struct PldSolution {
  Partition partition;
  std::vector<BlockReport> blocks;
  RouteSet routes;
};

/// Partition -> per-block TSP solve -> merge and validate on the original.
PldSolution solve_vrp_pld(const VrpInstance& inst, const QaoaConfig& cfg, std::uint64_t seed);

std::string to_json(const QaoaResult& r);
std::string trace_csv(const QaoaResult& r);

}  // namespace vrpq
