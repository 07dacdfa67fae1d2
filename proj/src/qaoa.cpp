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

#include "vrpq/qaoa.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "vrpq/errors.hpp"
#include "vrpq/optimizer.hpp"
#include "vrpq/random.hpp"

namespace vrpq {

void QaoaConfig::validate() const {
  require(p >= 1, ErrorKind::Parameter, "QAOA needs p >= 1");
  require(shots >= 1, ErrorKind::Parameter, "need at least one shot");
  require(convergence_tolerance > 0.0, ErrorKind::Parameter, "tolerance must be positive");
  require(restarts >= 1, ErrorKind::Parameter, "need at least one restart");
  require(max_iterations >= 1, ErrorKind::Parameter, "need at least one iteration");
  require(initial_step > 0.0, ErrorKind::Parameter, "initial step must be positive");
}

StatevectorEvaluator::StatevectorEvaluator(const IsingModel& m) : width_(m.num_qubits) {
  require(width_ <= kMaxSimQubits, ErrorKind::Resource,
          "cost operator on " + std::to_string(width_) +
              " qubits exceeds the simulator limit; use circuit cutting");
  energies_ = diagonal_energies(m);
  // The offset is a global phase; dropping it keeps the state identical to
  // simulate(build_qaoa(...)).
  for (double& e : energies_) e -= m.offset;
  offset_ = m.offset;
}

StateVector StatevectorEvaluator::state(std::span<const double> gammas,
                                        std::span<const double> betas) const {
  require(!gammas.empty() && gammas.size() == betas.size(), ErrorKind::Parameter,
          "gamma and beta vectors must be non-empty and equal in length");
  StateVector s(width_);
  auto amps = s.amplitudes();
  const double a = 1.0 / std::sqrt(static_cast<double>(amps.size()));
  std::fill(amps.begin(), amps.end(), Amplitude{a, 0.0});
  for (std::size_t layer = 0; layer < gammas.size(); ++layer) {
    s.apply_diagonal_phase(energies_, gammas[layer]);
    s.apply_rx_all(2.0 * betas[layer]);
  }
  return s;
}

double StatevectorEvaluator::operator()(std::span<const double> gammas,
                                        std::span<const double> betas) const {
  const StateVector s = state(gammas, betas);
  const auto amps = s.amplitudes();
  double e = 0.0;
  for (std::size_t b = 0; b < amps.size(); ++b) e += std::norm(amps[b]) * energies_[b];
  return e + offset_;
}

QaoaResult optimize(const IsingModel& m, const QaoaConfig& cfg, const Evaluator& evaluator) {
  cfg.validate();
  require(static_cast<bool>(evaluator), ErrorKind::Parameter, "missing evaluator");
  const int p = cfg.p;
  double scale = 1.0;
  if (cfg.normalize_angles && m.max_coefficient() > 0.0) scale = 1.0 / m.max_coefficient();

  auto split = [p, scale](std::span<const double> x) {
    std::vector<double> g(x.begin(), x.begin() + p), b(x.begin() + p, x.end());
    for (double& v : g) v *= scale;
    return std::pair(std::move(g), std::move(b));
  };

  MinimizeOptions opts;
  opts.max_evaluations = cfg.max_iterations;
  opts.initial_step = cfg.initial_step;
  opts.tolerance = cfg.convergence_tolerance;

  QaoaResult best;
  bool have = false;
  for (int r = 0; r < cfg.restarts; ++r) {
    Rng rng(cfg.seed * 0x100000001b3ULL + static_cast<std::uint64_t>(r) + 1);
    std::vector<double> x0(2 * p);
    for (double& v : x0) v = rng.uniform(0.0, std::numbers::pi / 4);
    int iteration = 0;
    Objective f = [&](std::span<const double> x) {
      ++iteration;
      auto [g, b] = split(x);
      try {
        return evaluator(g, b);
      } catch (const Error& e) {
        raise(e.kind(), std::string(e.what()) + " (restart " + std::to_string(r) +
                            ", iteration " + std::to_string(iteration) + ")");
      }
    };
    MinimizeResult mr = cfg.optimizer == OptimizerKind::LinearTrust
                            ? minimize_linear_trust(f, x0, opts)
                            : minimize_nelder_mead(f, x0, opts);
    best.evaluations += mr.evaluations;
    if (!have || mr.value < best.best_expectation) {
      auto [g, b] = split(mr.x);
      best.gammas = std::move(g);
      best.betas = std::move(b);
      best.best_expectation = mr.value;
      best.expectation_trace = std::move(mr.trace);
      best.best_restart = r;
      have = true;
    }
  }
  return best;
}

QaoaResult optimize(const IsingModel& m, const QaoaConfig& cfg) {
  auto eval = std::make_shared<StatevectorEvaluator>(m);
  return optimize(m, cfg, [eval](std::span<const double> g, std::span<const double> b) {
    return (*eval)(g, b);
  });
}

TspSolution solve_tsp(const VrpInstance& tsp, const QaoaConfig& cfg) {
  cfg.validate();
  require(tsp.vehicles() == 1, ErrorKind::Parameter, "solve_tsp needs a single-vehicle instance");
  const long long width = qubit_count_edge(tsp.nodes());
  require(width <= kMaxSimQubits, ErrorKind::Resource,
          std::to_string(tsp.nodes()) + "-node TSP needs " + std::to_string(width) +
              " qubits, above the " + std::to_string(kMaxSimQubits) +
              "-qubit simulator limit; use circuit cutting");
  const double lambda = cfg.lambda > 0.0 ? cfg.lambda : default_lambda(tsp);
  const QuboModel qubo = build_qubo(tsp, lambda);
  TspSolution sol{std::nullopt, {}, qubo_to_ising(qubo)};

  const StatevectorEvaluator eval(sol.ising);
  sol.result = optimize(sol.ising, cfg, [&eval](std::span<const double> g, std::span<const double> b) {
    return eval(g, b);
  });

  const StateVector final_state = eval.state(sol.result.gammas, sol.result.betas);
  const auto amps = final_state.amplitudes();
  const int n = tsp.nodes();
  for (std::size_t s = 0; s < amps.size(); ++s)
    if (is_feasible_state(s, n, 1)) sol.result.feasible_probability += std::norm(amps[s]);

  sol.result.shots = cfg.shots;
  const auto counts = sample(final_state, cfg.shots, cfg.seed ^ 0x5eed5eed5eedULL);
  for (const auto& [state, count] : counts) {
    if (!is_feasible_state(state, n, 1)) continue;
    sol.result.feasible_hit_count += count;
    ++sol.result.distinct_feasible_states;
    const DecodeResult d = decode_bitstring(state_to_bits(state, static_cast<int>(width)), qubo, tsp);
    const double cost = d.routes->total_cost;
    if (!sol.result.best_feasible_cost || cost < *sol.result.best_feasible_cost) {
      sol.result.best_feasible_cost = cost;
      sol.result.best_feasible_state = state;
      sol.routes = *d.routes;
    }
  }
  return sol;
}

PldSolution solve_vrp_pld(const VrpInstance& inst, const QaoaConfig& cfg, std::uint64_t seed) {
  PldSolution out;
  out.partition = partition(inst, seed);
  std::vector<Route> merged;
  for (std::size_t k = 0; k < out.partition.blocks.size(); ++k) {
    const auto& block = out.partition.blocks[k];
    VrpInstance tsp = extract_tsp(inst, block);
    QaoaConfig block_cfg = cfg;
    block_cfg.seed = cfg.seed + 7919 * static_cast<std::uint64_t>(k);
    TspSolution sol;
    try {
      sol = solve_tsp(tsp, block_cfg);
    } catch (const Error& e) {
      raise(e.kind(), "block " + std::to_string(k) + ": " + e.what());
    }
    if (!sol.routes) {
      raise(ErrorKind::Infeasible,
            "block " + std::to_string(k) + ": no sampled bitstring decoded to a tour "
            "(feasible probability " + std::to_string(sol.result.feasible_probability) + ")");
    }
    Route route;
    for (int local : sol.routes->routes.front()) route.push_back(local == 0 ? 0 : block[local - 1]);
    const double cost = route_cost(inst, route);
    merged.push_back(route);
    out.blocks.push_back(BlockReport{block, std::move(tsp), std::move(sol), std::move(route), cost});
  }
  out.routes = make_route_set(inst, std::move(merged));
  const ValidityReport rep = validate_routes(inst, out.routes);
  require(rep.ok(), ErrorKind::Contract, "merged routes fail validation");
  return out;
}

std::string to_json(const QaoaResult& r) {
  nlohmann::ordered_json j;
  j["gammas"] = r.gammas;
  j["betas"] = r.betas;
  j["best_expectation"] = r.best_expectation;
  j["evaluations"] = r.evaluations;
  j["best_restart"] = r.best_restart;
  j["shots"] = r.shots;
  j["feasible_hit_count"] = r.feasible_hit_count;
  j["distinct_feasible_states"] = r.distinct_feasible_states;
  j["feasible_probability"] = r.feasible_probability;
  j["best_feasible_cost"] = r.best_feasible_cost ? nlohmann::ordered_json(*r.best_feasible_cost)
                                                 : nlohmann::ordered_json(nullptr);
  j["best_feasible_state"] = r.best_feasible_state
                                 ? nlohmann::ordered_json(*r.best_feasible_state)
                                 : nlohmann::ordered_json(nullptr);
  j["expectation_trace"] = r.expectation_trace;
  return j.dump(2) + "\n";
}

std::string trace_csv(const QaoaResult& r) {
  std::ostringstream os;
  os.precision(17);
  os << "iteration,expectation\n";
  for (std::size_t i = 0; i < r.expectation_trace.size(); ++i)
    os << i + 1 << ',' << r.expectation_trace[i] << '\n';
  return os.str();
}

}  // namespace vrpq
