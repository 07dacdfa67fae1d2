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

#include <cmath>

#include "doctest.h"
#include "vrpq/baseline.hpp"
#include "vrpq/cut.hpp"
#include "vrpq/errors.hpp"
#include "vrpq/qaoa.hpp"

using namespace vrpq;

namespace {

QaoaConfig quick(int p = 1) {
  QaoaConfig c;
  c.p = p;
  c.max_iterations = 120;
  c.restarts = 2;
  c.shots = 20000;
  return c;
}

}  // namespace

TEST_SUITE("qaoa") {

TEST_CASE("config validation") {
  QaoaConfig c;
  c.p = 0;
  CHECK_THROWS_AS(c.validate(), Error);
  c = QaoaConfig{};
  c.shots = 0;
  CHECK_THROWS_AS(c.validate(), Error);
  c = QaoaConfig{};
  c.convergence_tolerance = 0;
  CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("single qubit reaches the ground state") {
  IsingModel m;
  m.num_qubits = 1;
  m.h = {1.0};
  m.offset = 0.5;
  QaoaConfig c = quick();
  c.convergence_tolerance = 1e-8;
  c.max_iterations = 300;
  const auto r = optimize(m, c);
  // Ground state is |1>, where <Z> = -1.
  CHECK(r.best_expectation == doctest::Approx(m.offset - 1.0).epsilon(1e-6));
}

TEST_CASE("statevector evaluator matches the gate circuit") {
  const auto inst = generate_random(3, 1, 2);
  const auto m = qubo_to_ising(build_qubo(inst, default_lambda(inst)));
  const StatevectorEvaluator ev(m);
  const std::vector<double> g{0.011, -0.02}, b{0.3, 0.7};
  CHECK(ev(g, b) == doctest::Approx(expectation_ising(simulate(build_qaoa(m, g, b)), m)).epsilon(1e-12));
}

TEST_CASE("trace properties and ground-energy bound") {
  const auto inst = generate_random(4, 1, 3);
  const auto m = qubo_to_ising(build_qubo(inst, default_lambda(inst)));
  const double ground = brute_force_ground_state(m).energy;
  const auto r = optimize(m, quick());
  REQUIRE_FALSE(r.expectation_trace.empty());
  for (std::size_t i = 0; i < r.expectation_trace.size(); ++i) {
    CHECK(std::isfinite(r.expectation_trace[i]));
    CHECK(r.expectation_trace[i] >= ground - 1e-9);
    if (i) CHECK(r.expectation_trace[i] <= r.expectation_trace[i - 1]);
  }
  CHECK(r.best_expectation == r.expectation_trace.back());
  CHECK(r.evaluations <= 2 * 120);
}

TEST_CASE("deterministic per seed") {
  const auto inst = generate_random(3, 1, 4);
  const auto m = qubo_to_ising(build_qubo(inst, default_lambda(inst)));
  const auto a = optimize(m, quick(2)), b = optimize(m, quick(2));
  CHECK(a.gammas == b.gammas);
  CHECK(a.betas == b.betas);
  CHECK(a.expectation_trace == b.expectation_trace);
}

TEST_CASE("injected evaluator and error context") {
  const auto inst = generate_random(3, 1, 5);
  const auto m = qubo_to_ising(build_qubo(inst, default_lambda(inst)));
  const std::vector<double> g0{0.5}, b0{0.5};
  const CutPlan plan = find_cut(build_qaoa(m, g0, b0), 3, 1);
  Evaluator cut_eval = [&](std::span<const double> g, std::span<const double> b) {
    return reconstruct_expectation(build_qaoa(m, g, b), plan, m);
  };
  const auto via_cut = optimize(m, quick(), cut_eval);
  const auto direct = optimize(m, quick());
  CHECK(via_cut.best_expectation == doctest::Approx(direct.best_expectation).epsilon(1e-8));

  Evaluator failing = [](std::span<const double>, std::span<const double>) -> double {
    throw Error(ErrorKind::Resource, "backend down");
  };
  try {
    optimize(m, quick(), failing);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Resource);
    CHECK(std::string(e.what()).find("restart") != std::string::npos);
  }
}

TEST_CASE("three-node tsp at p = 10") {
  const auto inst = generate_random(3, 1, 6);
  const auto sol = solve_tsp(inst, quick(10));
  REQUIRE(sol.routes.has_value());
  CHECK(sol.routes->total_cost == doctest::Approx(brute_force_tsp(inst).cost).epsilon(1e-12));
  CHECK(sol.result.feasible_hit_count > 0);
}

TEST_CASE("four-node tsp finds the optimum") {
  for (std::uint64_t seed : {1, 2, 3}) {
    const auto inst = generate_random(4, 1, seed);
    const auto sol = solve_tsp(inst, quick());
    REQUIRE(sol.routes.has_value());
    const double cost = sol.routes->total_cost;
    CHECK(cost == doctest::Approx(route_cost(inst, *sol.routes)).epsilon(1e-15));
    CHECK(cost == doctest::Approx(brute_force_tsp(inst).cost).epsilon(1e-12));
    CHECK(sol.result.feasible_probability > 0.0);
    CHECK(sol.result.feasible_probability <= 1.0);
    CHECK(sol.result.feasible_hit_count <= sol.result.shots);
  }
}

TEST_CASE("width guard points at cutting") {
  try {
    solve_tsp(generate_random(6, 1, 1), quick());
    FAIL("no guard");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Resource);
    CHECK(std::string(e.what()).find("cut") != std::string::npos);
  }
  CHECK_THROWS_AS(solve_tsp(generate_random(5, 2, 1), quick()), Error);
}

TEST_CASE("pld pipeline on a seven-node instance") {
  const auto inst = generate_random(7, 2, 1);
  const auto pld = solve_vrp_pld(inst, quick(), 1);
  REQUIRE(pld.blocks.size() == 2);
  for (const auto& b : pld.blocks) CHECK(b.solution.ising.num_qubits == 12);
  CHECK(validate_routes(inst, pld.routes).ok());
  double sum = 0;
  for (const auto& b : pld.blocks) sum += b.cost;
  CHECK(pld.routes.total_cost == doctest::Approx(sum));
  CHECK(pld.routes.total_cost >= brute_force_vrp(inst).total_cost - 1e-12);
}

}  // TEST_SUITE
