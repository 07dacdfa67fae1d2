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

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "json.hpp"
#include "vrpq/baseline.hpp"
#include "vrpq/encode.hpp"
#include "vrpq/errors.hpp"
#include "vrpq/random.hpp"

using namespace vrpq;

namespace {

// Penalty objective evaluated straight from the degree sums.
double penalty_objective(const VrpInstance& inst, double lambda, const Bits& x) {
  const int n = inst.nodes();
  double cost = 0.0;
  std::vector<int> out(n, 0), in(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j || !x[edge_variable(n, i, j)]) continue;
      cost += inst.weight(i, j);
      ++out[i];
      ++in[j];
    }
  for (int i = 0; i < n; ++i) {
    const int r = i == 0 ? inst.vehicles() : 1;
    cost += lambda * ((out[i] - r) * (out[i] - r) + (in[i] - r) * (in[i] - r));
  }
  return cost;
}

double ising_from_spins(const IsingModel& m, const Bits& x) {
  auto z = [&](int q) { return x[q] ? -1.0 : 1.0; };
  double e = m.offset;
  for (int q = 0; q < m.num_qubits; ++q) e += m.h[q] * z(q);
  for (const auto& c : m.couplings) e += c.value * z(c.a) * z(c.b);
  return e;
}

QuboModel bare_qubo(int vars) {
  QuboModel q;
  q.edges.resize(vars);
  q.linear.assign(vars, 0.0);
  return q;
}

}  // namespace

TEST_SUITE("encode") {

TEST_CASE("edge variable order is lexicographic") {
  CHECK(edge_variable(3, 0, 1) == 0);
  CHECK(edge_variable(3, 0, 2) == 1);
  CHECK(edge_variable(3, 1, 0) == 2);
  CHECK(edge_variable(3, 2, 1) == 5);
  for (int v = 0; v < 20; ++v) {
    const Edge e = variable_edge(5, v);
    CHECK(edge_variable(5, e.from, e.to) == v);
  }
}

TEST_CASE("qubit counts") {
  CHECK(qubit_count_edge(13) == 156);
  CHECK(qubit_count_edge(4) == 12);
  CHECK(qubit_count_edge(8) == 56);
  CHECK(qubit_count_amplitude(4) == 4);
  CHECK(qubit_count_amplitude(7) == 6);
  CHECK(qubit_count_amplitude(10) == 7);
  const auto map = amplitude_basis_map(3);
  CHECK(map.num_qubits == 3);
  REQUIRE(map.edge_of_state.size() == 6);
  CHECK(map.edge_of_state[0] == Edge{0, 1});
  CHECK(map.edge_of_state[5] == Edge{2, 1});
  CHECK(map.unused_states == std::vector<std::uint64_t>{6, 7});
}

TEST_CASE("quadratic pair count") {
  for (int n = 3; n <= 7; ++n) {
    const auto q = build_qubo(generate_random(n, 1, 3), 10.0);
    CHECK(q.num_variables() == n * n - n);
    CHECK(q.quadratic.size() == static_cast<std::size_t>(2 * n * (n - 1) * (n - 2) / 2));
    for (const auto& [pair, v] : q.quadratic) CHECK(pair.first < pair.second);
  }
  CHECK_THROWS_AS(build_qubo(generate_random(3, 1, 1), 0.0), Error);
}

TEST_CASE("spin substitution on small models") {
  auto q = bare_qubo(1);
  q.linear[0] = 3.0;
  auto m = qubo_to_ising(q);
  CHECK(m.offset == doctest::Approx(1.5));
  CHECK(m.h[0] == doctest::Approx(-1.5));

  auto q2 = bare_qubo(2);
  q2.quadratic[{0, 1}] = 1.0;
  m = qubo_to_ising(q2);
  CHECK(m.offset == doctest::Approx(0.25));
  CHECK(m.h[0] == doctest::Approx(-0.25));
  CHECK(m.h[1] == doctest::Approx(-0.25));
  REQUIRE(m.couplings.size() == 1);
  CHECK(m.couplings[0].value == doctest::Approx(0.25));

  Rng rng(11);
  auto q6 = bare_qubo(6);
  for (int i = 0; i < 6; ++i) q6.linear[i] = rng.uniform(-2, 2);
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) q6.quadratic[{i, j}] = rng.uniform(-2, 2);
  q6.offset = 0.7;
  m = qubo_to_ising(q6);
  for (std::uint64_t s = 0; s < 64; ++s) {
    const Bits b = state_to_bits(s, 6);
    CHECK(m.energy(b) == doctest::Approx(q6.energy(b)).epsilon(1e-12));
  }
}

TEST_CASE("energy identity against the direct penalty formula") {
  for (auto [n, k] : {std::pair{3, 1}, {4, 1}, {4, 2}}) {
    const auto inst = generate_random(n, k, 5);
    const double lambda = default_lambda(inst);
    const auto q = build_qubo(inst, lambda);
    const auto m = qubo_to_ising(q);
    const int w = q.num_variables();
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << w); ++s) {
      const Bits b = state_to_bits(s, w);
      const double ref = penalty_objective(inst, lambda, b);
      REQUIRE(std::abs(q.energy(b) - ref) <= 1e-9);
      REQUIRE(std::abs(m.energy(s) - ref) <= 1e-9);
      REQUIRE(std::abs(ising_from_spins(m, b) - ref) <= 1e-9);
    }
  }
}

TEST_CASE("tour indicators cost exactly the tour") {
  const auto inst = generate_random(5, 1, 8);
  const auto q = build_qubo(inst, default_lambda(inst));
  const RouteSet rs = make_route_set(inst, {{0, 3, 1, 4, 2, 0}});
  const Bits x = route_indicator(inst, rs);
  CHECK(q.energy(x) == doctest::Approx(rs.total_cost).epsilon(1e-12));
  const auto d = decode_bitstring(x, q, inst);
  REQUIRE(d.feasible());
  CHECK(d.routes->routes == rs.routes);
}

TEST_CASE("bitstring text reads most significant qubit first") {
  const Bits b = parse_bitstring("|100110>");
  REQUIRE(b.size() == 6);
  // Characters 1, 4 and 5 are set: qubits 5, 2 and 1.
  CHECK(b == Bits{0, 1, 1, 0, 0, 1});
  CHECK(format_bitstring(bits_to_state(b), 6) == "100110");

  const auto inst = generate_random(3, 1, 1);
  const auto q = build_qubo(inst, default_lambda(inst));
  const auto d = decode_bitstring(b, q, inst);
  REQUIRE(d.feasible());
  CHECK(d.active_edges == std::vector<Edge>{{0, 2}, {1, 0}, {2, 1}});
  CHECK(d.routes->routes.front() == Route{0, 2, 1, 0});
}

TEST_CASE("decode reports violations") {
  const auto inst = generate_random(4, 1, 1);
  const auto q = build_qubo(inst, default_lambda(inst));
  const auto zero = decode_bitstring(Bits(12, 0), q, inst);
  CHECK_FALSE(zero.feasible());
  CHECK_FALSE(zero.degree_ok);
  CHECK_FALSE(zero.depot_ok);

  Bits pairs(12, 0);
  for (auto [i, j] : {std::pair{0, 1}, {1, 0}, {2, 3}, {3, 2}}) pairs[edge_variable(4, i, j)] = 1;
  const auto sub = decode_bitstring(pairs, q, inst);
  CHECK(sub.degree_ok);
  CHECK(sub.depot_ok);
  CHECK_FALSE(sub.subtour_free);
  CHECK_FALSE(sub.feasible());
}

TEST_CASE("fast feasibility agrees with decoding") {
  for (auto [n, k] : {std::pair{3, 1}, {4, 1}, {4, 2}}) {
    const auto inst = generate_random(n, k, 2);
    const auto q = build_qubo(inst, default_lambda(inst));
    const int w = n * (n - 1);
    int feasible = 0;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << w); ++s) {
      const bool fast = is_feasible_state(s, n, k);
      REQUIRE(fast == decode_bitstring(state_to_bits(s, w), q, inst).feasible());
      feasible += fast;
    }
    // Directed tours: (n-1)! for one vehicle.
    if (k == 1) CHECK(feasible == (n == 3 ? 2 : 6));
  }
}

TEST_CASE("degree violations cost more than any tour") {
  for (int n : {3, 4}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto inst = generate_random(n, 1, seed);
      const auto q = build_qubo(inst, default_lambda(inst));
      const auto m = qubo_to_ising(q);
      const int w = n * (n - 1);
      double worst_tour = -1e300, best_violation = 1e300;
      for (std::uint64_t s = 0; s < (std::uint64_t{1} << w); ++s) {
        const auto d = decode_bitstring(state_to_bits(s, w), q, inst);
        if (d.feasible()) worst_tour = std::max(worst_tour, m.energy(s));
        else if (!d.degree_ok || !d.depot_ok) best_violation = std::min(best_violation, m.energy(s));
      }
      CHECK(best_violation > worst_tour);
    }
  }
}

TEST_CASE("ground state at n = 3 is the optimal tour") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto inst = generate_random(3, 1, seed);
    const auto q = build_qubo(inst, default_lambda(inst));
    const auto gs = brute_force_ground_state(qubo_to_ising(q));
    const auto d = decode_bitstring(state_to_bits(gs.state, 6), q, inst);
    REQUIRE(d.feasible());
    CHECK(d.routes->total_cost == doctest::Approx(brute_force_tsp(inst).cost).epsilon(1e-12));
  }
}

TEST_CASE("at n = 4 two 2-cycles never cost more than the best tour") {
  // The penalty model has no subtour terms; a tour is the union of two
  // perfect matchings, so twice the cheaper matching is never above it.
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto inst = generate_random(4, 1, seed);
    const auto q = build_qubo(inst, default_lambda(inst));
    const auto m = qubo_to_ising(q);
    const auto gs = brute_force_ground_state(m);
    CHECK(gs.energy <= brute_force_tsp(inst).cost + 1e-9);
    const auto d = decode_bitstring(state_to_bits(gs.state, 12), q, inst);
    CHECK(d.degree_ok);
    CHECK(d.depot_ok);
  }
}

TEST_CASE("ground state guard and trivial model") {
  IsingModel flat;
  flat.num_qubits = 3;
  flat.h.assign(3, 0.0);
  flat.offset = 2.5;
  for (std::uint64_t s = 0; s < 8; ++s) CHECK(flat.energy(s) == 2.5);
  CHECK(brute_force_ground_state(flat).state == 0);

  IsingModel wide;
  wide.num_qubits = 23;
  wide.h.assign(23, 1.0);
  try {
    brute_force_ground_state(wide);
    FAIL("no guard");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Resource);
  }
}

TEST_CASE("diagonal energies match pointwise evaluation") {
  const auto m = qubo_to_ising(build_qubo(generate_random(3, 1, 4), 3.0));
  const auto diag = diagonal_energies(m);
  for (std::uint64_t s = 0; s < diag.size(); ++s) CHECK(diag[s] == doctest::Approx(m.energy(s)));
}

TEST_CASE("ising json round trip") {
  const auto m = qubo_to_ising(build_qubo(generate_random(4, 1, 4), 3.0));
  const auto text = to_json(m);
  const auto j = nlohmann::json::parse(text);
  CHECK(j.at("n_qubits") == 12);
  CHECK(j.contains("h"));
  CHECK(j.contains("J"));
  const auto back = ising_from_json(text);
  for (std::uint64_t s = 0; s < 4096; s += 7) CHECK(back.energy(s) == doctest::Approx(m.energy(s)).epsilon(1e-14));
}

}  // TEST_SUITE
