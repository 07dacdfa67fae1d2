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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vrpq/instance.hpp"

namespace vrpq {

/// Directed edge i -> j carried by one binary variable / qubit.
struct Edge {
  int from = 0;
  int to = 0;
  bool operator==(const Edge&) const = default;
};

/// Qubit index of directed edge (i, j) under the lexicographic edge order.
int edge_variable(int n, int from, int to);
Edge variable_edge(int n, int var);

/// Bits are indexed by variable (qubit); an integer state carries qubit q in
/// bit q. Bitstrings print most-significant qubit first.
using Bits = std::vector<std::uint8_t>;
Bits state_to_bits(std::uint64_t state, int width);
std::uint64_t bits_to_state(const Bits& bits);
std::string format_bitstring(std::uint64_t state, int width);
/// Inverse of format_bitstring: leftmost character is the highest qubit.
Bits parse_bitstring(const std::string& text);

using VarPair = std::pair<int, int>;  // first < second

struct QuboModel {
  int nodes = 0;
  int vehicles = 1;
  double lambda = 0.0;
  std::vector<Edge> edges;                ///< variable -> edge
  std::vector<double> linear;             ///< per variable
  std::map<VarPair, double> quadratic;    ///< distinct unordered pairs
  double offset = 0.0;

  int num_variables() const noexcept { return static_cast<int>(edges.size()); }
  double energy(std::span<const std::uint8_t> bits) const;
};

struct Coupling {
  int a = 0;
  int b = 0;  // a < b
  double value = 0.0;
};

/// Diagonal cost operator offset + sum h_q Z_q + sum J_ab Z_a Z_b, with the
/// spin of qubit q equal to +1 for bit 0 and -1 for bit 1.
struct IsingModel {
  int num_qubits = 0;
  std::vector<double> h;
  std::vector<Coupling> couplings;  ///< sorted by (a, b)
  double offset = 0.0;

  double energy(std::span<const std::uint8_t> bits) const;
  double energy(std::uint64_t state) const;
  /// Largest |h| or |J|, used to normalize QAOA angles.
  double max_coefficient() const noexcept;
};

/// Default penalty weight 2 * n * max(w).
double default_lambda(const VrpInstance& inst);

/// Penalty QUBO: edge costs plus squared degree penalties (right-hand side 1
/// for customers and K at the depot).
QuboModel build_qubo(const VrpInstance& inst, double lambda);
IsingModel qubo_to_ising(const QuboModel& q);

/// Edge encoding width, n^2 - n.
long long qubit_count_edge(int n);

struct AmplitudeBasisMap {
  int num_qubits = 0;
  std::vector<Edge> edge_of_state;          ///< basis index -> edge
  std::vector<std::uint64_t> unused_states; ///< indices >= n^2 - n
};

/// ceil(log2(n^2 - n)).
int qubit_count_amplitude(int n);
AmplitudeBasisMap amplitude_basis_map(int n);

/// Indicator vector of a route set over the edge variables.
Bits route_indicator(const VrpInstance& inst, const RouteSet& rs);

struct DecodeResult {
  std::optional<RouteSet> routes;
  std::vector<Edge> active_edges;
  std::vector<std::string> violations;
  bool degree_ok = false;
  bool depot_ok = false;
  bool subtour_free = false;

  bool feasible() const noexcept { return routes.has_value(); }
};

/// Maps set bits to active edges and returns routes iff every degree
/// constraint holds and no cycle avoids the depot.
DecodeResult decode_bitstring(const Bits& bits, const QuboModel& q, const VrpInstance& inst);

/// Fast feasibility test of one basis state; same answer as decode_bitstring.
bool is_feasible_state(std::uint64_t state, int nodes, int vehicles);

struct GroundState {
  std::uint64_t state = 0;
  double energy = 0.0;
};

/// Exhaustive minimizer; ties go to the lowest state. Width guard 22.
GroundState brute_force_ground_state(const IsingModel& m);

/// Energy of every basis state, index = state. Width guard 26.
std::vector<double> diagonal_energies(const IsingModel& m);

std::string to_json(const IsingModel& m);
IsingModel ising_from_json(const std::string& text);

}  // namespace vrpq
