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

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "vrpq/circuit.hpp"
#include "vrpq/encode.hpp"

namespace vrpq {

using Amplitude = std::complex<double>;

inline constexpr int kMaxSimQubits = 24;
inline constexpr int kMaxBranchMeasurements = 12;

/// Dense state over num_qubits qubits; qubit q is bit q of the basis index.
class StateVector {
 public:
  /// |0...0>. Throws Resource above kMaxSimQubits.
  explicit StateVector(int num_qubits);

  int num_qubits() const noexcept { return num_qubits_; }
  std::size_t size() const noexcept { return amps_.size(); }
  std::span<Amplitude> amplitudes() noexcept { return amps_; }
  std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
  Amplitude operator[](std::size_t i) const { return amps_[i]; }

  /// Unitary gates only; MeasZSign is a contract error here.
  void apply(const Gate& g);
  double norm_squared() const noexcept;
  std::vector<double> probabilities() const;

  // Kernels shared with the QAOA evaluator.
  void apply_hadamard_all();
  void apply_rx_all(double theta);
  /// amp[s] *= exp(-i gamma energies[s]).
  void apply_diagonal_phase(std::span<const double> energies, double gamma);
  /// Projects qubit q onto bit `outcome` without renormalizing.
  void project(int q, int outcome);

 private:
  int num_qubits_;
  std::vector<Amplitude> amps_;
};

/// Exact final state from |0...0>.
StateVector simulate(const Circuit& c);

/// <psi|H|psi> using the diagonal of the Ising operator.
double expectation_ising(const StateVector& s, const IsingModel& m);

/// Sum over measurement branches of sign * |amp_b|^2 for every basis state b:
/// the signed quasi-distribution a cut subexperiment contributes.
std::vector<double> branch_distribution(const Circuit& c);

/// Sum over branches of probability * outcome-sign product * Ising expectation.
double evaluate_branches(const Circuit& c, const IsingModel& m);

/// Multinomial draw of `shots` outcomes; deterministic per seed.
std::map<std::uint64_t, std::uint64_t> sample(const StateVector& s, std::uint64_t shots,
                                               std::uint64_t seed);

}  // namespace vrpq
