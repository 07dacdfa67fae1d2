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

#include <span>
#include <string>
#include <vector>

#include "vrpq/encode.hpp"

namespace vrpq {

// Rotation conventions: RX(t) = exp(-i t/2 X), RZ(t) = exp(-i t/2 Z),
// RZZ(t) = exp(-i t/2 Z(x)Z). MeasZSign is a mid-circuit Z measurement whose
// +-1 outcome multiplies the estimate; it only appears in cut subexperiments.
enum class GateKind { H, X, Z, RX, RZ, RZZ, CX, MeasZSign };

struct Gate {
  GateKind kind = GateKind::H;
  int q0 = 0;
  int q1 = -1;  ///< second operand of RZZ / target of CX
  double angle = 0.0;

  bool two_qubit() const noexcept { return kind == GateKind::RZZ || kind == GateKind::CX; }
};

const char* gate_name(GateKind kind) noexcept;

class Circuit {
 public:
  explicit Circuit(int num_qubits = 0);

  int num_qubits() const noexcept { return num_qubits_; }
  const std::vector<Gate>& gates() const noexcept { return gates_; }

  /// Validates operand ranges and distinctness.
  Circuit& add(Gate g);
  Circuit& h(int q) { return add({GateKind::H, q}); }
  Circuit& x(int q) { return add({GateKind::X, q}); }
  Circuit& z(int q) { return add({GateKind::Z, q}); }
  Circuit& rx(int q, double t) { return add({GateKind::RX, q, -1, t}); }
  Circuit& rz(int q, double t) { return add({GateKind::RZ, q, -1, t}); }
  Circuit& rzz(int a, int b, double t) { return add({GateKind::RZZ, a, b, t}); }
  Circuit& cx(int c, int t) { return add({GateKind::CX, c, t}); }
  Circuit& meas_z_sign(int q) { return add({GateKind::MeasZSign, q}); }

  std::size_t count(GateKind kind) const noexcept;

 private:
  int num_qubits_;
  std::vector<Gate> gates_;
};

struct CircuitMetrics {
  int qubits = 0;
  int depth = 0;
  long long two_qubit_gates = 0;
};

/// Hadamard wall, then per layer RZ(2 gamma h_q), RZZ(2 gamma J_ab) for every
/// nonzero coefficient, then RX(2 beta) on every qubit. The constant offset
/// only contributes a global phase and emits nothing.
Circuit build_qaoa(const IsingModel& m, std::span<const double> gammas,
                   std::span<const double> betas);

/// RZZ(a, b, t) -> CX(a, b) RZ(b, t) CX(a, b).
Circuit lower_rzz(const Circuit& c);

/// Width, ASAP layer depth and CX count of the lowered circuit.
CircuitMetrics metrics(const Circuit& c);

/// One gate per line, e.g. "RZZ 0 5 1.57079633"; angles use 9 significant digits.
std::string to_text(const Circuit& c);

}  // namespace vrpq
