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

#include "vrpq/circuit.hpp"

#include <algorithm>
#include <cstdio>

#include "vrpq/errors.hpp"

namespace vrpq {

const char* gate_name(GateKind kind) noexcept {
  switch (kind) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::Z: return "Z";
    case GateKind::RX: return "RX";
    case GateKind::RZ: return "RZ";
    case GateKind::RZZ: return "RZZ";
    case GateKind::CX: return "CX";
    case GateKind::MeasZSign: return "MEAS_Z_SIGN";
  }
  return "?";
}

Circuit::Circuit(int num_qubits) : num_qubits_(num_qubits) {
  require(num_qubits >= 0, ErrorKind::Parameter, "negative circuit width");
}

Circuit& Circuit::add(Gate g) {
  require(g.q0 >= 0 && g.q0 < num_qubits_, ErrorKind::Contract,
          std::string(gate_name(g.kind)) + " operand out of range");
  if (g.two_qubit()) {
    require(g.q1 >= 0 && g.q1 < num_qubits_, ErrorKind::Contract,
            std::string(gate_name(g.kind)) + " second operand out of range");
    require(g.q0 != g.q1, ErrorKind::Contract,
            std::string(gate_name(g.kind)) + " operands must be distinct");
  } else {
    g.q1 = -1;
  }
  gates_.push_back(g);
  return *this;
}

std::size_t Circuit::count(GateKind kind) const noexcept {
  return static_cast<std::size_t>(std::count_if(
      gates_.begin(), gates_.end(), [kind](const Gate& g) { return g.kind == kind; }));
}

Circuit build_qaoa(const IsingModel& m, std::span<const double> gammas,
                   std::span<const double> betas) {
  require(!gammas.empty(), ErrorKind::Parameter, "QAOA needs at least one layer");
  require(gammas.size() == betas.size(), ErrorKind::Parameter,
          "gamma and beta vectors differ in length");
  Circuit c(m.num_qubits);
  for (int q = 0; q < m.num_qubits; ++q) c.h(q);
  for (std::size_t layer = 0; layer < gammas.size(); ++layer) {
    const double g = gammas[layer];
    for (int q = 0; q < m.num_qubits; ++q)
      if (m.h[q] != 0.0) c.rz(q, 2.0 * g * m.h[q]);
    for (const auto& cp : m.couplings)
      if (cp.value != 0.0) c.rzz(cp.a, cp.b, 2.0 * g * cp.value);
    for (int q = 0; q < m.num_qubits; ++q) c.rx(q, 2.0 * betas[layer]);
  }
  return c;
}

Circuit lower_rzz(const Circuit& c) {
  Circuit out(c.num_qubits());
  for (const Gate& g : c.gates()) {
    if (g.kind == GateKind::RZZ) {
      out.cx(g.q0, g.q1);
      out.rz(g.q1, g.angle);
      out.cx(g.q0, g.q1);
    } else {
      out.add(g);
    }
  }
  return out;
}

CircuitMetrics metrics(const Circuit& c) {
  const Circuit lowered = lower_rzz(c);
  CircuitMetrics m;
  m.qubits = lowered.num_qubits();
  std::vector<int> level(lowered.num_qubits(), 0);
  for (const Gate& g : lowered.gates()) {
    if (g.two_qubit()) {
      const int l = std::max(level[g.q0], level[g.q1]) + 1;
      level[g.q0] = level[g.q1] = l;
      ++m.two_qubit_gates;
    } else {
      ++level[g.q0];
    }
  }
  for (int l : level) m.depth = std::max(m.depth, l);
  return m;
}

std::string to_text(const Circuit& c) {
  std::string out;
  char buf[64];
  for (const Gate& g : c.gates()) {
    out += gate_name(g.kind);
    out += ' ';
    out += std::to_string(g.q0);
    if (g.two_qubit()) {
      out += ' ';
      out += std::to_string(g.q1);
    }
    if (g.kind == GateKind::RX || g.kind == GateKind::RZ || g.kind == GateKind::RZZ) {
      std::snprintf(buf, sizeof buf, " %.9g", g.angle);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace vrpq
