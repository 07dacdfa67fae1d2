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

#include "vrpq/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vrpq/errors.hpp"
#include "vrpq/random.hpp"

namespace vrpq {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Qubits below this index are handled inside contiguous cache-sized chunks.
constexpr int kChunkQubits = 12;

inline void rx_pair(Amplitude& a, Amplitude& b, double c, double s) {
  // [c, -is; -is, c]
  const double ar = a.real(), ai = a.imag(), br = b.real(), bi = b.imag();
  a = {c * ar + s * bi, c * ai - s * br};
  b = {s * ai + c * br, -s * ar + c * bi};
}

template <typename PairOp>
void for_each_pair(std::vector<Amplitude>& amps, int q, PairOp op) {
  const std::size_t stride = std::size_t{1} << q;
  const std::size_t n = amps.size();
  for (std::size_t base = 0; base < n; base += 2 * stride)
    for (std::size_t i = base; i < base + stride; ++i) op(amps[i], amps[i + stride]);
}

void validate_width(int n) {
  require(n >= 0, ErrorKind::Parameter, "negative width");
  require(n <= kMaxSimQubits, ErrorKind::Resource,
          "statevector simulation limited to " + std::to_string(kMaxSimQubits) +
              " qubits, got " + std::to_string(n) + "; use circuit cutting");
}

}  // namespace

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
  validate_width(num_qubits);
  amps_.assign(std::size_t{1} << num_qubits, Amplitude{0.0, 0.0});
  amps_[0] = 1.0;
}

void StateVector::apply(const Gate& g) {
  require(g.q0 >= 0 && g.q0 < num_qubits_, ErrorKind::Contract, "gate operand out of range");
  switch (g.kind) {
    case GateKind::H:
      for_each_pair(amps_, g.q0, [](Amplitude& a, Amplitude& b) {
        const Amplitude s = a + b, d = a - b;
        a = s * kInvSqrt2;
        b = d * kInvSqrt2;
      });
      break;
    case GateKind::X:
      for_each_pair(amps_, g.q0, [](Amplitude& a, Amplitude& b) { std::swap(a, b); });
      break;
    case GateKind::Z:
      for_each_pair(amps_, g.q0, [](Amplitude&, Amplitude& b) { b = -b; });
      break;
    case GateKind::RX: {
      const double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
      for_each_pair(amps_, g.q0, [c, s](Amplitude& a, Amplitude& b) { rx_pair(a, b, c, s); });
      break;
    }
    case GateKind::RZ: {
      const Amplitude p0 = std::polar(1.0, -g.angle / 2), p1 = std::polar(1.0, g.angle / 2);
      for_each_pair(amps_, g.q0, [p0, p1](Amplitude& a, Amplitude& b) {
        a *= p0;
        b *= p1;
      });
      break;
    }
    case GateKind::RZZ: {
      const Amplitude same = std::polar(1.0, -g.angle / 2), diff = std::polar(1.0, g.angle / 2);
      const std::size_t ma = std::size_t{1} << g.q0, mb = std::size_t{1} << g.q1;
      for (std::size_t i = 0; i < amps_.size(); ++i)
        amps_[i] *= (((i & ma) != 0) == ((i & mb) != 0)) ? same : diff;
      break;
    }
    case GateKind::CX: {
      const std::size_t mc = std::size_t{1} << g.q0, mt = std::size_t{1} << g.q1;
      for (std::size_t i = 0; i < amps_.size(); ++i)
        if ((i & mc) && !(i & mt)) std::swap(amps_[i], amps_[i | mt]);
      break;
    }
    case GateKind::MeasZSign:
      raise(ErrorKind::Contract, "MEAS_Z_SIGN needs branch evaluation, not simulate()");
  }
}

double StateVector::norm_squared() const noexcept {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(amps_.size());
  for (std::size_t i = 0; i < amps_.size(); ++i) p[i] = std::norm(amps_[i]);
  return p;
}

void StateVector::apply_hadamard_all() {
  for (int q = 0; q < num_qubits_; ++q) apply(Gate{GateKind::H, q});
}

void StateVector::apply_rx_all(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  const int low = std::min(num_qubits_, kChunkQubits);
  const std::size_t chunk = std::size_t{1} << low;
  // Low qubits: every pair lives inside one contiguous chunk.
  for (std::size_t base = 0; base < amps_.size(); base += chunk) {
    for (int q = 0; q < low; ++q) {
      const std::size_t stride = std::size_t{1} << q;
      for (std::size_t blk = base; blk < base + chunk; blk += 2 * stride)
        for (std::size_t i = blk; i < blk + stride; ++i) rx_pair(amps_[i], amps_[i + stride], c, s);
    }
  }
  for (int q = low; q < num_qubits_; ++q) {
    const std::size_t stride = std::size_t{1} << q;
    for (std::size_t blk = 0; blk < amps_.size(); blk += 2 * stride)
      for (std::size_t i = blk; i < blk + stride; ++i) rx_pair(amps_[i], amps_[i + stride], c, s);
  }
}

void StateVector::apply_diagonal_phase(std::span<const double> energies, double gamma) {
  require(energies.size() == amps_.size(), ErrorKind::Contract, "diagonal size mismatch");
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    const double t = -gamma * energies[i];
    const double c = std::cos(t), s = std::sin(t);
    const double ar = amps_[i].real(), ai = amps_[i].imag();
    amps_[i] = {ar * c - ai * s, ar * s + ai * c};
  }
}

void StateVector::project(int q, int outcome) {
  const std::size_t mask = std::size_t{1} << q;
  for (std::size_t i = 0; i < amps_.size(); ++i)
    if (((i & mask) != 0) != (outcome != 0)) amps_[i] = 0.0;
}

StateVector simulate(const Circuit& c) {
  StateVector s(c.num_qubits());
  for (const Gate& g : c.gates()) s.apply(g);
  return s;
}

double expectation_ising(const StateVector& s, const IsingModel& m) {
  require(s.num_qubits() == m.num_qubits, ErrorKind::Contract,
          "state and observable widths differ");
  double e = 0.0;
  for (std::size_t b = 0; b < s.size(); ++b) {
    const double p = std::norm(s[b]);
    if (p != 0.0) e += p * m.energy(static_cast<std::uint64_t>(b));
  }
  return e;
}

namespace {

void branch_walk(const Circuit& c, std::size_t from, StateVector state, double sign,
                 std::vector<double>& acc) {
  const auto& gates = c.gates();
  for (std::size_t k = from; k < gates.size(); ++k) {
    if (gates[k].kind != GateKind::MeasZSign) {
      state.apply(gates[k]);
      continue;
    }
    StateVector one = state;
    one.project(gates[k].q0, 1);
    state.project(gates[k].q0, 0);
    if (one.norm_squared() > 0.0) branch_walk(c, k + 1, std::move(one), -sign, acc);
    if (state.norm_squared() == 0.0) return;
  }
  const auto amps = state.amplitudes();
  for (std::size_t b = 0; b < amps.size(); ++b) acc[b] += sign * std::norm(amps[b]);
}

}  // namespace

std::vector<double> branch_distribution(const Circuit& c) {
  require(c.count(GateKind::MeasZSign) <= kMaxBranchMeasurements, ErrorKind::Resource,
          "more than " + std::to_string(kMaxBranchMeasurements) + " mid-circuit measurements");
  std::vector<double> acc(std::size_t{1} << c.num_qubits(), 0.0);
  branch_walk(c, 0, StateVector(c.num_qubits()), 1.0, acc);
  return acc;
}

double evaluate_branches(const Circuit& c, const IsingModel& m) {
  require(c.num_qubits() == m.num_qubits, ErrorKind::Contract,
          "circuit and observable widths differ");
  const auto dist = branch_distribution(c);
  double e = 0.0;
  for (std::size_t b = 0; b < dist.size(); ++b)
    if (dist[b] != 0.0) e += dist[b] * m.energy(static_cast<std::uint64_t>(b));
  return e;
}

std::map<std::uint64_t, std::uint64_t> sample(const StateVector& s, std::uint64_t shots,
                                               std::uint64_t seed) {
  require(shots >= 1, ErrorKind::Parameter, "need at least one shot");
  std::vector<double> cdf(s.size());
  double run = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    run += std::norm(s[i]);
    cdf[i] = run;
  }
  Rng rng(seed);
  std::map<std::uint64_t, std::uint64_t> counts;
  for (std::uint64_t k = 0; k < shots; ++k) {
    const double u = rng.uniform() * run;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    // Skip zero-probability entries that share the cumulative value.
    std::size_t idx = static_cast<std::size_t>(it - cdf.begin());
    while (idx > 0 && std::norm(s[idx]) == 0.0) --idx;
    ++counts[idx];
  }
  return counts;
}

}  // namespace vrpq
