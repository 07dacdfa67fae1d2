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

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "vrpq/circuit.hpp"
#include "vrpq/encode.hpp"

namespace vrpq {

/// Local instruction substituted at one end of a cut RZZ gate.
enum class LocalOp {
  Identity,
  PauliZ,
  MeasZSign,   ///< Z measurement; the +-1 outcome multiplies the estimate
  PhasePlus,   ///< RZ(+pi/2)
  PhaseMinus,  ///< RZ(-pi/2)
};

char op_letter(LocalOp op) noexcept;

struct QpdTerm {
  double coefficient = 0.0;
  LocalOp op_a = LocalOp::Identity;  ///< acts on the gate's first operand
  LocalOp op_b = LocalOp::Identity;  ///< acts on the gate's second operand
};

/// Quasiprobability decomposition of the RZZ(theta) channel into six local
/// terms; |coefficients| sum to 1 + 2|sin theta|.
std::array<QpdTerm, 6> qpd_expand(double theta);
double qpd_gamma(double theta);

/// Bipartition of a circuit's qubits and the RZZ gates that span it.
struct CutPlan {
  std::array<std::vector<int>, 2> parts;  ///< sorted; parts[0] is the larger
  std::vector<std::size_t> cut_gates;     ///< gate indices, ascending
  std::vector<double> cut_angles;         ///< RZZ angle of each cut gate
  double log10_gamma = 0.0;
  int largest_part_size = 0;

  double gamma_total() const;
};

/// Plan for a given part (the complement forms the other part). Throws
/// Infeasible if a non-RZZ two-qubit gate spans the parts.
CutPlan plan_for_parts(const Circuit& c, const std::vector<int>& part);

/// Searches bipartitions with both sides <= xi_max, minimizing the number of
/// spanning RZZ gates (ties prefer balance). Deterministic per seed.
CutPlan find_cut(const Circuit& c, int xi_max, std::uint64_t seed);

struct OverheadReport {
  std::size_t cuts = 0;
  double log10_gamma = 0.0;
  double gamma_total = 1.0;          ///< +inf when not representable
  double log10_gamma_squared = 0.0;
  double gamma_squared = 1.0;
  double log10_subexperiments = 0.0; ///< number of term products
  double subexperiment_count = 1.0;
  double log10_memoized = 0.0;       ///< distinct per-part subexperiments
  double memoized_count = 1.0;
  double budget_log10 = std::numeric_limits<double>::infinity();
  bool within_budget = true;
};

/// Overhead arithmetic in log space; `budget_log10` bounds log10(gamma_total).
OverheadReport overhead_report(const CutPlan& plan,
                               double budget_log10 = std::numeric_limits<double>::infinity());

struct Subexperiment {
  int part = 0;
  Circuit circuit;        ///< width = part size, local qubit numbering
  double weight = 0.0;    ///< product of the chosen term coefficients
  std::string key;        ///< part id plus local-op signature
};

/// The two per-part circuits for one choice of term index (0..5) per cut.
std::array<Subexperiment, 2> build_subexperiments(const Circuit& c, const CutPlan& plan,
                                                  std::span<const int> term_choice);

/// Part circuit with each cut point carrying one single-qubit placeholder.
Circuit subexperiment_template(const Circuit& c, const CutPlan& plan, int part);

/// Metrics of the wider part's template; the original metrics if uncut.
CircuitMetrics largest_subcircuit_metrics(const Circuit& c, const CutPlan& plan);

enum class KnitMethod {
  /// One ket simulation per Pauli-Z insertion pattern per part, combined by
  /// a 4^cuts tensor contraction. Exact, and the default.
  Batched,
  /// Enumerates every term product, evaluating each per-part subexperiment
  /// by measurement-branch enumeration (optionally memoized by key).
  PerSubexperiment,
};

struct ReconstructOptions {
  KnitMethod method = KnitMethod::Batched;
  bool memoize = true;
  double budget_log10 = std::numeric_limits<double>::infinity();
};

inline constexpr std::size_t kMaxCuts = 12;

/// <H_c> of the uncut circuit rebuilt from per-part subexperiments. The plan
/// supplies the parts and cut gate indices; angles are read from `c`.
double reconstruct_expectation(const Circuit& c, const CutPlan& plan, const IsingModel& m,
                               const ReconstructOptions& opts = {});

std::string to_json(const CutPlan& plan);
std::string to_json(const OverheadReport& rep);

}  // namespace vrpq
