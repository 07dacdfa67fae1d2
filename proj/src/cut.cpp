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

#include "vrpq/cut.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <numeric>
#include <unordered_map>

#include "json.hpp"
#include "vrpq/errors.hpp"
#include "vrpq/random.hpp"
#include "vrpq/sim.hpp"

namespace vrpq {

namespace {

using Complex = std::complex<double>;

constexpr double kPi = std::numbers::pi;
constexpr double kForbidden = 1e9;
constexpr int kCutStarts = 16;
constexpr std::size_t kMaxBatchedEntries = std::size_t{1} << 26;

// Neumaier summation keeps the total independent of term order to ~1 ulp.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    comp_ += std::abs(sum_) >= std::abs(x) ? (sum_ - t) + x : (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct Layout {
  std::vector<int> side;   // qubit -> part
  std::vector<int> local;  // qubit -> index within part
};

Layout make_layout(const CutPlan& plan, int width) {
  Layout l{std::vector<int>(width, -1), std::vector<int>(width, -1)};
  for (int s = 0; s < 2; ++s)
    for (std::size_t i = 0; i < plan.parts[s].size(); ++i) {
      const int q = plan.parts[s][i];
      require(q >= 0 && q < width && l.side[q] < 0, ErrorKind::Contract,
              "cut plan parts must partition the circuit qubits");
      l.side[q] = s;
      l.local[q] = static_cast<int>(i);
    }
  for (int q = 0; q < width; ++q)
    require(l.side[q] >= 0, ErrorKind::Contract, "cut plan leaves a qubit unassigned");
  return l;
}

// Verifies that exactly the plan's cut gates span the parts.
void check_plan(const Circuit& c, const CutPlan& plan, const Layout& l) {
  std::size_t next = 0;
  for (std::size_t k = 0; k < c.gates().size(); ++k) {
    const Gate& g = c.gates()[k];
    const bool spans = g.two_qubit() && l.side[g.q0] != l.side[g.q1];
    const bool listed = next < plan.cut_gates.size() && plan.cut_gates[next] == k;
    if (listed) {
      require(spans && g.kind == GateKind::RZZ, ErrorKind::Contract,
              "cut gate " + std::to_string(k) + " is not a spanning RZZ");
      ++next;
    } else {
      require(!spans, ErrorKind::Contract,
              "gate " + std::to_string(k) + " spans the parts but is not cut");
    }
  }
  require(next == plan.cut_gates.size(), ErrorKind::Contract, "cut gate list not ascending");
}

// Op applied to part `side` by term t at a cut gate g.
LocalOp side_op(const QpdTerm& t, const Gate& g, const Layout& l, int side) {
  return l.side[g.q0] == side ? t.op_a : t.op_b;
}

int side_qubit(const Gate& g, const Layout& l, int side) {
  return l.local[l.side[g.q0] == side ? g.q0 : g.q1];
}

void append_local_op(Circuit& c, LocalOp op, int q) {
  switch (op) {
    case LocalOp::Identity: break;
    case LocalOp::PauliZ: c.z(q); break;
    case LocalOp::MeasZSign: c.meas_z_sign(q); break;
    case LocalOp::PhasePlus: c.rz(q, kPi / 2); break;
    case LocalOp::PhaseMinus: c.rz(q, -kPi / 2); break;
  }
}

// Part circuit with cut points rendered by `at_cut(circuit, cut index, local qubit)`.
template <typename AtCut>
Circuit part_circuit(const Circuit& c, const CutPlan& plan, const Layout& l, int side,
                     AtCut at_cut) {
  Circuit out(static_cast<int>(plan.parts[side].size()));
  std::size_t next = 0;
  for (std::size_t k = 0; k < c.gates().size(); ++k) {
    const Gate& g = c.gates()[k];
    if (next < plan.cut_gates.size() && plan.cut_gates[next] == k) {
      at_cut(out, next, side_qubit(g, l, side));
      ++next;
      continue;
    }
    if (l.side[g.q0] != side) continue;
    Gate lg = g;
    lg.q0 = l.local[g.q0];
    if (g.two_qubit()) lg.q1 = l.local[g.q1];
    out.add(lg);
  }
  return out;
}

// Observable pieces restricted to one part: mass, local energy (fields and
// in-part couplings, no offset) and every single-qubit Z.
struct PartObservable {
  int width = 0;
  std::vector<double> local_energy;            // per local basis state
  std::vector<std::vector<double>> z;          // [q][state]
  std::size_t moments() const { return 2 + static_cast<std::size_t>(width); }
};

struct CrossCoupling {
  int a;  // local in part 0
  int b;  // local in part 1
  double value;
};

struct Observables {
  std::array<PartObservable, 2> parts;
  std::vector<CrossCoupling> cross;
  double offset = 0.0;
};

Observables split_observable(const IsingModel& m, const CutPlan& plan, const Layout& l) {
  require(m.num_qubits == static_cast<int>(l.side.size()), ErrorKind::Contract,
          "observable width differs from the circuit");
  Observables o;
  o.offset = m.offset;
  for (int s = 0; s < 2; ++s) {
    auto& po = o.parts[s];
    po.width = static_cast<int>(plan.parts[s].size());
    const std::size_t dim = std::size_t{1} << po.width;
    po.local_energy.assign(dim, 0.0);
    po.z.assign(po.width, std::vector<double>(dim));
    for (std::size_t b = 0; b < dim; ++b) {
      for (int q = 0; q < po.width; ++q) {
        const double zq = ((b >> q) & 1U) ? -1.0 : 1.0;
        po.z[q][b] = zq;
        po.local_energy[b] += m.h[plan.parts[s][q]] * zq;
      }
    }
  }
  for (const auto& cp : m.couplings) {
    const int sa = l.side[cp.a], sb = l.side[cp.b];
    if (sa == sb) {
      auto& po = o.parts[sa];
      const int a = l.local[cp.a], b = l.local[cp.b];
      for (std::size_t st = 0; st < po.local_energy.size(); ++st)
        po.local_energy[st] += cp.value * po.z[a][st] * po.z[b][st];
    } else if (sa == 0) {
      o.cross.push_back({l.local[cp.a], l.local[cp.b], cp.value});
    } else {
      o.cross.push_back({l.local[cp.b], l.local[cp.a], cp.value});
    }
  }
  return o;
}

template <typename T>
T combine(const Observables& o, const T* x, const T* y) {
  T e = o.offset * x[0] * y[0] + x[1] * y[0] + x[0] * y[1];
  for (const auto& c : o.cross) e += c.value * x[2 + c.a] * y[2 + c.b];
  return e;
}

std::vector<double> moments_of(const PartObservable& po, const std::vector<double>& dist) {
  std::vector<double> mom(po.moments(), 0.0);
  for (std::size_t b = 0; b < dist.size(); ++b) {
    const double d = dist[b];
    if (d == 0.0) continue;
    mom[0] += d;
    mom[1] += d * po.local_energy[b];
    for (int q = 0; q < po.width; ++q) mom[2 + q] += d * po.z[q][b];
  }
  return mom;
}

// Concurrent insert-or-get cache of per-part subexperiment moments.
class MomentCache {
 public:
  template <typename Compute>
  std::vector<double> get(const std::string& key, Compute compute) {
    {
      std::lock_guard lock(mu_);
      auto it = map_.find(key);
      if (it != map_.end()) return it->second;
    }
    auto value = compute();
    std::lock_guard lock(mu_);
    return map_.emplace(key, std::move(value)).first->second;
  }

 private:
  std::mutex mu_;
  std::unordered_map<std::string, std::vector<double>> map_;
};

std::vector<std::vector<int>> nonzero_terms(const CutPlan& plan) {
  std::vector<std::vector<int>> out;
  for (double theta : plan.cut_angles) {
    const auto terms = qpd_expand(theta);
    std::vector<int> idx;
    for (int t = 0; t < 6; ++t)
      if (terms[t].coefficient != 0.0) idx.push_back(t);
    out.push_back(std::move(idx));
  }
  return out;
}

double reconstruct_per_subexperiment(const Circuit& c, const CutPlan& plan, const Layout& l,
                                     const Observables& obs, bool memoize) {
  const std::size_t ncut = plan.cut_gates.size();
  const auto choices = nonzero_terms(plan);
  std::vector<std::array<QpdTerm, 6>> terms;
  for (double theta : plan.cut_angles) terms.push_back(qpd_expand(theta));

  MomentCache cache;
  std::vector<std::size_t> pos(ncut, 0);
  std::vector<int> choice(ncut);
  CompensatedSum total;
  for (;;) {
    double weight = 1.0;
    for (std::size_t k = 0; k < ncut; ++k) {
      choice[k] = choices[k][pos[k]];
      weight *= terms[k][choice[k]].coefficient;
    }
    std::array<std::vector<double>, 2> mom;
    for (int s = 0; s < 2; ++s) {
      std::string key = std::to_string(s) + ":";
      for (std::size_t k = 0; k < ncut; ++k)
        key += op_letter(side_op(terms[k][choice[k]], c.gates()[plan.cut_gates[k]], l, s));
      auto compute = [&] {
        const Circuit sub = part_circuit(c, plan, l, s, [&](Circuit& out, std::size_t k, int q) {
          append_local_op(out, side_op(terms[k][choice[k]], c.gates()[plan.cut_gates[k]], l, s), q);
        });
        return moments_of(obs.parts[s], branch_distribution(sub));
      };
      mom[s] = memoize ? cache.get(key, compute) : compute();
    }
    total.add(weight * combine(obs, mom[0].data(), mom[1].data()));

    std::size_t k = 0;
    while (k < ncut && ++pos[k] == choices[k].size()) pos[k++] = 0;
    if (k == ncut) break;
  }
  return total.value();
}

// Coefficient of the (ket Z^l, bra Z^r) insertion, digit = l + 2r, in the
// local op's action rho -> sum c Z^l rho Z^r.
Complex insertion_coefficient(LocalOp op, int digit) {
  const Complex half{0.5, 0.0}, ihalf{0.0, 0.5};
  switch (op) {
    case LocalOp::Identity: return digit == 0 ? 1.0 : 0.0;
    case LocalOp::PauliZ: return digit == 3 ? 1.0 : 0.0;
    case LocalOp::MeasZSign: return (digit == 1 || digit == 2) ? half : 0.0;
    case LocalOp::PhasePlus:
      return digit == 1 ? -ihalf : digit == 2 ? ihalf : half;
    case LocalOp::PhaseMinus:
      return digit == 1 ? ihalf : digit == 2 ? -ihalf : half;
  }
  return 0.0;
}

std::size_t spread_bits(std::size_t x) {
  std::size_t out = 0;
  for (int k = 0; x; ++k, x >>= 1)
    if (x & 1U) out |= std::size_t{1} << (2 * k);
  return out;
}

// F[a][m] = <psi_r| O_m |psi_l>, a = spread(l) | spread(r) << 1.
std::vector<Complex> insertion_table(const Circuit& c, const CutPlan& plan, const Layout& l,
                                     const PartObservable& po, int side) {
  const std::size_t ncut = plan.cut_gates.size();
  const std::size_t nket = std::size_t{1} << ncut;
  const std::size_t dim = std::size_t{1} << po.width;
  std::vector<std::vector<Amplitude>> kets(nket);
  for (std::size_t pattern = 0; pattern < nket; ++pattern) {
    const Circuit sub = part_circuit(c, plan, l, side, [pattern](Circuit& out, std::size_t k, int q) {
      if ((pattern >> k) & 1U) out.z(q);
    });
    const StateVector s = simulate(sub);
    kets[pattern].assign(s.amplitudes().begin(), s.amplitudes().end());
  }
  const std::size_t nm = po.moments();
  std::vector<Complex> table((std::size_t{1} << (2 * ncut)) * nm);
  std::vector<Complex> prod(dim);
  for (std::size_t r = 0; r < nket; ++r) {
    for (std::size_t lk = 0; lk < nket; ++lk) {
      for (std::size_t b = 0; b < dim; ++b) prod[b] = std::conj(kets[r][b]) * kets[lk][b];
      Complex* out = &table[(spread_bits(lk) | (spread_bits(r) << 1)) * nm];
      for (std::size_t b = 0; b < dim; ++b) {
        out[0] += prod[b];
        out[1] += prod[b] * po.local_energy[b];
        for (int q = 0; q < po.width; ++q) out[2 + q] += prod[b] * po.z[q][b];
      }
    }
  }
  return table;
}

double reconstruct_batched(const Circuit& c, const CutPlan& plan, const Layout& l,
                           const Observables& obs) {
  const std::size_t ncut = plan.cut_gates.size();
  const std::size_t entries = std::size_t{1} << (2 * ncut);
  const std::size_t nm0 = obs.parts[0].moments(), nm1 = obs.parts[1].moments();
  require(entries * std::max(nm0, nm1) <= kMaxBatchedEntries, ErrorKind::Resource,
          "batched knitting table for " + std::to_string(ncut) + " cuts exceeds memory budget");

  const auto fa = insertion_table(c, plan, l, obs.parts[0], 0);
  auto g = insertion_table(c, plan, l, obs.parts[1], 1);

  // Contract part 1's digits with the per-cut 4x4 kernels
  // K[da][db] = sum_t coef_t C(op0_t, da) C(op1_t, db).
  std::vector<Complex> tmp(4 * nm1);
  for (std::size_t k = 0; k < ncut; ++k) {
    const Gate& gate = c.gates()[plan.cut_gates[k]];
    const auto terms = qpd_expand(plan.cut_angles[k]);
    Complex kernel[4][4] = {};
    for (const auto& t : terms) {
      if (t.coefficient == 0.0) continue;
      for (int da = 0; da < 4; ++da)
        for (int db = 0; db < 4; ++db)
          kernel[da][db] += t.coefficient * insertion_coefficient(side_op(t, gate, l, 0), da) *
                            insertion_coefficient(side_op(t, gate, l, 1), db);
    }
    const std::size_t stride = std::size_t{1} << (2 * k);
    for (std::size_t hi = 0; hi < entries; hi += 4 * stride) {
      for (std::size_t lo = 0; lo < stride; ++lo) {
        const std::size_t base = hi + lo;
        std::fill(tmp.begin(), tmp.end(), Complex{});
        for (int da = 0; da < 4; ++da)
          for (int db = 0; db < 4; ++db) {
            if (kernel[da][db] == Complex{}) continue;
            const Complex* src = &g[(base + db * stride) * nm1];
            for (std::size_t m = 0; m < nm1; ++m) tmp[da * nm1 + m] += kernel[da][db] * src[m];
          }
        for (int da = 0; da < 4; ++da)
          std::copy(tmp.begin() + da * nm1, tmp.begin() + (da + 1) * nm1,
                    g.begin() + (base + da * stride) * nm1);
      }
    }
  }
  CompensatedSum re;
  for (std::size_t a = 0; a < entries; ++a)
    re.add(combine<Complex>(obs, &fa[a * nm0], &g[a * nm1]).real());
  return re.value();
}

// Best-gain pairwise swaps between the two sides of a dense weighted graph.
void refine_bipartition(const std::vector<double>& w, int n, std::vector<int>& a,
                        std::vector<int>& b) {
  std::vector<int> side(n, 0);
  for (int v : b) side[v] = 1;
  for (;;) {
    std::vector<double> ext(n, 0.0), in(n, 0.0);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (u != v) (side[u] == side[v] ? in[u] : ext[u]) += w[u * n + v];
    double best = 1e-9;
    int bi = -1, bj = -1;
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) {
        const int u = a[i], v = b[j];
        const double gain = ext[u] - in[u] + ext[v] - in[v] - 2.0 * w[u * n + v];
        if (gain > best) {
          best = gain;
          bi = static_cast<int>(i);
          bj = static_cast<int>(j);
        }
      }
    if (bi < 0) return;
    std::swap(side[a[bi]], side[b[bj]]);
    std::swap(a[bi], b[bj]);
  }
}

}  // namespace

char op_letter(LocalOp op) noexcept {
  switch (op) {
    case LocalOp::Identity: return 'I';
    case LocalOp::PauliZ: return 'Z';
    case LocalOp::MeasZSign: return 'M';
    case LocalOp::PhasePlus: return 'P';
    case LocalOp::PhaseMinus: return 'N';
  }
  return '?';
}

std::array<QpdTerm, 6> qpd_expand(double theta) {
  const double c2 = std::cos(theta / 2) * std::cos(theta / 2);
  const double s2 = std::sin(theta / 2) * std::sin(theta / 2);
  const double x = std::sin(theta) / 2;
  return {{
      {c2, LocalOp::Identity, LocalOp::Identity},
      {s2, LocalOp::PauliZ, LocalOp::PauliZ},
      {x, LocalOp::MeasZSign, LocalOp::PhasePlus},
      {-x, LocalOp::MeasZSign, LocalOp::PhaseMinus},
      {x, LocalOp::PhasePlus, LocalOp::MeasZSign},
      {-x, LocalOp::PhaseMinus, LocalOp::MeasZSign},
  }};
}

double qpd_gamma(double theta) { return 1.0 + 2.0 * std::abs(std::sin(theta)); }

double CutPlan::gamma_total() const {
  return log10_gamma < 308.0 ? std::pow(10.0, log10_gamma)
                             : std::numeric_limits<double>::infinity();
}

CutPlan plan_for_parts(const Circuit& c, const std::vector<int>& part) {
  const int n = c.num_qubits();
  std::vector<int> side(n, 1);
  for (int q : part) {
    require(q >= 0 && q < n, ErrorKind::Parameter, "part qubit out of range");
    side[q] = 0;
  }
  CutPlan plan;
  for (int q = 0; q < n; ++q) plan.parts[side[q]].push_back(q);
  const bool swap_parts =
      plan.parts[1].size() > plan.parts[0].size() ||
      (plan.parts[1].size() == plan.parts[0].size() && !plan.parts[1].empty() &&
       plan.parts[1].front() < plan.parts[0].front());
  if (swap_parts) std::swap(plan.parts[0], plan.parts[1]);
  plan.largest_part_size = static_cast<int>(plan.parts[0].size());
  for (std::size_t k = 0; k < c.gates().size(); ++k) {
    const Gate& g = c.gates()[k];
    if (!g.two_qubit() || side[g.q0] == side[g.q1]) continue;
    require(g.kind == GateKind::RZZ, ErrorKind::Infeasible,
            std::string("cannot cut a spanning ") + gate_name(g.kind) + " gate");
    plan.cut_gates.push_back(k);
    plan.cut_angles.push_back(g.angle);
    plan.log10_gamma += std::log10(qpd_gamma(g.angle));
  }
  return plan;
}

CutPlan find_cut(const Circuit& c, int xi_max, std::uint64_t seed) {
  require(xi_max >= 1, ErrorKind::Parameter, "qubit budget must be positive");
  const int n = c.num_qubits();
  if (n <= xi_max) {
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    return plan_for_parts(c, all);
  }
  require(n <= 2 * xi_max, ErrorKind::Infeasible,
          std::to_string(n) + " qubits cannot be bipartitioned into parts of at most " +
              std::to_string(xi_max));

  std::vector<double> w(static_cast<std::size_t>(n) * n, 0.0);
  for (const Gate& g : c.gates()) {
    if (!g.two_qubit()) continue;
    const double add = g.kind == GateKind::RZZ ? 1.0 : kForbidden;
    w[g.q0 * n + g.q1] += add;
    w[g.q1 * n + g.q0] += add;
  }
  auto cut_of = [&](const std::vector<int>& a, const std::vector<int>& b) {
    double s = 0.0;
    for (int u : a)
      for (int v : b) s += w[u * n + v];
    return s;
  };

  std::vector<int> best_a;
  double best_cut = std::numeric_limits<double>::infinity();
  for (int size_a = (n + 1) / 2; size_a <= xi_max; ++size_a) {
    for (int start = 0; start < kCutStarts; ++start) {
      Rng rng(seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(size_a * kCutStarts + start));
      std::vector<int> order(n);
      std::iota(order.begin(), order.end(), 0);
      rng.shuffle(order);
      std::vector<int> a(order.begin(), order.begin() + size_a), b(order.begin() + size_a, order.end());
      refine_bipartition(w, n, a, b);
      const double cut = cut_of(a, b);
      if (cut < best_cut - 0.5) {
        best_cut = cut;
        best_a = a;
      }
    }
  }
  require(best_cut < kForbidden, ErrorKind::Infeasible,
          "every bipartition within the budget splits a non-RZZ two-qubit gate");
  return plan_for_parts(c, best_a);
}

OverheadReport overhead_report(const CutPlan& plan, double budget_log10) {
  OverheadReport r;
  r.cuts = plan.cut_angles.size();
  r.log10_gamma = plan.log10_gamma;
  r.gamma_total = plan.gamma_total();
  r.log10_gamma_squared = 2.0 * plan.log10_gamma;
  r.gamma_squared = r.log10_gamma_squared < 308.0 ? std::pow(10.0, r.log10_gamma_squared)
                                                  : std::numeric_limits<double>::infinity();
  const auto choices = nonzero_terms(plan);
  const bool two_parts = !plan.parts[1].empty();
  double log_memo = 0.0;
  for (std::size_t k = 0; k < choices.size(); ++k) {
    r.log10_subexperiments += std::log10(static_cast<double>(choices[k].size()));
    const auto terms = qpd_expand(plan.cut_angles[k]);
    std::vector<char> ops;
    for (int t : choices[k]) ops.push_back(op_letter(terms[t].op_a));
    std::sort(ops.begin(), ops.end());
    ops.erase(std::unique(ops.begin(), ops.end()), ops.end());
    log_memo += std::log10(static_cast<double>(ops.size()));
  }
  r.log10_memoized = log_memo + (two_parts ? std::log10(2.0) : 0.0);
  auto exp10 = [](double l) {
    return l < 308.0 ? std::pow(10.0, l) : std::numeric_limits<double>::infinity();
  };
  r.subexperiment_count = exp10(r.log10_subexperiments);
  r.memoized_count = exp10(r.log10_memoized);
  r.budget_log10 = budget_log10;
  r.within_budget = r.log10_gamma <= budget_log10;
  return r;
}

std::array<Subexperiment, 2> build_subexperiments(const Circuit& c, const CutPlan& plan,
                                                  std::span<const int> term_choice) {
  require(term_choice.size() == plan.cut_gates.size(), ErrorKind::Parameter,
          "need one term index per cut");
  const Layout l = make_layout(plan, c.num_qubits());
  check_plan(c, plan, l);
  std::vector<std::array<QpdTerm, 6>> terms;
  double weight = 1.0;
  for (std::size_t k = 0; k < term_choice.size(); ++k) {
    require(term_choice[k] >= 0 && term_choice[k] < 6, ErrorKind::Parameter, "term index out of range");
    terms.push_back(qpd_expand(plan.cut_angles[k]));
    weight *= terms[k][term_choice[k]].coefficient;
  }
  std::array<Subexperiment, 2> out;
  for (int s = 0; s < 2; ++s) {
    out[s].part = s;
    out[s].weight = weight;
    out[s].key = std::to_string(s) + ":";
    out[s].circuit = part_circuit(c, plan, l, s, [&](Circuit& sub, std::size_t k, int q) {
      const LocalOp op = side_op(terms[k][term_choice[k]], c.gates()[plan.cut_gates[k]], l, s);
      out[s].key += op_letter(op);
      append_local_op(sub, op, q);
    });
  }
  return out;
}

Circuit subexperiment_template(const Circuit& c, const CutPlan& plan, int part) {
  require(part == 0 || part == 1, ErrorKind::Parameter, "part must be 0 or 1");
  const Layout l = make_layout(plan, c.num_qubits());
  check_plan(c, plan, l);
  return part_circuit(c, plan, l, part, [&](Circuit& sub, std::size_t k, int q) {
    sub.rz(q, plan.cut_angles[k]);
  });
}

CircuitMetrics largest_subcircuit_metrics(const Circuit& c, const CutPlan& plan) {
  const CircuitMetrics m0 = metrics(subexperiment_template(c, plan, 0));
  if (plan.parts[1].empty()) return m0;
  const CircuitMetrics m1 = metrics(subexperiment_template(c, plan, 1));
  auto key = [](const CircuitMetrics& m) { return std::tuple(m.qubits, m.two_qubit_gates, m.depth); };
  return key(m1) > key(m0) ? m1 : m0;
}

double reconstruct_expectation(const Circuit& c, const CutPlan& structure, const IsingModel& m,
                               const ReconstructOptions& opts) {
  require(c.count(GateKind::MeasZSign) == 0, ErrorKind::Contract,
          "reconstruction expects a unitary circuit");
  const Layout l = make_layout(structure, c.num_qubits());
  check_plan(c, structure, l);
  // The plan fixes which gates are cut; their angles come from this circuit.
  CutPlan plan = structure;
  plan.log10_gamma = 0.0;
  for (std::size_t k = 0; k < plan.cut_gates.size(); ++k) {
    plan.cut_angles[k] = c.gates()[plan.cut_gates[k]].angle;
    plan.log10_gamma += std::log10(qpd_gamma(plan.cut_angles[k]));
  }
  if (plan.log10_gamma > opts.budget_log10) {
    raise(ErrorKind::Resource, "sampling overhead gamma = 10^" + std::to_string(plan.log10_gamma) +
                                   " exceeds budget 10^" + std::to_string(opts.budget_log10));
  }
  require(plan.cut_gates.size() <= kMaxCuts, ErrorKind::Resource,
          std::to_string(plan.cut_gates.size()) + " cuts exceed the limit of " +
              std::to_string(kMaxCuts) + " (gamma = 10^" + std::to_string(plan.log10_gamma) + ")");
  if (plan.cut_gates.empty() && plan.parts[1].empty())
    return expectation_ising(simulate(c), m);
  const Observables obs = split_observable(m, plan, l);
  return opts.method == KnitMethod::Batched
             ? reconstruct_batched(c, plan, l, obs)
             : reconstruct_per_subexperiment(c, plan, l, obs, opts.memoize);
}

std::string to_json(const CutPlan& plan) {
  nlohmann::ordered_json j;
  j["parts"] = plan.parts;
  j["cut_gates"] = plan.cut_gates;
  j["cut_angles"] = plan.cut_angles;
  j["log10_gamma"] = plan.log10_gamma;
  j["largest_part_size"] = plan.largest_part_size;
  return j.dump(2) + "\n";
}

std::string to_json(const OverheadReport& r) {
  nlohmann::ordered_json j;
  auto num = [](double v) {
    return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
  };
  j["cuts"] = r.cuts;
  j["log10_gamma"] = r.log10_gamma;
  j["gamma_total"] = num(r.gamma_total);
  j["log10_gamma_squared"] = r.log10_gamma_squared;
  j["gamma_squared"] = num(r.gamma_squared);
  j["log10_subexperiment_count"] = r.log10_subexperiments;
  j["subexperiment_count"] = num(r.subexperiment_count);
  j["log10_memoized_count"] = r.log10_memoized;
  j["memoized_count"] = num(r.memoized_count);
  j["budget_log10"] = num(r.budget_log10);
  j["within_budget"] = r.within_budget;
  return j.dump(2) + "\n";
}

}  // namespace vrpq
