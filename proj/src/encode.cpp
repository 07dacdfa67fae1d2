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

#include "vrpq/encode.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>

#include "json.hpp"
#include "vrpq/errors.hpp"

namespace vrpq {

int edge_variable(int n, int from, int to) {
  require(from != to && from >= 0 && to >= 0 && from < n && to < n,
          ErrorKind::Parameter, "edge variable needs distinct in-range nodes");
  return from * (n - 1) + (to < from ? to : to - 1);
}

Edge variable_edge(int n, int var) {
  const int from = var / (n - 1);
  const int r = var % (n - 1);
  return Edge{from, r < from ? r : r + 1};
}

Bits state_to_bits(std::uint64_t state, int width) {
  Bits b(width);
  for (int q = 0; q < width; ++q) b[q] = static_cast<std::uint8_t>((state >> q) & 1U);
  return b;
}

std::uint64_t bits_to_state(const Bits& bits) {
  require(bits.size() <= 64, ErrorKind::Parameter, "state wider than 64 qubits");
  std::uint64_t s = 0;
  for (std::size_t q = 0; q < bits.size(); ++q)
    if (bits[q]) s |= std::uint64_t{1} << q;
  return s;
}

std::string format_bitstring(std::uint64_t state, int width) {
  std::string s(static_cast<std::size_t>(width), '0');
  for (int q = 0; q < width; ++q)
    if ((state >> q) & 1U) s[static_cast<std::size_t>(width - 1 - q)] = '1';
  return s;
}

Bits parse_bitstring(const std::string& text) {
  std::string t = text;
  if (!t.empty() && t.front() == '|') t.erase(t.begin());
  if (!t.empty() && (t.back() == '>' || t.back() == ')')) t.pop_back();
  Bits b(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) {
    require(t[k] == '0' || t[k] == '1', ErrorKind::Format, "bitstring must be 0/1");
    b[t.size() - 1 - k] = static_cast<std::uint8_t>(t[k] - '0');
  }
  return b;
}

double QuboModel::energy(std::span<const std::uint8_t> bits) const {
  require(static_cast<int>(bits.size()) == num_variables(), ErrorKind::Contract,
          "bit vector width mismatch");
  double e = offset;
  for (int v = 0; v < num_variables(); ++v)
    if (bits[v]) e += linear[v];
  for (const auto& [pair, c] : quadratic)
    if (bits[pair.first] && bits[pair.second]) e += c;
  return e;
}

double IsingModel::energy(std::span<const std::uint8_t> bits) const {
  require(static_cast<int>(bits.size()) == num_qubits, ErrorKind::Contract,
          "bit vector width mismatch");
  double e = offset;
  for (int q = 0; q < num_qubits; ++q) e += bits[q] ? -h[q] : h[q];
  for (const auto& c : couplings) e += (bits[c.a] == bits[c.b]) ? c.value : -c.value;
  return e;
}

double IsingModel::energy(std::uint64_t state) const {
  double e = offset;
  for (int q = 0; q < num_qubits; ++q) e += ((state >> q) & 1U) ? -h[q] : h[q];
  for (const auto& c : couplings)
    e += (((state >> c.a) ^ (state >> c.b)) & 1U) ? -c.value : c.value;
  return e;
}

double IsingModel::max_coefficient() const noexcept {
  double m = 0.0;
  for (double v : h) m = std::max(m, std::abs(v));
  for (const auto& c : couplings) m = std::max(m, std::abs(c.value));
  return m;
}

double default_lambda(const VrpInstance& inst) {
  return 2.0 * inst.nodes() * inst.max_weight();
}

QuboModel build_qubo(const VrpInstance& inst, double lambda) {
  require(lambda > 0.0, ErrorKind::Parameter, "lambda must be positive");
  const int n = inst.nodes();
  QuboModel q;
  q.nodes = n;
  q.vehicles = inst.vehicles();
  q.lambda = lambda;
  const int nv = n * (n - 1);
  q.edges.resize(nv);
  q.linear.assign(nv, 0.0);
  for (int v = 0; v < nv; ++v) {
    q.edges[v] = variable_edge(n, v);
    q.linear[v] = inst.weight(q.edges[v].from, q.edges[v].to);
  }

  // lambda * (sum_{v in group} x_v - r)^2 with x^2 = x expands to
  // lambda * ((1 - 2r) sum x_v + 2 sum_{u<v} x_u x_v + r^2).
  auto add_group = [&](const std::vector<int>& group, double rhs) {
    for (std::size_t a = 0; a < group.size(); ++a) {
      q.linear[group[a]] += lambda * (1.0 - 2.0 * rhs);
      for (std::size_t b = a + 1; b < group.size(); ++b) {
        const VarPair key{std::min(group[a], group[b]), std::max(group[a], group[b])};
        q.quadratic[key] += 2.0 * lambda;
      }
    }
    q.offset += lambda * rhs * rhs;
  };
  for (int i = 0; i < n; ++i) {
    const double rhs = (i == 0) ? static_cast<double>(inst.vehicles()) : 1.0;
    std::vector<int> out, in;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      out.push_back(edge_variable(n, i, j));
      in.push_back(edge_variable(n, j, i));
    }
    add_group(out, rhs);
    add_group(in, rhs);
  }
  return q;
}

IsingModel qubo_to_ising(const QuboModel& q) {
  IsingModel m;
  m.num_qubits = q.num_variables();
  m.h.assign(m.num_qubits, 0.0);
  m.offset = q.offset;
  for (int v = 0; v < m.num_qubits; ++v) {
    m.offset += q.linear[v] / 2.0;
    m.h[v] -= q.linear[v] / 2.0;
  }
  for (const auto& [pair, c] : q.quadratic) {
    m.offset += c / 4.0;
    m.h[pair.first] -= c / 4.0;
    m.h[pair.second] -= c / 4.0;
    if (c != 0.0) m.couplings.push_back(Coupling{pair.first, pair.second, c / 4.0});
  }
  return m;
}

long long qubit_count_edge(int n) {
  require(n >= 2, ErrorKind::Parameter, "edge encoding needs n >= 2");
  return static_cast<long long>(n) * n - n;
}

int qubit_count_amplitude(int n) {
  require(n >= 2, ErrorKind::Parameter, "amplitude encoding needs n >= 2");
  const std::uint64_t states = static_cast<std::uint64_t>(n) * n - n;
  return static_cast<int>(std::bit_width(states - 1));
}

AmplitudeBasisMap amplitude_basis_map(int n) {
  AmplitudeBasisMap map;
  require(n >= 3, ErrorKind::Parameter, "amplitude basis map needs n >= 3");
  map.num_qubits = qubit_count_amplitude(n);
  const int ne = n * (n - 1);
  for (int v = 0; v < ne; ++v) map.edge_of_state.push_back(variable_edge(n, v));
  for (std::uint64_t s = ne; s < (std::uint64_t{1} << map.num_qubits); ++s)
    map.unused_states.push_back(s);
  return map;
}

Bits route_indicator(const VrpInstance& inst, const RouteSet& rs) {
  const int n = inst.nodes();
  Bits bits(static_cast<std::size_t>(n) * (n - 1), 0);
  for (const auto& r : rs.routes)
    for (std::size_t k = 0; k + 1 < r.size(); ++k) bits[edge_variable(n, r[k], r[k + 1])] = 1;
  return bits;
}

DecodeResult decode_bitstring(const Bits& bits, const QuboModel& q, const VrpInstance& inst) {
  require(static_cast<int>(bits.size()) == q.num_variables(), ErrorKind::Contract,
          "bitstring width does not match the model");
  require(q.nodes == inst.nodes(), ErrorKind::Contract, "model and instance disagree");
  const int n = inst.nodes();
  const int k = inst.vehicles();
  DecodeResult res;
  std::vector<int> out_deg(n, 0), in_deg(n, 0);
  std::vector<std::vector<int>> succ(n);
  for (int v = 0; v < q.num_variables(); ++v) {
    if (!bits[v]) continue;
    const Edge e = q.edges[v];
    res.active_edges.push_back(e);
    ++out_deg[e.from];
    ++in_deg[e.to];
    succ[e.from].push_back(e.to);
  }
  res.degree_ok = true;
  for (int i = 1; i < n; ++i) {
    if (out_deg[i] != 1) {
      res.degree_ok = false;
      res.violations.push_back("node " + std::to_string(i) + " out-degree " +
                               std::to_string(out_deg[i]) + " != 1");
    }
    if (in_deg[i] != 1) {
      res.degree_ok = false;
      res.violations.push_back("node " + std::to_string(i) + " in-degree " +
                               std::to_string(in_deg[i]) + " != 1");
    }
  }
  res.depot_ok = out_deg[0] == k && in_deg[0] == k;
  if (out_deg[0] != k)
    res.violations.push_back("depot out-degree " + std::to_string(out_deg[0]) +
                             " != " + std::to_string(k));
  if (in_deg[0] != k)
    res.violations.push_back("depot in-degree " + std::to_string(in_deg[0]) +
                             " != " + std::to_string(k));
  if (!res.degree_ok || !res.depot_ok) return res;

  std::vector<Route> routes;
  std::vector<char> seen(n, 0);
  int covered = 0;
  for (int first : succ[0]) {
    Route r{0};
    int v = first;
    while (v != 0) {
      // In-degree 1 everywhere means a walk from the depot cannot revisit.
      r.push_back(v);
      seen[v] = 1;
      ++covered;
      v = succ[v].front();
    }
    r.push_back(0);
    routes.push_back(std::move(r));
  }
  res.subtour_free = covered == n - 1;
  if (!res.subtour_free) {
    for (int i = 1; i < n; ++i)
      if (!seen[i])
        res.violations.push_back("node " + std::to_string(i) + " lies on a subtour");
    return res;
  }
  res.routes = make_route_set(inst, std::move(routes));
  return res;
}

bool is_feasible_state(std::uint64_t state, int nodes, int vehicles) {
  const int n = nodes;
  require(n >= 2 && n * (n - 1) <= 64, ErrorKind::Parameter,
          "state feasibility test needs n*(n-1) <= 64");
  const int stride = n - 1;
  std::array<int, 8> succ{};
  std::array<int, 8> in_deg{};
  for (int i = 0; i < n; ++i) {
    const std::uint64_t row = (state >> (i * stride)) & ((std::uint64_t{1} << stride) - 1);
    const int out = std::popcount(row);
    if (out != (i == 0 ? vehicles : 1)) return false;
    if (i > 0) {
      const int r = std::countr_zero(row);
      succ[i] = r < i ? r : r + 1;
    }
    for (std::uint64_t rest = row; rest; rest &= rest - 1) {
      const int r = std::countr_zero(rest);
      const int j = r < i ? r : r + 1;
      if (++in_deg[j] > (j == 0 ? vehicles : 1)) return false;
    }
  }
  if (in_deg[0] != vehicles) return false;
  for (int i = 1; i < n; ++i)
    if (in_deg[i] != 1) return false;
  // Walk from the depot along every outgoing edge; count covered customers.
  int covered = 0;
  const std::uint64_t depot_row = state & ((std::uint64_t{1} << stride) - 1);
  for (std::uint64_t rest = depot_row; rest; rest &= rest - 1) {
    int v = std::countr_zero(rest) + 1;
    while (v != 0) {
      if (++covered > n - 1) return false;
      v = succ[v];
    }
  }
  return covered == n - 1;
}

GroundState brute_force_ground_state(const IsingModel& m) {
  require(m.num_qubits <= 22, ErrorKind::Resource,
          "brute-force ground state limited to 22 qubits, got " + std::to_string(m.num_qubits));
  GroundState best{0, m.energy(std::uint64_t{0})};
  const std::uint64_t total = std::uint64_t{1} << m.num_qubits;
  for (std::uint64_t s = 1; s < total; ++s) {
    const double e = m.energy(s);
    if (e < best.energy) best = {s, e};
  }
  return best;
}

std::vector<double> diagonal_energies(const IsingModel& m) {
  require(m.num_qubits <= 26, ErrorKind::Resource, "diagonal too large");
  const std::uint64_t total = std::uint64_t{1} << m.num_qubits;
  std::vector<double> e(total);
  for (std::uint64_t s = 0; s < total; ++s) e[s] = m.energy(s);
  return e;
}

std::string to_json(const IsingModel& m) {
  nlohmann::ordered_json j;
  j["n_qubits"] = m.num_qubits;
  nlohmann::ordered_json h = nlohmann::ordered_json::object();
  for (int q = 0; q < m.num_qubits; ++q) h[std::to_string(q)] = m.h[q];
  nlohmann::ordered_json jj = nlohmann::ordered_json::object();
  for (const auto& c : m.couplings) jj[std::to_string(c.a) + "," + std::to_string(c.b)] = c.value;
  j["h"] = h;
  j["J"] = jj;
  j["offset"] = m.offset;
  return j.dump(2) + "\n";
}

IsingModel ising_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    IsingModel m;
    m.num_qubits = j.at("n_qubits").get<int>();
    require(m.num_qubits >= 0, ErrorKind::Format, "negative qubit count");
    m.h.assign(m.num_qubits, 0.0);
    for (const auto& [key, val] : j.at("h").items()) {
      const int q = std::stoi(key);
      require(q >= 0 && q < m.num_qubits, ErrorKind::Format, "field index out of range");
      m.h[q] = val.get<double>();
    }
    for (const auto& [key, val] : j.at("J").items()) {
      const auto comma = key.find(',');
      require(comma != std::string::npos, ErrorKind::Format, "coupling key must be \"a,b\"");
      int a = std::stoi(key.substr(0, comma));
      int b = std::stoi(key.substr(comma + 1));
      if (a > b) std::swap(a, b);
      require(a >= 0 && b < m.num_qubits && a != b, ErrorKind::Format,
              "coupling index out of range");
      m.couplings.push_back(Coupling{a, b, val.get<double>()});
    }
    std::sort(m.couplings.begin(), m.couplings.end(), [](const auto& x, const auto& y) {
      return std::pair(x.a, x.b) < std::pair(y.a, y.b);
    });
    m.offset = j.at("offset").get<double>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorKind::Format, std::string("malformed Ising JSON: ") + e.what());
  } catch (const std::invalid_argument&) {
    raise(ErrorKind::Format, "malformed Ising JSON key");
  }
}

}  // namespace vrpq
