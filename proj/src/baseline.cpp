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

#include "vrpq/baseline.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "vrpq/errors.hpp"
#include "vrpq/partition.hpp"

namespace vrpq {

namespace {

constexpr double kImprovement = 1e-12;

// Closed cycle through every node of `order`, read from the depot towards
// its smaller neighbour.
Route canonical_route(const std::vector<int>& order) {
  const int n = static_cast<int>(order.size());
  const int at = static_cast<int>(std::find(order.begin(), order.end(), 0) - order.begin());
  const int next = order[(at + 1) % n], prev = order[(at + n - 1) % n];
  const int step = next <= prev ? 1 : n - 1;
  Route r;
  r.reserve(n + 1);
  for (int k = 0, i = at; k < n; ++k, i = (i + step) % n) r.push_back(order[i]);
  r.push_back(0);
  return r;
}

double cycle_cost(const VrpInstance& inst, const std::vector<int>& order) {
  const int n = static_cast<int>(order.size());
  const int at = static_cast<int>(std::find(order.begin(), order.end(), 0) - order.begin());
  const int next = order[(at + 1) % n], prev = order[(at + n - 1) % n];
  const int step = next <= prev ? 1 : n - 1;
  double cost = 0.0;
  for (int k = 0, i = at; k < n; ++k) {
    const int j = (i + step) % n;
    cost += inst.weight(order[i], order[j]);
    i = j;
  }
  return cost;
}

Route orient(Route r) {
  if (r.size() > 3 && r[1] > r[r.size() - 2]) std::reverse(r.begin(), r.end());
  return r;
}

void check_tour(const VrpInstance& tsp, const Route& route) {
  const int n = tsp.nodes();
  bool ok = route.size() == static_cast<std::size_t>(n) + 1 && route.front() == 0 && route.back() == 0;
  std::vector<char> seen(n, 0);
  for (std::size_t k = 0; ok && k + 1 < route.size(); ++k) {
    const int v = route[k];
    ok = v >= 0 && v < n && !seen[v];
    if (ok) seen[v] = 1;
  }
  require(ok, ErrorKind::Validation, "route is not a closed tour through every node");
}

// Held-Karp over customer subsets; tour[S] is the optimal depot tour of S.
struct SubsetTours {
  std::vector<double> cost;
  std::vector<Route> route;
};

SubsetTours held_karp(const VrpInstance& inst) {
  const int m = inst.nodes() - 1;
  const std::size_t full = std::size_t{1} << m;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dp(full * m, inf);
  std::vector<int> parent(full * m, -1);
  for (int j = 0; j < m; ++j) dp[(std::size_t{1} << j) * m + j] = inst.weight(0, j + 1);
  for (std::size_t s = 1; s < full; ++s)
    for (int j = 0; j < m; ++j) {
      if (!((s >> j) & 1U) || dp[s * m + j] == inf) continue;
      for (int k = 0; k < m; ++k) {
        if ((s >> k) & 1U) continue;
        const std::size_t t = s | (std::size_t{1} << k);
        const double c = dp[s * m + j] + inst.weight(j + 1, k + 1);
        if (c < dp[t * m + k]) {
          dp[t * m + k] = c;
          parent[t * m + k] = j;
        }
      }
    }
  SubsetTours out{std::vector<double>(full, inf), std::vector<Route>(full)};
  for (std::size_t s = 1; s < full; ++s) {
    int last = -1;
    for (int j = 0; j < m; ++j) {
      if (!((s >> j) & 1U)) continue;
      const double c = dp[s * m + j] + inst.weight(j + 1, 0);
      if (c < out.cost[s]) {
        out.cost[s] = c;
        last = j;
      }
    }
    Route r{0};
    for (std::size_t t = s; last >= 0;) {
      r.push_back(last + 1);
      const int p = parent[t * m + last];
      t &= ~(std::size_t{1} << last);
      last = p;
    }
    r.push_back(0);
    out.route[s] = orient(std::move(r));
  }
  return out;
}

}  // namespace

Tour brute_force_tsp(const VrpInstance& tsp) {
  const int n = tsp.nodes();
  require(n <= kMaxBruteForceTsp, ErrorKind::Resource,
          "brute-force TSP limited to " + std::to_string(kMaxBruteForceTsp) + " nodes, got " +
              std::to_string(n));
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  Tour best;
  best.cost = std::numeric_limits<double>::infinity();
  do {
    if (order.front() > order.back()) continue;
    ++best.enumerated;
    const double c = cycle_cost(tsp, order);
    if (c < best.cost) {
      best.cost = c;
      best.route = canonical_route(order);
    } else if (c == best.cost) {
      Route r = canonical_route(order);
      if (r < best.route) best.route = std::move(r);
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

RouteSet brute_force_vrp(const VrpInstance& inst) {
  const int n = inst.nodes(), k = inst.vehicles();
  require(n <= kMaxBruteForceVrp, ErrorKind::Resource,
          "brute-force VRP limited to " + std::to_string(kMaxBruteForceVrp) + " nodes, got " +
              std::to_string(n));
  if (k == 1) {
    const Tour t = brute_force_tsp(inst);
    return RouteSet{{t.route}, t.cost};
  }
  const int m = n - 1;
  const SubsetTours tours = held_karp(inst);

  // Restricted growth strings: label[i] <= 1 + max(label[0..i-1]).
  std::vector<int> label(m, 0);
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best_masks;
  auto visit = [&](auto&& self, int i, int used) -> void {
    if (m - i < k - used) return;
    if (i == m) {
      std::vector<std::size_t> masks(k, 0);
      for (int c = 0; c < m; ++c) masks[label[c]] |= std::size_t{1} << c;
      double cost = 0.0;
      for (std::size_t s : masks) cost += tours.cost[s];
      if (cost < best) {
        best = cost;
        best_masks = masks;
      }
      return;
    }
    for (int b = 0; b <= std::min(used, k - 1); ++b) {
      label[i] = b;
      self(self, i + 1, std::max(used, b + 1));
    }
  };
  visit(visit, 0, 0);

  std::vector<Route> routes;
  for (std::size_t s : best_masks) routes.push_back(tours.route[s]);
  std::sort(routes.begin(), routes.end());
  return make_route_set(inst, std::move(routes));
}

Tour nearest_neighbor(const VrpInstance& tsp) {
  const int n = tsp.nodes();
  std::vector<char> seen(n, 0);
  Tour t{{0}, 0.0, 0};
  seen[0] = 1;
  for (int cur = 0, step = 1; step < n; ++step) {
    int pick = -1;
    for (int v = 1; v < n; ++v)
      if (!seen[v] && (pick < 0 || tsp.weight(cur, v) < tsp.weight(cur, pick))) pick = v;
    seen[pick] = 1;
    t.route.push_back(pick);
    cur = pick;
  }
  t.route.push_back(0);
  t.cost = route_cost(tsp, t.route);
  return t;
}

Tour two_opt(const VrpInstance& tsp, Route route) {
  check_tour(tsp, route);
  const std::size_t len = route.size();
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t i = 1; i + 2 < len && !improved; ++i)
      for (std::size_t j = i + 1; j + 1 < len && !improved; ++j) {
        const double delta = tsp.weight(route[i - 1], route[j]) + tsp.weight(route[i], route[j + 1]) -
                             tsp.weight(route[i - 1], route[i]) - tsp.weight(route[j], route[j + 1]);
        if (delta < -kImprovement) {
          std::reverse(route.begin() + static_cast<long>(i), route.begin() + static_cast<long>(j) + 1);
          improved = true;
        }
      }
  }
  const double cost = route_cost(tsp, route);
  return Tour{std::move(route), cost, 0};
}

RouteSet classical_vrp(const VrpInstance& inst, std::uint64_t seed) {
  const Partition p = partition(inst, seed);
  std::vector<Route> routes;
  for (const auto& block : p.blocks) {
    const VrpInstance tsp = extract_tsp(inst, block);
    const Tour t = two_opt(tsp, nearest_neighbor(tsp).route);
    Route r;
    for (int local : t.route) r.push_back(local == 0 ? 0 : block[local - 1]);
    routes.push_back(std::move(r));
  }
  return make_route_set(inst, std::move(routes));
}

}  // namespace vrpq
