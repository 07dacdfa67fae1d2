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

#include "vrpq/instance.hpp"

namespace vrpq {

struct Tour {
  Route route;  ///< starts and ends at the depot
  double cost = 0.0;
  std::uint64_t enumerated = 0;  ///< candidate tours examined (exhaustive search only)
};

inline constexpr int kMaxBruteForceTsp = 11;
inline constexpr int kMaxBruteForceVrp = 9;

/// Exhaustive search over the n!/2 city orderings up to reversal. The
/// reported route is oriented so its second node is below its second-last,
/// and ties resolve to the lexicographically smallest such route.
Tour brute_force_tsp(const VrpInstance& tsp);

/// Exact optimum over every assignment of customers to exactly K nonempty
/// routes, each toured optimally.
RouteSet brute_force_vrp(const VrpInstance& inst);

/// Greedy tour from the depot; ties go to the lower index.
Tour nearest_neighbor(const VrpInstance& tsp);

/// First-improvement 2-opt to a local optimum. Never increases cost.
Tour two_opt(const VrpInstance& tsp, Route route);

/// partition, then nearest neighbor and 2-opt on each block.
RouteSet classical_vrp(const VrpInstance& inst, std::uint64_t seed);

}  // namespace vrpq
