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
#include <string>
#include <vector>

#include "vrpq/instance.hpp"

namespace vrpq {

/// K disjoint blocks of customer nodes (the depot is never in a block).
/// Blocks are ordered by (size, smallest member) and sorted internally.
struct Partition {
  std::vector<std::vector<int>> blocks;
  double cut_weight = 0.0;
};

/// Target block sizes for m customers in k blocks, ascending.
std::vector<int> balanced_sizes(int m, int k);

double cut_weight(const VrpInstance& inst, const std::vector<std::vector<int>>& blocks);

/// The seeded random balanced assignment that refinement starts from.
Partition initial_assignment(const VrpInstance& inst, std::uint64_t seed);

/// Splits the depot-stripped graph into inst.vehicles() balanced blocks with
/// low cut weight: recursive bisection with pairwise-swap refinement, then a
/// K-way swap polish. Never worse than initial_assignment(inst, seed).
Partition partition(const VrpInstance& inst, std::uint64_t seed);

/// Block plus depot as a standalone single-vehicle instance. The depot maps
/// to 0 and block members follow in ascending order.
VrpInstance extract_tsp(const VrpInstance& inst, const std::vector<int>& block);

std::string to_json(const Partition& p);

}  // namespace vrpq
