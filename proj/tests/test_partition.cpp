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

#include <bit>
#include <cmath>
#include <algorithm>
#include <set>

#include "doctest.h"
#include "vrpq/encode.hpp"
#include "vrpq/errors.hpp"
#include "vrpq/partition.hpp"

using namespace vrpq;

namespace {

std::multiset<std::size_t> sizes(const Partition& p) {
  std::multiset<std::size_t> s;
  for (const auto& b : p.blocks) s.insert(b.size());
  return s;
}

void check_cover(const VrpInstance& inst, const Partition& p) {
  std::vector<int> all;
  for (const auto& b : p.blocks) {
    CHECK_FALSE(b.empty());
    CHECK(std::is_sorted(b.begin(), b.end()));
    all.insert(all.end(), b.begin(), b.end());
  }
  std::sort(all.begin(), all.end());
  std::vector<int> expect(inst.nodes() - 1);
  for (int i = 0; i < inst.nodes() - 1; ++i) expect[i] = i + 1;
  CHECK(all == expect);
}

}  // namespace

TEST_SUITE("partition") {

TEST_CASE("block sizes follow the balanced rule") {
  CHECK(sizes(partition(generate_random(7, 2, 1), 1)) == std::multiset<std::size_t>{3, 3});
  CHECK(sizes(partition(generate_random(13, 5, 1), 1)) == std::multiset<std::size_t>{2, 2, 2, 3, 3});
  CHECK(sizes(partition(generate_random(9, 3, 1), 1)) == std::multiset<std::size_t>{2, 3, 3});
  CHECK(balanced_sizes(12, 5) == std::vector<int>{2, 2, 2, 3, 3});
}

TEST_CASE("blocks cover the customers, refinement never worsens the start") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    for (auto [n, k] : {std::pair{7, 2}, {8, 3}, {9, 3}, {13, 5}, {10, 4}}) {
      const auto inst = generate_random(n, k, seed);
      const auto p = partition(inst, seed);
      check_cover(inst, p);
      CHECK(p.cut_weight == doctest::Approx(cut_weight(inst, p.blocks)));
      CHECK(p.cut_weight <= initial_assignment(inst, seed).cut_weight + 1e-12);
    }
  }
}

TEST_CASE("deterministic per seed") {
  const auto inst = generate_random(11, 3, 5);
  CHECK(partition(inst, 9).blocks == partition(inst, 9).blocks);
}

TEST_CASE("matches the exhaustive balanced minimum on small instances") {
  // Every split of six customers into 3 + 3.
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto inst = generate_random(7, 2, seed);
    double best = INFINITY;
    for (int mask = 0; mask < 64; ++mask) {
      if (std::popcount(static_cast<unsigned>(mask)) != 3 || !(mask & 1)) continue;
      std::vector<std::vector<int>> blocks(2);
      for (int i = 0; i < 6; ++i) blocks[(mask >> i) & 1].push_back(i + 1);
      best = std::min(best, cut_weight(inst, blocks));
    }
    CHECK(partition(inst, seed).cut_weight == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("extract_tsp keeps the induced weights") {
  const auto inst = generate_random(8, 3, 2);
  const std::vector<int> block{2, 5, 7};
  const auto tsp = extract_tsp(inst, block);
  REQUIRE(tsp.nodes() == 4);
  CHECK(tsp.vehicles() == 1);
  CHECK(qubit_count_edge(tsp.nodes()) == 12);
  const std::vector<int> map{0, 2, 5, 7};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(tsp.weight(i, j) == inst.weight(map[i], map[j]));
  CHECK(qubit_count_edge(extract_tsp(inst, {1, 3}).nodes()) == 6);
}

TEST_CASE("json form") {
  const Partition p{{{1, 2}, {3, 4, 5}}, 1.5};
  CHECK(to_json(p).find("\"blocks\"") != std::string::npos);
  CHECK(to_json(p).find("\"cut_weight\"") != std::string::npos);
}

}  // TEST_SUITE
