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

#include "vrpq/partition.hpp"

#include <algorithm>
#include <numeric>

#include "json.hpp"
#include "vrpq/errors.hpp"
#include "vrpq/random.hpp"

namespace vrpq {

namespace {

constexpr double kGainEps = 1e-12;

void canonicalize(std::vector<std::vector<int>>& blocks) {
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.front() < b.front();
  });
}

// Weight from v to every member of `set`.
double link(const VrpInstance& inst, int v, const std::vector<int>& set) {
  double s = 0.0;
  for (int u : set)
    if (u != v) s += inst.weight(v, u);
  return s;
}

// Best-gain pairwise swaps between two blocks until no swap reduces the cut.
// Ties go to the lexicographically smallest (node, node) pair.
void refine_pair(const VrpInstance& inst, std::vector<int>& a, std::vector<int>& b) {
  for (;;) {
    double best_gain = kGainEps;
    int best_i = -1, best_j = -1;
    int best_u = 0, best_v = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const int u = a[i];
      const double du = link(inst, u, b) - link(inst, u, a);
      for (std::size_t j = 0; j < b.size(); ++j) {
        const int v = b[j];
        const double dv = link(inst, v, a) - link(inst, v, b);
        const double gain = du + dv - 2.0 * inst.weight(u, v);
        const int lo = std::min(u, v), hi = std::max(u, v);
        const int blo = std::min(best_u, best_v), bhi = std::max(best_u, best_v);
        const bool better =
            gain > best_gain + kGainEps ||
            (best_i >= 0 && std::abs(gain - best_gain) <= kGainEps &&
             std::pair(lo, hi) < std::pair(blo, bhi));
        if (better) {
          best_gain = gain;
          best_i = static_cast<int>(i);
          best_j = static_cast<int>(j);
          best_u = u;
          best_v = v;
        }
      }
    }
    if (best_i < 0) return;
    std::swap(a[best_i], b[best_j]);
  }
}

void refine_all(const VrpInstance& inst, std::vector<std::vector<int>>& blocks) {
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t x = 0; x < blocks.size(); ++x) {
      for (std::size_t y = x + 1; y < blocks.size(); ++y) {
        const double before = cut_weight(inst, blocks);
        refine_pair(inst, blocks[x], blocks[y]);
        if (cut_weight(inst, blocks) < before - kGainEps) changed = true;
      }
    }
  }
}

void bisect(const VrpInstance& inst, std::vector<int> nodes, std::vector<int> sizes,
            Rng& rng, std::vector<std::vector<int>>& out) {
  if (sizes.size() == 1) {
    out.push_back(std::move(nodes));
    return;
  }
  // Split the part-count target as evenly as possible, e.g. 5 -> 3 + 2.
  const std::size_t left_parts = (sizes.size() + 1) / 2;
  std::vector<int> left_sizes(sizes.begin(), sizes.begin() + left_parts);
  std::vector<int> right_sizes(sizes.begin() + left_parts, sizes.end());
  const int left_total = std::accumulate(left_sizes.begin(), left_sizes.end(), 0);

  rng.shuffle(nodes);
  std::vector<int> left(nodes.begin(), nodes.begin() + left_total);
  std::vector<int> right(nodes.begin() + left_total, nodes.end());
  refine_pair(inst, left, right);
  bisect(inst, std::move(left), std::move(left_sizes), rng, out);
  bisect(inst, std::move(right), std::move(right_sizes), rng, out);
}

std::vector<int> customers(const VrpInstance& inst) {
  std::vector<int> v(inst.nodes() - 1);
  std::iota(v.begin(), v.end(), 1);
  return v;
}

}  // namespace

std::vector<int> balanced_sizes(int m, int k) {
  require(k >= 1 && k <= m, ErrorKind::Parameter,
          "need 1 <= blocks <= customers for a balanced partition");
  std::vector<int> sizes(k, m / k);
  for (int i = 0; i < m % k; ++i) sizes[k - 1 - i] += 1;
  return sizes;
}

double cut_weight(const VrpInstance& inst, const std::vector<std::vector<int>>& blocks) {
  double s = 0.0;
  for (std::size_t x = 0; x < blocks.size(); ++x)
    for (std::size_t y = x + 1; y < blocks.size(); ++y)
      for (int u : blocks[x])
        for (int v : blocks[y]) s += inst.weight(u, v);
  return s;
}

Partition initial_assignment(const VrpInstance& inst, std::uint64_t seed) {
  const int m = inst.nodes() - 1;
  const auto sizes = balanced_sizes(m, inst.vehicles());
  Rng rng(seed);
  auto nodes = customers(inst);
  rng.shuffle(nodes);
  Partition p;
  std::size_t pos = 0;
  for (int s : sizes) {
    p.blocks.emplace_back(nodes.begin() + pos, nodes.begin() + pos + s);
    pos += s;
  }
  canonicalize(p.blocks);
  p.cut_weight = cut_weight(inst, p.blocks);
  return p;
}

Partition partition(const VrpInstance& inst, std::uint64_t seed) {
  const int m = inst.nodes() - 1;
  require(inst.vehicles() <= m, ErrorKind::Parameter,
          "more vehicles than customers");
  const auto sizes = balanced_sizes(m, inst.vehicles());

  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<std::vector<int>> recursive;
  bisect(inst, customers(inst), sizes, rng, recursive);

  Partition start = initial_assignment(inst, seed);
  std::vector<std::vector<int>> blocks =
      cut_weight(inst, recursive) <= start.cut_weight ? recursive : start.blocks;
  refine_all(inst, blocks);
  canonicalize(blocks);
  return Partition{blocks, cut_weight(inst, blocks)};
}

VrpInstance extract_tsp(const VrpInstance& inst, const std::vector<int>& block) {
  require(!block.empty(), ErrorKind::Parameter, "empty block");
  std::vector<int> nodes = block;
  std::sort(nodes.begin(), nodes.end());
  require(nodes.front() > 0 && nodes.back() < inst.nodes(), ErrorKind::Parameter,
          "block must contain customer nodes only");
  nodes.insert(nodes.begin(), 0);
  const std::size_t m = nodes.size();
  std::vector<std::vector<double>> w(m, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) w[i][j] = inst.weight(nodes[i], nodes[j]);
  std::vector<Point> pts;
  if (!inst.points().empty())
    for (int v : nodes) pts.push_back(inst.points()[v]);
  return VrpInstance(std::move(w), 1, std::move(pts));
}

std::string to_json(const Partition& p) {
  nlohmann::json j;
  j["blocks"] = p.blocks;
  j["cut_weight"] = p.cut_weight;
  return j.dump(2) + "\n";
}

}  // namespace vrpq
