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
#include <filesystem>
#include <string>
#include <vector>

namespace vrpq {

using Point = std::array<double, 2>;
using Route = std::vector<int>;

/// Complete, symmetric, weighted graph with the depot at node 0 and a fleet
/// of `vehicles` identical vehicles.
class VrpInstance {
 public:
  /// Validates symmetry, zero diagonal, strictly positive off-diagonal and
  /// 1 <= vehicles <= n-1. Throws Validation on violation.
  VrpInstance(std::vector<std::vector<double>> weights, int vehicles,
              std::vector<Point> points = {});

  /// Euclidean instance built from node coordinates.
  static VrpInstance from_points(std::vector<Point> points, int vehicles);

  int nodes() const noexcept { return n_; }
  int vehicles() const noexcept { return vehicles_; }
  double weight(int i, int j) const { return weights_[std::size_t(i) * std::size_t(n_) + std::size_t(j)]; }
  double max_weight() const noexcept;
  const std::vector<Point>& points() const noexcept { return points_; }
  std::vector<std::vector<double>> weight_matrix() const;

  bool operator==(const VrpInstance& other) const = default;

 private:
  int n_ = 0;
  int vehicles_ = 0;
  std::vector<double> weights_;
  std::vector<Point> points_;
};

/// K depot-anchored routes. Each route starts and ends at node 0.
struct RouteSet {
  std::vector<Route> routes;
  double total_cost = 0.0;
};

VrpInstance generate_random(int n, int vehicles, std::uint64_t seed);

/// Sum of traversed edge weights of one closed node sequence.
double route_cost(const VrpInstance& inst, const Route& route);
double route_cost(const VrpInstance& inst, const RouteSet& rs);

/// Builds a RouteSet with its cost recomputed from the instance.
RouteSet make_route_set(const VrpInstance& inst, std::vector<Route> routes);

struct ValidityReport {
  bool structure_ok = true;  ///< routes well formed, indices in range
  bool visit_degree_ok = true;   ///< in = out = 1 at every customer
  bool depot_degree_ok = true;   ///< K edges leave and enter the depot
  bool single_tours_ok = true;   ///< every route is one closed tour through the depot
  bool coverage_ok = true;       ///< every customer is visited
  std::vector<std::string> violations;

  bool ok() const noexcept {
    return structure_ok && visit_degree_ok && depot_degree_ok &&
           single_tours_ok && coverage_ok;
  }
};

ValidityReport validate_routes(const VrpInstance& inst, const RouteSet& rs);

/// n!/2, the number of orderings of n cities up to reversal.
std::uint64_t count_unique_tours(int n);

std::string to_json(const VrpInstance& inst);
VrpInstance instance_from_json(const std::string& text);
void save_json(const VrpInstance& inst, const std::filesystem::path& path);
VrpInstance load_json(const std::filesystem::path& path);

}  // namespace vrpq
