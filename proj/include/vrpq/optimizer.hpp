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

#include <functional>
#include <span>
#include <vector>

namespace vrpq {

using Objective = std::function<double(std::span<const double>)>;

struct MinimizeOptions {
  int max_evaluations = 500;
  double initial_step = 0.25;  ///< starting trust radius / simplex edge
  double tolerance = 1e-4;     ///< final trust radius / simplex size
};

struct MinimizeResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  /// Best value seen after each evaluation (non-increasing).
  std::vector<double> trace;
};

/// Derivative-free minimization by linear interpolation on a simplex inside a
/// shrinking trust region: each step moves from the best vertex along the
/// model's steepest descent with length equal to the radius, replacing the
/// vertex whose exchange keeps the simplex best conditioned.
MinimizeResult minimize_linear_trust(const Objective& f, std::vector<double> x0,
                                     const MinimizeOptions& opts);

/// Classic Nelder-Mead with standard coefficients.
MinimizeResult minimize_nelder_mead(const Objective& f, std::vector<double> x0,
                                    const MinimizeOptions& opts);

}  // namespace vrpq
