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

#include "vrpq/optimizer.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "vrpq/errors.hpp"

namespace vrpq {

namespace {

class Counter {
 public:
  Counter(const Objective& f, MinimizeResult& res) : f_(f), res_(res) {}

  double operator()(const Eigen::VectorXd& x) {
    const double v = f_(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
    require(std::isfinite(v), ErrorKind::Contract,
            "objective returned a non-finite value at evaluation " +
                std::to_string(res_.evaluations + 1));
    ++res_.evaluations;
    if (res_.trace.empty() || v < best_) {
      best_ = v;
      res_.x.assign(x.data(), x.data() + x.size());
      res_.value = v;
    }
    res_.trace.push_back(best_);
    return v;
  }

 private:
  const Objective& f_;
  MinimizeResult& res_;
  double best_ = std::numeric_limits<double>::infinity();
};

}  // namespace

MinimizeResult minimize_linear_trust(const Objective& f, std::vector<double> x0,
                                     const MinimizeOptions& opts) {
  const int n = static_cast<int>(x0.size());
  require(n >= 1, ErrorKind::Parameter, "empty parameter vector");
  MinimizeResult res;
  Counter eval(f, res);

  double rho = opts.initial_step;
  std::vector<Eigen::VectorXd> pts(n + 1, Eigen::Map<Eigen::VectorXd>(x0.data(), n));
  std::vector<double> vals(n + 1);
  vals[0] = eval(pts[0]);
  for (int i = 0; i < n && res.evaluations < opts.max_evaluations; ++i) {
    pts[i + 1][i] += rho;
    vals[i + 1] = eval(pts[i + 1]);
  }
  if (res.evaluations < n + 1) return res;

  Eigen::MatrixXd edges(n, n);
  while (res.evaluations < opts.max_evaluations && rho > opts.tolerance) {
    const int best = static_cast<int>(std::min_element(vals.begin(), vals.end()) - vals.begin());
    std::vector<int> others;
    for (int i = 0; i <= n; ++i)
      if (i != best) others.push_back(i);
    Eigen::VectorXd df(n);
    for (int r = 0; r < n; ++r) {
      edges.row(r) = (pts[others[r]] - pts[best]).transpose();
      df[r] = vals[others[r]] - vals[best];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(edges);

    // Geometry repair: if the simplex is degenerate or stretched beyond the
    // trust region, move the worst-placed vertex to rho along the direction
    // orthogonal to the remaining edges.
    int far = -1;
    double far_dist = 0.0;
    for (int r = 0; r < n; ++r) {
      const double d = edges.row(r).norm();
      if (d > far_dist) {
        far_dist = d;
        far = r;
      }
    }
    const bool degenerate = !lu.isInvertible() || lu.rcond() < 1e-10;
    if (degenerate || far_dist > 2.5 * rho) {
      int r = far;
      Eigen::VectorXd dir;
      if (!degenerate) {
        const Eigen::MatrixXd inv = lu.inverse();
        dir = inv.col(r);
      } else {
        // Rebuild along coordinate axes around the best vertex.
        for (int k = 0; k < n; ++k) {
          pts[others[k]] = pts[best];
          pts[others[k]][k] += rho;
          vals[others[k]] = eval(pts[others[k]]);
          if (res.evaluations >= opts.max_evaluations) break;
        }
        continue;
      }
      const double norm = dir.norm();
      if (norm > 0.0) {
        pts[others[r]] = pts[best] + (rho / norm) * dir;
        vals[others[r]] = eval(pts[others[r]]);
        continue;
      }
    }

    const Eigen::VectorXd grad = lu.solve(df);
    const double gnorm = grad.norm();
    if (!(gnorm > 0.0) || !std::isfinite(gnorm)) {
      rho *= 0.5;
      continue;
    }
    const Eigen::VectorXd step = -(rho / gnorm) * grad;
    const Eigen::VectorXd trial = pts[best] + step;
    const double ft = eval(trial);
    const double predicted = rho * gnorm;
    const double ratio = (vals[best] - ft) / predicted;

    // Exchange the vertex whose replacement keeps the simplex volume largest:
    // writing step = sum_r c_r edge_r, replacing edge r scales volume by |c_r|.
    const Eigen::VectorXd coeff = lu.solve(Eigen::MatrixXd::Identity(n, n)).transpose() * step;
    int swap_r = 0;
    double score = -1.0;
    for (int r = 0; r < n; ++r) {
      const double dist = (pts[others[r]] - trial).norm();
      const double s = std::abs(coeff[r]) * std::max(1.0, dist / rho);
      if (s > score) {
        score = s;
        swap_r = r;
      }
    }
    if (ft < vals[best]) {
      pts[others[swap_r]] = trial;
      vals[others[swap_r]] = ft;
      if (ratio > 0.5) rho = std::min(rho * 1.5, 4.0 * opts.initial_step);
    } else {
      // Keep the trial point if it improves on the vertex it would replace.
      if (ft < vals[others[swap_r]]) {
        pts[others[swap_r]] = trial;
        vals[others[swap_r]] = ft;
      }
      rho *= 0.5;
    }
  }
  return res;
}

MinimizeResult minimize_nelder_mead(const Objective& f, std::vector<double> x0,
                                    const MinimizeOptions& opts) {
  const int n = static_cast<int>(x0.size());
  require(n >= 1, ErrorKind::Parameter, "empty parameter vector");
  MinimizeResult res;
  Counter eval(f, res);
  std::vector<Eigen::VectorXd> pts(n + 1, Eigen::Map<Eigen::VectorXd>(x0.data(), n));
  std::vector<double> vals(n + 1);
  vals[0] = eval(pts[0]);
  for (int i = 0; i < n; ++i) {
    pts[i + 1][i] += opts.initial_step;
    vals[i + 1] = eval(pts[i + 1]);
  }
  std::vector<int> order(n + 1);
  while (res.evaluations < opts.max_evaluations) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return vals[a] < vals[b]; });
    const int lo = order.front(), hi = order.back(), second = order[n - 1];
    double size = 0.0;
    for (int i = 0; i <= n; ++i) size = std::max(size, (pts[i] - pts[lo]).norm());
    if (size < opts.tolerance) break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i <= n; ++i)
      if (i != hi) centroid += pts[i];
    centroid /= n;
    const Eigen::VectorXd xr = centroid + (centroid - pts[hi]);
    const double fr = eval(xr);
    if (fr < vals[lo]) {
      const Eigen::VectorXd xe = centroid + 2.0 * (centroid - pts[hi]);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[hi] = xe;
        vals[hi] = fe;
      } else {
        pts[hi] = xr;
        vals[hi] = fr;
      }
    } else if (fr < vals[second]) {
      pts[hi] = xr;
      vals[hi] = fr;
    } else {
      const bool outside = fr < vals[hi];
      const Eigen::VectorXd xc = outside ? Eigen::VectorXd(centroid + 0.5 * (xr - centroid))
                                         : Eigen::VectorXd(centroid + 0.5 * (pts[hi] - centroid));
      const double fc = eval(xc);
      if (fc < std::min(fr, vals[hi])) {
        pts[hi] = xc;
        vals[hi] = fc;
      } else {
        for (int i = 0; i <= n; ++i) {
          if (i == lo) continue;
          pts[i] = pts[lo] + 0.5 * (pts[i] - pts[lo]);
          vals[i] = eval(pts[i]);
          if (res.evaluations >= opts.max_evaluations) break;
        }
      }
    }
  }
  return res;
}

}  // namespace vrpq
