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

#include "vrpq/instance.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "vrpq/errors.hpp"
#include "vrpq/random.hpp"

namespace vrpq {

namespace {

std::vector<std::vector<double>> euclidean(const std::vector<Point>& pts) {
  const std::size_t n = pts.size();
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = std::hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1]);
      w[i][j] = w[j][i] = d;
    }
  }
  return w;
}

}  // namespace

VrpInstance::VrpInstance(std::vector<std::vector<double>> weights, int vehicles,
                         std::vector<Point> points)
    : n_(static_cast<int>(weights.size())),
      vehicles_(vehicles),
      points_(std::move(points)) {
  require(n_ >= 2, ErrorKind::Validation, "instance needs at least 2 nodes");
  require(vehicles_ >= 1 && vehicles_ <= n_ - 1, ErrorKind::Validation,
          "vehicle count must lie in [1, n-1]");
  require(points_.empty() || points_.size() == weights.size(),
          ErrorKind::Validation, "points and weight matrix disagree in size");
  weights_.resize(std::size_t(n_) * std::size_t(n_));
  for (int i = 0; i < n_; ++i) {
    require(static_cast<int>(weights[i].size()) == n_, ErrorKind::Validation,
            "weight matrix is not square");
    for (int j = 0; j < n_; ++j) {
      const double w = weights[i][j];
      require(std::isfinite(w), ErrorKind::Validation, "non-finite weight");
      if (i == j) {
        require(w == 0.0, ErrorKind::Validation, "diagonal weight must be zero");
      } else {
        require(w > 0.0, ErrorKind::Validation,
                "off-diagonal weight must be strictly positive");
      }
      weights_[std::size_t(i) * std::size_t(n_) + std::size_t(j)] = w;
    }
  }
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      require(weight(i, j) == weight(j, i), ErrorKind::Validation,
              "weight matrix is not symmetric at (" + std::to_string(i) + "," +
                  std::to_string(j) + ")");
    }
  }
}

VrpInstance VrpInstance::from_points(std::vector<Point> points, int vehicles) {
  auto w = euclidean(points);
  return VrpInstance(std::move(w), vehicles, std::move(points));
}

double VrpInstance::max_weight() const noexcept {
  double m = 0.0;
  for (double w : weights_) m = std::max(m, w);
  return m;
}

std::vector<std::vector<double>> VrpInstance::weight_matrix() const {
  std::vector<std::vector<double>> w(n_, std::vector<double>(n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) w[i][j] = weight(i, j);
  return w;
}

VrpInstance generate_random(int n, int vehicles, std::uint64_t seed) {
  require(n >= 3, ErrorKind::Parameter, "generate_random needs n >= 3");
  require(vehicles >= 1 && vehicles <= n - 1, ErrorKind::Parameter,
          "vehicle count must lie in [1, n-1]");
  Rng rng(seed);
  std::vector<Point> pts(n);
  for (auto& p : pts) {
    p[0] = rng.uniform();
    p[1] = rng.uniform();
  }
  // Coincident points would give a zero weight; resample until distinct.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      if (pts[i] == pts[j]) {
        pts[i] = {rng.uniform(), rng.uniform()};
        j = -1;
      }
    }
  }
  return VrpInstance::from_points(std::move(pts), vehicles);
}

double route_cost(const VrpInstance& inst, const Route& route) {
  double cost = 0.0;
  for (std::size_t k = 0; k < route.size(); ++k) {
    const int a = route[k];
    require(a >= 0 && a < inst.nodes(), ErrorKind::Validation,
            "route references node " + std::to_string(a) + " out of range");
    if (k + 1 < route.size()) {
      const int b = route[k + 1];
      require(b >= 0 && b < inst.nodes(), ErrorKind::Validation,
              "route references node " + std::to_string(b) + " out of range");
      cost += inst.weight(a, b);
    }
  }
  return cost;
}

double route_cost(const VrpInstance& inst, const RouteSet& rs) {
  double cost = 0.0;
  for (const auto& r : rs.routes) cost += route_cost(inst, r);
  return cost;
}

RouteSet make_route_set(const VrpInstance& inst, std::vector<Route> routes) {
  RouteSet rs{std::move(routes), 0.0};
  rs.total_cost = route_cost(inst, rs);
  return rs;
}

ValidityReport validate_routes(const VrpInstance& inst, const RouteSet& rs) {
  ValidityReport rep;
  const int n = inst.nodes();
  auto flag = [&rep](bool& field, std::string msg) {
    field = false;
    rep.violations.push_back(std::move(msg));
  };

  std::vector<int> out_deg(n, 0), in_deg(n, 0), visits(n, 0);
  for (std::size_t r = 0; r < rs.routes.size(); ++r) {
    const auto& route = rs.routes[r];
    const std::string tag = "route " + std::to_string(r);
    if (route.size() < 2) {
      flag(rep.structure_ok, tag + " has fewer than two entries");
      continue;
    }
    bool in_range = true;
    for (int v : route) in_range = in_range && v >= 0 && v < n;
    if (!in_range) {
      flag(rep.structure_ok, tag + " references a node out of range");
      continue;
    }
    for (std::size_t k = 0; k + 1 < route.size(); ++k) {
      if (route[k] == route[k + 1]) {
        flag(rep.structure_ok, tag + " contains a self loop");
      }
      ++out_deg[route[k]];
      ++in_deg[route[k + 1]];
    }
    if (route.front() != 0 || route.back() != 0) {
      flag(rep.single_tours_ok, tag + " does not start and end at the depot");
    }
    // The route must touch the depot only at its ends, and visit a customer.
    int interior_depot = 0;
    for (std::size_t k = 1; k + 1 < route.size(); ++k) {
      interior_depot += route[k] == 0;
      if (route[k] != 0) ++visits[route[k]];
    }
    if (route.front() != 0) ++visits[route.front()];
    if (interior_depot > 0) {
      flag(rep.single_tours_ok, tag + " passes through the depot mid-route");
    }
    if (route.size() < 3) {
      flag(rep.single_tours_ok, tag + " visits no customer");
    }
  }

  for (int i = 1; i < n; ++i) {
    if (out_deg[i] != 1) {
      flag(rep.visit_degree_ok, "node " + std::to_string(i) + " has out-degree " +
                                    std::to_string(out_deg[i]));
    }
    if (in_deg[i] != 1) {
      flag(rep.visit_degree_ok, "node " + std::to_string(i) + " has in-degree " +
                                    std::to_string(in_deg[i]));
    }
    if (visits[i] == 0) {
      flag(rep.coverage_ok, "node " + std::to_string(i) + " is never visited");
    } else if (visits[i] > 1) {
      flag(rep.visit_degree_ok, "node " + std::to_string(i) + " is visited " +
                                    std::to_string(visits[i]) + " times");
    }
  }
  const int k = inst.vehicles();
  if (out_deg[0] != k) {
    flag(rep.depot_degree_ok, std::to_string(out_deg[0]) +
                                  " edges leave the depot, expected " + std::to_string(k));
  }
  if (in_deg[0] != k) {
    flag(rep.depot_degree_ok, std::to_string(in_deg[0]) +
                                  " edges enter the depot, expected " + std::to_string(k));
  }
  if (static_cast<int>(rs.routes.size()) != k) {
    flag(rep.structure_ok, std::to_string(rs.routes.size()) + " routes, expected " +
                               std::to_string(k));
  }
  return rep;
}

std::uint64_t count_unique_tours(int n) {
  require(n >= 3, ErrorKind::Parameter, "count_unique_tours needs n >= 3");
  require(n <= 20, ErrorKind::Parameter, "n!/2 overflows 64 bits beyond n = 20");
  std::uint64_t f = 1;
  for (int i = 3; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;  // n!/2 = 3*4*...*n
}

std::string to_json(const VrpInstance& inst) {
  nlohmann::json j;
  j["n"] = inst.nodes();
  j["vehicles"] = inst.vehicles();
  j["weights"] = inst.weight_matrix();
  if (!inst.points().empty()) j["points"] = inst.points();
  // nlohmann prints doubles with round-trip precision.
  return j.dump(2) + "\n";
}

VrpInstance instance_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorKind::Format, std::string("malformed instance JSON: ") + e.what());
  }
  try {
    require(j.is_object(), ErrorKind::Format, "instance JSON must be an object");
    require(j.contains("n"), ErrorKind::Format, "missing field \"n\"");
    require(j.contains("vehicles"), ErrorKind::Format, "missing field \"vehicles\"");
    const int n = j.at("n").get<int>();
    const int k = j.at("vehicles").get<int>();
    std::vector<Point> pts;
    if (j.contains("points")) pts = j.at("points").get<std::vector<Point>>();
    std::vector<std::vector<double>> w;
    if (j.contains("weights")) {
      w = j.at("weights").get<std::vector<std::vector<double>>>();
    } else {
      require(!pts.empty(), ErrorKind::Format, "need \"weights\" or \"points\"");
      w = euclidean(pts);
    }
    require(static_cast<int>(w.size()) == n, ErrorKind::Format,
            "\"n\" disagrees with weight matrix size");
    try {
      return VrpInstance(std::move(w), k, std::move(pts));
    } catch (const Error& e) {
      raise(ErrorKind::Format, e.what());
    }
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorKind::Format, std::string("bad instance field: ") + e.what());
  }
}

void save_json(const VrpInstance& inst, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorKind::Format, "cannot write " + path.string());
  out << to_json(inst);
}

VrpInstance load_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorKind::Format, "cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return instance_from_json(ss.str());
}

}  // namespace vrpq
