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

#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "vrpq/errors.hpp"
#include "vrpq/instance.hpp"

using namespace vrpq;

namespace {

VrpInstance square4() {
  // Unit square, depot at a corner.
  return VrpInstance::from_points({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, 2);
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Contract;
}

}  // namespace

TEST_SUITE("instance") {

TEST_CASE("generated instances satisfy the invariants") {
  const auto inst = generate_random(3, 1, 7);
  REQUIRE(inst.nodes() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(inst.weight(i, i) == 0.0);
    for (int j = 0; j < 3; ++j) {
      CHECK(inst.weight(i, j) == inst.weight(j, i));
      if (i != j) CHECK(inst.weight(i, j) > 0.0);
    }
  }
  CHECK(generate_random(13, 5, 1).nodes() * 12 == 156);
}

TEST_CASE("generation is deterministic per seed") {
  CHECK(generate_random(9, 3, 42) == generate_random(9, 3, 42));
  CHECK_FALSE(generate_random(9, 3, 42) == generate_random(9, 3, 43));
}

TEST_CASE("bad generation parameters") {
  CHECK(kind_of([] { generate_random(2, 1, 1); }) == ErrorKind::Parameter);
  CHECK(kind_of([] { generate_random(5, 0, 1); }) == ErrorKind::Parameter);
  CHECK(kind_of([] { generate_random(5, 5, 1); }) == ErrorKind::Parameter);
}

TEST_CASE("constructor rejects broken matrices") {
  CHECK(kind_of([] { VrpInstance({{0, 1}, {2, 0}}, 1); }) == ErrorKind::Validation);
  CHECK(kind_of([] { VrpInstance({{0, 0}, {0, 0}}, 1); }) == ErrorKind::Validation);
  CHECK(kind_of([] { VrpInstance({{1, 1}, {1, 0}}, 1); }) == ErrorKind::Validation);
  CHECK(kind_of([] { VrpInstance({{0, 1}, {1, 0}}, 2); }) == ErrorKind::Validation);
}

TEST_CASE("route cost") {
  const VrpInstance out_back({{0, 5}, {5, 0}}, 1);
  CHECK(route_cost(out_back, Route{0, 1, 0}) == 10.0);

  const auto sq = square4();
  const RouteSet rs = make_route_set(sq, {{0, 1, 0}, {0, 2, 3, 0}});
  const double expect = sq.weight(0, 1) * 2 + sq.weight(0, 2) + sq.weight(2, 3) + sq.weight(3, 0);
  CHECK(rs.total_cost == doctest::Approx(expect).epsilon(1e-15));
  CHECK(route_cost(sq, Route{0, 3, 2, 0}) == doctest::Approx(route_cost(sq, Route{0, 2, 3, 0})));
  CHECK(kind_of([&] { route_cost(sq, Route{0, 4, 0}); }) == ErrorKind::Validation);
}

TEST_CASE("validate_routes flags each constraint") {
  const auto sq = square4();
  CHECK(validate_routes(sq, make_route_set(sq, {{0, 1, 0}, {0, 2, 3, 0}})).ok());

  const auto twice = validate_routes(sq, RouteSet{{{0, 1, 2, 0}, {0, 2, 3, 0}}, 0.0});
  CHECK_FALSE(twice.visit_degree_ok);
  CHECK_FALSE(twice.ok());

  const auto off_depot = validate_routes(sq, RouteSet{{{0, 1, 0}, {2, 3, 2}}, 0.0});
  CHECK_FALSE(off_depot.depot_degree_ok);
  CHECK_FALSE(off_depot.single_tours_ok);

  const auto missing = validate_routes(sq, RouteSet{{{0, 1, 0}, {0, 2, 0}}, 0.0});
  CHECK_FALSE(missing.coverage_ok);
  CHECK_FALSE(missing.violations.empty());
}

TEST_CASE("unique tour count") {
  CHECK(count_unique_tours(3) == 3);
  CHECK(count_unique_tours(4) == 12);
  CHECK(count_unique_tours(10) == 1814400);
  CHECK(kind_of([] { count_unique_tours(2); }) == ErrorKind::Parameter);
}

TEST_CASE("json round trip and schema errors") {
  const auto inst = generate_random(6, 2, 3);
  const auto path = std::filesystem::temp_directory_path() / "vrpq_instance_roundtrip.json";
  save_json(inst, path);
  CHECK(load_json(path) == inst);
  std::filesystem::remove(path);

  CHECK(instance_from_json(to_json(inst)) == inst);
  CHECK(kind_of([] { instance_from_json(R"({"n":2,"vehicles":1,"weights":[[0,1],[2,0]]})"); }) ==
        ErrorKind::Format);
  CHECK(kind_of([] { instance_from_json(R"({"n":2,"weights":[[0,1],[1,0]]})"); }) ==
        ErrorKind::Format);
  CHECK(kind_of([] { instance_from_json(R"({"n":2,"vehicles":1,"weights":[[0,-1],[-1,0]]})"); }) ==
        ErrorKind::Format);
  CHECK(kind_of([] { instance_from_json("{not json"); }) == ErrorKind::Format);

  const auto from_pts = instance_from_json(R"({"n":3,"vehicles":1,"points":[[0,0],[3,4],[0,4]]})");
  CHECK(from_pts.weight(0, 1) == doctest::Approx(5.0));
  CHECK(from_pts.weight(1, 2) == doctest::Approx(3.0));
}

}  // TEST_SUITE
