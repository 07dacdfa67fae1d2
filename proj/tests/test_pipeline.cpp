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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "vrpq/errors.hpp"
#include "vrpq/pipeline.hpp"

using namespace vrpq;

namespace {

SolveOptions resources(int n, int k, bool cut) {
  SolveOptions o;
  o.nodes = n;
  o.vehicles = k;
  o.cut = cut;
  o.resources_only = true;
  return o;
}

const StageMetrics& stage(const SolveReport& r, const std::string& name) {
  for (const auto& s : r.stages)
    if (s.stage == name) return s;
  FAIL("missing stage " << name);
  return r.stages.front();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("resource stages for 13.5 with cutting") {
  const SolveReport r = run_solve(resources(13, 5, true));
  CHECK(r.label == "13.5");
  CHECK(r.blocks.size() == 5);
  const auto& full = stage(r, "full");
  CHECK(full.qubits == 156);
  CHECK(*full.depth == 534);
  CHECK(*full.two_qubit_gates == 3432);
  const auto& pld = stage(r, "pld");
  CHECK(pld.qubits == 12);
  CHECK(*pld.depth == 45);
  CHECK(*pld.two_qubit_gates == 48);
  const auto& cld = stage(r, "cld");
  CHECK(cld.qubits == 6);
  CHECK(*cld.depth == 23);
  CHECK(*cld.two_qubit_gates == 16);
  CHECK_FALSE(r.quantum.has_value());

  const std::string csv = reductions_csv({to_json(r)});
  CHECK(csv.find("13.5,cld,6,23,16,96.2,95.7,99.5\n") != std::string::npos);
  CHECK(csv.find("13.5,full,156,534,3432,0.0,0.0,0.0\n") != std::string::npos);
}

TEST_CASE("published full-instance counts") {
  const std::vector<std::tuple<int, int, int, int, long long>> rows{
      {7, 2, 42, 156, 420}, {8, 3, 56, 204, 672}, {9, 3, 72, 258, 1008}};
  for (auto [n, k, q, d, cx] : rows) {
    const SolveReport r = run_solve(resources(n, k, false));
    const auto& full = stage(r, "full");
    CHECK(full.qubits == q);
    CHECK(*full.depth == d);
    CHECK(*full.two_qubit_gates == cx);
  }
}

TEST_CASE("reductions csv errors") {
  try {
    reductions_csv({"not json"});
    FAIL("parsed garbage");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Format);
  }
  CHECK_THROWS_AS(reductions_csv({R"({"label":"x","resources":[]})"}), Error);
}

TEST_CASE("budget refusal and infeasible xi") {
  SolveOptions o = resources(7, 2, true);
  o.overhead_budget_log10 = 0.5;
  try {
    run_solve(o);
    FAIL("budget ignored");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Resource);
    CHECK(std::string(e.what()).find("exceeds budget") != std::string::npos);
  }
  o = resources(7, 2, true);
  o.xi_max = 3;
  try {
    run_solve(o);
    FAIL("xi ignored");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Resource);
  }
}

TEST_CASE("amplitude encoding") {
  SolveOptions o = resources(10, 2, false);
  o.encoding = Encoding::Amplitude;
  const SolveReport r = run_solve(o);
  CHECK(stage(r, "full").qubits == 7);
  CHECK_FALSE(stage(r, "full").depth.has_value());
  o.resources_only = false;
  CHECK_THROWS_AS(run_solve(o), Error);

  const auto rows = amplitude_rows(generate_random(10, 2, 1), 1);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].label == "10.2");
  CHECK(rows[0].amplitude_qubits == 7);
  CHECK(rows[0].edge_qubits == 90);
  const std::string csv = amplitude_csv({amplitude_row("10.2", 10), amplitude_row("4", 4)},
                                        {{"10.2", 8}, {"4", 4}});
  CHECK(csv ==
        "label,nodes,amplitude_qubits,edge_qubits,reference_qubits,note\n"
        "10.2,10,7,90,8,\"reference 8 differs from ceil(log2(90)) = 7\"\n"
        "4,4,4,12,4,\n");
}

TEST_CASE("end-to-end solve with cut verification and artifacts") {
  SolveOptions o;
  o.nodes = 7;
  o.vehicles = 2;
  o.cut = true;
  o.qaoa.p = 1;
  o.qaoa.restarts = 1;
  o.qaoa.max_iterations = 60;
  o.qaoa.shots = 5000;
  const SolveReport r = run_solve(o);
  REQUIRE(r.quantum.has_value());
  REQUIRE(r.optimal.has_value());
  REQUIRE(r.classical.has_value());
  CHECK(validate_routes(r.instance, *r.quantum).ok());
  CHECK(r.quantum->total_cost >= r.optimal->total_cost - 1e-12);
  CHECK(r.classical->total_cost >= r.optimal->total_cost - 1e-12);
  for (const auto& b : r.blocks) {
    REQUIRE(b.reconstructed_expectation.has_value());
    CHECK(std::abs(*b.reconstructed_expectation - *b.uncut_expectation) < 1e-9);
  }

  const auto dir = std::filesystem::temp_directory_path() / "vrpq_pipeline_test";
  std::filesystem::remove_all(dir);
  write_artifacts(r, dir);
  for (const char* f : {"report.json", "instance.json", "partition.json", "resources.csv",
                        "blocks.csv", "traces.csv", "costs.csv"})
    CHECK(std::filesystem::exists(dir / f));
  const auto j = nlohmann::json::parse(slurp(dir / "report.json"));
  CHECK(j["label"] == "7.2");
  CHECK(j["blocks"].size() == 2);
  CHECK(instance_from_json(slurp(dir / "instance.json")) == r.instance);
  const SolveReport again = run_solve(o);
  CHECK(to_json(again) == to_json(r));
  std::filesystem::remove_all(dir);
}

}  // TEST_SUITE
