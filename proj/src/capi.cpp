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

#include "vrpq/vrpq.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <new>
#include <optional>
#include <sstream>
#include <string>

#include "vrpq/encode.hpp"
#include "vrpq/errors.hpp"
#include "vrpq/instance.hpp"
#include "vrpq/pipeline.hpp"

struct vrpq_instance {
  vrpq::VrpInstance value;
};

struct vrpq_report {
  vrpq::SolveReport value;
};

namespace {

thread_local std::string last_error;

vrpq_status status_of(vrpq::ErrorKind kind) {
  switch (kind) {
    case vrpq::ErrorKind::Parameter: return VRPQ_ERR_PARAMETER;
    case vrpq::ErrorKind::Validation: return VRPQ_ERR_VALIDATION;
    case vrpq::ErrorKind::Format: return VRPQ_ERR_FORMAT;
    case vrpq::ErrorKind::Resource: return VRPQ_ERR_RESOURCE;
    case vrpq::ErrorKind::Infeasible: return VRPQ_ERR_INFEASIBLE;
    case vrpq::ErrorKind::Contract: return VRPQ_ERR_INTERNAL;
  }
  return VRPQ_ERR_INTERNAL;
}

template <typename F>
vrpq_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return VRPQ_OK;
  } catch (const vrpq::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    last_error = e.what();
    return VRPQ_ERR_IO;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return VRPQ_ERR_RESOURCE;
  } catch (const std::exception& e) {
    last_error = e.what();
    return VRPQ_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return VRPQ_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  vrpq::require(p != nullptr, vrpq::ErrorKind::Parameter, std::string(what) + " must not be null");
}

char* copy_out(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f)
    throw std::filesystem::filesystem_error("cannot read", p,
                                            std::make_error_code(std::errc::no_such_file_or_directory));
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

}  // namespace

extern "C" {

const char* vrpq_version(void) { return "0.1.0"; }

const char* vrpq_status_name(vrpq_status status) {
  switch (status) {
    case VRPQ_OK: return "ok";
    case VRPQ_ERR_PARAMETER: return "parameter error";
    case VRPQ_ERR_VALIDATION: return "validation error";
    case VRPQ_ERR_FORMAT: return "format error";
    case VRPQ_ERR_RESOURCE: return "resource error";
    case VRPQ_ERR_INFEASIBLE: return "infeasible";
    case VRPQ_ERR_IO: return "io error";
    case VRPQ_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* vrpq_last_error(void) { return last_error.c_str(); }

void vrpq_string_free(char* s) { std::free(s); }

vrpq_status vrpq_instance_generate(int nodes, int vehicles, uint64_t seed, vrpq_instance** out) {
  return guarded([&] {
    need(out, "out");
    *out = new vrpq_instance{vrpq::generate_random(nodes, vehicles, seed)};
  });
}

vrpq_status vrpq_instance_from_json(const char* json, vrpq_instance** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    *out = new vrpq_instance{vrpq::instance_from_json(json)};
  });
}

vrpq_status vrpq_instance_load(const char* path, vrpq_instance** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new vrpq_instance{vrpq::load_json(path)};
  });
}

vrpq_status vrpq_instance_save(const vrpq_instance* inst, const char* path) {
  return guarded([&] {
    need(inst, "instance");
    need(path, "path");
    vrpq::save_json(inst->value, path);
  });
}

vrpq_status vrpq_instance_to_json(const vrpq_instance* inst, char** out) {
  return guarded([&] {
    need(inst, "instance");
    need(out, "out");
    *out = copy_out(vrpq::to_json(inst->value));
  });
}

int vrpq_instance_nodes(const vrpq_instance* inst) { return inst ? inst->value.nodes() : 0; }
int vrpq_instance_vehicles(const vrpq_instance* inst) { return inst ? inst->value.vehicles() : 0; }
void vrpq_instance_free(vrpq_instance* inst) { delete inst; }

void vrpq_solve_options_init(vrpq_solve_options* opts) {
  if (!opts) return;
  const vrpq::SolveOptions d;
  opts->nodes = d.nodes;
  opts->vehicles = d.vehicles;
  opts->seed = d.seed;
  opts->instance_path = nullptr;
  opts->p = d.qaoa.p;
  opts->shots = d.qaoa.shots;
  opts->lambda = d.qaoa.lambda;
  opts->optimizer = VRPQ_OPTIMIZER_LINTRUST;
  opts->restarts = d.qaoa.restarts;
  opts->max_iterations = d.qaoa.max_iterations;
  opts->cut = 0;
  opts->xi_max = d.xi_max;
  opts->overhead_budget_log10 = d.overhead_budget_log10;
  opts->encoding = VRPQ_ENCODING_EDGE;
  opts->resources_only = 0;
}

vrpq_status vrpq_solve(const vrpq_solve_options* opts, vrpq_report** out) {
  return guarded([&] {
    need(opts, "options");
    need(out, "out");
    vrpq::SolveOptions o;
    o.nodes = opts->nodes;
    o.vehicles = opts->vehicles;
    o.seed = opts->seed;
    if (opts->instance_path) o.instance_path = opts->instance_path;
    o.qaoa.p = opts->p;
    o.qaoa.shots = opts->shots;
    o.qaoa.lambda = opts->lambda;
    vrpq::require(opts->optimizer == VRPQ_OPTIMIZER_LINTRUST ||
                      opts->optimizer == VRPQ_OPTIMIZER_NELDERMEAD,
                  vrpq::ErrorKind::Parameter, "unknown optimizer");
    o.qaoa.optimizer = opts->optimizer == VRPQ_OPTIMIZER_LINTRUST ? vrpq::OptimizerKind::LinearTrust
                                                                  : vrpq::OptimizerKind::NelderMead;
    o.qaoa.restarts = opts->restarts;
    o.qaoa.max_iterations = opts->max_iterations;
    o.cut = opts->cut != 0;
    o.xi_max = opts->xi_max;
    o.overhead_budget_log10 = opts->overhead_budget_log10;
    vrpq::require(opts->encoding == VRPQ_ENCODING_EDGE || opts->encoding == VRPQ_ENCODING_AMPLITUDE,
                  vrpq::ErrorKind::Parameter, "unknown encoding");
    o.encoding = opts->encoding == VRPQ_ENCODING_EDGE ? vrpq::Encoding::Edge : vrpq::Encoding::Amplitude;
    o.resources_only = opts->resources_only != 0;
    *out = new vrpq_report{vrpq::run_solve(o)};
  });
}

vrpq_status vrpq_report_json(const vrpq_report* report, char** out) {
  return guarded([&] {
    need(report, "report");
    need(out, "out");
    *out = copy_out(vrpq::to_json(report->value));
  });
}

vrpq_status vrpq_report_write(const vrpq_report* report, const char* dir) {
  return guarded([&] {
    need(report, "report");
    need(dir, "dir");
    vrpq::write_artifacts(report->value, dir);
  });
}

size_t vrpq_report_block_count(const vrpq_report* report) {
  return report ? report->value.blocks.size() : 0;
}

vrpq_status vrpq_report_total_cost(const vrpq_report* report, const char* which, double* out) {
  return guarded([&] {
    need(report, "report");
    need(which, "which");
    need(out, "out");
    const auto& r = report->value;
    const std::string w = which;
    const std::optional<vrpq::RouteSet>* rs = w == "quantum"     ? &r.quantum
                                              : w == "classical" ? &r.classical
                                              : w == "optimal"   ? &r.optimal
                                                                 : nullptr;
    vrpq::require(rs != nullptr, vrpq::ErrorKind::Parameter, "unknown cost kind '" + w + "'");
    vrpq::require(rs->has_value(), vrpq::ErrorKind::Parameter, "report has no " + w + " solution");
    *out = (*rs)->total_cost;
  });
}

void vrpq_report_free(vrpq_report* report) { delete report; }

vrpq_status vrpq_reductions_csv(const char* const* report_paths, size_t count, char** out) {
  return guarded([&] {
    need(out, "out");
    vrpq::require(count > 0, vrpq::ErrorKind::Parameter, "no reports given");
    need(report_paths, "report_paths");
    std::vector<std::string> texts;
    for (size_t i = 0; i < count; ++i) {
      need(report_paths[i], "report path");
      std::filesystem::path p = report_paths[i];
      if (std::filesystem::is_directory(p)) p /= "report.json";
      texts.push_back(read_file(p));
    }
    *out = copy_out(vrpq::reductions_csv(texts));
  });
}

vrpq_status vrpq_amplitude_csv(int nodes, int vehicles, uint64_t seed, const int* sizes,
                               size_t size_count, const char* const* ref_labels,
                               const int* ref_values, size_t ref_count, char** out) {
  return guarded([&] {
    need(out, "out");
    std::vector<vrpq::AmplitudeRow> rows;
    if (nodes > 0) rows = vrpq::amplitude_rows(vrpq::generate_random(nodes, vehicles, seed), seed);
    if (size_count > 0) need(sizes, "sizes");
    for (size_t i = 0; i < size_count; ++i)
      rows.push_back(vrpq::amplitude_row("n" + std::to_string(sizes[i]), sizes[i]));
    vrpq::require(!rows.empty(), vrpq::ErrorKind::Parameter, "no instance or sizes given");
    std::map<std::string, int> refs;
    if (ref_count > 0) {
      need(ref_labels, "ref_labels");
      need(ref_values, "ref_values");
    }
    for (size_t i = 0; i < ref_count; ++i) {
      need(ref_labels[i], "reference label");
      refs[ref_labels[i]] = ref_values[i];
    }
    *out = copy_out(vrpq::amplitude_csv(rows, refs));
  });
}

vrpq_status vrpq_count_unique_tours(int n, uint64_t* out) {
  return guarded([&] {
    need(out, "out");
    *out = vrpq::count_unique_tours(n);
  });
}

vrpq_status vrpq_edge_qubits(int n, long long* out) {
  return guarded([&] {
    need(out, "out");
    *out = vrpq::qubit_count_edge(n);
  });
}

vrpq_status vrpq_amplitude_qubits(int n, int* out) {
  return guarded([&] {
    need(out, "out");
    *out = vrpq::qubit_count_amplitude(n);
  });
}

}  // extern "C"
