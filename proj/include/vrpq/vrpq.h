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

/* C interface to the vrpq solver. Every function returns a status code;
 * on failure vrpq_last_error() describes the cause for the calling thread.
 * Strings returned through char** are owned by the caller and released
 * with vrpq_string_free(). */
#ifndef VRPQ_VRPQ_H
#define VRPQ_VRPQ_H

#include <stddef.h>
#include <stdint.h>

#if defined(VRPQ_BUILDING_LIBRARY)
#define VRPQ_API __attribute__((visibility("default")))
#else
#define VRPQ_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vrpq_status {
  VRPQ_OK = 0,
  VRPQ_ERR_PARAMETER = 1,
  VRPQ_ERR_VALIDATION = 2,
  VRPQ_ERR_FORMAT = 3,
  VRPQ_ERR_RESOURCE = 4,
  VRPQ_ERR_INFEASIBLE = 5,
  VRPQ_ERR_IO = 6,
  VRPQ_ERR_INTERNAL = 7
} vrpq_status;

typedef enum vrpq_optimizer {
  VRPQ_OPTIMIZER_LINTRUST = 0,
  VRPQ_OPTIMIZER_NELDERMEAD = 1
} vrpq_optimizer;

typedef enum vrpq_encoding {
  VRPQ_ENCODING_EDGE = 0,
  VRPQ_ENCODING_AMPLITUDE = 1
} vrpq_encoding;

typedef struct vrpq_instance vrpq_instance;
typedef struct vrpq_report vrpq_report;

typedef struct vrpq_solve_options {
  int nodes;
  int vehicles;
  uint64_t seed;
  const char* instance_path; /* NULL: generate from nodes/vehicles/seed */
  int p;
  uint64_t shots;
  double lambda; /* <= 0: default penalty weight */
  vrpq_optimizer optimizer;
  int restarts;
  int max_iterations; /* objective evaluations per restart */
  int cut;            /* nonzero: plan cuts and verify reconstruction */
  int xi_max;         /* 0: half the block width */
  double overhead_budget_log10; /* +inf: unbounded */
  vrpq_encoding encoding;
  int resources_only;
} vrpq_solve_options;

VRPQ_API const char* vrpq_version(void);
VRPQ_API const char* vrpq_status_name(vrpq_status status);
VRPQ_API const char* vrpq_last_error(void);
VRPQ_API void vrpq_string_free(char* s);

VRPQ_API vrpq_status vrpq_instance_generate(int nodes, int vehicles, uint64_t seed,
                                            vrpq_instance** out);
VRPQ_API vrpq_status vrpq_instance_from_json(const char* json, vrpq_instance** out);
VRPQ_API vrpq_status vrpq_instance_load(const char* path, vrpq_instance** out);
VRPQ_API vrpq_status vrpq_instance_save(const vrpq_instance* inst, const char* path);
VRPQ_API vrpq_status vrpq_instance_to_json(const vrpq_instance* inst, char** out);
VRPQ_API int vrpq_instance_nodes(const vrpq_instance* inst);
VRPQ_API int vrpq_instance_vehicles(const vrpq_instance* inst);
VRPQ_API void vrpq_instance_free(vrpq_instance* inst);

VRPQ_API void vrpq_solve_options_init(vrpq_solve_options* opts);
VRPQ_API vrpq_status vrpq_solve(const vrpq_solve_options* opts, vrpq_report** out);
VRPQ_API vrpq_status vrpq_report_json(const vrpq_report* report, char** out);
/* Writes the report and its intermediate artifacts into dir (created if needed). */
VRPQ_API vrpq_status vrpq_report_write(const vrpq_report* report, const char* dir);
VRPQ_API size_t vrpq_report_block_count(const vrpq_report* report);
/* which: "quantum", "classical" or "optimal". */
VRPQ_API vrpq_status vrpq_report_total_cost(const vrpq_report* report, const char* which,
                                            double* out);
VRPQ_API void vrpq_report_free(vrpq_report* report);

/* CSV of stage resources and reductions for the given report.json files. */
VRPQ_API vrpq_status vrpq_reductions_csv(const char* const* report_paths, size_t count,
                                         char** out);
/* Amplitude-encoding qubit table. nodes > 0 adds the instance and its
 * partition blocks; sizes adds bare TSP rows labelled "n<size>". References
 * are matched by label. */
VRPQ_API vrpq_status vrpq_amplitude_csv(int nodes, int vehicles, uint64_t seed,
                                        const int* sizes, size_t size_count,
                                        const char* const* ref_labels, const int* ref_values,
                                        size_t ref_count, char** out);

VRPQ_API vrpq_status vrpq_count_unique_tours(int n, uint64_t* out);
VRPQ_API vrpq_status vrpq_edge_qubits(int n, long long* out);
VRPQ_API vrpq_status vrpq_amplitude_qubits(int n, int* out);

#ifdef __cplusplus
}
#endif

#endif /* VRPQ_VRPQ_H */
