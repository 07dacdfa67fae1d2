/* Copyright 2026 The vrpq Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* Exercises the C interface from plain C. */

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "vrpq/vrpq.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

int main(void) {
  vrpq_instance* inst = NULL;
  char* json = NULL;
  vrpq_instance* back = NULL;

  EXPECT(strlen(vrpq_version()) > 0);
  EXPECT(strcmp(vrpq_status_name(VRPQ_ERR_RESOURCE), "resource error") == 0);

  EXPECT(vrpq_instance_generate(7, 2, 1, &inst) == VRPQ_OK);
  EXPECT(vrpq_instance_nodes(inst) == 7);
  EXPECT(vrpq_instance_vehicles(inst) == 2);
  EXPECT(vrpq_instance_to_json(inst, &json) == VRPQ_OK);
  EXPECT(vrpq_instance_from_json(json, &back) == VRPQ_OK);
  EXPECT(vrpq_instance_nodes(back) == 7);
  vrpq_string_free(json);
  vrpq_instance_free(back);
  vrpq_instance_free(inst);

  inst = NULL;
  EXPECT(vrpq_instance_generate(3, 3, 1, &inst) == VRPQ_ERR_PARAMETER);
  EXPECT(inst == NULL);
  EXPECT(strlen(vrpq_last_error()) > 0);
  EXPECT(vrpq_instance_from_json("{", &inst) == VRPQ_ERR_FORMAT);
  EXPECT(vrpq_instance_load("/nonexistent/instance.json", &inst) != VRPQ_OK);

  uint64_t tours = 0;
  long long edges = 0;
  int amp = 0;
  EXPECT(vrpq_count_unique_tours(5, &tours) == VRPQ_OK && tours == 60);
  EXPECT(vrpq_edge_qubits(13, &edges) == VRPQ_OK && edges == 156);
  EXPECT(vrpq_amplitude_qubits(10, &amp) == VRPQ_OK && amp == 7);
  EXPECT(vrpq_amplitude_qubits(1, &amp) == VRPQ_ERR_PARAMETER);

  vrpq_solve_options opts;
  vrpq_solve_options_init(&opts);
  opts.nodes = 7;
  opts.vehicles = 2;
  opts.p = 1;
  opts.restarts = 1;
  opts.max_iterations = 40;
  opts.shots = 4000;
  opts.cut = 1;
  vrpq_report* rep = NULL;
  EXPECT(vrpq_solve(&opts, &rep) == VRPQ_OK);
  EXPECT(vrpq_report_block_count(rep) == 2);
  double q = 0, opt = 0, cls = 0;
  EXPECT(vrpq_report_total_cost(rep, "quantum", &q) == VRPQ_OK);
  EXPECT(vrpq_report_total_cost(rep, "optimal", &opt) == VRPQ_OK);
  EXPECT(vrpq_report_total_cost(rep, "classical", &cls) == VRPQ_OK);
  EXPECT(q >= opt - 1e-12 && cls >= opt - 1e-12);
  EXPECT(vrpq_report_total_cost(rep, "bogus", &q) == VRPQ_ERR_PARAMETER);
  EXPECT(vrpq_report_json(rep, &json) == VRPQ_OK);
  EXPECT(strstr(json, "\"label\": \"7.2\"") != NULL);
  vrpq_string_free(json);
  vrpq_report_free(rep);

  vrpq_solve_options_init(&opts);
  opts.nodes = 7;
  opts.vehicles = 2;
  opts.cut = 1;
  opts.resources_only = 1;
  opts.overhead_budget_log10 = 0.5;
  rep = NULL;
  EXPECT(vrpq_solve(&opts, &rep) == VRPQ_ERR_RESOURCE);
  EXPECT(rep == NULL);
  opts.overhead_budget_log10 = INFINITY;
  opts.p = 0;
  EXPECT(vrpq_solve(&opts, &rep) == VRPQ_ERR_PARAMETER);

  const char* labels[] = {"10.2"};
  const int values[] = {8};
  EXPECT(vrpq_amplitude_csv(10, 2, 1, NULL, 0, labels, values, 1, &json) == VRPQ_OK);
  EXPECT(strstr(json, "reference 8 differs") != NULL);
  vrpq_string_free(json);

  const char* missing[] = {"/nonexistent/report.json"};
  EXPECT(vrpq_reductions_csv(missing, 1, &json) != VRPQ_OK);

  if (failures) fprintf(stderr, "%d failures\n", failures);
  else printf("capi: all checks passed\n");
  return failures ? 1 : 0;
}
