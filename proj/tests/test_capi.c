/*
 * Copyright 2026 The yulelab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* Exercises the C interface from C. */

#include <math.h>
#include <stdio.h>
#include <string.h>

#include "yulelab/yulelab.h"

static int failures = 0;

#define EXPECT(cond)                                             \
  do {                                                           \
    if (!(cond)) {                                               \
      fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, \
              #cond);                                            \
      ++failures;                                                \
    }                                                            \
  } while (0)

static void test_graph(void) {
  yl_graph* g = NULL;
  uint64_t t = 0, n = 0, d = 0, total = 0;
  uint32_t buffer[64];
  size_t written = 0, j;

  EXPECT(yl_graph_new(0, 1, &g) == YL_INVALID_ARGUMENT);
  EXPECT(g == NULL);
  EXPECT(strlen(yl_last_error()) > 0);

  EXPECT(yl_graph_new(2, 42, &g) == YL_OK);
  EXPECT(yl_graph_time(g, &t) == YL_OK && t == 1);
  EXPECT(yl_graph_step(g) == YL_OK);
  EXPECT(yl_graph_degree(g, 1, &d) == YL_OK && d == 2);
  EXPECT(yl_graph_grow_to(g, 50) == YL_OK);
  EXPECT(yl_graph_time(g, &t) == YL_OK && t == 150);
  EXPECT(yl_graph_num_vertices(g, &n) == YL_OK && n == 50);
  EXPECT(yl_graph_degrees(g, buffer, 64, &written) == YL_OK && written == 50);
  for (j = 0; j < written; ++j) total += buffer[j];
  EXPECT(total == 200);
  EXPECT(yl_graph_degree(g, 51, &d) == YL_OUT_OF_RANGE);
  EXPECT(yl_graph_degree(g, 0, &d) == YL_OUT_OF_RANGE);
  EXPECT(yl_graph_grow_to(g, 2000000000ULL) == YL_RESOURCE_EXHAUSTED);
  yl_graph_free(g);
  yl_graph_free(NULL);
}

static void test_forest(void) {
  yl_forest* f = NULL;
  uint64_t count = 0, rank = 0, vertex = 0, sum = 0;
  uint32_t lineage = 0, j;

  EXPECT(yl_forest_new(1, 1, &f) == YL_INVALID_ARGUMENT);
  EXPECT(f == NULL);
  EXPECT(yl_forest_new(5, 3, &f) == YL_OK);
  EXPECT(yl_forest_grow_to(f, 50) == YL_OK);
  for (j = 1; j <= 5; ++j) {
    EXPECT(yl_forest_count(f, j, &count) == YL_OK && count >= 1);
    sum += count;
  }
  EXPECT(sum == 50);
  EXPECT(yl_forest_count(f, 6, &count) == YL_OUT_OF_RANGE);
  EXPECT(yl_forest_sample(f, &lineage, &rank, &vertex) == YL_OK);
  EXPECT(lineage >= 1 && lineage <= 5 && rank >= 1 && vertex >= 1 && vertex <= 50);
  EXPECT(yl_forest_grow_to(f, 10) == YL_INVALID_ARGUMENT);
  yl_forest_free(f);
}

static void test_laws(void) {
  double p = 0.0;
  double masses[3];
  double times[2] = {0.5, 1.0};
  uint64_t ks[2] = {2, 3};

  EXPECT(yl_yule_pmf(1.0, 1, log(2.0), 3, &p) == YL_OK && fabs(p - 0.125) < 1e-14);
  EXPECT(yl_yule_pmf(-1.0, 1, 1.0, 3, &p) == YL_INVALID_ARGUMENT);
  EXPECT(yl_limit_pmf(1, 1, &p) == YL_OK && fabs(p - 2.0 / 3.0) < 1e-15);
  EXPECT(yl_genus_size_pmf(1, 60.0, 1, &p) == YL_OK && fabs(p - 2.0 / 3.0) < 1e-12);
  EXPECT(yl_yule_fdd_pmf(2, times, ks, 2, 0.5, &p) == YL_OK && p > 0.0 && p < 1.0);
  ks[1] = 1;
  EXPECT(yl_yule_fdd_pmf(2, times, ks, 2, 0.5, &p) == YL_INVALID_ARGUMENT);
  EXPECT(yl_window_increment_pmf(2, 10, 2, masses, 3) == YL_OK);
  EXPECT(fabs(masses[2] - (2.0 / 41.0) * (3.0 / 43.0)) < 1e-15);
  EXPECT(yl_window_increment_pmf(2, 10, 2, masses, 2) == YL_INVALID_ARGUMENT);
  EXPECT(yl_window_increment_pmf(1, 10, 2, masses, 3) == YL_OUT_OF_RANGE);
  EXPECT(yl_scaled_time(2, 2, &p) == YL_OK && fabs(p - 5.0 / 6.0) < 1e-15);
}

static void test_runner(void) {
  char* report = NULL;
  char* names = NULL;
  char* defaults = NULL;
  int exit_code = -1;

  EXPECT(yl_run_json("{\"command\":\"enumerate\",\"m\":1,\"n\":2}", &exit_code, &report) == YL_OK);
  EXPECT(exit_code == 0);
  EXPECT(report != NULL && strstr(report, "\"pass\": true") != NULL);
  yl_string_free(report);

  EXPECT(yl_run_json("{\"command\":\"enumerate\",\"m\":\"x\"}", &exit_code, &report) == YL_OK);
  EXPECT(exit_code == 1);
  EXPECT(strstr(yl_last_error(), "'m'") != NULL);
  yl_string_free(report);

  EXPECT(yl_run_json("not json", &exit_code, &report) == YL_OK && exit_code == 1);
  yl_string_free(report);

  EXPECT(yl_command_list(&names) == YL_OK && strstr(names, "verify-planted") != NULL);
  yl_string_free(names);
  EXPECT(yl_command_defaults("certify", &defaults) == YL_OK && strstr(defaults, "n_cert") != NULL);
  yl_string_free(defaults);
  EXPECT(yl_command_defaults("nope", &defaults) == YL_CONFIG_ERROR);
  EXPECT(strcmp(yl_status_name(YL_OUT_OF_RANGE), "out of range") == 0);
  EXPECT(strlen(yl_version()) > 0);
}

int main(void) {
  test_graph();
  test_forest();
  test_laws();
  test_runner();
  if (failures != 0) {
    fprintf(stderr, "%d failures\n", failures);
    return 1;
  }
  printf("all C API checks passed\n");
  return 0;
}
