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

/*
 * C interface to libyulelab.
 *
 * Every function returns a yl_status. On failure the thread's last error
 * message is available from yl_last_error() until the next failing call on
 * that thread. Handles are opaque and must be released with their _free
 * function; passing NULL to a _free function is a no-op. Vertex and lineage
 * indices are 1-based.
 */

#ifndef YULELAB_YULELAB_H_
#define YULELAB_YULELAB_H_

#include <stddef.h>
#include <stdint.h>

#if defined(YL_BUILDING_LIBRARY)
#define YL_API __attribute__((visibility("default")))
#else
#define YL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum yl_status {
  YL_OK = 0,
  YL_INVALID_ARGUMENT = 1,
  YL_OUT_OF_RANGE = 2,
  YL_RESOURCE_EXHAUSTED = 3,
  YL_INSTANCE_TOO_LARGE = 4,
  YL_ORDERING_VIOLATION = 5,
  YL_CERTIFICATION_FAILED = 6,
  YL_IO_ERROR = 7,
  YL_CONFIG_ERROR = 8,
  YL_INTERNAL = 9
} yl_status;

YL_API const char* yl_version(void);
YL_API const char* yl_last_error(void);
YL_API const char* yl_status_name(yl_status status);

/* ---- BA graph ---- */

typedef struct yl_graph yl_graph;

/* An empty process at t = 1 (v_1, no edges). Streams are keyed by seed. */
YL_API yl_status yl_graph_new(uint32_t m, uint64_t seed, yl_graph** out);
YL_API void yl_graph_free(yl_graph* graph);
YL_API yl_status yl_graph_step(yl_graph* graph);
/* Advances to t = n(m+1). */
YL_API yl_status yl_graph_grow_to(yl_graph* graph, uint64_t n);
YL_API yl_status yl_graph_time(const yl_graph* graph, uint64_t* t);
YL_API yl_status yl_graph_num_vertices(const yl_graph* graph, uint64_t* n);
YL_API yl_status yl_graph_degree(const yl_graph* graph, uint64_t vertex,
                                 uint64_t* degree);
/* Copies min(capacity, num_vertices) degrees; *written gets the count. */
YL_API yl_status yl_graph_degrees(const yl_graph* graph, uint32_t* buffer,
                                  size_t capacity, size_t* written);

/* ---- planted forest ---- */

typedef struct yl_forest yl_forest;

YL_API yl_status yl_forest_new(uint32_t roots, uint64_t seed, yl_forest** out);
YL_API void yl_forest_free(yl_forest* forest);
YL_API yl_status yl_forest_grow_to(yl_forest* forest, uint64_t n);
YL_API yl_status yl_forest_count(const yl_forest* forest, uint32_t lineage,
                                 uint64_t* count);
/* Two-stage sample: lineage proportional to size, then a uniform member. */
YL_API yl_status yl_forest_sample(yl_forest* forest, uint32_t* lineage,
                                  uint64_t* rank, uint64_t* vertex);

/* ---- exact laws ---- */

YL_API yl_status yl_yule_pmf(double lambda, uint64_t m0, double T, uint64_t k,
                             double* p);
YL_API yl_status yl_yule_fdd_pmf(uint64_t m0, const double* times,
                                 const uint64_t* ks, size_t count, double lambda,
                                 double* p);
YL_API yl_status yl_genus_size_pmf(uint64_t m0, double T, uint64_t k, double* p);
YL_API yl_status yl_limit_pmf(uint64_t m0, uint64_t k, double* p);
/* Writes m+1 masses for increments 0..m. */
YL_API yl_status yl_window_increment_pmf(uint64_t k, uint64_t n, uint32_t m,
                                         double* masses, size_t capacity);
YL_API yl_status yl_scaled_time(uint64_t i, uint64_t x, double* value);

/* ---- experiment runner ---- */

/*
 * Runs one experiment from a flat JSON configuration (the same keys the
 * command-line tool accepts). *exit_code gets the tool's exit status and
 * *report a newly allocated JSON report to be released with
 * yl_string_free. A nonzero exit code is not a call failure: the call
 * returns YL_OK whenever a report was produced.
 */
YL_API yl_status yl_run_json(const char* config_json, int* exit_code,
                             char** report);
YL_API void yl_string_free(char* text);

/* JSON array of command names, and a command's parameters with defaults. */
YL_API yl_status yl_command_list(char** names_json);
YL_API yl_status yl_command_defaults(const char* command, char** defaults_json);

#ifdef __cplusplus
}
#endif

#endif /* YULELAB_YULELAB_H_ */
