// Copyright 2026 The yulelab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "yulelab/yulelab.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "yulelab/ba_graph.hpp"
#include "yulelab/coupling.hpp"
#include "yulelab/error.hpp"
#include "yulelab/planted.hpp"
#include "yulelab/runner.hpp"
#include "yulelab/yule.hpp"

struct yl_graph {
  yulelab::GraphState state;
  yulelab::Rng rng;
};

struct yl_forest {
  yulelab::PlantedForest forest;
  yulelab::Rng rng;
};

namespace {

thread_local std::string last_error;

yl_status Fail(yl_status status, const std::string& message) {
  last_error = message;
  return status;
}

char* CopyString(const std::string& text) {
  char* copy = static_cast<char*>(std::malloc(text.size() + 1));
  if (copy == nullptr) throw std::bad_alloc();
  std::memcpy(copy, text.c_str(), text.size() + 1);
  return copy;
}

template <class Body>
yl_status Guard(Body&& body) {
  try {
    body();
    return YL_OK;
  } catch (const yulelab::Error& e) {
    return Fail(static_cast<yl_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(YL_RESOURCE_EXHAUSTED, "out of memory");
  } catch (const std::exception& e) {
    return Fail(YL_INTERNAL, e.what());
  }
}

#define YL_REQUIRE_ARG(cond, what) \
  if (!(cond)) return Fail(YL_INVALID_ARGUMENT, what)

}  // namespace

extern "C" {

const char* yl_version(void) { return "0.1.0"; }

const char* yl_last_error(void) { return last_error.c_str(); }

const char* yl_status_name(yl_status status) {
  switch (status) {
    case YL_OK: return "ok";
    case YL_INVALID_ARGUMENT: return "invalid argument";
    case YL_OUT_OF_RANGE: return "out of range";
    case YL_RESOURCE_EXHAUSTED: return "resource exhausted";
    case YL_INSTANCE_TOO_LARGE: return "instance too large";
    case YL_ORDERING_VIOLATION: return "ordering violation";
    case YL_CERTIFICATION_FAILED: return "certification failed";
    case YL_IO_ERROR: return "i/o error";
    case YL_CONFIG_ERROR: return "config error";
    case YL_INTERNAL: return "internal error";
  }
  return "unknown status";
}

yl_status yl_graph_new(uint32_t m, uint64_t seed, yl_graph** out) {
  YL_REQUIRE_ARG(out != nullptr, "out is null");
  *out = nullptr;
  YL_REQUIRE_ARG(m >= 1, "m must be >= 1");
  return Guard([&] { *out = new yl_graph{yulelab::GraphState(m), yulelab::Rng(seed)}; });
}

void yl_graph_free(yl_graph* graph) { delete graph; }

yl_status yl_graph_step(yl_graph* graph) {
  YL_REQUIRE_ARG(graph != nullptr, "graph is null");
  return Guard([&] { graph->state.Step(graph->rng); });
}

yl_status yl_graph_grow_to(yl_graph* graph, uint64_t n) {
  YL_REQUIRE_ARG(graph != nullptr, "graph is null");
  return Guard([&] {
    yulelab::Validate(yulelab::BAConfig{graph->state.m(), n, 0, false,
                                        yulelab::kDefaultEdgeBudget});
    graph->state.AdvanceToVertices(n, graph->rng);
  });
}

yl_status yl_graph_time(const yl_graph* graph, uint64_t* t) {
  YL_REQUIRE_ARG(graph != nullptr && t != nullptr, "null argument");
  *t = graph->state.time();
  return YL_OK;
}

yl_status yl_graph_num_vertices(const yl_graph* graph, uint64_t* n) {
  YL_REQUIRE_ARG(graph != nullptr && n != nullptr, "null argument");
  *n = graph->state.num_vertices();
  return YL_OK;
}

yl_status yl_graph_degree(const yl_graph* graph, uint64_t vertex, uint64_t* degree) {
  YL_REQUIRE_ARG(graph != nullptr && degree != nullptr, "null argument");
  if (vertex < 1 || vertex > graph->state.num_vertices()) {
    return Fail(YL_OUT_OF_RANGE, "vertex " + std::to_string(vertex) + " does not exist");
  }
  *degree = graph->state.degree(static_cast<yulelab::VertexId>(vertex));
  return YL_OK;
}

yl_status yl_graph_degrees(const yl_graph* graph, uint32_t* buffer, size_t capacity,
                           size_t* written) {
  YL_REQUIRE_ARG(graph != nullptr && written != nullptr, "null argument");
  YL_REQUIRE_ARG(buffer != nullptr || capacity == 0, "buffer is null");
  const auto degrees = graph->state.degrees();
  const size_t count = std::min(capacity, degrees.size());
  if (count > 0) std::memcpy(buffer, degrees.data(), count * sizeof(uint32_t));
  *written = count;
  return YL_OK;
}

yl_status yl_forest_new(uint32_t roots, uint64_t seed, yl_forest** out) {
  YL_REQUIRE_ARG(out != nullptr, "out is null");
  *out = nullptr;
  return Guard([&] {
    *out = new yl_forest{yulelab::PlantedForest::Init(roots), yulelab::Rng(seed)};
  });
}

void yl_forest_free(yl_forest* forest) { delete forest; }

yl_status yl_forest_grow_to(yl_forest* forest, uint64_t n) {
  YL_REQUIRE_ARG(forest != nullptr, "forest is null");
  return Guard([&] { forest->forest.GrowTo(n, forest->rng); });
}

yl_status yl_forest_count(const yl_forest* forest, uint32_t lineage, uint64_t* count) {
  YL_REQUIRE_ARG(forest != nullptr && count != nullptr, "null argument");
  if (lineage < 1 || lineage > forest->forest.roots()) {
    return Fail(YL_OUT_OF_RANGE, "lineage " + std::to_string(lineage) + " does not exist");
  }
  *count = forest->forest.count(lineage);
  return YL_OK;
}

yl_status yl_forest_sample(yl_forest* forest, uint32_t* lineage, uint64_t* rank,
                           uint64_t* vertex) {
  YL_REQUIRE_ARG(forest != nullptr && lineage != nullptr && rank != nullptr &&
                     vertex != nullptr,
                 "null argument");
  const yulelab::SampleOutcome s = yulelab::TwoStageSample(forest->forest, forest->rng);
  *lineage = s.lineage;
  *rank = s.rank;
  *vertex = s.vertex;
  return YL_OK;
}

yl_status yl_yule_pmf(double lambda, uint64_t m0, double T, uint64_t k, double* p) {
  YL_REQUIRE_ARG(p != nullptr, "p is null");
  return Guard([&] { *p = yulelab::YulePmf({lambda, m0, T}, k); });
}

yl_status yl_yule_fdd_pmf(uint64_t m0, const double* times, const uint64_t* ks,
                          size_t count, double lambda, double* p) {
  YL_REQUIRE_ARG(p != nullptr && times != nullptr && ks != nullptr, "null argument");
  return Guard([&] {
    *p = yulelab::YuleFddPmf(m0, std::span<const double>(times, count),
                             std::span<const uint64_t>(ks, count), lambda);
  });
}

yl_status yl_genus_size_pmf(uint64_t m0, double T, uint64_t k, double* p) {
  YL_REQUIRE_ARG(p != nullptr, "p is null");
  return Guard([&] { *p = yulelab::GenusSizePmfAtT(m0, T, k); });
}

yl_status yl_limit_pmf(uint64_t m0, uint64_t k, double* p) {
  YL_REQUIRE_ARG(p != nullptr, "p is null");
  return Guard([&] { *p = yulelab::LimitPmf(m0, k); });
}

yl_status yl_window_increment_pmf(uint64_t k, uint64_t n, uint32_t m, double* masses,
                                  size_t capacity) {
  YL_REQUIRE_ARG(masses != nullptr, "masses is null");
  YL_REQUIRE_ARG(capacity >= static_cast<size_t>(m) + 1, "capacity must be >= m + 1");
  return Guard([&] {
    const auto law = yulelab::WindowIncrementPmf(k, n, m);
    std::copy(law.begin(), law.end(), masses);
  });
}

yl_status yl_scaled_time(uint64_t i, uint64_t x, double* value) {
  YL_REQUIRE_ARG(value != nullptr, "value is null");
  return Guard([&] { *value = yulelab::ScaledTime(i, x); });
}

yl_status yl_run_json(const char* config_json, int* exit_code, char** report) {
  YL_REQUIRE_ARG(config_json != nullptr && exit_code != nullptr && report != nullptr,
                 "null argument");
  *report = nullptr;
  return Guard([&] {
    yulelab::RunOutcome outcome;
    const auto parsed = yulelab::Json::parse(config_json, nullptr, false);
    if (parsed.is_discarded()) {
      outcome.exit_code = yulelab::kExitConfig;
      outcome.message = "config is not valid JSON";
      outcome.report = {{"exit_code", outcome.exit_code}, {"message", outcome.message}};
    } else {
      outcome = yulelab::RunFlat(parsed);
    }
    if (outcome.exit_code != yulelab::kExitOk) last_error = outcome.message;
    *report = CopyString(outcome.report.dump(1));
    *exit_code = outcome.exit_code;
  });
}

void yl_string_free(char* text) { std::free(text); }

yl_status yl_command_list(char** names_json) {
  YL_REQUIRE_ARG(names_json != nullptr, "null argument");
  return Guard([&] { *names_json = CopyString(yulelab::Json(yulelab::CommandNames()).dump()); });
}

yl_status yl_command_defaults(const char* command, char** defaults_json) {
  YL_REQUIRE_ARG(command != nullptr && defaults_json != nullptr, "null argument");
  return Guard([&] {
    *defaults_json = CopyString(yulelab::CommandDefaults(command).dump());
  });
}

}  // extern "C"
