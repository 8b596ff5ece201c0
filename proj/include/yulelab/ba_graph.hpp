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

// Discrete-time Barabasi-Albert process with loops.
//
// Time starts at t = 1 with the single vertex v_1 and no edges. For every
// n >= 0, step t = n(m+1)+1 adds v_{n+1}, and steps t = n(m+1)+i, i = 2..m+1,
// attach one edge from v_{n+1} to a vertex v chosen with probability
//
//   d(v, t-1) / (2(mn+i-1) - 1)        for v != v_{n+1},
//   (d(v, t-1) + 1) / (2(mn+i-1) - 1)  for v == v_{n+1} (a loop).
//
// A loop adds 2 to the degree of its vertex. At t = n(m+1) the graph has
// exactly n complete vertices and total degree 2mn. Vertex ids are 1-based.

#ifndef YULELAB_BA_GRAPH_HPP_
#define YULELAB_BA_GRAPH_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "yulelab/rng.hpp"

namespace yulelab {

using VertexId = std::uint32_t;

inline constexpr std::uint64_t kDefaultEdgeBudget = 2'000'000'000ULL;

struct BAConfig {
  std::uint32_t m = 1;
  std::uint64_t n_target = 1;
  std::uint64_t seed = 0;
  bool keep_edges = false;
  std::uint64_t edge_budget = kDefaultEdgeBudget;
};

// Throws kInvalidArgument for m == 0 or n_target == 0 and
// kResourceExhausted when n_target * m exceeds the edge budget.
void Validate(const BAConfig& config);

class GraphState {
 public:
  explicit GraphState(std::uint32_t m, bool keep_edges = false);

  std::uint32_t m() const { return m_; }
  std::uint64_t time() const { return t_; }
  std::uint64_t num_vertices() const { return degree_.size(); }
  // Vertices whose m edges have all been attached.
  std::uint64_t complete_vertices() const { return t_ / (m_ + 1); }
  // True when t = n(m+1), i.e. no vertex is part-way through attaching.
  bool at_window_boundary() const { return t_ % (m_ + 1) == 0; }

  std::uint64_t degree(VertexId v) const { return degree_[v - 1]; }
  std::span<const std::uint32_t> degrees() const { return degree_; }
  std::uint64_t total_degree() const { return endpoints_.size(); }

  // Vertex currently attaching its edges; absent at window boundaries.
  std::optional<VertexId> pending_vertex() const;
  std::uint32_t edges_added_in_window() const;

  // Law of the target of the next attachment, indexed by vertex id - 1.
  // Empty when the next step adds a vertex instead.
  std::vector<double> attachment_probabilities() const;

  // Retained only when constructed with keep_edges.
  const std::vector<std::pair<VertexId, VertexId>>& edges() const {
    return edges_;
  }

  void Step(Rng& rng);
  void AdvanceTo(std::uint64_t t, Rng& rng);
  void AdvanceToVertices(std::uint64_t n, Rng& rng) {
    AdvanceTo(n * (m_ + 1), rng);
  }

 private:
  void Attach(VertexId source, VertexId target);

  std::uint32_t m_;
  std::uint64_t t_ = 1;
  // degree_[v-1] = d(v, t).
  std::vector<std::uint32_t> degree_;
  // Each edge contributes both endpoints, a loop its vertex twice, so a
  // uniform entry is a degree-proportional vertex.
  std::vector<VertexId> endpoints_;
  bool keep_edges_;
  std::vector<std::pair<VertexId, VertexId>> edges_;
};

// State at t = n_target(m+1) grown from config.seed.
GraphState Grow(const BAConfig& config);
GraphState Grow(const BAConfig& config, Rng& rng);

struct DegreeHistogram {
  std::uint32_t m = 1;
  std::uint64_t n = 0;
  std::uint64_t t = 0;
  // degree k -> N_{k,t}
  std::map<std::uint64_t, std::uint64_t> counts;
};

// Exact counts N_{k,t}. Rejects states that are not at a window boundary.
DegreeHistogram ComputeDegreeHistogram(const GraphState& state);

// Degrees of v_i at each checkpoint time. Checkpoints must be multiples of
// m+1, at least i(m+1) and nondecreasing; i > 1.
std::vector<std::uint64_t> TraceVertexDegree(
    const BAConfig& config, VertexId i, std::span<const std::uint64_t> checkpoints);
std::vector<std::uint64_t> TraceVertexDegree(
    std::uint32_t m, VertexId i, std::span<const std::uint64_t> checkpoints,
    Rng& rng);

struct ExactOutcome {
  std::vector<std::uint32_t> degrees;  // d(v_1), ..., d(v_n)
  double probability = 0.0;
};

inline constexpr std::uint64_t kDefaultEnumerationLeafLimit = 10'000'000ULL;

// Exact law of the degree sequence at t = n(m+1), by exhaustive expansion of
// every attachment outcome. Outcomes reaching the same degree sequence are
// merged as they are generated; the size guard is on the unmerged outcome
// tree, (n!)^m leaves. Throws kInstanceTooLarge above leaf_limit.
std::vector<ExactOutcome> EnumerateExact(
    std::uint32_t m, std::uint64_t n,
    std::uint64_t leaf_limit = kDefaultEnumerationLeafLimit);

}  // namespace yulelab

#endif  // YULELAB_BA_GRAPH_HPP_
