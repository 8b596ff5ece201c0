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

#include "yulelab/ba_graph.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "yulelab/error.hpp"

namespace yulelab {

void Validate(const BAConfig& config) {
  Require(config.m >= 1, "m must be >= 1");
  Require(config.n_target >= 1, "n must be >= 1");
  Require(config.n_target <= std::numeric_limits<VertexId>::max(),
          "n exceeds the vertex id range", ErrorCode::kResourceExhausted);
  const unsigned __int128 edges =
      static_cast<unsigned __int128>(config.n_target) * config.m;
  Require(edges <= config.edge_budget,
          "n*m = " + std::to_string(static_cast<std::uint64_t>(edges)) +
              " exceeds the edge budget " + std::to_string(config.edge_budget),
          ErrorCode::kResourceExhausted);
}

GraphState::GraphState(std::uint32_t m, bool keep_edges)
    : m_(m), keep_edges_(keep_edges) {
  Require(m >= 1, "m must be >= 1");
  degree_.push_back(0);  // v_1 at t = 1
}

std::optional<VertexId> GraphState::pending_vertex() const {
  if (at_window_boundary()) return std::nullopt;
  return static_cast<VertexId>(degree_.size());
}

std::uint32_t GraphState::edges_added_in_window() const {
  const std::uint64_t pos = t_ % (m_ + 1);
  return pos == 0 ? m_ : static_cast<std::uint32_t>(pos - 1);
}

std::vector<double> GraphState::attachment_probabilities() const {
  const std::uint64_t next = t_ + 1;
  if ((next - 1) % (m_ + 1) == 0) return {};
  const std::uint64_t n = (next - 1) / (m_ + 1);
  const std::uint64_t i = next - n * (m_ + 1);
  const double denominator = 2.0 * static_cast<double>(m_ * n + i - 1) - 1.0;
  std::vector<double> probs(degree_.size());
  for (std::size_t v = 0; v < degree_.size(); ++v) {
    probs[v] = degree_[v] / denominator;
  }
  probs.back() += 1.0 / denominator;
  return probs;
}

void GraphState::Attach(VertexId source, VertexId target) {
  ++degree_[source - 1];
  ++degree_[target - 1];
  endpoints_.push_back(source);
  endpoints_.push_back(target);
  if (keep_edges_) edges_.emplace_back(source, target);
}

void GraphState::Step(Rng& rng) {
  const std::uint64_t next = t_ + 1;
  if ((next - 1) % (m_ + 1) == 0) {
    Require(degree_.size() < std::numeric_limits<VertexId>::max(),
            "vertex id range exhausted", ErrorCode::kResourceExhausted);
    degree_.push_back(0);
  } else {
    // Total weight d(.,t-1) summed plus the pending vertex's +1, which
    // equals 2(mn+i-1)-1.
    const auto source = static_cast<VertexId>(degree_.size());
    const std::uint64_t weight = endpoints_.size() + 1;
    const std::uint64_t r = rng.Below(weight);
    const VertexId target = r == endpoints_.size() ? source : endpoints_[r];
    Attach(source, target);
  }
  t_ = next;
}

void GraphState::AdvanceTo(std::uint64_t t, Rng& rng) {
  Require(t >= t_, "cannot move a graph backwards in time");
  const std::uint64_t vertices = (t + m_) / (m_ + 1);
  degree_.reserve(vertices);
  endpoints_.reserve(2 * (t - vertices));
  while (t_ < t) Step(rng);
}

GraphState Grow(const BAConfig& config) {
  Rng rng(config.seed);
  return Grow(config, rng);
}

GraphState Grow(const BAConfig& config, Rng& rng) {
  Validate(config);
  GraphState state(config.m, config.keep_edges);
  state.AdvanceToVertices(config.n_target, rng);
  return state;
}

DegreeHistogram ComputeDegreeHistogram(const GraphState& state) {
  Require(state.at_window_boundary(),
          "degree histogram requires t = n(m+1); t = " +
              std::to_string(state.time()) + " is mid-window");
  DegreeHistogram hist;
  hist.m = state.m();
  hist.n = state.complete_vertices();
  hist.t = state.time();
  for (const std::uint32_t d : state.degrees()) ++hist.counts[d];
  return hist;
}

namespace {

void CheckCheckpoints(std::uint32_t m, VertexId i,
                      std::span<const std::uint64_t> checkpoints) {
  Require(m >= 1, "m must be >= 1");
  Require(i > 1, "vertex index must be > 1");
  std::uint64_t previous = 0;
  for (const std::uint64_t c : checkpoints) {
    Require(c % (m + 1) == 0, "checkpoint " + std::to_string(c) +
                                  " is not a multiple of m+1");
    Require(c >= static_cast<std::uint64_t>(i) * (m + 1),
            "checkpoint " + std::to_string(c) + " precedes i(m+1)");
    Require(c >= previous, "checkpoints must be nondecreasing");
    previous = c;
  }
}

}  // namespace

std::vector<std::uint64_t> TraceVertexDegree(
    const BAConfig& config, VertexId i, std::span<const std::uint64_t> checkpoints) {
  Rng rng(config.seed);
  return TraceVertexDegree(config.m, i, checkpoints, rng);
}

std::vector<std::uint64_t> TraceVertexDegree(
    std::uint32_t m, VertexId i, std::span<const std::uint64_t> checkpoints,
    Rng& rng) {
  CheckCheckpoints(m, i, checkpoints);
  GraphState state(m);
  std::vector<std::uint64_t> trace;
  trace.reserve(checkpoints.size());
  for (const std::uint64_t c : checkpoints) {
    state.AdvanceTo(c, rng);
    trace.push_back(state.degree(i));
  }
  return trace;
}

std::vector<ExactOutcome> EnumerateExact(std::uint32_t m, std::uint64_t n,
                                         std::uint64_t leaf_limit) {
  Require(m >= 1, "m must be >= 1");
  Require(n >= 1, "n must be >= 1");
  // (n!)^m leaves.
  double leaves = 1.0;
  for (std::uint64_t v = 2; v <= n; ++v) {
    for (std::uint32_t e = 0; e < m; ++e) leaves *= static_cast<double>(v);
    Require(leaves <= static_cast<double>(leaf_limit),
            "enumeration of m=" + std::to_string(m) + ", n=" +
                std::to_string(n) + " exceeds the leaf limit " +
                std::to_string(leaf_limit),
            ErrorCode::kInstanceTooLarge);
  }

  using Sequence = std::vector<std::uint32_t>;
  std::map<Sequence, double> frontier{{Sequence{}, 1.0}};
  for (std::uint64_t v = 0; v < n; ++v) {
    // v_{v+1} arrives.
    std::map<Sequence, double> grown;
    for (auto& [seq, p] : frontier) {
      Sequence s = seq;
      s.push_back(0);
      grown.emplace(std::move(s), p);
    }
    frontier = std::move(grown);
    for (std::uint32_t i = 2; i <= m + 1; ++i) {
      const double denominator = 2.0 * static_cast<double>(m * v + i - 1) - 1.0;
      std::map<Sequence, double> next;
      for (const auto& [seq, p] : frontier) {
        const std::size_t source = seq.size() - 1;
        for (std::size_t target = 0; target < seq.size(); ++target) {
          const double weight = seq[target] + (target == source ? 1.0 : 0.0);
          if (weight == 0.0) continue;
          Sequence s = seq;
          ++s[source];
          ++s[target];
          next[std::move(s)] += p * weight / denominator;
        }
      }
      frontier = std::move(next);
    }
  }

  std::vector<ExactOutcome> outcomes;
  outcomes.reserve(frontier.size());
  for (auto& [seq, p] : frontier) outcomes.push_back({seq, p});
  return outcomes;
}

}  // namespace yulelab
