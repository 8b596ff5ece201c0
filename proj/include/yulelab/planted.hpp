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

// Planted forest over the vertex-arrival sequence.
//
// Starting from i > 1 roots v_1..v_i, each arriving vertex v_{n+1} becomes the
// child of a parent drawn uniformly from v_1..v_n and inherits the parent's
// root. Only root labels, per-lineage counts and ranks within a lineage are
// kept. The forest shares nothing with the graph except the arrival clock.

#ifndef YULELAB_PLANTED_HPP_
#define YULELAB_PLANTED_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "yulelab/ba_graph.hpp"
#include "yulelab/rng.hpp"

namespace yulelab {

using LineageId = std::uint32_t;  // 1-based, in {1..i}

class PlantedForest {
 public:
  // Rejects roots <= 1.
  static PlantedForest Init(std::uint32_t roots);

  std::uint32_t roots() const { return static_cast<std::uint32_t>(counts_.size()); }
  std::uint64_t size() const { return lineage_.size(); }

  LineageId lineage(VertexId v) const { return lineage_[v - 1]; }
  std::uint64_t birth_order(VertexId v) const { return birth_order_[v - 1]; }
  // counts()[j-1] = b(v_j, T_n).
  std::span<const std::uint64_t> counts() const { return counts_; }
  std::uint64_t count(LineageId j) const { return counts_[j - 1]; }
  // The rank-th vertex (1-based) of lineage j.
  VertexId member(LineageId j, std::uint64_t rank) const {
    return members_[j - 1][rank - 1];
  }

  // Probability that the next arrival joins lineage j: counts[j]/n.
  double join_probability(LineageId j) const {
    return static_cast<double>(count(j)) / static_cast<double>(size());
  }

  void AttachNext(Rng& rng);
  // Deterministic arrival as a child of `parent`.
  void AttachChildOf(VertexId parent);
  void GrowTo(std::uint64_t n, Rng& rng);

 private:
  explicit PlantedForest(std::uint32_t roots);

  std::vector<LineageId> lineage_;
  std::vector<std::uint64_t> birth_order_;
  std::vector<std::uint64_t> counts_;
  std::vector<std::vector<VertexId>> members_;
};

struct SampleOutcome {
  LineageId lineage = 0;  // W
  std::uint64_t rank = 0;  // Z
  VertexId vertex = 0;
};

// Pick a lineage with probability proportional to its size, then a member of
// it uniformly.
SampleOutcome TwoStageSample(const PlantedForest& forest, Rng& rng);

// E[b(v_j, T_n)] = n/i.
double PolyaMean(std::uint64_t i, std::uint64_t n);

// Lineage j's size at each checkpoint (vertex counts, nondecreasing, >= i)
// for a fresh forest with i roots.
std::vector<std::uint64_t> LineageSizeCheckpoints(
    std::uint32_t i, LineageId j, std::span<const std::uint64_t> checkpoints,
    Rng& rng);

}  // namespace yulelab

#endif  // YULELAB_PLANTED_HPP_
