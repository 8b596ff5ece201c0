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

#include "yulelab/planted.hpp"

#include <string>

#include "yulelab/error.hpp"

namespace yulelab {

PlantedForest PlantedForest::Init(std::uint32_t roots) {
  Require(roots > 1, "planted forest needs i > 1 roots, got " +
                         std::to_string(roots));
  return PlantedForest(roots);
}

PlantedForest::PlantedForest(std::uint32_t roots)
    : counts_(roots, 1), members_(roots) {
  lineage_.reserve(roots);
  birth_order_.reserve(roots);
  for (std::uint32_t j = 1; j <= roots; ++j) {
    lineage_.push_back(j);
    birth_order_.push_back(1);
    members_[j - 1].push_back(j);
  }
}

void PlantedForest::AttachChildOf(VertexId parent) {
  Require(parent >= 1 && parent <= size(), "parent is not an existing vertex");
  const LineageId j = lineage_[parent - 1];
  const auto child = static_cast<VertexId>(size() + 1);
  lineage_.push_back(j);
  birth_order_.push_back(++counts_[j - 1]);
  members_[j - 1].push_back(child);
}

void PlantedForest::AttachNext(Rng& rng) {
  AttachChildOf(static_cast<VertexId>(rng.Below(size()) + 1));
}

void PlantedForest::GrowTo(std::uint64_t n, Rng& rng) {
  Require(n >= size(), "cannot shrink a planted forest");
  lineage_.reserve(n);
  birth_order_.reserve(n);
  while (size() < n) AttachNext(rng);
}

SampleOutcome TwoStageSample(const PlantedForest& forest, Rng& rng) {
  // Stage one: lineage proportional to size.
  std::uint64_t u = rng.Below(forest.size());
  LineageId w = 1;
  for (const std::uint64_t c : forest.counts()) {
    if (u < c) break;
    u -= c;
    ++w;
  }
  // Stage two: uniform member.
  const std::uint64_t z = rng.Below(forest.count(w)) + 1;
  return {w, z, forest.member(w, z)};
}

double PolyaMean(std::uint64_t i, std::uint64_t n) {
  Require(i > 1 && n >= i, "Polya mean needs n >= i > 1");
  return static_cast<double>(n) / static_cast<double>(i);
}

std::vector<std::uint64_t> LineageSizeCheckpoints(
    std::uint32_t i, LineageId j, std::span<const std::uint64_t> checkpoints,
    Rng& rng) {
  PlantedForest forest = PlantedForest::Init(i);
  Require(j >= 1 && j <= i, "lineage index out of range");
  std::vector<std::uint64_t> sizes;
  sizes.reserve(checkpoints.size());
  std::uint64_t previous = i;
  for (const std::uint64_t c : checkpoints) {
    Require(c >= previous, "checkpoints must be nondecreasing and >= i");
    forest.GrowTo(c, rng);
    sizes.push_back(forest.count(j));
    previous = c;
  }
  return sizes;
}

}  // namespace yulelab
