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

// Replicated Monte-Carlo experiments.
//
// Replica r always draws from Rng::Stream(seed, r, lane), and every
// experiment returns its per-replica records in replica order, so results
// are the same for any worker count. Reductions run over those records.

#ifndef YULELAB_EXPERIMENTS_HPP_
#define YULELAB_EXPERIMENTS_HPP_

#include <cstdint>
#include <functional>
#include <vector>

#include "yulelab/ba_graph.hpp"
#include "yulelab/coupling.hpp"
#include "yulelab/planted.hpp"
#include "yulelab/stats.hpp"

namespace yulelab {

struct ReplicaPlan {
  std::uint64_t replicas = 1;
  std::uint64_t seed = 0;
  unsigned workers = 1;  // 0: DefaultWorkers()
};

// TV between a histogram on the integers and a reference pmf with support
// starting at k_min. Reference mass beyond the largest observed value counts
// as unmatched.
double TvToReference(const Histogram<std::uint64_t>& observed,
                     const std::function<double(std::uint64_t)>& pmf,
                     std::uint64_t k_min);

// Degree sequences of independent graphs with n complete vertices.
std::vector<std::vector<std::uint32_t>> DegreeSequenceReplicas(
    std::uint32_t m, std::uint64_t n, const ReplicaPlan& plan);

// Histogram of N_{k,t} for one graph grown from `seed`.
Histogram<std::uint64_t> SingleGraphDegreeHistogram(std::uint32_t m,
                                                    std::uint64_t n,
                                                    std::uint64_t seed);

// Degree of one uniformly chosen vertex per independent graph.
std::vector<std::uint64_t> UniformDegreeExperiment(std::uint32_t m,
                                                   std::uint64_t n,
                                                   const ReplicaPlan& plan);

struct PlantedRecord {
  LineageId lineage = 0;  // W
  std::uint64_t rank = 0;  // Z
  VertexId planted_vertex = 0;
  std::uint64_t planted_degree = 0;
  VertexId direct_vertex = 0;
  std::uint64_t direct_degree = 0;
  std::uint64_t first_lineage_size = 0;  // b(v_1) at n
};

// Graph on lane 0, forest and both samples on lane 1 (shared arrival clock,
// separate streams).
std::vector<PlantedRecord> PlantedEquivalenceExperiment(std::uint32_t m,
                                                        std::uint32_t i,
                                                        std::uint64_t n,
                                                        const ReplicaPlan& plan);

// Degree of v_i at n = checkpoints[0], checkpoints[1], ... (vertex counts,
// nondecreasing, >= i), either from the full graph or from the exact
// per-window chain of one vertex. Both have the same law.
enum class TraceSource { kChain, kGraph };

std::vector<std::uint64_t> FixedVertexChain(std::uint32_t m, std::uint64_t i,
                                            const std::vector<std::uint64_t>& checkpoints,
                                            Rng& rng);

std::vector<std::vector<std::uint64_t>> FixedVertexExperiment(
    std::uint32_t m, std::uint64_t i, const std::vector<std::uint64_t>& checkpoints,
    TraceSource source, const ReplicaPlan& plan);

struct CoupledRecord {
  bool violated = false;
  std::uint64_t violation_n = 0;  // first n with broken order
  std::uint64_t lower = 0;        // values at the end (or at the violation)
  std::uint64_t mid = 0;
  std::uint64_t upper = 0;
};

std::vector<CoupledRecord> CoupledExperiment(std::uint32_t m, std::uint64_t i,
                                             std::uint64_t windows,
                                             const KernelConstants& constants,
                                             const ReplicaPlan& plan);

std::vector<std::uint64_t> YuleReplicas(double lambda, std::uint64_t m0, double T,
                                        const ReplicaPlan& plan);

struct OrderStatComparison {
  std::uint64_t matched_realizations = 0;
  std::vector<double> conditioned_times;  // non-initial births, G = genus_count
  std::vector<double> reference_times;    // i.i.d. inverse-cdf draws
  KsResult ks;
};

// Realizations come from MYuleSimulate on lane 0; the reference sample has
// the same size and uses lane 1.
OrderStatComparison OrderStatExperiment(double beta, double T,
                                        std::uint64_t genus_count,
                                        const ReplicaPlan& plan);

// Size of a uniformly chosen genus. `full` materializes every realization.
std::vector<std::uint64_t> UniformGenusSizeReplicas(double beta, double lambda,
                                                    std::uint64_t m0, double T,
                                                    bool full,
                                                    const ReplicaPlan& plan);

// TV between GenusSizePmfAtT(m0, T, .) and LimitPmf(m0, .).
double GenusLawTvToLimit(std::uint64_t m0, double T);

struct ConcentrationReport {
  std::uint32_t m = 1;
  std::uint64_t n = 0;
  double C = 0.0;
  double bound = 0.0;
  double max_dev = 0.0;
  bool violated = false;
};

// C sqrt((m+1) ln(n(m+1)) / n).
double ConcentrationBound(std::uint32_t m, std::uint64_t n, double C);

// max_k |N_{k,t}/n - LimitPmf(m, k)| over all k >= 1.
double MaxDeviationFromLimit(const Histogram<std::uint64_t>& counts,
                             std::uint32_t m);

// One graph per replica. Rejects C <= m sqrt(8).
std::vector<ConcentrationReport> ConcentrationCheck(std::uint32_t m,
                                                    std::uint64_t n, double C,
                                                    const ReplicaPlan& plan);

}  // namespace yulelab

#endif  // YULELAB_EXPERIMENTS_HPP_
