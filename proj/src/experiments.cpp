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

#include "yulelab/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "yulelab/parallel.hpp"
#include "yulelab/planted.hpp"
#include "yulelab/yule.hpp"

namespace yulelab {
namespace {

template <class Record, class Body>
std::vector<Record> RunReplicas(const ReplicaPlan& plan, Body&& body) {
  Require(plan.replicas >= 1, "replicas must be >= 1");
  std::vector<Record> records(plan.replicas);
  ParallelFor(plan.replicas, plan.workers,
              [&](std::uint64_t r) { records[r] = body(r); });
  return records;
}

void CheckGraphSize(std::uint32_t m, std::uint64_t n) {
  Validate(BAConfig{m, n, 0, false, kDefaultEdgeBudget});
}

}  // namespace

double TvToReference(const Histogram<std::uint64_t>& observed,
                     const std::function<double(std::uint64_t)>& pmf,
                     std::uint64_t k_min) {
  Require(observed.total > 0, "empty histogram");
  const std::uint64_t top = observed.bins.rbegin()->first;
  const auto total = static_cast<double>(observed.total);
  double l1 = 0.0;
  double covered = 0.0;
  for (const auto& [k, c] : observed.bins) {
    if (k < k_min) l1 += static_cast<double>(c) / total;
  }
  for (std::uint64_t k = k_min; k <= top; ++k) {
    const double p = pmf(k);
    covered += p;
    const auto it = observed.bins.find(k);
    const double e = it == observed.bins.end() ? 0.0 : static_cast<double>(it->second) / total;
    l1 += std::abs(e - p);
  }
  l1 += std::max(0.0, 1.0 - covered);
  return std::min(1.0, 0.5 * l1);
}

std::vector<std::vector<std::uint32_t>> DegreeSequenceReplicas(
    std::uint32_t m, std::uint64_t n, const ReplicaPlan& plan) {
  CheckGraphSize(m, n);
  return RunReplicas<std::vector<std::uint32_t>>(plan, [&](std::uint64_t r) {
    Rng rng = Rng::Stream(plan.seed, r);
    GraphState g(m);
    g.AdvanceToVertices(n, rng);
    return std::vector<std::uint32_t>(g.degrees().begin(), g.degrees().end());
  });
}

Histogram<std::uint64_t> SingleGraphDegreeHistogram(std::uint32_t m,
                                                    std::uint64_t n,
                                                    std::uint64_t seed) {
  const GraphState g = Grow(BAConfig{m, n, seed, false, kDefaultEdgeBudget});
  Histogram<std::uint64_t> h;
  for (const auto& [k, c] : ComputeDegreeHistogram(g).counts) h.Add(k, c);
  return h;
}

std::vector<std::uint64_t> UniformDegreeExperiment(std::uint32_t m,
                                                   std::uint64_t n,
                                                   const ReplicaPlan& plan) {
  CheckGraphSize(m, n);
  return RunReplicas<std::uint64_t>(plan, [&](std::uint64_t r) {
    Rng rng = Rng::Stream(plan.seed, r);
    GraphState g(m);
    g.AdvanceToVertices(n, rng);
    return g.degree(static_cast<VertexId>(rng.Below(n) + 1));
  });
}

std::vector<PlantedRecord> PlantedEquivalenceExperiment(std::uint32_t m,
                                                        std::uint32_t i,
                                                        std::uint64_t n,
                                                        const ReplicaPlan& plan) {
  Require(i > 1 && n >= i, "planted experiment needs n >= i > 1");
  CheckGraphSize(m, n);
  return RunReplicas<PlantedRecord>(plan, [&](std::uint64_t r) {
    Rng graph_rng = Rng::Stream(plan.seed, r, 0);
    Rng forest_rng = Rng::Stream(plan.seed, r, 1);
    GraphState g(m);
    g.AdvanceToVertices(n, graph_rng);
    PlantedForest forest = PlantedForest::Init(i);
    forest.GrowTo(n, forest_rng);
    const SampleOutcome s = TwoStageSample(forest, forest_rng);
    const auto direct = static_cast<VertexId>(forest_rng.Below(n) + 1);
    PlantedRecord rec;
    rec.lineage = s.lineage;
    rec.rank = s.rank;
    rec.planted_vertex = s.vertex;
    rec.planted_degree = g.degree(s.vertex);
    rec.direct_vertex = direct;
    rec.direct_degree = g.degree(direct);
    rec.first_lineage_size = forest.count(1);
    return rec;
  });
}

std::vector<std::uint64_t> FixedVertexChain(std::uint32_t m, std::uint64_t i,
                                            const std::vector<std::uint64_t>& checkpoints,
                                            Rng& rng) {
  Require(m >= 1 && i > 1, "fixed-vertex chain needs m >= 1 and i > 1");
  std::uint64_t degree = SampleInitialDegree(i, m, rng);
  std::uint64_t n = i;
  std::vector<std::uint64_t> trace;
  trace.reserve(checkpoints.size());
  for (const std::uint64_t target : checkpoints) {
    Require(target >= n, "checkpoints must be nondecreasing and >= i");
    for (; n < target; ++n) {
      for (std::uint32_t l = 2; l <= m + 1; ++l) {
        const std::uint64_t weight = 2 * (static_cast<std::uint64_t>(m) * n + l - 1) - 1;
        if (rng.Below(weight) < degree) ++degree;
      }
    }
    trace.push_back(degree);
  }
  return trace;
}

std::vector<std::vector<std::uint64_t>> FixedVertexExperiment(
    std::uint32_t m, std::uint64_t i, const std::vector<std::uint64_t>& checkpoints,
    TraceSource source, const ReplicaPlan& plan) {
  Require(!checkpoints.empty(), "need at least one checkpoint");
  Require(i > 1 && i <= 0xFFFFFFFFULL, "vertex index out of range");
  std::vector<std::uint64_t> times;
  for (const std::uint64_t c : checkpoints) times.push_back(c * (m + 1));
  if (source == TraceSource::kGraph) CheckGraphSize(m, checkpoints.back());
  return RunReplicas<std::vector<std::uint64_t>>(plan, [&](std::uint64_t r) {
    Rng rng = Rng::Stream(plan.seed, r);
    if (source == TraceSource::kChain) return FixedVertexChain(m, i, checkpoints, rng);
    return TraceVertexDegree(m, static_cast<VertexId>(i), times, rng);
  });
}

std::vector<CoupledRecord> CoupledExperiment(std::uint32_t m, std::uint64_t i,
                                             std::uint64_t windows,
                                             const KernelConstants& constants,
                                             const ReplicaPlan& plan) {
  return RunReplicas<CoupledRecord>(plan, [&](std::uint64_t r) {
    Rng rng = Rng::Stream(plan.seed, r);
    CoupledRecord rec;
    try {
      const CoupledTriple path = CoupledRun(m, i, windows, constants, rng);
      rec.lower = path.lower.back();
      rec.mid = path.mid.back();
      rec.upper = path.upper.back();
    } catch (const OrderingViolation& e) {
      rec.violated = true;
      rec.violation_n = e.path().checkpoints.back();
      rec.lower = e.path().lower.back();
      rec.mid = e.path().mid.back();
      rec.upper = e.path().upper.back();
    }
    return rec;
  });
}

std::vector<std::uint64_t> YuleReplicas(double lambda, std::uint64_t m0, double T,
                                        const ReplicaPlan& plan) {
  const YuleParams params{lambda, m0, T};
  Validate(params);
  return RunReplicas<std::uint64_t>(plan, [&](std::uint64_t r) {
    Rng rng = Rng::Stream(plan.seed, r);
    return YuleSample(params, rng);
  });
}

OrderStatComparison OrderStatExperiment(double beta, double T,
                                        std::uint64_t genus_count,
                                        const ReplicaPlan& plan) {
  Require(T > 0.0 && beta > 0.0, "order-statistics experiment needs T, beta > 0");
  Require(genus_count >= 2, "conditioning genus count must be >= 2");
  // Species sizes do not enter; a minimal species process keeps runs cheap.
  auto times = RunReplicas<std::vector<double>>(plan, [&](std::uint64_t r) {
    Rng rng = Rng::Stream(plan.seed, r, 0);
    const MYuleRealization realization = MYuleSimulate(beta, 1e-9, 1, T, rng);
    if (realization.genus_birth_times.size() != genus_count) return std::vector<double>{};
    return std::vector<double>(realization.genus_birth_times.begin() + 1,
                               realization.genus_birth_times.end());
  });
  OrderStatComparison out;
  for (const auto& t : times) {
    if (t.empty()) continue;
    ++out.matched_realizations;
    out.conditioned_times.insert(out.conditioned_times.end(), t.begin(), t.end());
  }
  Require(!out.conditioned_times.empty(),
          "no realization reached the conditioning genus count");
  Rng reference = Rng::Stream(plan.seed, 0, 1);
  out.reference_times.reserve(out.conditioned_times.size());
  for (std::size_t j = 0; j < out.conditioned_times.size(); ++j) {
    out.reference_times.push_back(OrderStatTimeSample(T, reference, beta));
  }
  out.ks = KsTwoSample(out.conditioned_times, out.reference_times);
  return out;
}

std::vector<std::uint64_t> UniformGenusSizeReplicas(double beta, double lambda,
                                                    std::uint64_t m0, double T,
                                                    bool full,
                                                    const ReplicaPlan& plan) {
  Validate(YuleParams{lambda, m0, T});
  Require(beta > 0.0, "beta must be positive");
  return RunReplicas<std::uint64_t>(plan, [&](std::uint64_t r) {
    Rng rng = Rng::Stream(plan.seed, r);
    if (full) return SampleGenusUniform(MYuleSimulate(beta, lambda, m0, T, rng), rng);
    return SampleUniformGenusSize(beta, lambda, m0, T, rng);
  });
}

double GenusLawTvToLimit(std::uint64_t m0, double T) {
  double l1 = 0.0;
  double finite_mass = 0.0;
  double limit_mass = 0.0;
  constexpr std::uint64_t kSpan = 20000;
  for (std::uint64_t k = m0; k < m0 + kSpan; ++k) {
    const double a = GenusSizePmfAtT(m0, T, k);
    const double b = LimitPmf(m0, k);
    finite_mass += a;
    limit_mass += b;
    l1 += std::abs(a - b);
  }
  // Mass beyond the tabulated range can only add |tail_a - tail_b| or more.
  l1 += std::abs((1.0 - finite_mass) - (1.0 - limit_mass));
  return 0.5 * l1;
}

double ConcentrationBound(std::uint32_t m, std::uint64_t n, double C) {
  Require(m >= 1 && n >= 1, "bound needs m, n >= 1");
  const auto nd = static_cast<double>(n);
  const double m1 = static_cast<double>(m) + 1.0;
  return C * std::sqrt(m1 * std::log(nd * m1) / nd);
}

double MaxDeviationFromLimit(const Histogram<std::uint64_t>& counts,
                             std::uint32_t m) {
  Require(counts.total > 0, "empty histogram");
  const auto n = static_cast<double>(counts.total);
  const std::uint64_t top = counts.bins.rbegin()->first + 1;
  double worst = 0.0;
  for (std::uint64_t k = 1; k <= top; ++k) {
    const auto it = counts.bins.find(k);
    const double share = it == counts.bins.end() ? 0.0 : static_cast<double>(it->second) / n;
    worst = std::max(worst, std::abs(share - LimitPmf(m, k)));
  }
  return worst;
}

std::vector<ConcentrationReport> ConcentrationCheck(std::uint32_t m,
                                                    std::uint64_t n, double C,
                                                    const ReplicaPlan& plan) {
  Require(C > static_cast<double>(m) * std::sqrt(8.0),
          "C must exceed m sqrt(8) = " + std::to_string(m * std::sqrt(8.0)));
  CheckGraphSize(m, n);
  const double bound = ConcentrationBound(m, n, C);
  return RunReplicas<ConcentrationReport>(plan, [&](std::uint64_t r) {
    Rng rng = Rng::Stream(plan.seed, r);
    GraphState g(m);
    g.AdvanceToVertices(n, rng);
    Histogram<std::uint64_t> h;
    for (const std::uint32_t d : g.degrees()) h.Add(d);
    ConcentrationReport rep{m, n, C, bound, MaxDeviationFromLimit(h, m), false};
    rep.violated = rep.max_dev >= bound;
    return rep;
  });
}

}  // namespace yulelab
