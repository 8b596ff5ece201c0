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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "yulelab/experiments.hpp"
#include "yulelab/yule.hpp"

using namespace yulelab;

TEST_CASE("uniform degree, n=1 and n=2") {
  for (const auto d : UniformDegreeExperiment(1, 1, {200, 1, 1})) CHECK(d == 2);
  std::vector<double> counts(3, 0.0);
  for (const auto d : UniformDegreeExperiment(1, 2, {60000, 2, 1})) counts[d - 1] += 1.0;
  CHECK(ChiSquareGof(counts, {1.0 / 3, 1.0 / 3, 1.0 / 3}).p_value > 0.01);
}

TEST_CASE("single-graph TV to the limit law shrinks with n") {
  for (std::uint32_t m : {1u, 2u, 3u}) {
    auto pmf = [m](std::uint64_t k) { return LimitPmf(m, k); };
    const double small = TvToReference(SingleGraphDegreeHistogram(m, 20000, 5), pmf, m);
    const double large = TvToReference(SingleGraphDegreeHistogram(m, 200000, 5), pmf, m);
    CAPTURE(m);
    CHECK(large < small);
    CHECK(large <= 0.01);
  }
}

TEST_CASE("tv to reference") {
  Histogram<std::uint64_t> h;
  h.Add(1, 1);
  h.Add(2, 1);
  // Reference puts all mass on 1.
  CHECK(TvToReference(h, [](std::uint64_t k) { return k == 1 ? 1.0 : 0.0; }, 1) ==
        doctest::Approx(0.5));
  // Observations below k_min count fully.
  CHECK(TvToReference(h, [](std::uint64_t k) { return k == 2 ? 1.0 : 0.0; }, 2) ==
        doctest::Approx(0.5));
  // Reference mass beyond the observed range counts too.
  CHECK(TvToReference(h, [](std::uint64_t k) { return std::ldexp(1.0, -static_cast<int>(k)); },
                      1) == doctest::Approx(0.25));
}

TEST_CASE("concentration bound and argument checks") {
  CHECK(ConcentrationBound(1, 10000, 3.0) ==
        doctest::Approx(3.0 * std::sqrt(2.0 * std::log(20000.0) / 1e4)).epsilon(1e-14));
  CHECK(ConcentrationBound(1, 10000, 3.0) == doctest::Approx(0.1333).epsilon(1e-3));
  CHECK_THROWS_AS(ConcentrationCheck(1, 1000, 2.8, {2, 1, 1}), Error);
  CHECK_THROWS_AS(ConcentrationCheck(2, 1000, 5.0, {2, 1, 1}), Error);
  const auto reps = ConcentrationCheck(1, 2000, 3.0, {20, 3, 1});
  for (const auto& r : reps) {
    CHECK(r.bound > 0.0);
    CHECK(r.violated == (r.max_dev >= r.bound));
  }
}

TEST_CASE("max deviation from the limit") {
  Histogram<std::uint64_t> h;
  h.Add(1, 2);
  h.Add(2, 1);
  // |2/3 - 2/3|, |1/3 - 1/6|, |0 - 1/15| -> 1/6.
  CHECK(MaxDeviationFromLimit(h, 1) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("replica records do not depend on the worker count") {
  const auto a = DegreeSequenceReplicas(2, 60, {64, 9, 1});
  const auto b = DegreeSequenceReplicas(2, 60, {64, 9, 8});
  CHECK(a == b);
  const auto pa = PlantedEquivalenceExperiment(1, 5, 50, {300, 4, 1});
  const auto pb = PlantedEquivalenceExperiment(1, 5, 50, {300, 4, 8});
  REQUIRE(pa.size() == pb.size());
  for (std::size_t r = 0; r < pa.size(); ++r) {
    CHECK(pa[r].planted_vertex == pb[r].planted_vertex);
    CHECK(pa[r].direct_degree == pb[r].direct_degree);
  }
  const auto ya = YuleReplicas(0.5, 1, 2.0, {500, 1, 1});
  const auto yb = YuleReplicas(0.5, 1, 2.0, {500, 1, 8});
  CHECK(ya == yb);
}

TEST_CASE("planted experiment records are consistent") {
  const auto records = PlantedEquivalenceExperiment(1, 10, 200, {20000, 3, 1});
  std::vector<double> w(10, 0.0);
  Histogram<std::uint64_t> planted, direct;
  for (const auto& r : records) {
    CHECK(r.lineage >= 1);
    CHECK(r.lineage <= 10);
    CHECK(r.rank >= 1);
    CHECK(r.planted_vertex >= 1);
    CHECK(r.planted_vertex <= 200);
    w[r.lineage - 1] += 1.0;
    planted.Add(r.planted_degree);
    direct.Add(r.direct_degree);
  }
  CHECK(ChiSquareGof(w, std::vector<double>(10, 0.1)).p_value > 0.01);
  CHECK(ChiSquareHomogeneity(planted, direct).p_value > 0.01);
}

TEST_CASE("fixed-vertex chain matches the graph") {
  const std::vector<std::uint64_t> cps{30, 60};
  for (std::uint32_t m : {1u, 2u}) {
    const auto chain = FixedVertexExperiment(m, 30, cps, TraceSource::kChain, {30000, 1, 1});
    const auto graph = FixedVertexExperiment(m, 30, cps, TraceSource::kGraph, {30000, 2, 1});
    for (std::size_t c = 0; c < cps.size(); ++c) {
      Histogram<std::uint64_t> a, b;
      for (const auto& t : chain) a.Add(t[c]);
      for (const auto& t : graph) b.Add(t[c]);
      CAPTURE(m);
      CAPTURE(c);
      CHECK(ChiSquareHomogeneity(a, b).p_value > 0.01);
    }
    // The joint law as well.
    Histogram<std::uint64_t> ja, jb;
    for (const auto& t : chain) ja.Add(t[0] * 1000 + t[1]);
    for (const auto& t : graph) jb.Add(t[0] * 1000 + t[1]);
    CHECK(ChiSquareHomogeneity(ja, jb).p_value > 0.01);
  }
}

TEST_CASE("fixed-vertex chain approaches the Yule law") {
  // v_i at n = 2i, m = 1: degree ~ Yule(1/2, 1, ln 2).
  const std::vector<std::uint64_t> cps{1000};
  const auto traces = FixedVertexExperiment(1, 500, cps, TraceSource::kChain, {20000, 6, 1});
  Histogram<std::uint64_t> h;
  for (const auto& t : traces) h.Add(t[0]);
  const double tv =
      TvToReference(h, [](std::uint64_t k) { return YulePmf({0.5, 1, std::log(2.0)}, k); }, 1);
  CHECK(tv <= 0.03);
}
