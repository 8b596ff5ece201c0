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

#include "oracles.hpp"
#include "yulelab/experiments.hpp"
#include "yulelab/stats.hpp"
#include "yulelab/yule.hpp"

using namespace yulelab;

namespace {

// Sum of the pmf over [m0, K] with the geometric-type tail bounded
// analytically; returns |1 - sum| less the tail bound (<= 0 is good).
double NormalizationGap(const YuleParams& p, std::uint64_t K) {
  double sum = 0.0;
  for (std::uint64_t k = p.m0; k <= K; ++k) sum += YulePmf(p, k);
  // Ratio of successive terms is (k/(k-m0+1)) q <= r for k > K.
  const double q = -std::expm1(-p.lambda * p.T);
  const double r = q * static_cast<double>(K + 1) / static_cast<double>(K + 2 - p.m0);
  const double tail = r < 1.0 ? YulePmf(p, K) * r / (1.0 - r) : 1.0;
  return std::abs(1.0 - sum) - tail;
}

}  // namespace

TEST_CASE("yule pmf examples") {
  const double ln2 = std::log(2.0);
  for (std::uint64_t k = 1; k <= 40; ++k) {
    CHECK(YulePmf({1.0, 1, ln2}, k) ==
          doctest::Approx(std::ldexp(1.0, -static_cast<int>(k))).epsilon(1e-13));
  }
  for (std::uint64_t m0 : {1u, 2u, 7u}) {
    CHECK(YulePmf({0.3, m0, 0.0}, m0) == 1.0);
    CHECK(YulePmf({0.3, m0, 0.0}, m0 + 1) == 0.0);
  }
  for (const double T : {0.1, 1.0, 3.7}) {
    CHECK(YulePmf({0.5, 2, T}, 2) == doctest::Approx(std::exp(-T)).epsilon(1e-14));
  }
  CHECK(YulePmf({0.5, 3, 1.0}, 2) == 0.0);
  CHECK_THROWS_AS(YulePmf({0.0, 1, 1.0}, 1), Error);
  CHECK_THROWS_AS(YulePmf({0.5, 0, 1.0}, 1), Error);
  CHECK_THROWS_AS(YulePmf({0.5, 1, -1.0}, 1), Error);
}

TEST_CASE("yule pmf normalizes on a grid") {
  for (const double lambda : {0.25, 0.5, 1.0}) {
    for (std::uint64_t m0 : {1u, 2u, 5u}) {
      for (const double T : {0.5, 1.0, 2.0, 4.0}) {
        CAPTURE(lambda);
        CAPTURE(m0);
        CAPTURE(T);
        CHECK(NormalizationGap({lambda, m0, T}, 20000) <= 1e-10);
      }
    }
  }
}

TEST_CASE("yule mean matches the pmf") {
  const YuleParams p{0.5, 3, 2.0};
  double mean = 0.0;
  for (std::uint64_t k = 3; k < 5000; ++k) mean += static_cast<double>(k) * YulePmf(p, k);
  CHECK(mean == doctest::Approx(YuleMean(p)).epsilon(1e-10));
}

TEST_CASE("yule simulator agrees with the pmf") {
  const ReplicaPlan plan{1000000, 41, 1};
  for (std::uint64_t m0 : {1u, 2u, 3u}) {
    for (const double T : {0.5, 1.0, 2.0}) {
      CAPTURE(m0);
      CAPTURE(T);
      const YuleParams p{0.5, m0, T};
      const auto draws = YuleReplicas(0.5, m0, T, {plan.replicas, plan.seed + m0 * 7 + static_cast<std::uint64_t>(T * 4), 1});
      Histogram<std::uint64_t> h;
      double sum = 0.0, sum2 = 0.0;
      for (const auto x : draws) {
        h.Add(x);
        sum += static_cast<double>(x);
        sum2 += static_cast<double>(x) * static_cast<double>(x);
      }
      Pmf<std::uint64_t> pmf;
      for (std::uint64_t k = m0; k < 2000; ++k) pmf[k] = YulePmf(p, k);
      // Nine cells: Bonferroni at 0.01 overall.
      CHECK(ChiSquareGof(h, pmf).p_value > 0.01 / 9.0);
      const double n = static_cast<double>(draws.size());
      const double mean = sum / n;
      const double se = std::sqrt((sum2 / n - mean * mean) / n);
      CHECK(std::abs(mean - YuleMean(p)) <= 3.0 * se);
    }
  }
}

TEST_CASE("yule sample edge cases") {
  Rng rng(1);
  CHECK(YuleSample({0.5, 4, 0.0}, rng) == 4);
  try {
    YuleSample({1.0, 1, 30.0}, rng, 1000);
    FAIL("cap not enforced");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kResourceExhausted);
  }
}

TEST_CASE("fdd examples") {
  const double ln2 = std::log(2.0);
  const std::vector<double> t1{ln2};
  const std::vector<std::uint64_t> k1{1};
  CHECK(YuleFddPmf(1, t1, k1) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));

  const std::vector<double> t2{0.7, 1.9};
  const std::vector<std::uint64_t> same{4, 4};
  const std::vector<std::uint64_t> just{4};
  const std::vector<double> first{0.7};
  CHECK(YuleFddPmf(2, t2, same) ==
        doctest::Approx(YuleFddPmf(2, first, just) * std::exp(-2.0 * 1.2)).epsilon(1e-13));

  for (std::uint64_t k = 2; k < 10; ++k) {
    const std::vector<std::uint64_t> kk{k};
    CHECK(YuleFddPmf(2, first, kk) == doctest::Approx(YulePmf({0.5, 2, 0.7}, k)).epsilon(1e-13));
  }

  const std::vector<double> back{1.0, 0.5};
  const std::vector<std::uint64_t> ks{2, 3};
  CHECK_THROWS_AS(YuleFddPmf(1, back, ks), Error);
  const std::vector<std::uint64_t> down{3, 2};
  CHECK_THROWS_AS(YuleFddPmf(1, t2, down), Error);
  const std::vector<std::uint64_t> low{1};
  CHECK_THROWS_AS(YuleFddPmf(2, first, low), Error);
}

TEST_CASE("fdd marginal consistency") {
  for (const auto& [ta, tb] : std::vector<std::pair<double, double>>{
           {0.3, 0.9}, {std::log(2.0), std::log(4.0)}, {1.0, 2.5}}) {
    for (std::uint64_t m0 : {1u, 3u}) {
      for (std::uint64_t k1 = m0; k1 < m0 + 8; ++k1) {
        double sum = 0.0;
        const std::vector<double> times{ta, tb};
        for (std::uint64_t k2 = k1; k2 < k1 + 4000; ++k2) {
          const std::vector<std::uint64_t> ks{k1, k2};
          sum += YuleFddPmf(m0, times, ks);
        }
        CHECK(std::abs(sum - YulePmf({0.5, m0, ta}, k1)) <= 1e-10);
      }
    }
  }
}

TEST_CASE("m-yule realizations") {
  Rng rng(4);
  const auto r0 = MYuleSimulate(1.0, 0.5, 3, 0.0, rng);
  REQUIRE(r0.genus_sizes.size() == 1);
  CHECK(r0.genus_sizes[0] == 3);
  CHECK(r0.genus_birth_times[0] == 0.0);
  CHECK(SampleGenusUniform(r0, rng) == 3);

  const double T = 2.0;
  const int reps = 40000;
  double sum = 0.0, sum2 = 0.0;
  for (int r = 0; r < reps; ++r) {
    Rng s = Rng::Stream(6, r);
    const auto real = MYuleSimulate(1.0, 0.5, 2, T, s);
    CHECK(real.genus_sizes.size() == real.genus_birth_times.size());
    for (std::size_t g = 0; g < real.genus_sizes.size(); ++g) {
      CHECK(real.genus_sizes[g] >= 2);
      if (g > 0) CHECK(real.genus_birth_times[g] >= real.genus_birth_times[g - 1]);
      CHECK(real.genus_birth_times[g] <= T);
    }
    const auto g = static_cast<double>(real.genus_sizes.size());
    sum += g;
    sum2 += g * g;
  }
  const double mean = sum / reps;
  const double se = std::sqrt((sum2 / reps - mean * mean) / reps);
  CHECK(std::abs(mean - std::exp(T)) <= 3.0 * se);
}

TEST_CASE("genus count law") {
  // Geometric with success e^{-T}.
  const double T = 1.5;
  Histogram<std::uint64_t> h;
  Rng rng(10);
  for (int r = 0; r < 200000; ++r) h.Add(SampleGenusCount(1.0, T, rng));
  Pmf<std::uint64_t> pmf;
  for (std::uint64_t g = 1; g < 400; ++g) pmf[g] = YulePmf({1.0, 1, T}, g);
  CHECK(ChiSquareGof(h, pmf).p_value > 0.01);
  CHECK(SampleGenusCount(1.0, 0.0, rng) == 1);
}

TEST_CASE("order statistic quantiles") {
  const double T = 3.0;
  CHECK(OrderStatQuantile(T, 0.0) == 0.0);
  CHECK(OrderStatQuantile(T, 1.0) == T);
  CHECK(OrderStatQuantile(std::log(2.0), 0.5) == doctest::Approx(std::log(1.5)).epsilon(1e-14));
  for (const double u : {0.1, 0.4, 0.77}) {
    CHECK(OrderStatCdf(T, OrderStatQuantile(T, u)) == doctest::Approx(u).epsilon(1e-13));
  }
  CHECK_THROWS_AS(OrderStatQuantile(0.0, 0.5), Error);
  CHECK_THROWS_AS(OrderStatQuantile(1.0, 1.5), Error);

  Rng rng(14);
  std::vector<double> xs;
  for (int r = 0; r < 50000; ++r) xs.push_back(OrderStatTimeSample(T, rng));
  const double d = KsDistance(xs, [&](double x) { return OrderStatCdf(T, x); });
  CHECK(KolmogorovQ(std::sqrt(50000.0) * d) > 0.01);
}

TEST_CASE("conditioned birth times match the order-statistic law") {
  const auto cmp = OrderStatExperiment(1.0, 2.0, 4, {60000, 8, 1});
  CHECK(cmp.matched_realizations > 3000);
  CHECK(cmp.conditioned_times.size() == 3 * cmp.matched_realizations);
  CHECK(cmp.ks.p_value > 0.01);
  // Also directly against the cdf.
  const double d = KsDistance(cmp.conditioned_times, [](double x) { return OrderStatCdf(2.0, x); });
  // The conditioned times come in blocks of three per realization but are
  // exchangeable i.i.d. given G, so the one-sample statistic still applies.
  CHECK(KolmogorovQ(std::sqrt(static_cast<double>(cmp.conditioned_times.size())) * d) > 0.01);
}

TEST_CASE("finite-horizon genus law against quadrature") {
  for (std::uint64_t m0 : {1u, 2u, 4u}) {
    for (const double T : {0.5, 2.0, 6.0, 12.0}) {
      for (std::uint64_t k = m0; k < m0 + 30; k += 3) {
        CAPTURE(m0);
        CAPTURE(T);
        CAPTURE(k);
        CHECK(std::abs(GenusSizePmfAtT(m0, T, k) - oracle::GenusLawByQuadrature(m0, T, k)) <=
              1e-10);
      }
    }
  }
  CHECK(GenusSizePmfAtT(3, 2.0, 2) == 0.0);
  CHECK_THROWS_AS(GenusSizePmfAtT(1, 0.0, 1), Error);
}

TEST_CASE("finite-horizon genus law normalizes and tends to the limit") {
  for (std::uint64_t m0 : {1u, 2u}) {
    for (const double T : {1.0, 4.0, 8.0}) {
      double sum = 0.0;
      const std::uint64_t K = 20000;
      for (std::uint64_t k = m0; k <= K; ++k) sum += GenusSizePmfAtT(m0, T, k);
      // The remainder is below the limit law's tail, 2m0(m0+1)/(2 K^2).
      const double tail = static_cast<double>(m0 * (m0 + 1)) / (static_cast<double>(K) * K);
      CHECK(std::abs(1.0 - sum) <= 1e-8 + tail);
    }
  }
  CHECK(GenusSizePmfAtT(1, 60.0, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(GenusSizePmfAtT(2, 60.0, 7) == doctest::Approx(LimitPmf(2, 7)).epsilon(1e-12));
}

TEST_CASE("limit pmf") {
  CHECK(LimitPmf(1, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(LimitPmf(3, 2) == 0.0);
  for (std::uint64_t m0 : {1u, 2u, 3u, 10u}) {
    // Telescoping: sum_{k>=K} 2 m0(m0+1)/(k(k+1)(k+2)) = m0(m0+1)/(K(K+1)).
    const std::uint64_t K = 100000;
    double sum = 0.0;
    for (std::uint64_t k = m0; k < K; ++k) sum += LimitPmf(m0, k);
    sum += static_cast<double>(m0 * (m0 + 1)) / (static_cast<double>(K) * (K + 1));
    CHECK(std::abs(sum - 1.0) <= 1e-10);
    const double big = 1e6;
    CHECK(LimitPmf(m0, 1000000) * big * big * big ==
          doctest::Approx(2.0 * m0 * (m0 + 1)).epsilon(1e-5));
  }
}

TEST_CASE("finite-horizon TV to the limit decreases in T") {
  const double tv4 = GenusLawTvToLimit(1, 4.0);
  const double tv8 = GenusLawTvToLimit(1, 8.0);
  const double tv12 = GenusLawTvToLimit(1, 12.0);
  CHECK(tv4 > tv8);
  CHECK(tv8 > tv12);
  CHECK(tv12 > 0.0);
}

TEST_CASE("exact genus sampler matches full realizations") {
  const double T = 2.5;
  const ReplicaPlan plan{400000, 3, 1};
  const auto full = UniformGenusSizeReplicas(1.0, 0.5, 1, T, true, plan);
  const auto fast = UniformGenusSizeReplicas(1.0, 0.5, 1, T, false, {plan.replicas, 4, 1});
  Histogram<std::uint64_t> a, b;
  for (const auto x : full) a.Add(x);
  for (const auto x : fast) b.Add(x);
  CHECK(ChiSquareHomogeneity(a, b).p_value > 0.01);
}

TEST_CASE("non-initial genera follow the finite-horizon law") {
  // A genus born at an order-statistic time has the finite-horizon law.
  const double T = 5.0;
  Rng rng(21);
  Histogram<std::uint64_t> h;
  for (int r = 0; r < 100000; ++r) {
    const double tau = OrderStatTimeSample(T, rng);
    h.Add(YuleSample({0.5, 1, T - tau}, rng));
  }
  Pmf<std::uint64_t> pmf;
  for (std::uint64_t k = 1; k < 5000; ++k) pmf[k] = GenusSizePmfAtT(1, T, k);
  CHECK(TvDistance(h.Normalized(), [&] {
          Pmf<std::uint64_t> q = pmf;
          double s = 0.0;
          for (const auto& [k, v] : q) s += v;
          q[5000] = std::max(0.0, 1.0 - s);
          return q;
        }()) <= 0.01);
  CHECK(ChiSquareGof(h, pmf).p_value > 0.001);
}
