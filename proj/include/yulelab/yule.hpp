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

// Yule processes and the two-level (genus/species) m-Yule model.
//
// A Yule process with intensity lambda started from m0 individuals has
//   P(N(T) = k) = C(k-1, m0-1) e^{-m0 lambda T} (1 - e^{-lambda T})^{k-m0}.
// Simulators are event driven: while the population is k the next birth is
// Exp(k lambda) away. All pmfs work in log space.

#ifndef YULELAB_YULE_HPP_
#define YULELAB_YULE_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "yulelab/rng.hpp"

namespace yulelab {

inline constexpr std::uint64_t kDefaultPopulationCap = 100'000'000ULL;

struct YuleParams {
  double lambda = 0.5;
  std::uint64_t m0 = 1;
  double T = 0.0;
};

void Validate(const YuleParams& params);

double YuleLogPmf(const YuleParams& params, std::uint64_t k);
// Zero for k < m0.
double YulePmf(const YuleParams& params, std::uint64_t k);
double YuleMean(const YuleParams& params);

// Population at time T. Throws kResourceExhausted past `cap`.
std::uint64_t YuleSample(const YuleParams& params, Rng& rng,
                         std::uint64_t cap = kDefaultPopulationCap);

// Joint law P(N(T_1) = k_1, ..., N(T_b) = k_b) of a Yule process from m0.
// Times strictly increasing and nonnegative, counts nondecreasing with
// k_1 >= m0. The increments are independent Yule blocks, so the result is
// the product of YulePmf(lambda, k_{l-1}, T_l - T_{l-1}, k_l) with T_0 = 0,
// k_0 = m0. lambda = 1/2 is the preferential-attachment case.
double YuleFddPmf(std::uint64_t m0, std::span<const double> times,
                  std::span<const std::uint64_t> ks, double lambda = 0.5);

struct MYuleRealization {
  double beta = 1.0;
  double lambda = 0.5;
  std::uint64_t m0 = 1;
  double T = 0.0;
  std::vector<double> genus_birth_times;  // sorted, first is 0
  std::vector<std::uint64_t> genus_sizes;
};

// Genera arrive as a Yule(beta) process from one genus at time 0; the genus
// born at tau carries an independent Yule(lambda, m0) run for T - tau.
MYuleRealization MYuleSimulate(double beta, double lambda, std::uint64_t m0,
                               double T, Rng& rng,
                               std::uint64_t cap = kDefaultPopulationCap);

// Size of a uniformly chosen genus of a realization.
std::uint64_t SampleGenusUniform(const MYuleRealization& realization, Rng& rng);

// Size of a uniformly chosen genus at time T without materializing the
// realization. Given G genera at T, the G-1 non-initial birth times are
// i.i.d. with cdf (e^{beta tau} - 1)/(e^{beta T} - 1); G itself is geometric
// with success probability e^{-beta T}. The chosen genus is the initial one
// with probability 1/G, otherwise its birth time is one such draw.
std::uint64_t SampleUniformGenusSize(double beta, double lambda,
                                     std::uint64_t m0, double T, Rng& rng,
                                     std::uint64_t cap = kDefaultPopulationCap);

// Number of genera at T: Yule(beta) from one genus, sampled by inversion.
std::uint64_t SampleGenusCount(double beta, double T, Rng& rng);

// Birth-time law of a non-initial genus given the genus count.
double OrderStatCdf(double T, double tau, double beta = 1.0);
// Inverse cdf: ln(1 + u(e^{beta T} - 1)) / beta.
double OrderStatQuantile(double T, double u, double beta = 1.0);
double OrderStatTimeSample(double T, Rng& rng, double beta = 1.0);

// Finite-horizon size law of a non-initial genus for lambda = 1/2, beta = 1:
//   2/(1-e^{-T}) * int_0^{1-e^{-T/2}} C(k-1,m0-1) z^{k-m0} (1-z)^{m0+1} dz,
// evaluated through the regularized incomplete Beta function.
double GenusSizePmfAtT(std::uint64_t m0, double T, std::uint64_t k);

// T -> infinity limit m0(m0+1) B(k,3) = 2 m0 (m0+1) / (k(k+1)(k+2)), k >= m0.
double LimitPmf(std::uint64_t m0, std::uint64_t k);

}  // namespace yulelab

#endif  // YULELAB_YULE_HPP_
