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

#include "yulelab/yule.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <boost/math/special_functions/beta.hpp>

#include "yulelab/error.hpp"

namespace yulelab {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double LogChoose(std::uint64_t n, std::uint64_t r) {
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(r) + 1.0) -
         std::lgamma(static_cast<double>(n - r) + 1.0);
}

}  // namespace

void Validate(const YuleParams& params) {
  Require(params.lambda > 0.0 && std::isfinite(params.lambda),
          "lambda must be positive");
  Require(params.m0 >= 1, "m0 must be >= 1");
  Require(params.T >= 0.0 && std::isfinite(params.T), "T must be >= 0");
}

double YuleLogPmf(const YuleParams& params, std::uint64_t k) {
  Validate(params);
  if (k < params.m0) return kNegInf;
  const double rate_time = params.lambda * params.T;
  const auto m0 = static_cast<double>(params.m0);
  if (k == params.m0) return -m0 * rate_time;
  if (rate_time == 0.0) return kNegInf;
  return LogChoose(k - 1, params.m0 - 1) - m0 * rate_time +
         static_cast<double>(k - params.m0) * std::log(-std::expm1(-rate_time));
}

double YulePmf(const YuleParams& params, std::uint64_t k) {
  return std::exp(YuleLogPmf(params, k));
}

double YuleMean(const YuleParams& params) {
  Validate(params);
  return static_cast<double>(params.m0) * std::exp(params.lambda * params.T);
}

std::uint64_t YuleSample(const YuleParams& params, Rng& rng, std::uint64_t cap) {
  Validate(params);
  std::uint64_t k = params.m0;
  double t = 0.0;
  while (true) {
    t += rng.Exponential(static_cast<double>(k) * params.lambda);
    if (t > params.T) return k;
    if (++k > cap) {
      throw Error(ErrorCode::kResourceExhausted,
                  "Yule population exceeded the cap of " + std::to_string(cap));
    }
  }
}

double YuleFddPmf(std::uint64_t m0, std::span<const double> times,
                  std::span<const std::uint64_t> ks, double lambda) {
  Require(m0 >= 1, "m0 must be >= 1");
  Require(!times.empty() && times.size() == ks.size(),
          "times and counts must be nonempty and aligned");
  Require(lambda > 0.0, "lambda must be positive");
  double previous_time = 0.0;
  std::uint64_t previous_k = m0;
  double log_p = 0.0;
  for (std::size_t l = 0; l < times.size(); ++l) {
    Require(times[l] > previous_time || (l == 0 && times[l] >= 0.0),
            "times must be strictly increasing and nonnegative");
    Require(ks[l] >= previous_k, "counts must be nondecreasing and >= m0");
    log_p += YuleLogPmf({lambda, previous_k, times[l] - previous_time}, ks[l]);
    previous_time = times[l];
    previous_k = ks[l];
  }
  return std::exp(log_p);
}

MYuleRealization MYuleSimulate(double beta, double lambda, std::uint64_t m0,
                               double T, Rng& rng, std::uint64_t cap) {
  Require(beta > 0.0, "beta must be positive");
  Validate({lambda, m0, T});
  MYuleRealization r{beta, lambda, m0, T, {0.0}, {}};
  double t = 0.0;
  while (true) {
    t += rng.Exponential(static_cast<double>(r.genus_birth_times.size()) * beta);
    if (t > T) break;
    if (r.genus_birth_times.size() >= cap) {
      throw Error(ErrorCode::kResourceExhausted,
                  "genus count exceeded the cap of " + std::to_string(cap));
    }
    r.genus_birth_times.push_back(t);
  }
  r.genus_sizes.reserve(r.genus_birth_times.size());
  for (const double tau : r.genus_birth_times) {
    r.genus_sizes.push_back(YuleSample({lambda, m0, T - tau}, rng, cap));
  }
  return r;
}

std::uint64_t SampleGenusUniform(const MYuleRealization& realization, Rng& rng) {
  Require(!realization.genus_sizes.empty(), "realization has no genera");
  return realization.genus_sizes[rng.Below(realization.genus_sizes.size())];
}

std::uint64_t SampleGenusCount(double beta, double T, Rng& rng) {
  Require(beta > 0.0 && T >= 0.0, "genus count needs beta > 0 and T >= 0");
  if (T == 0.0) return 1;
  // P(G = g) = p (1-p)^{g-1}, p = e^{-beta T}.
  const double log_q = std::log(-std::expm1(-beta * T));
  if (log_q == 0.0) return 1;
  const double g = std::floor(std::log(rng.UniformOpen()) / log_q);
  Require(g < 9.0e18, "genus count overflow", ErrorCode::kResourceExhausted);
  return 1 + static_cast<std::uint64_t>(g);
}

std::uint64_t SampleUniformGenusSize(double beta, double lambda,
                                     std::uint64_t m0, double T, Rng& rng,
                                     std::uint64_t cap) {
  Validate({lambda, m0, T});
  const std::uint64_t genera = SampleGenusCount(beta, T, rng);
  const double tau = rng.Below(genera) == 0 ? 0.0 : OrderStatTimeSample(T, rng, beta);
  return YuleSample({lambda, m0, T - tau}, rng, cap);
}

double OrderStatCdf(double T, double tau, double beta) {
  Require(T > 0.0 && beta > 0.0, "order statistics need T > 0");
  if (tau <= 0.0) return 0.0;
  if (tau >= T) return 1.0;
  return std::expm1(beta * tau) / std::expm1(beta * T);
}

double OrderStatQuantile(double T, double u, double beta) {
  Require(T > 0.0 && beta > 0.0, "order statistics need T > 0");
  Require(u >= 0.0 && u <= 1.0, "quantile level must lie in [0, 1]");
  if (u == 1.0) return T;
  return std::log1p(u * std::expm1(beta * T)) / beta;
}

double OrderStatTimeSample(double T, Rng& rng, double beta) {
  return OrderStatQuantile(T, rng.Uniform(), beta);
}

double GenusSizePmfAtT(std::uint64_t m0, double T, std::uint64_t k) {
  Require(m0 >= 1, "m0 must be >= 1");
  Require(T > 0.0, "T must be positive");
  if (k < m0) return 0.0;
  // C(k-1,m0-1) B(k-m0+1, m0+2) = m0(m0+1)/(k(k+1)(k+2)), so the integral is
  // the limit pmf times a regularized incomplete Beta value.
  const double x = -std::expm1(-T / 2.0);
  const double a = static_cast<double>(k - m0 + 1);
  const double b = static_cast<double>(m0 + 2);
  const double regularized = boost::math::ibeta(a, b, x);
  return LimitPmf(m0, k) * regularized / -std::expm1(-T);
}

double LimitPmf(std::uint64_t m0, std::uint64_t k) {
  Require(m0 >= 1, "m0 must be >= 1");
  if (k < m0) return 0.0;
  const auto kd = static_cast<double>(k);
  const auto md = static_cast<double>(m0);
  return 2.0 * md * (md + 1.0) / (kd * (kd + 1.0) * (kd + 2.0));
}

}  // namespace yulelab
