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

// Degree of a fixed vertex sampled once per vertex-arrival window, the two
// bounding Markov kernels around it, and their monotone coupling.
//
// Window n is (n(m+1), (n+1)(m+1)]: v_{n+1} arrives and attaches m edges.
// For a fixed older vertex of degree k its increment over the window has an
// exact law (WindowIncrementPmf). The lower kernel p and upper kernel r are
//
//   p: +1 w.p. k/(2(n+1)) + c2/n^2,  +2 w.p. b2/n^2,  0 otherwise;
//   r: +1 w.p. k/(2n) + c1/n^2,      +m w.p. b1/n^2,  0 otherwise.
//
// Constants are not assumed: CertifyConstants scans an (k, n) grid against
// the exact law and only hands back constants with an empty violation list.

#ifndef YULELAB_COUPLING_HPP_
#define YULELAB_COUPLING_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "yulelab/error.hpp"
#include "yulelab/rng.hpp"

namespace yulelab {

// Mass of each increment 0, 1, ..., size()-1.
using IncrementLaw = std::vector<double>;

// Sum of masses at increments >= threshold.
double UpperTail(const IncrementLaw& law, std::size_t threshold);

// Largest increment j with u < UpperTail(law, j); u in [0, 1). Feeding the
// same u to two laws ordered in every upper tail gives ordered increments.
std::uint32_t UpperTailQuantile(const IncrementLaw& law, double u);

// Exact increment law of a vertex with degree k over window n. Requires
// m <= k <= m(n+1), the reachable range.
IncrementLaw WindowIncrementPmf(std::uint64_t k, std::uint64_t n,
                                std::uint32_t m);

// Law of d(v_i, i(m+1)) - m, the number of loops v_i draws onto itself.
IncrementLaw InitialLoopPmf(std::uint64_t i, std::uint32_t m);
// prod_{l=2}^{m+1} (1 - 1/(2(mn+l-1)-1)), the loop-free product quoted for
// the vertex v_{n+1}. Equals InitialLoopPmf(n+1, m)[0] only for m = 1.
double InitialLoopFreeProduct(std::uint64_t n, std::uint32_t m);
std::uint64_t SampleInitialDegree(std::uint64_t i, std::uint32_t m, Rng& rng);

struct KernelConstants {
  std::uint32_t m = 1;
  double b1 = 0.0;
  double b2 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  std::uint64_t n_min = 1;
  std::uint64_t k_max = 1;
};

// Both reject n < n_min, k > k_max, and states where a mass leaves [0, 1]
// (kOutOfRange).
IncrementLaw KernelP(std::uint64_t k, std::uint64_t n, const KernelConstants& c);
IncrementLaw KernelR(std::uint64_t k, std::uint64_t n, const KernelConstants& c);

struct Violation {
  std::uint64_t k = 0;
  std::uint64_t n = 0;
  std::string relation;
  double slack = 0.0;  // negative: by how much it fails
};

struct Certificate {
  KernelConstants constants;
  std::uint64_t n_cert = 0;
  // margin[n - n_min]: n^2 times the smallest slack of every checked relation
  // over the certified degrees at n.
  std::vector<double> margin;
  std::uint64_t margin_digest = 0;  // FNV-1a over the margin table
  std::uint64_t states_checked = 0;
  std::uint64_t violation_count = 0;
  // First violations found, in (n, k) order; empty for a returned certificate.
  std::vector<Violation> violations;
};

class CertificationFailure : public Error {
 public:
  CertificationFailure(const std::string& what, Certificate partial)
      : Error(ErrorCode::kCertificationFailed, what),
        certificate_(std::move(partial)) {}
  const Certificate& certificate() const { return certificate_; }

 private:
  Certificate certificate_;
};

// Candidate constants sized from the exact law over the grid
// n in [n_min, n_cert], k in [m, min(k_max, m(n+1))]. For m = 1 there is no
// multi-edge mass and b1 = b2 = 0.
KernelConstants ProposeConstants(std::uint32_t m, std::uint64_t n_min,
                                 std::uint64_t n_cert, std::uint64_t k_max);

// Exhaustive check of `constants` on the grid above. Relations checked at
// every state: both kernels are distributions; the one-edge and multi-edge
// bracket inequalities on the exact law; upper-tail ordering
// p <= exact <= r at every threshold; and monotonicity of each of the three
// families in the current degree. Also checks that the margin is
// nondecreasing over the last decade of n. Stops collecting after
// max_reported violations.
Certificate ScanCertificate(const KernelConstants& constants,
                            std::uint64_t n_cert,
                            std::size_t max_reported = 64,
                            unsigned workers = 1);

// ProposeConstants followed by ScanCertificate; throws CertificationFailure
// (carrying the violations) unless the scan is clean.
Certificate CertifyConstants(std::uint32_t m, std::uint64_t n_min,
                             std::uint64_t n_cert, std::uint64_t k_max,
                             unsigned workers = 1);

struct CoupledTriple {
  std::uint64_t start = 0;               // i
  std::vector<std::uint64_t> checkpoints;  // n = i, i+1, ...
  std::vector<std::uint64_t> lower;      // kernel p
  std::vector<std::uint64_t> mid;        // exact degree chain
  std::vector<std::uint64_t> upper;      // kernel r
};

class OrderingViolation : public Error {
 public:
  OrderingViolation(const std::string& what, CoupledTriple path)
      : Error(ErrorCode::kOrderingViolation, what), path_(std::move(path)) {}
  const CoupledTriple& path() const { return path_; }

 private:
  CoupledTriple path_;
};

// One coupled path over `windows` windows from n = i. All three start at one
// draw of v_i's initial degree; each window uses one shared uniform and the
// upper-tail quantile of each law. Throws OrderingViolation with the path so
// far when lower <= mid <= upper breaks.
CoupledTriple CoupledRun(std::uint32_t m, std::uint64_t i,
                         std::uint64_t windows, const KernelConstants& constants,
                         Rng& rng);

// T_i^x = sum_{n=i}^{i+x-1} 1/n.
double ScaledTime(std::uint64_t i, std::uint64_t x);
// sum_{n=i}^{i+y-1} 1/(n+1).
double ScaledTimeStar(std::uint64_t i, std::uint64_t y);
// |ScaledTime(i, x) - ln(1 + x/(i-1))| <= kScaledTimeErrorConstant / i.
inline constexpr double kScaledTimeErrorConstant = 1.0;

// floor(i w); the corresponding c(w) is w.
std::uint64_t ZDefault(std::uint64_t i, double w);

}  // namespace yulelab

#endif  // YULELAB_COUPLING_HPP_
