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

#include "yulelab/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>

#include "yulelab/parallel.hpp"

namespace yulelab {
namespace {

// Rounding allowance for relations that may hold with equality.
constexpr double kTailTolerance = 1e-15;

double Sq(std::uint64_t n) {
  const auto d = static_cast<double>(n);
  return d * d;
}

void ExactLawInto(std::uint64_t k, std::uint64_t n, std::uint32_t m,
                  IncrementLaw& law) {
  law.assign(m + 1, 0.0);
  law[0] = 1.0;
  const auto kd = static_cast<double>(k);
  for (std::uint32_t l = 2; l <= m + 1; ++l) {
    const double denominator =
        2.0 * static_cast<double>(static_cast<std::uint64_t>(m) * n + l - 1) - 1.0;
    // Increments reached so far are 0..l-2; sweep downwards in place.
    for (std::uint32_t j = l - 1; j-- > 0;) {
      const double success = (kd + j) / denominator;
      law[j + 1] += law[j] * success;
      law[j] *= 1.0 - success;
    }
  }
}

void KernelPInto(std::uint64_t k, std::uint64_t n, const KernelConstants& c,
                 IncrementLaw& law) {
  const double n2 = Sq(n);
  law.assign(3, 0.0);
  law[1] = static_cast<double>(k) / (2.0 * static_cast<double>(n + 1)) + c.c2 / n2;
  law[2] = c.b2 / n2;
  law[0] = 1.0 - law[1] - law[2];
}

void KernelRInto(std::uint64_t k, std::uint64_t n, const KernelConstants& c,
                 IncrementLaw& law) {
  const double n2 = Sq(n);
  law.assign(c.m + 1, 0.0);
  law[1] = static_cast<double>(k) / (2.0 * static_cast<double>(n)) + c.c1 / n2;
  law[c.m] += c.b1 / n2;
  law[0] = 1.0 - law[1] - (c.m > 1 ? law[c.m] : 0.0);
}

void CheckKernelDomain(std::uint64_t k, std::uint64_t n, const KernelConstants& c,
                       const IncrementLaw& law, const char* name) {
  Require(n >= c.n_min && n >= 1,
          std::string(name) + ": n = " + std::to_string(n) +
              " is below the certified n_min = " + std::to_string(c.n_min),
          ErrorCode::kOutOfRange);
  Require(k <= c.k_max,
          std::string(name) + ": k = " + std::to_string(k) +
              " exceeds the certified k_max = " + std::to_string(c.k_max),
          ErrorCode::kOutOfRange);
  for (const double mass : law) {
    Require(mass >= 0.0 && mass <= 1.0,
            std::string(name) + ": masses leave [0, 1] at k = " +
                std::to_string(k) + ", n = " + std::to_string(n),
            ErrorCode::kOutOfRange);
  }
}

}  // namespace

double UpperTail(const IncrementLaw& law, std::size_t threshold) {
  double tail = 0.0;
  for (std::size_t j = law.size(); j-- > threshold;) tail += law[j];
  return tail;
}

std::uint32_t UpperTailQuantile(const IncrementLaw& law, double u) {
  double tail = 0.0;
  for (std::size_t j = law.size(); j-- > 1;) {
    tail += law[j];
    if (u < tail) return static_cast<std::uint32_t>(j);
  }
  return 0;
}

IncrementLaw WindowIncrementPmf(std::uint64_t k, std::uint64_t n,
                                std::uint32_t m) {
  Require(m >= 1 && n >= 1, "window law needs m >= 1 and n >= 1");
  Require(k >= m && k <= static_cast<std::uint64_t>(m) * (n + 1),
          "degree " + std::to_string(k) + " is not reachable at n = " +
              std::to_string(n),
          ErrorCode::kOutOfRange);
  IncrementLaw law;
  ExactLawInto(k, n, m, law);
  return law;
}

IncrementLaw InitialLoopPmf(std::uint64_t i, std::uint32_t m) {
  Require(m >= 1 && i >= 1, "initial law needs m >= 1 and i >= 1");
  const std::uint64_t n = i - 1;  // v_i is v_{n+1}
  IncrementLaw loops(m + 1, 0.0);
  loops[0] = 1.0;
  for (std::uint32_t l = 2; l <= m + 1; ++l) {
    const double denominator =
        2.0 * static_cast<double>(static_cast<std::uint64_t>(m) * n + l - 1) - 1.0;
    const std::uint32_t placed = l - 2;  // edges already out of v_i
    for (std::uint32_t j = l - 1; j-- > 0;) {
      // Current degree placed + j (loops count twice), plus one.
      const double loop = (placed + j + 1.0) / denominator;
      loops[j + 1] += loops[j] * loop;
      loops[j] *= 1.0 - loop;
    }
  }
  return loops;
}

double InitialLoopFreeProduct(std::uint64_t n, std::uint32_t m) {
  Require(m >= 1, "m must be >= 1");
  double product = 1.0;
  for (std::uint32_t l = 2; l <= m + 1; ++l) {
    product *= 1.0 - 1.0 / (2.0 * static_cast<double>(
                                      static_cast<std::uint64_t>(m) * n + l - 1) -
                            1.0);
  }
  return product;
}

std::uint64_t SampleInitialDegree(std::uint64_t i, std::uint32_t m, Rng& rng) {
  Require(m >= 1 && i >= 1, "initial degree needs m >= 1 and i >= 1");
  const std::uint64_t n = i - 1;
  std::uint64_t degree = 0;
  for (std::uint32_t l = 2; l <= m + 1; ++l) {
    const std::uint64_t weight = 2 * (static_cast<std::uint64_t>(m) * n + l - 1) - 1;
    degree += rng.Below(weight) < degree + 1 ? 2 : 1;
  }
  return degree;
}

IncrementLaw KernelP(std::uint64_t k, std::uint64_t n, const KernelConstants& c) {
  IncrementLaw law;
  KernelPInto(k, n, c, law);
  CheckKernelDomain(k, n, c, law, "kernel p");
  return law;
}

IncrementLaw KernelR(std::uint64_t k, std::uint64_t n, const KernelConstants& c) {
  Require(c.m >= 1, "kernel r needs m >= 1");
  IncrementLaw law;
  KernelRInto(k, n, c, law);
  CheckKernelDomain(k, n, c, law, "kernel r");
  return law;
}

namespace {

std::uint64_t GridTopDegree(std::uint32_t m, std::uint64_t n, std::uint64_t k_max) {
  return std::min<std::uint64_t>(k_max, static_cast<std::uint64_t>(m) * (n + 1));
}

void CheckGrid(std::uint32_t m, std::uint64_t n_min, std::uint64_t n_cert,
               std::uint64_t k_max) {
  Require(m >= 1, "m must be >= 1");
  Require(n_min >= 1 && n_cert >= n_min, "need 1 <= n_min <= n_cert");
  Require(k_max >= m, "k_max must be >= m");
}

}  // namespace

KernelConstants ProposeConstants(std::uint32_t m, std::uint64_t n_min,
                                 std::uint64_t n_cert, std::uint64_t k_max) {
  CheckGrid(m, n_min, n_cert, k_max);
  KernelConstants c{m, 0.0, 0.0, 1e-6, 1e-6, n_min, k_max};
  if (m == 1) return c;

  // Scaled by n^2: the smallest multi-edge mass, the largest multi-edge tail,
  // the smallest one-edge excess over k/(2(n+1)) and the largest one-edge
  // excess over k/(2n).
  double min_multi = std::numeric_limits<double>::infinity();
  double max_multi_tail = 0.0;
  double min_lower_excess = std::numeric_limits<double>::infinity();
  double max_upper_excess = 0.0;
  IncrementLaw law;
  for (std::uint64_t n = n_min; n <= n_cert; ++n) {
    const double n2 = Sq(n);
    for (std::uint64_t k = m; k <= GridTopDegree(m, n, k_max); ++k) {
      ExactLawInto(k, n, m, law);
      const double kd = static_cast<double>(k);
      for (std::uint32_t l = 2; l <= m; ++l) min_multi = std::min(min_multi, n2 * law[l]);
      max_multi_tail = std::max(max_multi_tail, n2 * UpperTail(law, 2));
      const double one_edge = std::min(law[1], UpperTail(law, 1));
      min_lower_excess = std::min(
          min_lower_excess, n2 * (one_edge - kd / (2.0 * static_cast<double>(n + 1))));
      max_upper_excess = std::max(
          max_upper_excess, n2 * (law[1] - kd / (2.0 * static_cast<double>(n))));
    }
  }
  c.b2 = 0.5 * min_multi;
  c.b1 = 1.01 * max_multi_tail;
  c.c1 = std::max(1e-6, 1.01 * max_upper_excess);
  // Falls back to a token positive value when no c2 > 0 can work; the scan
  // then reports where.
  const double room = min_lower_excess - c.b2;
  c.c2 = room > 0.0 ? 0.5 * room : 1e-6;
  return c;
}

namespace {

struct RowResult {
  double margin = std::numeric_limits<double>::infinity();
  std::uint64_t states = 0;
  std::uint64_t violation_count = 0;
  std::vector<Violation> violations;
};

class RowChecker {
 public:
  RowChecker(const KernelConstants& c, std::uint64_t n, std::size_t max_reported,
             RowResult& out)
      : c_(c), n_(n), n2_(Sq(n)), max_reported_(max_reported), out_(out) {}

  // Strict relations need a positive slack, the others a nonnegative one. A
  // relation whose two sides are both zero carries no margin information.
  void Check(std::uint64_t k, const char* relation, double larger, double smaller,
             bool strict) {
    const double slack = larger - smaller;
    const bool ok = strict ? slack > 0.0 : slack >= -kTailTolerance;
    if (larger != 0.0 || smaller != 0.0) {
      out_.margin = std::min(out_.margin, n2_ * slack);
    }
    if (!ok) {
      ++out_.violation_count;
      if (out_.violations.size() < max_reported_) {
        out_.violations.push_back({k, n_, relation, slack});
      }
    }
  }

  // Family monotone in the degree: K(k, >= v) <= K(k+1, >= v) for all v.
  void CheckMonotone(std::uint64_t k, const char* relation, const IncrementLaw& at_k,
                     const IncrementLaw& at_next) {
    for (std::size_t j = 1; j <= at_k.size(); ++j) {
      Check(k, relation, UpperTail(at_next, j - 1), UpperTail(at_k, j), false);
    }
  }

  double n2() const { return n2_; }

 private:
  const KernelConstants& c_;
  std::uint64_t n_;
  double n2_;
  std::size_t max_reported_;
  RowResult& out_;
};

void ScanRow(const KernelConstants& c, std::uint64_t n, std::size_t max_reported,
             RowResult& out) {
  RowChecker check(c, n, max_reported, out);
  const std::uint32_t m = c.m;
  const std::uint64_t top = GridTopDegree(m, n, c.k_max);
  const double nd = static_cast<double>(n);
  const std::size_t thresholds = std::max<std::size_t>(m, 2);
  IncrementLaw exact, p, r, next_exact, next_p, next_r;
  ExactLawInto(m, n, m, exact);
  KernelPInto(m, n, c, p);
  KernelRInto(m, n, c, r);
  for (std::uint64_t k = m; k <= top; ++k) {
    ++out.states;
    const double kd = static_cast<double>(k);
    check.Check(k, "p-distribution", p[0], 0.0, false);
    check.Check(k, "r-distribution", r[0], 0.0, false);
    check.Check(k, "one-edge-lower", exact[1], kd / (2.0 * (nd + 1.0)) + c.c2 / check.n2(), true);
    check.Check(k, "one-edge-upper", kd / (2.0 * nd) + c.c1 / check.n2(), exact[1], true);
    for (std::uint32_t l = 2; l <= m; ++l) {
      check.Check(k, "multi-edge-lower", exact[l], c.b2 / check.n2(), true);
      check.Check(k, "multi-edge-upper", c.b1 / check.n2(), exact[l], true);
    }
    for (std::size_t j = 1; j <= thresholds; ++j) {
      check.Check(k, "tail-p-le-exact", UpperTail(exact, j), UpperTail(p, j), false);
      check.Check(k, "tail-exact-le-r", UpperTail(r, j), UpperTail(exact, j), false);
    }
    if (k < top) {
      ExactLawInto(k + 1, n, m, next_exact);
      KernelPInto(k + 1, n, c, next_p);
      KernelRInto(k + 1, n, c, next_r);
      check.CheckMonotone(k, "p-monotone", p, next_p);
      check.CheckMonotone(k, "exact-monotone", exact, next_exact);
      check.CheckMonotone(k, "r-monotone", r, next_r);
      exact.swap(next_exact);
      p.swap(next_p);
      r.swap(next_r);
    }
  }
}

std::uint64_t Fnv1a(const std::vector<double>& values) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (const double v : values) {
    std::uint64_t bits = 0;
    std::memcpy(&bits, &v, sizeof bits);
    for (int byte = 0; byte < 8; ++byte) {
      h ^= (bits >> (8 * byte)) & 0xFF;
      h *= 0x100000001B3ULL;
    }
  }
  return h;
}

}  // namespace

Certificate ScanCertificate(const KernelConstants& constants, std::uint64_t n_cert,
                            std::size_t max_reported, unsigned workers) {
  CheckGrid(constants.m, constants.n_min, n_cert, constants.k_max);
  Require(constants.b1 >= 0 && constants.b2 >= 0 && constants.c1 > 0 &&
              constants.c2 > 0,
          "kernel constants must be nonnegative with c1, c2 > 0");
  const std::uint64_t rows = n_cert - constants.n_min + 1;
  std::vector<RowResult> results(rows);
  ParallelFor(rows, workers, [&](std::uint64_t row) {
    ScanRow(constants, constants.n_min + row, max_reported, results[row]);
  });

  Certificate cert;
  cert.constants = constants;
  cert.n_cert = n_cert;
  cert.margin.reserve(rows);
  for (auto& row : results) {
    cert.margin.push_back(row.margin);
    cert.states_checked += row.states;
    cert.violation_count += row.violation_count;
    for (auto& v : row.violations) {
      if (cert.violations.size() < max_reported) cert.violations.push_back(std::move(v));
    }
  }

  // Margin must not shrink over the last decade of the grid.
  const std::uint64_t decade_start = std::max(constants.n_min, n_cert / 10);
  for (std::uint64_t n = decade_start; n < n_cert; ++n) {
    const double here = cert.margin[n - constants.n_min];
    const double next = cert.margin[n + 1 - constants.n_min];
    if (next < here - 1e-9 * std::abs(here) - 1e-12) {
      ++cert.violation_count;
      if (cert.violations.size() < max_reported) {
        cert.violations.push_back({0, n + 1, "margin-nondecreasing", next - here});
      }
    }
  }
  cert.margin_digest = Fnv1a(cert.margin);
  return cert;
}

Certificate CertifyConstants(std::uint32_t m, std::uint64_t n_min,
                             std::uint64_t n_cert, std::uint64_t k_max,
                             unsigned workers) {
  const KernelConstants candidate = ProposeConstants(m, n_min, n_cert, k_max);
  Certificate cert = ScanCertificate(candidate, n_cert, 64, workers);
  if (cert.violation_count > 0) {
    const Violation& first = cert.violations.front();
    throw CertificationFailure(
        "no certificate for m=" + std::to_string(m) + ": " +
            std::to_string(cert.violation_count) + " violations, first " +
            first.relation + " at k=" + std::to_string(first.k) +
            ", n=" + std::to_string(first.n),
        std::move(cert));
  }
  return cert;
}

CoupledTriple CoupledRun(std::uint32_t m, std::uint64_t i, std::uint64_t windows,
                         const KernelConstants& constants, Rng& rng) {
  Require(constants.m == m, "kernel constants were certified for another m");
  Require(i > 1, "start index must be > 1");
  Require(i >= constants.n_min, "start index is below the certified n_min",
          ErrorCode::kOutOfRange);
  CoupledTriple path;
  path.start = i;
  path.checkpoints.reserve(windows + 1);
  path.lower.reserve(windows + 1);
  path.mid.reserve(windows + 1);
  path.upper.reserve(windows + 1);
  const std::uint64_t initial = SampleInitialDegree(i, m, rng);
  std::uint64_t x = initial, y = initial, z = initial;
  auto record = [&](std::uint64_t n) {
    path.checkpoints.push_back(n);
    path.lower.push_back(x);
    path.mid.push_back(y);
    path.upper.push_back(z);
  };
  record(i);
  for (std::uint64_t w = 0; w < windows; ++w) {
    const std::uint64_t n = i + w;
    const double u = rng.Uniform();
    x += UpperTailQuantile(KernelP(x, n, constants), u);
    y += UpperTailQuantile(WindowIncrementPmf(y, n, m), u);
    z += UpperTailQuantile(KernelR(z, n, constants), u);
    record(n + 1);
    if (!(x <= y && y <= z)) {
      throw OrderingViolation("coupling order broke at n=" + std::to_string(n + 1) +
                                  ": lower=" + std::to_string(x) +
                                  " mid=" + std::to_string(y) +
                                  " upper=" + std::to_string(z),
                              std::move(path));
    }
  }
  return path;
}

double ScaledTime(std::uint64_t i, std::uint64_t x) {
  Require(i > 1, "scaled time needs i > 1");
  long double sum = 0.0L;
  for (std::uint64_t n = i + x; n-- > i;) sum += 1.0L / static_cast<long double>(n);
  return static_cast<double>(sum);
}

double ScaledTimeStar(std::uint64_t i, std::uint64_t y) {
  Require(i > 1, "scaled time needs i > 1");
  return ScaledTime(i + 1, y);
}

std::uint64_t ZDefault(std::uint64_t i, double w) {
  Require(i > 1 && w > 0.0, "z(i, w) needs i > 1 and w > 0");
  return static_cast<std::uint64_t>(std::floor(static_cast<double>(i) * w));
}

}  // namespace yulelab
