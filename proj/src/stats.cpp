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

#include "yulelab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/special_functions/gamma.hpp>

namespace yulelab {
namespace {

struct Cell {
  double observed = 0.0;
  double expected = 0.0;
};

// Keeps cells at or above min_expected, pools the rest, and folds a pooled
// cell that is still small into the smallest kept cell.
std::vector<Cell> PoolCells(const std::vector<Cell>& cells, double min_expected) {
  std::vector<Cell> kept;
  Cell pooled;
  bool any_pooled = false;
  for (const Cell& c : cells) {
    if (c.expected >= min_expected) {
      kept.push_back(c);
    } else if (c.expected > 0.0 || c.observed > 0.0) {
      pooled.observed += c.observed;
      pooled.expected += c.expected;
      any_pooled = true;
    }
  }
  if (any_pooled) {
    if (pooled.expected >= min_expected || kept.empty()) {
      kept.push_back(pooled);
    } else {
      auto smallest = std::min_element(kept.begin(), kept.end(),
                                        [](const Cell& a, const Cell& b) {
                                          return a.expected < b.expected;
                                        });
      smallest->observed += pooled.observed;
      smallest->expected += pooled.expected;
    }
  }
  return kept;
}

}  // namespace

double ChiSquareUpperP(double statistic, std::uint64_t dof) {
  Require(dof >= 1, "chi-square needs dof >= 1");
  if (!(statistic > 0.0)) return 1.0;
  if (std::isinf(statistic)) return 0.0;
  return boost::math::gamma_q(0.5 * static_cast<double>(dof), 0.5 * statistic);
}

ChiSquareResult ChiSquareGof(const std::vector<double>& observed,
                             const std::vector<double>& probabilities,
                             double min_expected,
                             std::uint64_t estimated_parameters) {
  Require(observed.size() == probabilities.size(),
          "observed counts and probabilities must align");
  double total = 0.0;
  for (const double o : observed) {
    Require(o >= 0.0, "observed counts must be nonnegative");
    total += o;
  }
  Require(total > 0.0, "chi-square needs at least one observation");
  std::vector<Cell> cells;
  cells.reserve(observed.size());
  for (std::size_t j = 0; j < observed.size(); ++j) {
    Require(probabilities[j] >= 0.0, "probabilities must be nonnegative");
    cells.push_back({observed[j], total * probabilities[j]});
  }
  const std::vector<Cell> pooled = PoolCells(cells, min_expected);
  Require(pooled.size() >= 2 + estimated_parameters,
          "fewer than two bins remain after pooling");
  ChiSquareResult r;
  r.bins_used = pooled.size();
  for (const Cell& c : pooled) {
    if (c.expected == 0.0) {
      r.statistic = std::numeric_limits<double>::infinity();
      break;
    }
    const double diff = c.observed - c.expected;
    r.statistic += diff * diff / c.expected;
  }
  r.dof = pooled.size() - 1 - estimated_parameters;
  r.p_value = ChiSquareUpperP(r.statistic, r.dof);
  return r;
}

ChiSquareResult ChiSquareHomogeneity(const std::vector<double>& first,
                                     const std::vector<double>& second,
                                     double min_expected) {
  Require(first.size() == second.size(), "samples must share columns");
  double total_a = 0.0, total_b = 0.0;
  for (std::size_t j = 0; j < first.size(); ++j) {
    Require(first[j] >= 0.0 && second[j] >= 0.0, "counts must be nonnegative");
    total_a += first[j];
    total_b += second[j];
  }
  Require(total_a > 0.0 && total_b > 0.0, "both samples must be nonempty");
  const double share_a = total_a / (total_a + total_b);
  const double share_b = 1.0 - share_a;

  // Pool on the smaller expected cell of each column.
  std::vector<std::pair<double, double>> kept;
  std::pair<double, double> pooled{0.0, 0.0};
  auto small = [&](const std::pair<double, double>& col) {
    const double n = col.first + col.second;
    return std::min(n * share_a, n * share_b) < min_expected;
  };
  for (std::size_t j = 0; j < first.size(); ++j) {
    const std::pair<double, double> col{first[j], second[j]};
    if (col.first + col.second == 0.0) continue;
    if (small(col)) {
      pooled.first += col.first;
      pooled.second += col.second;
    } else {
      kept.push_back(col);
    }
  }
  if (pooled.first + pooled.second > 0.0) {
    if (!small(pooled) || kept.empty()) {
      kept.push_back(pooled);
    } else {
      auto smallest = std::min_element(
          kept.begin(), kept.end(), [](const auto& x, const auto& y) {
            return x.first + x.second < y.first + y.second;
          });
      smallest->first += pooled.first;
      smallest->second += pooled.second;
    }
  }
  Require(kept.size() >= 2, "fewer than two bins remain after pooling");
  ChiSquareResult r;
  r.bins_used = kept.size();
  for (const auto& [a, b] : kept) {
    const double n = a + b;
    const double ea = n * share_a;
    const double eb = n * share_b;
    r.statistic += (a - ea) * (a - ea) / ea + (b - eb) * (b - eb) / eb;
  }
  r.dof = kept.size() - 1;
  r.p_value = ChiSquareUpperP(r.statistic, r.dof);
  return r;
}

double KolmogorovQ(double lambda) {
  if (lambda < 1e-3) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 200; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += sign * term;
    if (term < 1e-18) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult KsTwoSample(std::vector<double> a, std::vector<double> b) {
  Require(!a.empty() && !b.empty(), "KS needs two nonempty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const auto na = static_cast<double>(a.size());
  const auto nb = static_cast<double>(b.size());
  std::size_t ia = 0, ib = 0;
  double d = 0.0;
  while (ia < a.size() && ib < b.size()) {
    const double x = std::min(a[ia], b[ib]);
    while (ia < a.size() && a[ia] <= x) ++ia;
    while (ib < b.size() && b[ib] <= x) ++ib;
    d = std::max(d, std::abs(static_cast<double>(ia) / na -
                             static_cast<double>(ib) / nb));
  }
  const double ne = na * nb / (na + nb);
  const double root = std::sqrt(ne);
  // Stephens' small-sample correction.
  return {d, KolmogorovQ((root + 0.12 + 0.11 / root) * d)};
}

}  // namespace yulelab
