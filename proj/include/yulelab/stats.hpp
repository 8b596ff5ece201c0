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

// Histograms, total variation, Pearson chi-square and two-sample KS.

#ifndef YULELAB_STATS_HPP_
#define YULELAB_STATS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "yulelab/error.hpp"

namespace yulelab {

template <class Key>
using Pmf = std::map<Key, double>;

template <class Key>
struct Histogram {
  std::map<Key, std::uint64_t> bins;
  std::uint64_t total = 0;

  void Add(const Key& key, std::uint64_t count = 1) {
    bins[key] += count;
    total += count;
  }
  void Merge(const Histogram& other) {
    for (const auto& [key, count] : other.bins) Add(key, count);
  }
  Pmf<Key> Normalized() const {
    Pmf<Key> p;
    if (total == 0) return p;
    for (const auto& [key, count] : bins) {
      p[key] = static_cast<double>(count) / static_cast<double>(total);
    }
    return p;
  }
};

// Mass must sum to 1 within this much for TvDistance.
inline constexpr double kNormalizationTolerance = 1e-6;

// Half the l1 distance over the union of supports. Rejects negative masses
// and inputs whose total is off by more than kNormalizationTolerance.
template <class Key>
double TvDistance(const Pmf<Key>& p, const Pmf<Key>& q) {
  auto check = [](const Pmf<Key>& d, const char* name) {
    double sum = 0.0;
    for (const auto& [key, mass] : d) {
      Require(mass >= 0.0, std::string(name) + " has a negative mass");
      sum += mass;
    }
    Require(std::abs(sum - 1.0) <= kNormalizationTolerance,
            std::string(name) + " is not normalized (sum " + std::to_string(sum) + ")");
  };
  check(p, "first distribution");
  check(q, "second distribution");
  double l1 = 0.0;
  auto a = p.begin();
  auto b = q.begin();
  while (a != p.end() || b != q.end()) {
    if (b == q.end() || (a != p.end() && a->first < b->first)) {
      l1 += a->second;
      ++a;
    } else if (a == p.end() || b->first < a->first) {
      l1 += b->second;
      ++b;
    } else {
      l1 += std::abs(a->second - b->second);
      ++a;
      ++b;
    }
  }
  return std::min(1.0, 0.5 * l1);
}

struct ChiSquareResult {
  double statistic = 0.0;
  std::uint64_t dof = 0;
  double p_value = 1.0;
  std::uint64_t bins_used = 0;  // after pooling
};

// P(X >= x) for X ~ chi-square(dof), via the regularized upper gamma.
double ChiSquareUpperP(double statistic, std::uint64_t dof);

// Bins with expected count below min_expected are pooled into one tail bin
// that also absorbs the pmf mass outside the tabulated support. A pooled bin
// still below min_expected is merged into the smallest retained bin. Fewer
// than two bins left is an error. dof = bins - 1 - estimated_parameters.
ChiSquareResult ChiSquareGof(const std::vector<double>& observed,
                             const std::vector<double>& probabilities,
                             double min_expected = 5.0,
                             std::uint64_t estimated_parameters = 0);

template <class Key>
ChiSquareResult ChiSquareGof(const Histogram<Key>& h, const Pmf<Key>& pmf,
                             double min_expected = 5.0) {
  Require(h.total > 0, "chi-square needs a nonempty histogram");
  std::vector<double> observed;
  std::vector<double> probabilities;
  std::uint64_t matched = 0;
  for (const auto& [key, mass] : pmf) {
    const auto it = h.bins.find(key);
    const std::uint64_t count = it == h.bins.end() ? 0 : it->second;
    matched += count;
    observed.push_back(static_cast<double>(count));
    probabilities.push_back(mass);
  }
  // Observations outside the pmf support land in the residual bin.
  observed.push_back(static_cast<double>(h.total - matched));
  double tabulated = 0.0;
  for (const double p : probabilities) tabulated += p;
  probabilities.push_back(std::max(0.0, 1.0 - tabulated));
  return ChiSquareGof(observed, probabilities, min_expected);
}

// Two-sample homogeneity test on a contingency table with two rows; columns
// whose pooled expected count is small are merged as in ChiSquareGof.
ChiSquareResult ChiSquareHomogeneity(const std::vector<double>& first,
                                     const std::vector<double>& second,
                                     double min_expected = 5.0);

template <class Key>
ChiSquareResult ChiSquareHomogeneity(const Histogram<Key>& a,
                                     const Histogram<Key>& b,
                                     double min_expected = 5.0) {
  std::map<Key, std::pair<double, double>> joint;
  for (const auto& [key, c] : a.bins) joint[key].first += static_cast<double>(c);
  for (const auto& [key, c] : b.bins) joint[key].second += static_cast<double>(c);
  std::vector<double> first, second;
  for (const auto& [key, pair] : joint) {
    first.push_back(pair.first);
    second.push_back(pair.second);
  }
  return ChiSquareHomogeneity(first, second, min_expected);
}

struct KsResult {
  double statistic = 0.0;  // sup |F_a - F_b|
  double p_value = 1.0;    // asymptotic Kolmogorov distribution
};

KsResult KsTwoSample(std::vector<double> a, std::vector<double> b);

// One-sample KS distance of a sample against a continuous cdf.
template <class Cdf>
double KsDistance(std::vector<double> sample, Cdf&& cdf) {
  Require(!sample.empty(), "KS needs a nonempty sample");
  std::sort(sample.begin(), sample.end());
  const auto n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t j = 0; j < sample.size(); ++j) {
    const double f = cdf(sample[j]);
    d = std::max({d, f - static_cast<double>(j) / n,
                  static_cast<double>(j + 1) / n - f});
  }
  return d;
}

// Q_KS(lambda) = 2 sum_{j>=1} (-1)^{j-1} e^{-2 j^2 lambda^2}.
double KolmogorovQ(double lambda);

}  // namespace yulelab

#endif  // YULELAB_STATS_HPP_
