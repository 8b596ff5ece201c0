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

// Acceptance suite. One PASS/FAIL line per criterion:
//
//   acceptance                 run all twelve
//   acceptance --criterion N   run one (exit status 0 on PASS)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "yulelab/ba_graph.hpp"
#include "yulelab/coupling.hpp"
#include "yulelab/experiments.hpp"
#include "yulelab/planted.hpp"
#include "yulelab/runner.hpp"
#include "yulelab/stats.hpp"
#include "yulelab/yule.hpp"

using namespace yulelab;

namespace {

// Tolerances and sizes, one block per criterion.
constexpr double kChiLevel = 0.01;  // "0.99 level"

struct Verdict {
  bool pass = true;
  std::string detail;
};

class Detail {
 public:
  template <class T>
  Detail& operator()(const std::string& key, const T& value) {
    if (!first_) out_ << ", ";
    first_ = false;
    out_ << key << "=" << value;
    return *this;
  }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
  bool first_ = true;
};

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// TV between an empirical histogram and a reference pmf given pointwise;
// reference mass outside the observed cells counts in full.
template <class Key>
double TvAgainst(const Histogram<Key>& h, const std::function<double(const Key&)>& ref) {
  double l1 = 0.0, covered = 0.0;
  for (const auto& [key, count] : h.bins) {
    const double p = ref(key);
    covered += p;
    l1 += std::abs(static_cast<double>(count) / static_cast<double>(h.total) - p);
  }
  return std::min(1.0, 0.5 * (l1 + std::max(0.0, 1.0 - covered)));
}

// 1. Exact-oracle equivalence.
Verdict Criterion1() {
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  Detail d;
  for (std::uint32_t n : {2u, 3u, 4u}) {
    const auto exact = EnumerateExact(1, n);
    // The enumeration itself must match the rational oracle.
    const auto rational = oracle::DegreeSequenceLaw(1, n);
    double worst = 0.0;
    Pmf<std::vector<std::uint32_t>> pmf;
    for (const auto& o : exact) {
      pmf[o.degrees] = o.probability;
      const auto it = rational.find(o.degrees);
      worst = it == rational.end() ? 1.0
                                   : std::max(worst, std::abs(o.probability -
                                                              oracle::ToDouble(it->second)));
    }
    Histogram<std::vector<std::uint32_t>> h;
    for (auto& s : DegreeSequenceReplicas(1, n, {100000, 1000 + n, 1})) h.Add(s);
    const auto chi = ChiSquareGof(h, pmf);
    v.pass = v.pass && chi.p_value > kChiLevel && worst <= 1e-12 &&
             exact.size() == rational.size();
    d("n" + std::to_string(n) + "_p", chi.p_value);
  }
  const double secs = Seconds(start);
  v.pass = v.pass && secs < 30.0;
  d("runtime_s", secs);
  v.detail = d.str();
  return v;
}

// 2. Limit degree law from a single graph.
Verdict Criterion2() {
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  Detail d;
  for (std::uint32_t m : {1u, 2u, 3u}) {
    const auto h = SingleGraphDegreeHistogram(m, 200000, 20 + m);
    const double tv = TvAgainst<std::uint64_t>(h, [m](const std::uint64_t& k) {
      if (k < m) return 0.0;
      const double kd = static_cast<double>(k);
      return 2.0 * m * (m + 1.0) / (kd * (kd + 1.0) * (kd + 2.0));
    });
    v.pass = v.pass && tv <= 0.01;
    d("tv_m" + std::to_string(m), tv);
  }
  const double secs = Seconds(start);
  v.pass = v.pass && secs < 120.0;
  d("runtime_s", secs);
  v.detail = d.str();
  return v;
}

// 3. Planted sampling uniformity.
Verdict Criterion3() {
  const auto start = std::chrono::steady_clock::now();
  const std::uint32_t i = 5;
  const std::uint64_t n = 50, reps = 100000;
  std::vector<double> lineage(i, 0.0), vertex(n, 0.0);
  double sum = 0.0, sum2 = 0.0;
  for (std::uint64_t r = 0; r < reps; ++r) {
    Rng rng = Rng::Stream(3, r);
    auto forest = PlantedForest::Init(i);
    forest.GrowTo(n, rng);
    const auto s = TwoStageSample(forest, rng);
    lineage[s.lineage - 1] += 1.0;
    vertex[s.vertex - 1] += 1.0;
    const auto y = static_cast<double>(forest.count(1));
    sum += y;
    sum2 += y * y;
  }
  double worst_lineage = 0.0, worst_vertex = 0.0;
  for (const double c : lineage) worst_lineage = std::max(worst_lineage, std::abs(c / reps - 0.2));
  for (const double c : vertex) worst_vertex = std::max(worst_vertex, std::abs(c / reps - 0.02));
  const double mean = sum / reps;
  const double se = std::sqrt((sum2 / reps - mean * mean) / reps);
  const double secs = Seconds(start);
  Verdict v;
  v.pass = worst_lineage <= 0.006 && worst_vertex <= 0.002 &&
           std::abs(mean - 10.0) <= 3.0 * se && secs < 30.0;
  v.detail = Detail()("max_lineage_dev", worst_lineage)("max_vertex_dev", worst_vertex)(
                 "polya_mean", mean)("se", se)("runtime_s", secs)
                 .str();
  return v;
}

// 4. Two-stage vs direct uniform sampling.
Verdict Criterion4() {
  const auto records = PlantedEquivalenceExperiment(1, 10, 200, {100000, 4, 1});
  Histogram<std::uint64_t> planted, direct;
  for (const auto& r : records) {
    planted.Add(r.planted_degree);
    direct.Add(r.direct_degree);
  }
  const auto chi = ChiSquareHomogeneity(planted, direct);
  return {chi.p_value > kChiLevel,
          Detail()("chi2", chi.statistic)("dof", chi.dof)("p", chi.p_value).str()};
}

// Test-side tail ordering over the whole grid, from the window law and the
// kernel formulas written out here.
std::uint64_t IndependentTailViolations(const KernelConstants& c, std::uint64_t n_cert) {
  std::uint64_t bad = 0;
  for (std::uint64_t n = c.n_min; n <= n_cert; ++n) {
    const double nd = static_cast<double>(n), n2 = nd * nd;
    const std::uint64_t top = std::min<std::uint64_t>(c.k_max, c.m * (n + 1));
    for (std::uint64_t k = c.m; k <= top; ++k) {
      const auto exact = WindowIncrementPmf(k, n, c.m);
      const double kd = static_cast<double>(k);
      std::vector<double> p(std::max<std::size_t>(c.m + 1, 3), 0.0), r(p.size(), 0.0);
      p[1] = kd / (2.0 * (nd + 1.0)) + c.c2 / n2;
      p[2] = c.b2 / n2;
      r[1] = kd / (2.0 * nd) + c.c1 / n2;
      r[c.m] += c.b1 / n2;
      for (std::size_t j = 1; j < p.size(); ++j) {
        double te = 0.0, tp = 0.0, tr = 0.0;
        for (std::size_t l = j; l < p.size(); ++l) {
          if (l < exact.size()) te += exact[l];
          tp += p[l];
          tr += r[l];
        }
        if (tp > te + 1e-15 || te > tr + 1e-15) ++bad;
      }
    }
  }
  return bad;
}

// 5. Kernel dominance certificates for m = 1, 2.
Verdict Criterion5() {
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  Detail d;
  for (std::uint32_t m : {1u, 2u}) {
    const std::string tag = "m" + std::to_string(m);
    KernelConstants constants;
    std::uint64_t reported = 0;
    bool certified = true;
    try {
      const auto cert = CertifyConstants(m, 50, 10000, 500);
      constants = cert.constants;
      reported = cert.violation_count;
    } catch (const CertificationFailure& e) {
      certified = false;
      constants = e.certificate().constants;
      reported = e.certificate().violation_count;
      const auto& first = e.certificate().violations.front();
      d(tag + "_first_violation", first.relation + "@k=" + std::to_string(first.k) +
                                      ",n=" + std::to_string(first.n));
    }
    const std::uint64_t independent = IndependentTailViolations(constants, 10000);
    v.pass = v.pass && certified && reported == 0 && independent == 0;
    d(tag + "_certified", certified ? "yes" : "no")(tag + "_violations", reported)(
        tag + "_tail_violations", independent);
  }
  const double secs = Seconds(start);
  v.pass = v.pass && secs < 60.0;
  d("runtime_s", secs);
  v.detail = d.str();
  return v;
}

// 6. Pathwise coupling at m = 2. Paths run one by one so that an ordering
// violation and a kernel domain error are told apart.
Verdict Criterion6() {
  const std::uint32_t m = 2;
  const std::uint64_t i = 50, windows = 500, paths = 10000, k_max = 128;
  const auto constants = ProposeConstants(m, i, i + windows, k_max);
  std::uint64_t violations = 0, aborted = 0, first_n = 0;
  std::string first_abort;
  for (std::uint64_t r = 0; r < paths; ++r) {
    Rng rng = Rng::Stream(6, r);
    try {
      CoupledRun(m, i, windows, constants, rng);
    } catch (const OrderingViolation& e) {
      if (violations++ == 0) first_n = e.path().checkpoints.back();
    } catch (const Error& e) {
      if (aborted++ == 0) first_abort = e.what();
    }
  }
  Detail d;
  d("paths", paths)("violations", violations)("domain_aborts", aborted);
  if (violations > 0) d("first_violation_n", first_n);
  if (aborted > 0) d("first_abort", first_abort);
  return {violations == 0 && aborted == 0, d.str()};
}

// Exact law of the chain at the checkpoint, for the diagnostic line.
double ExactFixedVertexTv(std::uint64_t i) {
  const auto init = InitialLoopPmf(i, 1);
  std::vector<double> law(1, 0.0);
  for (std::size_t j = 0; j < init.size(); ++j) {
    law.resize(std::max(law.size(), j + 2), 0.0);
    law[j + 1] = init[j];
  }
  const std::uint64_t target = i + ZDefault(i, 1.0);
  for (std::uint64_t n = i; n < target; ++n) {
    std::vector<double> next(law.size() + 1, 0.0);
    for (std::size_t k = 1; k < law.size(); ++k) {
      if (law[k] < 1e-300) continue;
      const auto w = WindowIncrementPmf(k, n, 1);
      for (std::size_t j = 0; j < w.size(); ++j) next[k + j] += law[k] * w[j];
    }
    law.swap(next);
  }
  const double p = std::sqrt(0.5);
  double l1 = 0.0, covered = 0.0;
  for (std::size_t k = 1; k < law.size(); ++k) {
    const double y = p * std::pow(1.0 - p, static_cast<double>(k - 1));
    covered += y;
    l1 += std::abs(law[k] - y);
  }
  return 0.5 * (l1 + std::max(0.0, 1.0 - covered));
}

double FixedVertexTv(std::uint64_t i, std::uint64_t reps, std::uint64_t seed) {
  const std::vector<std::uint64_t> cps{i + ZDefault(i, 1.0)};
  Histogram<std::uint64_t> h;
  for (const auto& t : FixedVertexExperiment(1, i, cps, TraceSource::kChain, {reps, seed, 1})) {
    h.Add(t[0]);
  }
  // Yule(1/2, 1) at ln 2: (1/sqrt 2)(1 - 1/sqrt 2)^{k-1}.
  const double p = std::sqrt(0.5);
  return TvAgainst<std::uint64_t>(h, [p](const std::uint64_t& k) {
    return k < 1 ? 0.0 : p * std::pow(1.0 - p, static_cast<double>(k - 1));
  });
}

// 7. Fixed vertex degree vs the Yule law.
Verdict Criterion7() {
  const double tv100 = FixedVertexTv(100, 10000, 100);
  const double tv1000 = FixedVertexTv(1000, 10000, 1000);
  return {tv1000 < tv100 && tv1000 <= 0.02,
          Detail()("tv_i100", tv100)("tv_i1000", tv1000)("exact_tv_i100", ExactFixedVertexTv(100))(
              "exact_tv_i1000", ExactFixedVertexTv(1000))
              .str()};
}

// 8. Joint law at w = (1, 3).
Verdict Criterion8() {
  const std::uint64_t i = 1000;
  const std::vector<std::uint64_t> cps{i + ZDefault(i, 1.0), i + ZDefault(i, 3.0)};
  Histogram<std::vector<std::uint64_t>> h;
  for (auto& t : FixedVertexExperiment(1, i, cps, TraceSource::kChain, {100000, 8, 1})) {
    h.Add(t);
  }
  // Product of Yule(1/2) increments over [0, ln 2] and [ln 2, ln 4].
  auto ref = [](const std::vector<std::uint64_t>& ks) {
    const std::uint64_t a = ks[0], b = ks[1];
    if (a < 1 || b < a) return 0.0;
    const double first = std::sqrt(0.5) * std::pow(1.0 - std::sqrt(0.5), double(a - 1));
    // From a to b over time ln 2 at rate 1/2: C(b-1, a-1) e^{-a ln2 /2}(1-2^{-1/2})^{b-a}.
    const double log_binom = std::lgamma(double(b)) - std::lgamma(double(a)) -
                             std::lgamma(double(b - a + 1));
    const double second = std::exp(log_binom - 0.5 * double(a) * std::log(2.0) +
                                   double(b - a) * std::log1p(-std::sqrt(0.5)));
    return first * second;
  };
  const double tv = TvAgainst<std::vector<std::uint64_t>>(h, ref);
  return {tv <= 0.03, Detail()("tv", tv)("cells", h.bins.size()).str()};
}

// 9. Yule simulator and conditioned birth times.
Verdict Criterion9() {
  Histogram<std::uint64_t> h;
  for (const auto x : YuleReplicas(0.5, 2, 1.0, {1000000, 9, 1})) h.Add(x);
  const double q = 1.0 - std::exp(-0.5);
  const double tv = TvAgainst<std::uint64_t>(h, [q](const std::uint64_t& k) {
    return k < 2 ? 0.0 : double(k - 1) * std::exp(-1.0) * std::pow(q, double(k - 2));
  });
  const auto cmp = OrderStatExperiment(1.0, 2.0, 4, {100000, 90, 1});
  return {tv <= 0.005 && cmp.ks.p_value > kChiLevel,
          Detail()("tv", tv)("orderstat_matched", cmp.matched_realizations)(
              "orderstat_ks_p", cmp.ks.p_value)
              .str()};
}

// 10. Genus-size limit.
Verdict Criterion10() {
  Histogram<std::uint64_t> h;
  for (const auto x : UniformGenusSizeReplicas(1.0, 0.5, 1, 12.0, false, {100000, 10, 1})) {
    h.Add(x);
  }
  const double tv = TvAgainst<std::uint64_t>(h, [](const std::uint64_t& k) {
    const double kd = static_cast<double>(k);
    return k < 1 ? 0.0 : 4.0 / (kd * (kd + 1.0) * (kd + 2.0));
  });
  // Finite-horizon law against the limit, both from test-side quadrature.
  std::vector<double> tvs;
  for (const double T : {4.0, 8.0, 12.0}) {
    double l1 = 0.0, fa = 0.0, fb = 0.0;
    for (std::uint64_t k = 1; k <= 4000; ++k) {
      const double a = oracle::GenusLawByQuadrature(1, T, k);
      const double b = 4.0 / (double(k) * (k + 1.0) * (k + 2.0));
      fa += a;
      fb += b;
      l1 += std::abs(a - b);
    }
    tvs.push_back(0.5 * (l1 + std::abs(fa - fb)));
    // Library value for the record.
  }
  const bool decreasing = tvs[0] > tvs[1] && tvs[1] > tvs[2];
  const bool library_agrees = std::abs(GenusLawTvToLimit(1, 4.0) - tvs[0]) < 1e-4 &&
                              GenusLawTvToLimit(1, 4.0) > GenusLawTvToLimit(1, 8.0) &&
                              GenusLawTvToLimit(1, 8.0) > GenusLawTvToLimit(1, 12.0);
  return {tv <= 0.02 && decreasing && library_agrees,
          Detail()("tv_T12", tv)("law_tv_T4", tvs[0])("law_tv_T8", tvs[1])("law_tv_T12", tvs[2])
              .str()};
}

// 11. Concentration.
Verdict Criterion11() {
  const auto reports = ConcentrationCheck(1, 10000, 3.0, {200, 11, 1});
  std::uint64_t exceed = 0;
  for (const auto& r : reports) exceed += r.max_dev >= ConcentrationBound(1, 10000, 3.0);
  const double fraction = static_cast<double>(exceed) / reports.size();
  std::vector<double> means;
  for (const std::uint64_t n : {1000u, 10000u, 100000u}) {
    double total = 0.0;
    const auto grid = ConcentrationCheck(1, n, 3.0, {20, 1100 + n, 1});
    for (const auto& r : grid) total += r.max_dev;
    means.push_back(total / grid.size());
  }
  const bool decreasing = means[0] > means[1] && means[1] > means[2];
  return {fraction <= 0.01 && decreasing,
          Detail()("violation_fraction", fraction)("mean_max_dev_1e3", means[0])(
              "mean_max_dev_1e4", means[1])("mean_max_dev_1e5", means[2])
              .str()};
}

Json WithoutParallelism(Json report) {
  report["config"].erase("parallelism");
  return report;
}

// 12. Determinism of the verify commands.
Verdict Criterion12() {
  const std::vector<Json> configs{
      {{"command", "verify-limit-degree"}, {"n", 20000}, {"seed", 12}},
      {{"command", "verify-limit-degree"}, {"n", 3000}, {"mode", "replicas"},
       {"replicas", 16}, {"seed", 12}},
      {{"command", "verify-planted"}, {"replicas", 20000}, {"seed", 12}},
      {{"command", "verify-coupling"}, {"replicas", 500}, {"seed", 12}},
      {{"command", "verify-fdd"}, {"i", 200}, {"w", "1,3"}, {"replicas", 5000},
       {"tolerance", 1.0}, {"seed", 12}},
      {{"command", "verify-concentration"}, {"n", 2000}, {"replicas", 40},
       {"n_grid", "500,1000"}, {"seed", 12}},
  };
  Verdict v;
  Detail d;
  std::uint64_t compared = 0;
  for (const auto& config : configs) {
    const std::string name = config.at("command").get<std::string>();
    const auto a = RunFlat(config);
    const auto b = RunFlat(config);
    const auto c = RunFlat(MergeFlat(config, {{"parallelism", 8}}));
    bool same = a.artifacts.size() == b.artifacts.size() && a.artifacts.size() == c.artifacts.size();
    bool have_records = false;
    for (std::size_t j = 0; same && j < a.artifacts.size(); ++j) {
      const auto& x = a.artifacts[j];
      same = x.name == b.artifacts[j].name && x.content == b.artifacts[j].content &&
             x.name == c.artifacts[j].name;
      if (x.name == "report.json") {
        same = same && WithoutParallelism(Json::parse(x.content)) ==
                           WithoutParallelism(Json::parse(c.artifacts[j].content));
      } else {
        same = same && x.content == c.artifacts[j].content;
      }
      have_records = have_records || x.name.rfind("records", 0) == 0 ||
                     x.name.rfind("histogram", 0) == 0;
      ++compared;
    }
    if (!same || !have_records) {
      v.pass = false;
      d("mismatch", name);
    }
  }
  d("configs", configs.size())("artifacts_compared", compared);
  v.detail = d.str();
  return v;
}

const std::map<int, std::function<Verdict()>>& Criteria() {
  static const std::map<int, std::function<Verdict()>> table = {
      {1, Criterion1},  {2, Criterion2},   {3, Criterion3},  {4, Criterion4},
      {5, Criterion5},  {6, Criterion6},   {7, Criterion7},  {8, Criterion8},
      {9, Criterion9},  {10, Criterion10}, {11, Criterion11}, {12, Criterion12},
  };
  return table;
}

bool RunOne(int n) {
  Verdict v;
  try {
    v = Criteria().at(n)();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  std::printf("%s criterion %d: %s\n", v.pass ? "PASS" : "FAIL", n, v.detail.c_str());
  std::fflush(stdout);
  return v.pass;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc == 3 && std::string(argv[1]) == "--criterion") {
    const int n = std::atoi(argv[2]);
    if (Criteria().count(n) == 0) {
      std::fprintf(stderr, "unknown criterion %s\n", argv[2]);
      return 2;
    }
    return RunOne(n) ? 0 : 1;
  }
  if (argc != 1) {
    std::fprintf(stderr, "usage: acceptance [--criterion N]\n");
    return 2;
  }
  bool all = true;
  for (const auto& [n, fn] : Criteria()) all = RunOne(n) && all;
  return all ? 0 : 1;
}
