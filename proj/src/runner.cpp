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

#include "yulelab/runner.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "yulelab/ba_graph.hpp"
#include "yulelab/coupling.hpp"
#include "yulelab/error.hpp"
#include "yulelab/experiments.hpp"
#include "yulelab/planted.hpp"
#include "yulelab/stats.hpp"
#include "yulelab/table_io.hpp"
#include "yulelab/yule.hpp"

namespace yulelab {
namespace {

const Json& DefaultsTable() {
  static const Json table = {
      {"simulate-ba", {{"m", 1u}, {"n", 1000u}, {"trace_vertex", 0u},
                       {"checkpoints", Json::array()}}},
      {"simulate-yule", {{"lambda", 0.5}, {"m0", 1u}, {"T", 1.0},
                         {"replicas", 10000u}, {"tv_tolerance", -1.0},
                         {"alpha", 0.01}, {"records", true}}},
      {"simulate-myule", {{"beta", 1.0}, {"lambda", 0.5}, {"m0", 1u},
                          {"T", 4.0}, {"realizations", 1u}, {"full", false},
                          {"tv_tolerance", -1.0}, {"condition_genus_count", 0u},
                          {"orderstat_T", 2.0}, {"alpha", 0.01},
                          {"records", true}}},
      {"simulate-coupled", {{"m", 1u}, {"i", 50u}, {"windows", 500u},
                            {"replicas", 1000u}, {"paths", 10u},
                            {"k_max", 128u}, {"b1", nullptr}, {"b2", nullptr},
                            {"c1", nullptr}, {"c2", nullptr}}},
      {"certify", {{"m", 1u}, {"n_min", 50u}, {"n_cert", 10000u},
                   {"k_max", 500u}}},
      {"verify-limit-degree", {{"m", Json::array({1u, 2u, 3u})},
                               {"n", 200000u}, {"tolerance", 0.01},
                               {"mode", "single"}, {"replicas", 1u}}},
      {"verify-planted", {{"m", 1u}, {"i", 5u}, {"n", 50u},
                          {"replicas", 100000u}, {"lineage_tolerance", 0.006},
                          {"vertex_tolerance", 0.002}, {"polya_se", 3.0},
                          {"alpha", 0.01}}},
      {"verify-coupling", {{"m", 1u}, {"i", 50u}, {"windows", 500u},
                           {"replicas", 10000u}, {"k_max", 128u},
                           {"n_cert", 0u}}},
      {"verify-fdd", {{"m", 1u}, {"i", 1000u}, {"w", Json::array({1.0})},
                      {"replicas", 10000u}, {"tolerance", 0.02},
                      {"compare_i", 0u}, {"source", "chain"}}},
      {"verify-concentration",
       {{"m", 1u}, {"n", 10000u}, {"C", 3.0}, {"replicas", 200u},
        {"max_fraction", 0.01},
        {"n_grid", Json::array({1000u, 10000u, 100000u})},
        {"grid_replicas", 20u}}},
      {"enumerate", {{"m", 1u}, {"n", 2u}, {"leaf_limit", 10000000u},
                     {"replicas", 0u}, {"alpha", 0.01}}},
  };
  return table;
}

[[noreturn]] void ConfigError(const std::string& message) {
  throw Error(ErrorCode::kConfig, message);
}

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> parts;
  std::string item;
  std::stringstream in(text);
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) parts.push_back(item.substr(b, e - b + 1));
  }
  return parts;
}

// Coerces a value (possibly a string from the command line) to the type of
// `prototype`.
Json Coerce(const std::string& key, const Json& value, const Json& prototype) {
  auto fail = [&](const char* expected) -> Json {
    ConfigError("config key '" + key + "': expected " + expected + ", got " +
                value.dump());
  };
  if (value.is_string() && !prototype.is_string()) {
    const std::string text = value.get<std::string>();
    if (prototype.is_array()) {
      Json array = Json::array();
      const Json element = prototype.empty() ? Json(0u) : prototype.front();
      for (const auto& part : SplitList(text)) {
        array.push_back(Coerce(key, Json(part), element));
      }
      return array;
    }
    Json parsed = Json::parse(text, nullptr, false);
    if (parsed.is_discarded()) return fail("a value of the declared type");
    return Coerce(key, parsed, prototype);
  }
  if (prototype.is_boolean()) {
    if (!value.is_boolean()) return fail("true or false");
    return value;
  }
  if (prototype.is_number_unsigned()) {
    if (value.is_number_unsigned()) return value;
    if (value.is_number_integer() && value.get<std::int64_t>() >= 0) {
      return Json(value.get<std::uint64_t>());
    }
    if (value.is_number_float()) {
      const double d = value.get<double>();
      if (d >= 0 && d == std::floor(d) && d < 1.8e19) {
        return Json(static_cast<std::uint64_t>(d));
      }
    }
    return fail("a nonnegative integer");
  }
  if (prototype.is_number() || prototype.is_null()) {
    if (prototype.is_null() && value.is_null()) return value;
    if (!value.is_number()) return fail("a number");
    return Json(value.get<double>());
  }
  if (prototype.is_string()) {
    if (!value.is_string()) return fail("a string");
    return value;
  }
  if (prototype.is_array()) {
    if (!value.is_array()) return fail("a list");
    Json array = Json::array();
    const Json element = prototype.empty() ? Json(0u) : prototype.front();
    for (const auto& v : value) array.push_back(Coerce(key, v, element));
    return array;
  }
  return fail("a supported value");
}

std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t tag) {
  return SplitMix64Mix(seed ^ SplitMix64Mix(tag + 0x5851F42D4C957F2DULL));
}

class Params {
 public:
  explicit Params(const Json& j) : j_(j) {}
  std::uint64_t U(const char* k) const { return j_.at(k).get<std::uint64_t>(); }
  std::uint32_t U32(const char* k) const {
    const std::uint64_t v = U(k);
    if (v > 0xFFFFFFFFULL) ConfigError(std::string("config key '") + k + "' is too large");
    return static_cast<std::uint32_t>(v);
  }
  double D(const char* k) const { return j_.at(k).get<double>(); }
  bool B(const char* k) const { return j_.at(k).get<bool>(); }
  std::string S(const char* k) const { return j_.at(k).get<std::string>(); }
  bool Null(const char* k) const { return j_.at(k).is_null(); }
  std::vector<double> Dv(const char* k) const { return j_.at(k).get<std::vector<double>>(); }
  std::vector<std::uint64_t> Uv(const char* k) const {
    return j_.at(k).get<std::vector<std::uint64_t>>();
  }

 private:
  const Json& j_;
};

class Checks {
 public:
  void Add(const std::string& name, bool pass, Json detail = Json::object()) {
    Json ordered = Json::object();
    ordered["name"] = name;
    ordered["pass"] = pass;
    for (auto it = detail.begin(); it != detail.end(); ++it) {
      if (it.key() != "name" && it.key() != "pass") ordered[it.key()] = it.value();
    }
    list_.push_back(std::move(ordered));
    if (!pass) failed_.push_back(name);
  }
  bool empty() const { return list_.empty(); }
  bool all_pass() const { return failed_.empty(); }
  const Json& list() const { return list_; }
  std::string FailedNames() const {
    std::string out;
    for (const auto& f : failed_) out += (out.empty() ? "" : ", ") + f;
    return out;
  }

 private:
  Json list_ = Json::array();
  std::vector<std::string> failed_;
};

struct Context {
  explicit Context(const ExperimentConfig& c) : config(c), p(c.params) {}

  const ExperimentConfig& config;
  Params p;
  ReplicaPlan Plan(std::uint64_t replicas) const {
    return {replicas, config.seed, config.parallelism};
  }
  Json statistics = Json::object();
  Checks checks;
  std::vector<Artifact> artifacts;
  int failure_exit = kExitOk;  // nonzero overrides check-derived status

  void AddTable(const std::string& stem, const Table& table) {
    if (config.format == "json") {
      artifacts.push_back({stem + ".json", table.ToJson()});
    } else {
      artifacts.push_back({stem + ".csv", table.ToCsv()});
    }
  }
};

Table IntegerHistogramTable(const Histogram<std::uint64_t>& h,
                            const std::string& reference_name,
                            const std::function<double(std::uint64_t)>& reference) {
  std::vector<std::string> columns{"k", "count", "empirical"};
  if (reference) columns.push_back(reference_name);
  Table t(columns);
  for (const auto& [k, c] : h.bins) {
    std::vector<TableCell> row{k, c, static_cast<double>(c) / static_cast<double>(h.total)};
    if (reference) row.emplace_back(reference(k));
    t.AddRow(std::move(row));
  }
  return t;
}

Histogram<std::uint64_t> ToHistogram(const std::vector<std::uint64_t>& values) {
  Histogram<std::uint64_t> h;
  for (const auto v : values) h.Add(v);
  return h;
}

Json ChiJson(const ChiSquareResult& r) {
  return {{"statistic", r.statistic}, {"dof", r.dof}, {"p_value", r.p_value},
          {"bins", r.bins_used}};
}

Json ConstantsJson(const KernelConstants& c) {
  return {{"m", c.m}, {"b1", c.b1}, {"b2", c.b2}, {"c1", c.c1}, {"c2", c.c2},
          {"n_min", c.n_min}, {"k_max", c.k_max}};
}

Json ViolationsJson(const std::vector<Violation>& violations) {
  Json list = Json::array();
  for (const auto& v : violations) {
    list.push_back({{"k", v.k}, {"n", v.n}, {"relation", v.relation}, {"slack", v.slack}});
  }
  return list;
}

Json CertificateJson(const Certificate& cert) {
  std::ostringstream digest;
  digest << std::hex << cert.margin_digest;
  return {{"m", cert.constants.m},
          {"constants", ConstantsJson(cert.constants)},
          {"n_min", cert.constants.n_min},
          {"N_cert", cert.n_cert},
          {"k_max", cert.constants.k_max},
          {"margin_digest", digest.str()},
          {"margin_at_N_cert", cert.margin.empty() ? 0.0 : cert.margin.back()},
          {"states_checked", cert.states_checked},
          {"violation_count", cert.violation_count},
          {"violations", ViolationsJson(cert.violations)}};
}

// ---- commands ----

void SimulateBa(Context& ctx) {
  const auto& p = ctx.p;
  const std::uint32_t m = p.U32("m");
  const std::uint64_t n = p.U("n");
  const std::uint64_t trace_vertex = p.U("trace_vertex");
  const std::vector<std::uint64_t> checkpoints = p.Uv("checkpoints");
  BAConfig cfg{m, n, ctx.config.seed, false, kDefaultEdgeBudget};
  Validate(cfg);
  Rng rng(ctx.config.seed);
  GraphState g(m);
  if (trace_vertex > 0) {
    Require(trace_vertex > 1 && trace_vertex <= 0xFFFFFFFFULL,
            "trace_vertex must be > 1");
    Require(!checkpoints.empty(), "trace_vertex needs checkpoints");
    std::vector<std::uint64_t> times;
    for (const auto c : checkpoints) times.push_back(c * (m + 1));
    // Validation shared with TraceVertexDegree; the path is traced on g so
    // the snapshot comes from the same graph.
    Table trace({"checkpoint_time", "degree"});
    std::uint64_t previous = trace_vertex;
    for (const auto c : checkpoints) {
      Require(c >= previous, "checkpoints must be nondecreasing and >= trace_vertex");
      g.AdvanceToVertices(c, rng);
      trace.AddRow({c * (m + 1), g.degree(static_cast<VertexId>(trace_vertex))});
      previous = c;
    }
    ctx.AddTable("degree_trace", trace);
  }
  Require(g.complete_vertices() <= n, "checkpoints run past n");
  g.AdvanceToVertices(n, rng);
  const DegreeHistogram h = ComputeDegreeHistogram(g);
  Table snap({"k", "N_k"});
  std::uint64_t handshake = 0;
  for (const auto& [k, c] : h.counts) {
    snap.AddRow({k, c});
    handshake += k * c;
  }
  ctx.AddTable("degree_histogram", snap);
  ctx.statistics = {{"m", m}, {"n", h.n}, {"t", h.t}, {"seed", ctx.config.seed},
                    {"degree_sum", handshake}};
  ctx.checks.Add("handshake", handshake == 2ULL * m * n,
                 {{"degree_sum", handshake}, {"expected", 2ULL * m * n}});
}

void SimulateYule(Context& ctx) {
  const auto& p = ctx.p;
  const YuleParams params{p.D("lambda"), p.U("m0"), p.D("T")};
  Validate(params);
  const auto values = YuleReplicas(params.lambda, params.m0, params.T,
                                   ctx.Plan(p.U("replicas")));
  const auto h = ToHistogram(values);
  auto pmf = [&](std::uint64_t k) { return YulePmf(params, k); };
  const double tv = TvToReference(h, pmf, params.m0);
  double sum = 0.0, sq = 0.0;
  for (const auto v : values) {
    sum += static_cast<double>(v);
    sq += static_cast<double>(v) * static_cast<double>(v);
  }
  const auto r = static_cast<double>(values.size());
  const double mean = sum / r;
  const double se = std::sqrt(std::max(0.0, sq / r - mean * mean) / r);
  Pmf<std::uint64_t> reference;
  for (std::uint64_t k = params.m0; k <= h.bins.rbegin()->first; ++k) reference[k] = pmf(k);
  ctx.statistics = {{"tv", tv}, {"mean", mean}, {"mean_se", se},
                    {"expected_mean", YuleMean(params)}};
  if (h.bins.size() >= 2 || params.T > 0) {
    try {
      ctx.statistics["chi_square"] = ChiJson(ChiSquareGof(h, reference));
    } catch (const Error&) {
      ctx.statistics["chi_square"] = nullptr;  // degenerate, e.g. T = 0
    }
  }
  if (p.D("tv_tolerance") >= 0.0) {
    ctx.checks.Add("tv-vs-pmf", tv <= p.D("tv_tolerance"),
                   {{"tv", tv}, {"tolerance", p.D("tv_tolerance")}});
  }
  ctx.AddTable("histogram", IntegerHistogramTable(h, "pmf", pmf));
  if (p.B("records")) {
    Table rec({"replica", "value"});
    for (std::size_t j = 0; j < values.size(); ++j) rec.AddRow({std::uint64_t{j}, values[j]});
    ctx.AddTable("records", rec);
  }
}

void SimulateMyule(Context& ctx) {
  const auto& p = ctx.p;
  const double beta = p.D("beta"), lambda = p.D("lambda"), T = p.D("T");
  const std::uint64_t m0 = p.U("m0");
  const std::uint64_t realizations = p.U("realizations");
  if (realizations <= 1) {
    Rng rng = Rng::Stream(ctx.config.seed, 0);
    const MYuleRealization r = MYuleSimulate(beta, lambda, m0, T, rng);
    Table t({"genus_index", "birth_time", "size"});
    std::uint64_t species = 0;
    for (std::size_t g = 0; g < r.genus_sizes.size(); ++g) {
      t.AddRow({std::uint64_t{g + 1}, r.genus_birth_times[g], r.genus_sizes[g]});
      species += r.genus_sizes[g];
    }
    ctx.AddTable("realization", t);
    ctx.statistics = {{"genera", r.genus_sizes.size()}, {"species", species},
                      {"expected_genera", std::exp(beta * T)}};
  } else {
    const auto sizes = UniformGenusSizeReplicas(beta, lambda, m0, T, p.B("full"),
                                                ctx.Plan(realizations));
    const auto h = ToHistogram(sizes);
    auto limit = [&](std::uint64_t k) { return LimitPmf(m0, k); };
    const double tv_limit = TvToReference(h, limit, m0);
    ctx.statistics = {{"tv_to_limit", tv_limit}};
    const bool paired = beta == 1.0 && lambda == 0.5 && T > 0.0;
    if (paired) {
      auto finite = [&](std::uint64_t k) { return GenusSizePmfAtT(m0, T, k); };
      ctx.statistics["tv_to_finite_T_law"] = TvToReference(h, finite, m0);
    }
    if (p.D("tv_tolerance") >= 0.0) {
      ctx.checks.Add("tv-vs-limit", tv_limit <= p.D("tv_tolerance"),
                     {{"tv", tv_limit}, {"tolerance", p.D("tv_tolerance")}});
    }
    ctx.AddTable("histogram", IntegerHistogramTable(h, "limit_pmf", limit));
    if (p.B("records")) {
      Table rec({"replica", "size"});
      for (std::size_t j = 0; j < sizes.size(); ++j) rec.AddRow({std::uint64_t{j}, sizes[j]});
      ctx.AddTable("records", rec);
    }
  }
  if (p.U("condition_genus_count") >= 2) {
    const auto cmp = OrderStatExperiment(beta, p.D("orderstat_T"),
                                         p.U("condition_genus_count"),
                                         ctx.Plan(std::max<std::uint64_t>(realizations, 1)));
    ctx.statistics["orderstat"] = {{"matched_realizations", cmp.matched_realizations},
                                   {"times", cmp.conditioned_times.size()},
                                   {"ks_statistic", cmp.ks.statistic},
                                   {"ks_p_value", cmp.ks.p_value}};
    ctx.checks.Add("orderstat-two-sample", cmp.ks.p_value > p.D("alpha"),
                   {{"p_value", cmp.ks.p_value}, {"alpha", p.D("alpha")}});
  }
}

KernelConstants ResolveConstants(Context& ctx, std::uint32_t m, std::uint64_t n_min,
                                 std::uint64_t n_cert, std::uint64_t k_max) {
  const auto& p = ctx.p;
  const bool given = !p.Null("b1") || !p.Null("b2") || !p.Null("c1") || !p.Null("c2");
  if (given) {
    if (p.Null("b1") || p.Null("b2") || p.Null("c1") || p.Null("c2")) {
      ConfigError("give all of b1, b2, c1, c2 or none");
    }
    return {m, p.D("b1"), p.D("b2"), p.D("c1"), p.D("c2"), n_min, k_max};
  }
  return ProposeConstants(m, n_min, n_cert, k_max);
}

// Scans `constants`; records the outcome as the "certificate" check.
void CertificateCheck(Context& ctx, const KernelConstants& constants,
                      std::uint64_t n_cert) {
  const Certificate cert = ScanCertificate(constants, n_cert, 64, ctx.config.parallelism);
  ctx.statistics["certificate"] = CertificateJson(cert);
  ctx.checks.Add("certificate", cert.violation_count == 0,
                 {{"violation_count", cert.violation_count}});
}

void CoupledCommon(Context& ctx, bool with_paths) {
  const auto& p = ctx.p;
  const std::uint32_t m = p.U32("m");
  const std::uint64_t i = p.U("i");
  const std::uint64_t windows = p.U("windows");
  const std::uint64_t k_max = p.U("k_max");
  // verify-coupling may widen the certified range; 0 keeps the path range.
  std::uint64_t n_cert = i + windows;
  if (!with_paths && p.U("n_cert") > 0) n_cert = p.U("n_cert");
  Require(n_cert >= i, "n_cert must cover the start index");
  const KernelConstants constants =
      with_paths ? ResolveConstants(ctx, m, i, std::max(n_cert, i), k_max)
                 : ProposeConstants(m, i, n_cert, k_max);
  CertificateCheck(ctx, constants, n_cert);

  const ReplicaPlan plan = ctx.Plan(p.U("replicas"));
  const auto records = CoupledExperiment(m, i, windows, constants, plan);
  std::uint64_t violations = 0;
  std::uint64_t first = 0;
  Table rec({"replica", "violated", "violation_n", "lower", "mid", "upper"});
  for (std::size_t r = 0; r < records.size(); ++r) {
    const auto& c = records[r];
    if (c.violated && violations++ == 0) first = r;
    rec.AddRow({std::uint64_t{r}, std::uint64_t{c.violated ? 1u : 0u}, c.violation_n,
                c.lower, c.mid, c.upper});
  }
  ctx.AddTable("records", rec);
  ctx.statistics["paths"] = records.size();
  ctx.statistics["ordering_violations"] = violations;
  Json detail = {{"violations", violations}, {"paths", records.size()}};
  if (violations > 0) detail["first_violating_replica"] = first;
  ctx.checks.Add("pathwise-order", violations == 0, detail);

  if (with_paths) {
    Table paths({"replica", "n", "lower", "mid", "upper"});
    const std::uint64_t shown = std::min<std::uint64_t>(p.U("paths"), records.size());
    for (std::uint64_t r = 0; r < shown; ++r) {
      Rng rng = Rng::Stream(ctx.config.seed, r);
      CoupledTriple path;
      try {
        path = CoupledRun(m, i, windows, constants, rng);
      } catch (const OrderingViolation& e) {
        path = e.path();
      }
      for (std::size_t s = 0; s < path.checkpoints.size(); ++s) {
        paths.AddRow({r, path.checkpoints[s], path.lower[s], path.mid[s], path.upper[s]});
      }
    }
    ctx.AddTable("coupled_paths", paths);
  }
}

void SimulateCoupled(Context& ctx) { CoupledCommon(ctx, true); }
void VerifyCoupling(Context& ctx) { CoupledCommon(ctx, false); }

void Certify(Context& ctx) {
  const auto& p = ctx.p;
  const std::uint32_t m = p.U32("m");
  const std::uint64_t n_min = p.U("n_min"), n_cert = p.U("n_cert"), k_max = p.U("k_max");
  Certificate cert;
  bool ok = true;
  try {
    cert = CertifyConstants(m, n_min, n_cert, k_max, ctx.config.parallelism);
  } catch (const CertificationFailure& e) {
    cert = e.certificate();
    ok = false;
  }
  const Json cj = CertificateJson(cert);
  ctx.statistics["certificate"] = cj;
  ctx.artifacts.push_back({"certificate.json", cj.dump(1) + "\n"});
  Table margin({"n", "margin"});
  for (std::size_t j = 0; j < cert.margin.size(); ++j) {
    margin.AddRow({n_min + j, cert.margin[j]});
  }
  ctx.AddTable("margin", margin);
  Json detail = {{"violation_count", cert.violation_count}};
  if (!cert.violations.empty()) {
    detail["first_violation"] = ViolationsJson({cert.violations.front()}).front();
  }
  ctx.checks.Add("certificate", ok, detail);
}

void VerifyLimitDegree(Context& ctx) {
  const auto& p = ctx.p;
  const std::string mode = p.S("mode");
  if (mode != "single" && mode != "replicas") ConfigError("mode must be single or replicas");
  const std::uint64_t n = p.U("n");
  const double tol = p.D("tolerance");
  Json per_m = Json::array();
  for (const auto m64 : p.Uv("m")) {
    Require(m64 >= 1 && m64 <= 1000, "m out of range");
    const auto m = static_cast<std::uint32_t>(m64);
    Histogram<std::uint64_t> h;
    if (mode == "single") {
      h = SingleGraphDegreeHistogram(m, n, DeriveSeed(ctx.config.seed, m));
    } else {
      ReplicaPlan plan = ctx.Plan(p.U("replicas"));
      plan.seed = DeriveSeed(ctx.config.seed, m);
      h = ToHistogram(UniformDegreeExperiment(m, n, plan));
    }
    auto limit = [m](std::uint64_t k) { return LimitPmf(m, k); };
    const double tv = TvToReference(h, limit, m);
    per_m.push_back({{"m", m}, {"tv", tv}});
    ctx.checks.Add("limit-degree-m" + std::to_string(m), tv <= tol,
                   {{"tv", tv}, {"tolerance", tol}});
    ctx.AddTable("histogram_m" + std::to_string(m),
                 IntegerHistogramTable(h, "limit_pmf", limit));
  }
  ctx.statistics["per_m"] = per_m;
}

void VerifyPlanted(Context& ctx) {
  const auto& p = ctx.p;
  const std::uint32_t m = p.U32("m");
  const std::uint32_t i = p.U32("i");
  const std::uint64_t n = p.U("n");
  const auto records = PlantedEquivalenceExperiment(m, i, n, ctx.Plan(p.U("replicas")));
  const auto R = static_cast<double>(records.size());

  std::vector<std::uint64_t> lineage(i, 0), vertex(n, 0);
  Histogram<std::uint64_t> direct, planted, planted_nonroot;
  double sum = 0.0, sq = 0.0;
  Table rec({"replica", "W", "Z", "vertex", "planted_degree", "direct_vertex",
             "direct_degree", "first_lineage_size"});
  for (std::size_t r = 0; r < records.size(); ++r) {
    const auto& x = records[r];
    ++lineage[x.lineage - 1];
    ++vertex[x.planted_vertex - 1];
    direct.Add(x.direct_degree);
    planted.Add(x.planted_degree);
    if (x.planted_vertex > i) planted_nonroot.Add(x.planted_degree);
    sum += static_cast<double>(x.first_lineage_size);
    sq += static_cast<double>(x.first_lineage_size) * static_cast<double>(x.first_lineage_size);
    rec.AddRow({std::uint64_t{r}, std::uint64_t{x.lineage}, x.rank,
                std::uint64_t{x.planted_vertex}, x.planted_degree,
                std::uint64_t{x.direct_vertex}, x.direct_degree, x.first_lineage_size});
  }

  double worst_lineage = 0.0;
  Table lt({"lineage", "count", "frequency"});
  for (std::uint32_t j = 0; j < i; ++j) {
    const double f = static_cast<double>(lineage[j]) / R;
    worst_lineage = std::max(worst_lineage, std::abs(f - 1.0 / i));
    lt.AddRow({std::uint64_t{j + 1}, lineage[j], f});
  }
  double worst_vertex = 0.0;
  Table vt({"vertex", "count", "frequency"});
  for (std::uint64_t v = 0; v < n; ++v) {
    const double f = static_cast<double>(vertex[v]) / R;
    worst_vertex = std::max(worst_vertex, std::abs(f - 1.0 / static_cast<double>(n)));
    vt.AddRow({v + 1, vertex[v], f});
  }
  const double mean = sum / R;
  const double se = std::sqrt(std::max(0.0, sq / R - mean * mean) / R);
  const double polya = PolyaMean(i, n);
  const ChiSquareResult eq = ChiSquareHomogeneity(direct, planted);

  ctx.statistics = {{"max_lineage_deviation", worst_lineage},
                    {"max_vertex_deviation", worst_vertex},
                    {"first_lineage_mean", mean},
                    {"first_lineage_se", se},
                    {"polya_mean", polya},
                    {"equivalence_chi_square", ChiJson(eq)},
                    {"nonroot_samples", planted_nonroot.total}};
  ctx.checks.Add("lineage-uniformity", worst_lineage <= p.D("lineage_tolerance"),
                 {{"max_deviation", worst_lineage}, {"tolerance", p.D("lineage_tolerance")}});
  ctx.checks.Add("vertex-uniformity", worst_vertex <= p.D("vertex_tolerance"),
                 {{"max_deviation", worst_vertex}, {"tolerance", p.D("vertex_tolerance")}});
  ctx.checks.Add("polya-mean", std::abs(mean - polya) <= p.D("polya_se") * se,
                 {{"mean", mean}, {"expected", polya}, {"se", se}});
  ctx.checks.Add("sampling-equivalence", eq.p_value > p.D("alpha"),
                 {{"p_value", eq.p_value}, {"alpha", p.D("alpha")}});

  Table dt({"k", "direct", "planted", "planted_nonroot"});
  std::map<std::uint64_t, int> keys;
  for (const auto& [k, c] : direct.bins) keys[k];
  for (const auto& [k, c] : planted.bins) keys[k];
  auto get = [](const Histogram<std::uint64_t>& h, std::uint64_t k) {
    const auto it = h.bins.find(k);
    return it == h.bins.end() ? std::uint64_t{0} : it->second;
  };
  for (const auto& [k, unused] : keys) {
    dt.AddRow({k, get(direct, k), get(planted, k), get(planted_nonroot, k)});
  }
  ctx.AddTable("lineage", lt);
  ctx.AddTable("vertex", vt);
  ctx.AddTable("degree", dt);
  ctx.AddTable("records", rec);
}

// TV between replicated checkpoint vectors and the product law. Cells never
// observed contribute their reference mass, 1 - (observed reference mass).
double FddTv(const std::vector<std::vector<std::uint64_t>>& samples, std::uint64_t m0,
             const std::vector<double>& times) {
  Histogram<std::vector<std::uint64_t>> h;
  for (const auto& s : samples) h.Add(s);
  double l1 = 0.0, covered = 0.0;
  for (const auto& [ks, c] : h.bins) {
    bool valid = ks.front() >= m0;
    for (std::size_t l = 1; l < ks.size(); ++l) valid = valid && ks[l] >= ks[l - 1];
    const double ref = valid ? YuleFddPmf(m0, times, ks, 0.5) : 0.0;
    covered += ref;
    l1 += std::abs(static_cast<double>(c) / static_cast<double>(h.total) - ref);
  }
  return std::min(1.0, 0.5 * (l1 + std::max(0.0, 1.0 - covered)));
}

void VerifyFdd(Context& ctx) {
  const auto& p = ctx.p;
  const std::uint32_t m = p.U32("m");
  const std::uint64_t i = p.U("i");
  const std::vector<double> w = p.Dv("w");
  Require(!w.empty(), "w must be a nonempty list");
  const std::string src = p.S("source");
  if (src != "chain" && src != "graph") ConfigError("source must be chain or graph");
  const TraceSource source = src == "chain" ? TraceSource::kChain : TraceSource::kGraph;
  std::vector<double> times;
  double previous = 0.0;
  for (const double x : w) {
    Require(x > previous, "w must be strictly increasing and positive");
    times.push_back(std::log1p(x));
    previous = x;
  }
  auto run = [&](std::uint64_t start, std::uint64_t tag) {
    std::vector<std::uint64_t> checkpoints;
    for (const double x : w) checkpoints.push_back(start + ZDefault(start, x));
    ReplicaPlan plan = ctx.Plan(p.U("replicas"));
    plan.seed = DeriveSeed(ctx.config.seed, tag);
    return FixedVertexExperiment(m, start, checkpoints, source, plan);
  };
  const auto samples = run(i, i);
  const double tv = FddTv(samples, m, times);
  ctx.statistics = {{"tv", tv}, {"i", i}};
  ctx.checks.Add("fdd-tv", tv <= p.D("tolerance"), {{"tv", tv}, {"tolerance", p.D("tolerance")}});
  const std::uint64_t compare_i = p.U("compare_i");
  if (compare_i > 0) {
    const double tv_compare = FddTv(run(compare_i, compare_i), m, times);
    ctx.statistics["compare_i"] = compare_i;
    ctx.statistics["tv_compare"] = tv_compare;
    ctx.checks.Add("tv-decreases-in-i", tv < tv_compare,
                   {{"tv", tv}, {"tv_compare", tv_compare}});
  }
  std::vector<std::string> columns{"replica"};
  for (std::size_t l = 0; l < w.size(); ++l) columns.push_back("degree_" + std::to_string(l + 1));
  Table rec(columns);
  for (std::size_t r = 0; r < samples.size(); ++r) {
    std::vector<TableCell> row{std::uint64_t{r}};
    for (const auto d : samples[r]) row.emplace_back(d);
    rec.AddRow(std::move(row));
  }
  ctx.AddTable("records", rec);
}

void VerifyConcentration(Context& ctx) {
  const auto& p = ctx.p;
  const std::uint32_t m = p.U32("m");
  const double C = p.D("C");
  const auto reports = ConcentrationCheck(m, p.U("n"), C, ctx.Plan(p.U("replicas")));
  std::uint64_t violated = 0;
  Table rec({"replica", "max_dev", "bound", "violated"});
  for (std::size_t r = 0; r < reports.size(); ++r) {
    violated += reports[r].violated;
    rec.AddRow({std::uint64_t{r}, reports[r].max_dev, reports[r].bound,
                std::uint64_t{reports[r].violated ? 1u : 0u}});
  }
  const double fraction = static_cast<double>(violated) / static_cast<double>(reports.size());
  ctx.statistics = {{"bound", reports.front().bound}, {"violation_fraction", fraction}};
  ctx.checks.Add("violation-fraction", fraction <= p.D("max_fraction"),
                 {{"fraction", fraction}, {"max_fraction", p.D("max_fraction")}});

  Table grid({"n", "mean_max_dev"});
  Json means = Json::array();
  bool decreasing = true;
  double last = std::numeric_limits<double>::infinity();
  for (const auto n : p.Uv("n_grid")) {
    ReplicaPlan plan = ctx.Plan(p.U("grid_replicas"));
    plan.seed = DeriveSeed(ctx.config.seed, n);
    const auto g = ConcentrationCheck(m, n, C, plan);
    double mean = 0.0;
    for (const auto& x : g) mean += x.max_dev;
    mean /= static_cast<double>(g.size());
    decreasing = decreasing && mean < last;
    last = mean;
    grid.AddRow({n, mean});
    means.push_back({{"n", n}, {"mean_max_dev", mean}});
  }
  ctx.statistics["grid"] = means;
  if (!means.empty()) ctx.checks.Add("mean-max-dev-decreases", decreasing);
  ctx.AddTable("records", rec);
  ctx.AddTable("grid", grid);
}

void Enumerate(Context& ctx) {
  const auto& p = ctx.p;
  const std::uint32_t m = p.U32("m");
  const std::uint64_t n = p.U("n");
  const auto outcomes = EnumerateExact(m, n, p.U("leaf_limit"));
  std::vector<std::string> columns;
  for (std::uint64_t v = 1; v <= n; ++v) columns.push_back("d" + std::to_string(v));
  columns.push_back("probability");
  Table t(columns);
  Pmf<std::vector<std::uint32_t>> exact;
  double total = 0.0;
  for (const auto& o : outcomes) {
    std::vector<TableCell> row;
    for (const auto d : o.degrees) row.emplace_back(std::uint64_t{d});
    row.emplace_back(o.probability);
    t.AddRow(std::move(row));
    exact[o.degrees] = o.probability;
    total += o.probability;
  }
  ctx.AddTable("exact", t);
  ctx.statistics = {{"outcomes", outcomes.size()}, {"probability_sum", total}};
  if (p.U("replicas") > 0) {
    Histogram<std::vector<std::uint32_t>> h;
    for (auto& s : DegreeSequenceReplicas(m, n, ctx.Plan(p.U("replicas")))) h.Add(s);
    const ChiSquareResult chi = ChiSquareGof(h, exact);
    ctx.statistics["chi_square"] = ChiJson(chi);
    ctx.checks.Add("oracle-equivalence", chi.p_value > p.D("alpha"),
                   {{"p_value", chi.p_value}, {"alpha", p.D("alpha")}});
  }
}

const std::map<std::string, std::function<void(Context&)>>& Handlers() {
  static const std::map<std::string, std::function<void(Context&)>> handlers = {
      {"simulate-ba", SimulateBa},
      {"simulate-yule", SimulateYule},
      {"simulate-myule", SimulateMyule},
      {"simulate-coupled", SimulateCoupled},
      {"certify", Certify},
      {"verify-limit-degree", VerifyLimitDegree},
      {"verify-planted", VerifyPlanted},
      {"verify-coupling", VerifyCoupling},
      {"verify-fdd", VerifyFdd},
      {"verify-concentration", VerifyConcentration},
      {"enumerate", Enumerate},
  };
  return handlers;
}

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kOutOfRange:
    case ErrorCode::kConfig:
    case ErrorCode::kIo:
      return kExitConfig;
    case ErrorCode::kResourceExhausted:
    case ErrorCode::kInstanceTooLarge:
      return kExitResource;
    case ErrorCode::kOrderingViolation:
    case ErrorCode::kCertificationFailed:
      return kExitVerification;
    case ErrorCode::kInternal:
      break;
  }
  return kExitInternal;
}

Json ResolvedJson(const ExperimentConfig& c) {
  Json j = Json::object();
  j["command"] = c.command;
  j["seed"] = c.seed;
  j["parallelism"] = c.parallelism;
  j["format"] = c.format;
  for (auto it = c.params.begin(); it != c.params.end(); ++it) j[it.key()] = it.value();
  return j;
}

}  // namespace

const std::vector<std::string>& CommandNames() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (auto it = DefaultsTable().begin(); it != DefaultsTable().end(); ++it) {
      v.push_back(it.key());
    }
    return v;
  }();
  return names;
}

Json CommandDefaults(const std::string& command) {
  const Json& table = DefaultsTable();
  if (!table.contains(command)) ConfigError("unknown command '" + command + "'");
  return table.at(command);
}

Json MergeFlat(const Json& base, const Json& overrides) {
  if (!base.is_null() && !base.is_object()) ConfigError("config must be a JSON object");
  if (!overrides.is_null() && !overrides.is_object()) ConfigError("overrides must be an object");
  Json merged = base.is_object() ? base : Json::object();
  if (overrides.is_object()) {
    for (auto it = overrides.begin(); it != overrides.end(); ++it) merged[it.key()] = it.value();
  }
  return merged;
}

ExperimentConfig ResolveConfig(const Json& flat) {
  if (!flat.is_object()) ConfigError("config must be a flat JSON object");
  if (!flat.contains("command") || !flat.at("command").is_string()) {
    ConfigError("config key 'command' is required");
  }
  ExperimentConfig c;
  c.command = flat.at("command").get<std::string>();
  const Json defaults = CommandDefaults(c.command);
  c.params = defaults;
  for (auto it = flat.begin(); it != flat.end(); ++it) {
    const std::string& key = it.key();
    const Json& value = it.value();
    if (key == "command") continue;
    if (key == "seed") {
      c.seed = Coerce(key, value, Json(0u)).get<std::uint64_t>();
    } else if (key == "parallelism") {
      const auto workers = Coerce(key, value, Json(0u)).get<std::uint64_t>();
      if (workers < 1 || workers > 1024) ConfigError("config key 'parallelism' must be in [1, 1024]");
      c.parallelism = static_cast<unsigned>(workers);
    } else if (key == "format") {
      c.format = Coerce(key, value, Json("")).get<std::string>();
      if (c.format != "csv" && c.format != "json") {
        ConfigError("config key 'format' must be csv or json");
      }
    } else if (key == "output") {
      c.output = Coerce(key, value, Json("")).get<std::string>();
    } else if (defaults.contains(key)) {
      c.params[key] = Coerce(key, value, defaults.at(key));
    } else {
      ConfigError("config key '" + key + "' is not a parameter of " + c.command);
    }
  }
  return c;
}

RunOutcome Run(const ExperimentConfig& config) {
  RunOutcome out;
  out.report = Json::object();
  out.report["command"] = config.command;
  out.report["seed"] = config.seed;
  out.report["config"] = ResolvedJson(config);
  std::vector<Artifact> artifacts;
  try {
    const auto handler = Handlers().find(config.command);
    if (handler == Handlers().end()) ConfigError("unknown command '" + config.command + "'");
    Context ctx(config);
    handler->second(ctx);
    out.report["statistics"] = ctx.statistics;
    out.report["checks"] = ctx.checks.list();
    out.report["pass"] = ctx.checks.all_pass();
    if (!ctx.checks.all_pass()) {
      out.exit_code = kExitVerification;
      out.message = "verification failed: " + ctx.checks.FailedNames();
    }
    artifacts = std::move(ctx.artifacts);
  } catch (const Error& e) {
    out.exit_code = ExitCodeFor(e.code());
    out.message = e.what();
  } catch (const nlohmann::json::exception& e) {
    out.exit_code = kExitConfig;
    out.message = std::string("config error: ") + e.what();
  } catch (const std::bad_alloc&) {
    out.exit_code = kExitResource;
    out.message = "out of memory";
  } catch (const std::exception& e) {
    out.exit_code = kExitInternal;
    out.message = std::string("internal error: ") + e.what();
  }
  if (out.exit_code != kExitOk) {
    out.report["exit_code"] = out.exit_code;
    out.report["message"] = out.message;
  }
  Json names = Json::array();
  for (const auto& a : artifacts) names.push_back(a.name);
  out.report["artifacts"] = names;
  out.artifacts.push_back({"report.json", out.report.dump(1) + "\n"});
  for (auto& a : artifacts) out.artifacts.push_back(std::move(a));

  if (!config.output.empty()) {
    try {
      for (const auto& a : out.artifacts) WriteTextFile(config.output + "/" + a.name, a.content);
    } catch (const Error& e) {
      out.exit_code = kExitConfig;
      out.message = e.what();
    }
  }
  return out;
}

RunOutcome RunFlat(const Json& flat) {
  ExperimentConfig config;
  try {
    config = ResolveConfig(flat);
  } catch (const Error& e) {
    RunOutcome out;
    out.exit_code = ExitCodeFor(e.code());
    out.message = e.what();
    out.report = {{"exit_code", out.exit_code}, {"message", out.message}};
    out.artifacts.push_back({"report.json", out.report.dump(1) + "\n"});
    return out;
  }
  return Run(config);
}

}  // namespace yulelab
