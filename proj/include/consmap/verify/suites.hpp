// Copyright 2026 The consmap Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "consmap/dual/dual.hpp"
#include "consmap/heights/heights.hpp"
#include "consmap/verify/fixtures.hpp"

namespace consmap {

struct SuiteConfig {
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
  int samples = 500;
  int triples = 200;
  bool inject_non_map = false;
  std::vector<NamedPlaceSet> place_sets = DefaultPlaceSets();
};

enum class CheckStatus { kPass, kFail, kSkip };

inline std::string StatusName(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass: return "pass";
    case CheckStatus::kFail: return "fail";
    case CheckStatus::kSkip: return "skip";
  }
  return "?";
}

struct CheckResult {
  std::string id;
  std::string anchor;  // the property being exercised
  CheckStatus status = CheckStatus::kPass;
  std::string detail;
};

struct VerificationReport {
  std::string suite;
  std::vector<CheckResult> checks;

  void Add(std::string id, std::string anchor, bool ok, std::string detail = "") {
    checks.push_back({std::move(id), std::move(anchor), ok ? CheckStatus::kPass : CheckStatus::kFail, std::move(detail)});
  }
  void Skip(std::string id, std::string anchor, std::string detail) {
    checks.push_back({std::move(id), std::move(anchor), CheckStatus::kSkip, std::move(detail)});
  }
  void Merge(const VerificationReport& other) { checks.insert(checks.end(), other.checks.begin(), other.checks.end()); }
  int exit_code() const {
    for (const auto& c : checks)
      if (c.status == CheckStatus::kFail) return 1;
    return 0;
  }
};

inline const std::vector<std::string>& SuiteNames() {
  static const std::vector<std::string> names = {"consistency", "dual", "kernel", "continuity", "rho", "heights", "all"};
  return names;
}

namespace suites {

inline PlaceKey RationalPlace(std::uint64_t p) { return {FieldRegistry::kRationals, PlaceKind::kFinite, p, 0}; }

inline void Consistency(FieldRegistry& reg, const DefaultFields& d, const SuiteConfig& cfg, const FieldScope& scope, VerificationReport& r) {
  for (FieldId k : scope)
    for (std::uint64_t p : DefaultPrimeWindow()) {
      int n = reg.Field(k).degree();
      int sum = LocalDegreeSum(reg, k, p);
      r.Add("splitting/" + std::to_string(k) + "/" + std::to_string(p), "sum of e*f equals the degree", sum == n,
            std::to_string(sum) + " vs " + std::to_string(n));
    }
  for (const auto& ns : cfg.place_sets)
    for (const auto& m : ShippedMaps(reg, d, ns.set)) {
      ConsistencyReport cr = VerifyConsistency(m.map, reg, scope);
      std::string detail = std::to_string(cr.checks.size()) + " branches";
      if (!cr.ok()) detail += ", first violation at " + cr.violations.front().place.Id();
      r.Add("branch-law/" + ns.name + "/" + m.name, "branch law over registered embeddings", cr.ok(), detail);
    }
  if (cfg.inject_non_map) {
    ConsistencyReport cr = VerifyConsistency(ConsistentMap::Constant(PlaceSet::All(), ExactScalar(1)), reg, scope);
    std::string detail = std::to_string(cr.violations.size()) + " violations";
    if (!cr.ok()) detail += ", first at " + cr.violations.front().place.Id() + ": " + cr.violations.front().below.ToString() + " vs " +
                            cr.violations.front().above.ToString();
    r.Add("branch-law/injected/constant-one", "branch law over registered embeddings", cr.ok(), detail);
  }
}

inline void Dual(FieldRegistry& reg, const DefaultFields& d, const SuiteConfig& cfg, const FieldScope& scope, VerificationReport& r) {
  PlaceSet all = PlaceSet::All();
  std::vector<NamedMap> maps = ShippedMaps(reg, d, all);
  std::vector<Embedding> embs;
  auto in_scope = [&](FieldId k) { return std::find(scope.begin(), scope.end(), k) != scope.end(); };
  for (const auto& e : reg.AllEmbeddings())
    if (e.source != e.target && in_scope(e.source) && in_scope(e.target)) embs.push_back(e);
  std::mt19937_64 rng(cfg.seed);
  int bad = 0;
  for (int t = 0; t < cfg.triples; ++t) {
    const NamedMap& m = maps[static_cast<std::size_t>(DrawInt(rng, 0, static_cast<long>(maps.size()) - 1))];
    const Embedding& e = embs[static_cast<std::size_t>(DrawInt(rng, 0, static_cast<long>(embs.size()) - 1))];
    LCFunction f = RandomFunction(reg, rng, all, e.source);
    if (!PhiIndependence(reg, m.map, f, e)) ++bad;
  }
  r.Add("phi-independence/triples", "phi independent of the field for consistent maps", bad == 0,
        std::to_string(cfg.triples) + " triples, " + std::to_string(bad) + " dependent");
  ConsistentMap one = ConsistentMap::Constant(all, ExactScalar(1));
  bool dependent = !PhiIndependence(reg, one, Indicator(reg, all, RationalPlace(5)), reg.RequireEmbedding(d.q, d.gaussian));
  r.Add("phi-independence/constant-one", "inconsistent tables change phi under refinement", dependent);

  std::vector<PlaceKey> places = RegisteredPlaces(reg, all, scope);
  Reconstruction lam = FunctionalToMap(reg, IntegrationFunctional(), all, scope);
  bool same = lam.report.ok();
  for (const auto& v : places) same = same && lam.map.Evaluate(reg, v) == ExactScalar(reg.Lambda(v));
  r.Add("reconstruct/integral", "indicator values recover the map", same);
  for (const auto& m : maps) {
    Reconstruction rc = FunctionalToMap(reg, PhiFunctional(m.map), all, scope);
    int mismatches = 0;
    for (const auto& v : places)
      if (rc.map.Evaluate(reg, v) != m.map.Evaluate(reg, v)) ++mismatches;
    r.Add("reconstruct/" + m.name, "indicator values recover the map", rc.report.ok() && mismatches == 0,
          std::to_string(places.size()) + " places, " + std::to_string(mismatches) + " mismatches");
  }
  PlaceKey leaf = reg.PlacesAbove(d.zeta8, 7).front().key;
  Reconstruction point = FunctionalToMap(reg, PointEvaluation(leaf), all, scope);
  r.Add("reconstruct/point-evaluation", "a non-functional yields an inconsistent table", !point.report.ok(),
        std::to_string(point.report.violations.size()) + " violations");
}

inline void Kernel(FieldRegistry& reg, const DefaultFields& d, const SuiteConfig&, const FieldScope& scope, VerificationReport& r) {
  PlaceSet all = PlaceSet::All();
  std::vector<NamedMap> maps = ShippedMaps(reg, d, all);
  maps.push_back({"lambda_x3", ConsistentMap::Combo({{Rational(3), ConsistentMap::Lambda(all)}})});
  std::vector<LCFunction> family = L0SpanningFamily(reg, all, scope);
  int nonzero = 0;
  ConsistentMap lam = ConsistentMap::Lambda(all);
  for (const auto& f : family)
    if (!Psi(reg, lam, f).IsZero()) ++nonzero;
  r.Add("kernel/lambda", "lambda pairs to zero with every zero-integral function", nonzero == 0,
        std::to_string(family.size()) + " spanning functions");
  for (const auto& m : maps) {
    std::optional<std::size_t> witness;
    for (std::size_t i = 0; i < family.size() && !witness; ++i)
      if (!Psi(reg, m.map, family[i]).IsZero()) witness = i;
    SpanReport span = IsInSpanLambda(m.map, reg, scope);
    bool ok = witness.has_value() != span.in_span;
    std::string detail = span.in_span ? "multiple " + span.ratio.ToString() + " of lambda" : "not a multiple of lambda";
    if (witness) detail += ", nonzero on " + family[*witness].ToString();
    r.Add("kernel/" + m.name, "zero on the spanning family iff a multiple of lambda", ok, detail);
  }
}

inline void Continuity(FieldRegistry& reg, const DefaultFields& d, const SuiteConfig& cfg, const FieldScope& scope, VerificationReport& r) {
  std::vector<FieldId> ids = DefaultFieldIds(d);
  for (const auto& ns : {NamedPlaceSet{"all", PlaceSet::All()}, NamedPlaceSet{"nonarch", PlaceSet::NonArchimedean()}}) {
    std::mt19937_64 rng(cfg.seed + (ns.name == "all" ? 0 : 1));
    std::vector<LCFunction> samples;
    for (int i = 0; i < cfg.samples; ++i) samples.push_back(RandomFunction(reg, rng, ns.set, RandomField(ids, rng)));
    std::vector<NamedMap> maps = ShippedMaps(reg, d, ns.set);
    if (!ns.set.archimedean()) maps = {{"lambda_over_log", ConsistentMap::LambdaOverLog(ns.set)}};
    for (const auto& m : maps) {
      ContinuityReport cr = ContinuityCheck(m.map, reg, samples, cfg.tolerance, scope);
      char buf[128];
      std::snprintf(buf, sizeof buf, "B = %.12g, worst sample ratio %.12g", cr.bound, cr.worst_ratio);
      r.Add("continuity/" + ns.name + "/" + m.name, "|phi(f)| <= B ||f||", cr.ok(), buf);
      if (m.map.kind() == KernelKind::kDirac) {
        BoundReport b = IsBounded(m.map, reg, scope);
        LCFunction w = Indicator(reg, ns.set, b.witness);
        double attained = std::fabs(Phi(reg, m.map, w).ToDouble());
        double target = b.bound * L1Norm(reg, w).ToDouble();
        std::snprintf(buf, sizeof buf, "witness %s attains %.12g of %.12g", b.witness.Id().c_str(), attained, target);
        r.Add("continuity/" + ns.name + "/" + m.name + "/tight", "the bound is attained", attained >= 0.99 * target, buf);
      }
    }
  }
  PlaceSet all = PlaceSet::All();
  std::mt19937_64 rng(cfg.seed + 2);
  int bad = 0;
  for (int i = 0; i < cfg.samples; ++i) {
    LCFunction g = RandomFunction(reg, rng, all, RandomField(ids, rng));
    LCFunction h = ProjectToL0(reg, g, 2);
    if (!Integral(reg, h).IsZero() || L1Norm(reg, h).ToDouble() > 2 * L1Norm(reg, g).ToDouble() + 1e-12) ++bad;
  }
  r.Add("projection/samples", "projection has zero integral and at most doubles the norm", bad == 0,
        std::to_string(cfg.samples) + " samples, " + std::to_string(bad) + " failures");
  LCFunction g = Indicator(reg, all, RationalPlace(3));
  LCFunction h = ProjectToL0(reg, g, 2);
  r.Add("projection/tight", "the factor 2 is attained", L1Norm(reg, h) == L1Norm(reg, g).Scaled(2), L1Norm(reg, h).ToString());
}

inline void Rho(FieldRegistry& reg, const DefaultFields& d, const SuiteConfig&, const FieldScope& scope, VerificationReport& r) {
  std::vector<NamedPlaceSet> sets = {{"s5", PlaceSet::Finite({5})}, {"s25", PlaceSet::Finite({2, 5})}, {"nonarch", PlaceSet::NonArchimedean()}};
  for (FieldId f : {d.gaussian, d.sqrt2}) {
    for (const auto& ns : sets) {
      std::vector<PlaceKey> places = RegisteredPlaces(reg, ns.set, scope);
      std::vector<NamedMap> maps = ShippedMaps(reg, d, ns.set);
      // Maps born over F: a Dirac at the first place of F above the smallest prime of S.
      PlaceKey first = reg.PlacesAbove(f, ns.set.SmallestPrime()).front().key;
      ConsistentMap native = RestrictMap(reg, ConsistentMap::Dirac(reg, ns.set, {first}, ExactScalar(1)), f);
      int bad_ext = 0, bad_res = 0, count = 0;
      for (const auto& m : maps) {
        ConsistentMap round = ExtendMap(RestrictMap(reg, m.map, f), ns.set);
        for (const auto& v : places) {
          ++count;
          if (round.Evaluate(reg, v) != m.map.Evaluate(reg, v)) ++bad_ext;
        }
      }
      std::vector<ConsistentMap> over_f = {native};
      for (const auto& m : maps) over_f.push_back(RestrictMap(reg, m.map, f));
      for (const auto& c : over_f) {
        ConsistentMap round = RestrictMap(reg, ExtendMap(c, ns.set), f);
        for (const auto& v : places) {
          if (!c.InIndex(reg, v)) continue;
          ++count;
          if (round.Evaluate(reg, v) != c.Evaluate(reg, v)) ++bad_res;
        }
      }
      std::string tag = "rho/" + reg.Field(f).Name() + "/" + ns.name;
      r.Add(tag, "restriction and extension are inverse", bad_ext == 0 && bad_res == 0,
            std::to_string(count) + " evaluations, " + std::to_string(bad_ext + bad_res) + " mismatches");
    }
  }
}

inline void Heights(FieldRegistry& reg, const DefaultFields& d, const SuiteConfig& cfg, const FieldScope& scope, VerificationReport& r) {
  std::vector<AlgebraicNumber> catalog = HeightCatalog(reg, d);
  char buf[160];
  for (const auto& a : catalog) {
    ProductFormulaReport pf = ProductFormulaCheck(reg, a, cfg.tolerance);
    r.Add("product-formula/" + a.label, "sum of lambda log||a|| vanishes", pf.ok, pf.sum.ToString());
    double g = GNorm(reg, a).ToDouble();
    double m = 2 * WeilHeightViaMahler(reg, a);
    bool close = std::fabs(g - m) <= 1e-7 * std::max(std::fabs(m), 1e-300) || (m == 0 && g == 0);
    std::snprintf(buf, sizeof buf, "G-norm %.15g, twice Mahler height %.15g", g, m);
    r.Add("g-norm/" + a.label, "G-norm is twice the Weil height", close, buf);
  }
  auto anchor = [&](const std::string& label, double expect) {
    for (const auto& a : catalog)
      if (a.label == label) {
        double h = GNorm(reg, a).ToDouble() / 2;
        std::snprintf(buf, sizeof buf, "h = %.15g, expected %.15g", h, expect);
        r.Add("height-anchor/" + label, "known height values", std::fabs(h - expect) <= 1e-12, buf);
      }
  };
  anchor("2", std::log(2.0));
  anchor("phi", 0.5 * std::log((1 + std::sqrt(5.0)) / 2));
  anchor("cbrt2", std::log(2.0) / 3);
  anchor("zeta8", 0.0);

  PlaceSet fin = PlaceSet::NonArchimedean();
  ConsistentMap normalized = ConsistentMap::LambdaOverLog(fin);
  r.Add("rationality/lambda_over_log", "c(K,v) log p rational everywhere", RationalityCriterion(normalized, reg, scope).ok());
  r.Add("rationality/lambda", "lambda is not of that form", !RationalityCriterion(ConsistentMap::Lambda(fin), reg, scope).ok());
  for (const auto& a : catalog) {
    ExactScalar value = Phi(reg, normalized, HeightFunction(reg, a, fin));
    r.Add("rationality/phi/" + a.label, "phi of a height function is rational", value.IsRational(), value.ToString());
  }
}

}  // namespace suites

// Runs one named suite (or all) against the registry. Deterministic for a fixed seed.
inline VerificationReport RunSuite(const std::string& name, FieldRegistry& reg, const SuiteConfig& cfg = {}) {
  bool known = false;
  for (const auto& n : SuiteNames()) known = known || n == name;
  if (!known) Fail(ErrorKind::kInvalidInput, "unknown suite '" + name + "'");
  VerificationReport report;
  report.suite = name;
  std::optional<DefaultFields> d = LocateDefaultFields(reg);
  if (!d) {
    report.Skip(name, "shipped fields", "registry lacks the shipped fields and inclusions");
    return report;
  }
  const FieldScope scope = reg.FieldIds();
  auto want = [&](const char* s) { return name == "all" || name == s; };
  if (want("consistency")) suites::Consistency(reg, *d, cfg, scope, report);
  if (want("dual")) suites::Dual(reg, *d, cfg, scope, report);
  if (want("kernel")) suites::Kernel(reg, *d, cfg, scope, report);
  if (want("continuity")) suites::Continuity(reg, *d, cfg, scope, report);
  if (want("rho")) suites::Rho(reg, *d, cfg, scope, report);
  if (want("heights")) suites::Heights(reg, *d, cfg, scope, report);
  return report;
}

}  // namespace consmap
