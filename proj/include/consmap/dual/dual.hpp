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

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "consmap/consistent/consistent_map.hpp"
#include "consmap/error.hpp"
#include "consmap/exactnum/exact_scalar.hpp"
#include "consmap/functions/lc_function.hpp"
#include "consmap/numberfields/registry.hpp"

namespace consmap {

// Phi_c(f) = sum over v of c(K, v) f(v), K the base field of f.
inline ExactScalar Phi(FieldRegistry& reg, const ConsistentMap& c, const LCFunction& f) {
  if (c.place_set() != f.place_set()) Fail(ErrorKind::kInvalidInput, "map and function have different place sets");
  const LCFunction* g = &f;
  std::optional<LCFunction> lifted;
  FieldId base = f.base_field();
  FieldId need = c.index_base();
  if (need != FieldRegistry::kRationals && base != need && !reg.Embeds(need, base)) {
    lifted = RefineTo(reg, f, reg.Compositum(base, need).field);
    g = &*lifted;
  }
  ExactScalar total;
  for (const auto& [v, x] : g->values()) total += c.Evaluate(reg, v) * x;
  return total;
}

inline bool PhiIndependence(FieldRegistry& reg, const ConsistentMap& c, const LCFunction& f, const Embedding& emb) {
  return Phi(reg, c, f) == Phi(reg, c, Refine(reg, f, emb));
}

inline ExactScalar Psi(FieldRegistry& reg, const ConsistentMap& c, const LCFunction& f) {
  if (!IsInL0(reg, f)) Fail(ErrorKind::kNotInL0, "function has nonzero integral " + Integral(reg, f).ToString());
  return Phi(reg, c, f);
}

// A linear functional on LC functions, given as a procedure.
struct Functional {
  std::function<ExactScalar(FieldRegistry&, const LCFunction&)> oracle;
  std::string label;

  ExactScalar operator()(FieldRegistry& reg, const LCFunction& f) const { return oracle(reg, f); }
};

inline Functional IntegrationFunctional() {
  return {[](FieldRegistry& reg, const LCFunction& f) { return Integral(reg, f); }, "integral"};
}

inline Functional PhiFunctional(const ConsistentMap& c) {
  return {[c](FieldRegistry& reg, const LCFunction& f) { return Phi(reg, c, f); }, "phi[" + c.Describe() + "]"};
}

// f -> f(v0), read off the stored values without refining. Not a functional on
// the place space; used as a negative control.
inline Functional PointEvaluation(const PlaceKey& v0) {
  return {[v0](FieldRegistry&, const LCFunction& f) {
            if (f.base_field() != v0.field) return ExactScalar();
            return f.Value(v0);
          },
          "point[" + v0.Id() + "]"};
}

// a F(f) + b F(g) == F(a f + b g).
inline bool LinearOn(FieldRegistry& reg, const Functional& fn, const LCFunction& f, const LCFunction& g, const Rational& a,
                     const Rational& b) {
  ExactScalar lhs = fn(reg, f).Scaled(a) + fn(reg, g).Scaled(b);
  ExactScalar rhs = fn(reg, Add(reg, f.Scaled(a), g.Scaled(b)));
  return lhs.ApproxEq(rhs, 1e-12);
}

struct Reconstruction {
  ConsistentMap map;
  ConsistencyReport report;
};

// c(K, v) := F(indicator(K, v)) on every registered place, then checked for consistency.
inline Reconstruction FunctionalToMap(FieldRegistry& reg, const Functional& fn, const PlaceSet& s, const FieldScope& scope = {}) {
  FieldScope fields = ScopeOrAll(reg, scope);
  std::map<PlaceKey, ExactScalar> table;
  for (const auto& v : RegisteredPlaces(reg, s, fields)) table[v] = fn(reg, Indicator(reg, s, v));
  ConsistentMap map = ConsistentMap::Table(s, std::move(table), fn.label);
  ConsistencyReport report = VerifyConsistency(map, reg, fields);
  return {map, report};
}

// For every registered field and every pair u != v of its places over S: the
// function [K:Q]/[K_u:Q_p] at u and -[K:Q]/[K_v:Q_q] at v. Spans L0.
inline std::vector<LCFunction> L0SpanningFamily(FieldRegistry& reg, const PlaceSet& s, const FieldScope& scope = {}) {
  std::vector<LCFunction> out;
  for (FieldId k : ScopeOrAll(reg, scope)) {
    std::vector<PlaceKey> places = reg.PlacesOverSet(k, s, DefaultPrimeWindow());
    int n = reg.Field(k).degree();
    for (std::size_t i = 0; i < places.size(); ++i)
      for (std::size_t j = i + 1; j < places.size(); ++j) {
        LCFunction h(s, k);
        h.Set(places[i], MakeRational(n, reg.GetPlace(places[i]).local_degree()));
        h.Set(places[j], Rational(-MakeRational(n, reg.GetPlace(places[j]).local_degree())));
        out.push_back(std::move(h));
      }
  }
  return out;
}

struct ContinuityReport {
  double bound = 0.0;
  std::size_t samples = 0;
  std::vector<std::size_t> sample_failures;
  std::vector<PlaceKey> place_failures;
  double worst_ratio = 0.0;  // max |phi(f)| / ||f|| over samples
  bool ok() const { return sample_failures.empty() && place_failures.empty(); }
};

// |phi(c, f)| <= B ||f|| on the samples, and |c(K, v)| <= B lambda(v) on registered places.
inline ContinuityReport ContinuityCheck(const ConsistentMap& c, FieldRegistry& reg, const std::vector<LCFunction>& samples,
                                        double tolerance = 1e-9, const FieldScope& scope = {}) {
  FieldScope fields = ScopeOrAll(reg, scope);
  ContinuityReport r;
  r.bound = IsBounded(c, reg, fields).bound;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double value = std::fabs(Phi(reg, c, samples[i]).ToDouble());
    double norm = L1Norm(reg, samples[i]).ToDouble();
    ++r.samples;
    if (norm > 0) r.worst_ratio = std::max(r.worst_ratio, value / norm);
    if (value > r.bound * norm + tolerance) r.sample_failures.push_back(i);
  }
  for (const auto& v : RegisteredPlaces(reg, c.place_set(), fields)) {
    if (!c.InIndex(reg, v)) continue;
    if (RatioToLambda(reg, c, v) > r.bound) r.place_failures.push_back(v);
  }
  return r;
}

struct RationalityEntry {
  PlaceKey place;
  ExactScalar value;
  bool ok = true;
};

struct RationalityReport {
  std::vector<RationalityEntry> entries;
  bool ok() const {
    for (const auto& e : entries)
      if (!e.ok) return false;
    return true;
  }
};

// Whether c(K, v) log p_v is rational at every registered place.
inline RationalityReport RationalityCriterion(const ConsistentMap& c, FieldRegistry& reg, const FieldScope& scope = {}) {
  if (c.place_set().archimedean()) Fail(ErrorKind::kArchimedeanPlaceSet, "the criterion needs a non-Archimedean place set");
  RationalityReport r;
  for (const auto& v : RegisteredPlaces(reg, c.place_set(), scope)) {
    if (!c.InIndex(reg, v)) continue;
    ExactScalar value = c.Evaluate(reg, v);
    r.entries.push_back({v, value, value.IsRationalMultipleOfInvLog(v.prime)});
  }
  return r;
}

}  // namespace consmap
