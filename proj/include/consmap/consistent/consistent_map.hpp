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
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "consmap/error.hpp"
#include "consmap/exactnum/exact_scalar.hpp"
#include "consmap/functions/lc_function.hpp"
#include "consmap/numberfields/registry.hpp"
#include "consmap/places/place.hpp"
#include "consmap/places/places.hpp"

namespace consmap {

enum class KernelKind { kLambda, kLambdaOverLog, kDirac, kDensity, kCombo, kTable, kConstant, kExtended };

inline std::string KernelName(KernelKind k) {
  switch (k) {
    case KernelKind::kLambda: return "lambda";
    case KernelKind::kLambdaOverLog: return "lambda_over_log";
    case KernelKind::kDirac: return "dirac";
    case KernelKind::kDensity: return "density";
    case KernelKind::kCombo: return "combo";
    case KernelKind::kTable: return "table";
    case KernelKind::kConstant: return "constant";
    case KernelKind::kExtended: return "extended";
  }
  return "unknown";
}

// Fields a check ranges over; empty means every field registered when the check starts.
// Composita created while evaluating are used but not ranged over.
using FieldScope = std::vector<FieldId>;

inline FieldScope ScopeOrAll(const FieldRegistry& reg, const FieldScope& scope) {
  return scope.empty() ? reg.FieldIds() : scope;
}

// Every place over S of every field in scope, in field order.
inline std::vector<PlaceKey> RegisteredPlaces(FieldRegistry& reg, const PlaceSet& s, const FieldScope& scope = {}) {
  std::vector<PlaceKey> out;
  for (FieldId k : ScopeOrAll(reg, scope))
    for (const auto& v : reg.PlacesOverSet(k, s, DefaultPrimeWindow())) out.push_back(v);
  return out;
}

// A consistent map given by a kernel and an evaluation rule. The index set is
// the pairs (K, v) with K containing the index base field and v over the place set.
class ConsistentMap {
 public:
  static ConsistentMap Lambda(const PlaceSet& s) { return ConsistentMap(MakeNode(KernelKind::kLambda, s)); }

  // lambda(v) / log p_v. Defined on non-Archimedean place sets only.
  static ConsistentMap LambdaOverLog(const PlaceSet& s) {
    if (s.archimedean()) Fail(ErrorKind::kArchimedeanPlaceSet, "lambda/log p needs a non-Archimedean place set");
    return ConsistentMap(MakeNode(KernelKind::kLambdaOverLog, s));
  }

  // Weight carried by a coherent chain of places; beyond the chain tip the
  // weight is spread over Y(tip) in proportion to lambda.
  static ConsistentMap Dirac(FieldRegistry& reg, const PlaceSet& s, std::vector<PlaceKey> chain, const ExactScalar& weight) {
    if (chain.empty()) Fail(ErrorKind::kInvalidInput, "empty Dirac chain");
    for (const auto& v : chain) {
      reg.GetPlace(v);
      if (!PlaceInSet(s, v)) Fail(ErrorKind::kIndexOutOfRange, "chain place " + v.Id() + " is outside " + s.ToString());
    }
    for (std::size_t i = 1; i < chain.size(); ++i)
      if (reg.Restrict(chain[i], chain[i - 1].field) != chain[i - 1])
        Fail(ErrorKind::kInvalidInput, "chain place " + chain[i].Id() + " does not lie over " + chain[i - 1].Id());
    auto node = MakeNode(KernelKind::kDirac, s);
    node->chain = std::move(chain);
    node->weight = weight;
    return ConsistentMap(node);
  }

  static ConsistentMap Density(const LCFunction& g) {
    auto node = MakeNode(KernelKind::kDensity, g.place_set());
    node->density.emplace(g);
    return ConsistentMap(node);
  }

  static ConsistentMap Combo(const std::vector<std::pair<Rational, ConsistentMap>>& terms) {
    if (terms.empty()) Fail(ErrorKind::kInvalidInput, "empty linear combination");
    const ConsistentMap& first = terms.front().second;
    for (const auto& [q, c] : terms)
      if (c.place_set() != first.place_set() || c.index_base_ != first.index_base_)
        Fail(ErrorKind::kInvalidInput, "combined maps have different index sets");
    auto node = MakeNode(KernelKind::kCombo, first.place_set());
    node->terms = terms;
    ConsistentMap out(node);
    out.index_base_ = first.index_base_;
    return out;
  }

  // Values stored per place; anything outside the table is out of range.
  static ConsistentMap Table(const PlaceSet& s, std::map<PlaceKey, ExactScalar> table, std::string label = "table") {
    auto node = MakeNode(KernelKind::kTable, s);
    node->table = std::move(table);
    node->label = std::move(label);
    return ConsistentMap(node);
  }

  // The same value at every index. Not consistent unless the value is 0.
  static ConsistentMap Constant(const PlaceSet& s, const ExactScalar& value) {
    auto node = MakeNode(KernelKind::kConstant, s);
    node->weight = value;
    return ConsistentMap(node);
  }

  KernelKind kind() const { return node_->kind; }
  const PlaceSet& place_set() const { return node_->place_set; }
  FieldId index_base() const { return index_base_; }
  const std::optional<std::set<PlaceKey>>& index_places() const { return index_places_; }
  const std::vector<PlaceKey>& chain() const { return node_->chain; }
  const ExactScalar& weight() const { return node_->weight; }
  const std::optional<LCFunction>& density() const { return node_->density; }
  const std::vector<std::pair<Rational, ConsistentMap>>& terms() const { return node_->terms; }
  const std::map<PlaceKey, ExactScalar>& table() const { return node_->table; }
  const std::string& label() const { return node_->label; }
  const ConsistentMap& inner() const { return *node_->inner; }

  bool InIndex(FieldRegistry& reg, const PlaceKey& v) const {
    if (!PlaceInSet(place_set(), v)) return false;
    if (kind() == KernelKind::kTable && !table().count(v)) return false;
    if (index_base_ != FieldRegistry::kRationals && v.field != index_base_ && !reg.Embeds(index_base_, v.field)) return false;
    if (index_places_ && !index_places_->count(reg.Restrict(v, index_base_))) return false;
    return true;
  }

  ExactScalar Evaluate(FieldRegistry& reg, const PlaceKey& v) const {
    if (!InIndex(reg, v)) Fail(ErrorKind::kIndexOutOfRange, v.Id() + " is outside the index set of this " + KernelName(kind()) + " map");
    auto key = std::make_pair(reg.serial(), v);
    {
      std::lock_guard<std::mutex> lock(node_->mu);
      auto it = node_->cache.find(key);
      if (it != node_->cache.end()) return it->second;
    }
    ExactScalar value = Compute(reg, v);
    std::lock_guard<std::mutex> lock(node_->mu);
    node_->cache.emplace(key, value);
    return value;
  }

  // Same kernel viewed on the pairs (K, v) with K over f; `places`, when given,
  // limits v to those lying over the listed places of f.
  ConsistentMap Restricted(FieldRegistry& reg, FieldId f, std::optional<std::set<PlaceKey>> places = std::nullopt) const {
    if (f != index_base_ && index_base_ != FieldRegistry::kRationals && !reg.Embeds(index_base_, f))
      Fail(ErrorKind::kIndexOutOfRange, reg.Field(f).Name() + " does not contain the index base");
    reg.Field(f);
    ConsistentMap out(*this);
    out.index_base_ = f;
    if (places) {
      for (const auto& w : *places) {
        if (w.field != f) Fail(ErrorKind::kInvalidInput, "restriction place " + w.Id() + " is not on " + reg.Field(f).Name());
        if (!PlaceInSet(place_set(), w)) Fail(ErrorKind::kIndexOutOfRange, w.Id() + " is outside " + place_set().ToString());
      }
    }
    out.index_places_ = std::move(places);
    return out;
  }

  // d(K, v) = sum over w | v of c(L, w), L the compositum of K and the index base.
  ConsistentMap Extended() const {
    if (index_places_) Fail(ErrorKind::kInvalidInput, "extension needs every place of the base over the place set");
    if (index_base_ == FieldRegistry::kRationals) return *this;
    auto node = MakeNode(KernelKind::kExtended, place_set());
    node->inner = std::make_shared<ConsistentMap>(*this);
    return ConsistentMap(node);
  }

  std::string Describe() const {
    std::string s = KernelName(kind());
    if (kind() == KernelKind::kDirac) {
      s += "[";
      for (std::size_t i = 0; i < chain().size(); ++i) s += (i ? " > " : "") + chain()[i].Id();
      s += "; " + weight().ToString() + "]";
    }
    if (kind() == KernelKind::kTable) s += "[" + label() + "]";
    if (index_base_ != FieldRegistry::kRationals) s += " over K" + std::to_string(index_base_);
    return s;
  }

 private:
  struct Node {
    KernelKind kind = KernelKind::kLambda;
    PlaceSet place_set = PlaceSet::All();
    std::vector<PlaceKey> chain;
    ExactScalar weight;
    std::optional<LCFunction> density;
    std::vector<std::pair<Rational, ConsistentMap>> terms;
    std::map<PlaceKey, ExactScalar> table;
    std::string label;
    std::shared_ptr<const ConsistentMap> inner;
    mutable std::mutex mu;
    mutable std::map<std::pair<std::uint64_t, PlaceKey>, ExactScalar> cache;
  };

  static std::shared_ptr<Node> MakeNode(KernelKind kind, const PlaceSet& s) {
    auto node = std::make_shared<Node>();
    node->kind = kind;
    node->place_set = s;
    return node;
  }

  explicit ConsistentMap(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static bool SameRationalPlace(const PlaceKey& a, const PlaceKey& b) {
    return a.archimedean() == b.archimedean() && (a.archimedean() || a.prime == b.prime);
  }

  static const std::vector<Place>& Candidates(FieldRegistry& reg, FieldId m, const PlaceKey& like) {
    return like.archimedean() ? reg.ArchimedeanPlaces(m) : reg.PlacesAbove(m, like.prime);
  }

  ExactScalar Compute(FieldRegistry& reg, const PlaceKey& v) const {
    switch (kind()) {
      case KernelKind::kLambda:
        return reg.Lambda(v);
      case KernelKind::kLambdaOverLog:
        return ExactScalar::InvLog(v.prime, reg.Lambda(v));
      case KernelKind::kConstant:
        return weight();
      case KernelKind::kTable: {
        auto it = table().find(v);
        if (it == table().end()) Fail(ErrorKind::kIndexOutOfRange, v.Id() + " is not in table " + label());
        return it->second;
      }
      case KernelKind::kCombo: {
        ExactScalar total;
        for (const auto& [q, c] : terms()) total += c.Evaluate(reg, v).Scaled(q);
        return total;
      }
      case KernelKind::kDirac:
        return DiracValue(reg, v);
      case KernelKind::kDensity:
        return DensityValue(reg, v);
      case KernelKind::kExtended:
        return ExtendedValue(reg, v);
    }
    return ExactScalar();
  }

  ExactScalar DiracValue(FieldRegistry& reg, const PlaceKey& v) const {
    const PlaceKey& tip = chain().back();
    if (!SameRationalPlace(v, tip)) return ExactScalar();
    if (v.field == tip.field) return v == tip ? weight() : ExactScalar();
    if (reg.Embeds(v.field, tip.field)) return reg.Restrict(tip, v.field) == v ? weight() : ExactScalar();
    // Share of Y(tip) inside Y(v), measured by lambda on the compositum.
    FieldId m = reg.Compositum(v.field, tip.field).field;
    Rational mass = 0;
    for (const auto& w : Candidates(reg, m, v))
      if (reg.Restrict(w.key, v.field) == v && reg.Restrict(w.key, tip.field) == tip) mass += w.lambda();
    return weight().Scaled(mass / reg.Lambda(tip));
  }

  ExactScalar DensityValue(FieldRegistry& reg, const PlaceKey& v) const {
    const LCFunction& g = *density();
    FieldId b = g.base_field();
    if (v.field == b) return g.Value(v).Scaled(reg.Lambda(v));
    if (reg.Embeds(b, v.field)) return g.Value(reg.Restrict(v, b)).Scaled(reg.Lambda(v));
    FieldId m = reg.Compositum(v.field, b).field;
    ExactScalar total;
    for (const auto& w : Candidates(reg, m, v))
      if (reg.Restrict(w.key, v.field) == v) total += g.Value(reg.Restrict(w.key, b)).Scaled(w.lambda());
    return total;
  }

  ExactScalar ExtendedValue(FieldRegistry& reg, const PlaceKey& v) const {
    const ConsistentMap& c = inner();
    FieldId f = c.index_base();
    if (v.field == f || reg.Embeds(f, v.field)) return c.Evaluate(reg, v);
    FieldId l = reg.Compositum(v.field, f).field;
    ExactScalar total;
    for (const auto& w : reg.PlacesOver(l, v)) total += c.Evaluate(reg, w);
    return total;
  }

  std::shared_ptr<const Node> node_;
  FieldId index_base_ = FieldRegistry::kRationals;
  std::optional<std::set<PlaceKey>> index_places_;
};

inline ConsistentMap operator+(const ConsistentMap& a, const ConsistentMap& b) {
  return ConsistentMap::Combo({{Rational(1), a}, {Rational(1), b}});
}
inline ConsistentMap operator*(const Rational& q, const ConsistentMap& c) { return ConsistentMap::Combo({{q, c}}); }

inline ConsistentMap RestrictMap(FieldRegistry& reg, const ConsistentMap& c, FieldId f,
                                 std::optional<std::set<PlaceKey>> places = std::nullopt) {
  return c.Restricted(reg, f, std::move(places));
}

// Requires c to be indexed by every place of its base over S.
inline ConsistentMap ExtendMap(const ConsistentMap& c, const PlaceSet& s) {
  if (s != c.place_set()) Fail(ErrorKind::kInvalidInput, "extension place set differs from the map's");
  return c.Extended();
}

struct BranchCheck {
  FieldId source = 0;
  FieldId target = 0;
  PlaceKey place;
  ExactScalar below;
  ExactScalar above;
  bool ok = true;
};

struct ConsistencyReport {
  std::vector<BranchCheck> checks;
  std::vector<BranchCheck> violations;
  bool ok() const { return violations.empty(); }
};

// Branch law c(K, v) = sum over w | v of c(L, w) on every registered embedding K -> L.
inline ConsistencyReport VerifyConsistency(const ConsistentMap& c, FieldRegistry& reg, const FieldScope& scope = {}) {
  ConsistencyReport report;
  FieldScope fields = ScopeOrAll(reg, scope);
  auto in_scope = [&](FieldId k) { return std::find(fields.begin(), fields.end(), k) != fields.end(); };
  std::vector<Embedding> embeddings = reg.AllEmbeddings();
  for (const auto& emb : embeddings) {
    if (emb.source == emb.target || !in_scope(emb.source) || !in_scope(emb.target)) continue;
    for (const auto& v : reg.PlacesOverSet(emb.source, c.place_set(), DefaultPrimeWindow())) {
      if (!c.InIndex(reg, v)) continue;
      std::vector<PlaceKey> above = reg.PlacesOver(emb.target, v);
      // Table-backed maps only cover the fragment they were built on.
      if (!std::all_of(above.begin(), above.end(), [&](const PlaceKey& w) { return c.InIndex(reg, w); })) continue;
      BranchCheck chk;
      chk.source = emb.source;
      chk.target = emb.target;
      chk.place = v;
      chk.below = c.Evaluate(reg, v);
      for (const auto& w : above) chk.above += c.Evaluate(reg, w);
      chk.ok = chk.below == chk.above;
      report.checks.push_back(chk);
      if (!chk.ok) report.violations.push_back(chk);
    }
  }
  return report;
}

struct BoundReport {
  bool bounded = true;
  double bound = 0.0;
  PlaceKey witness;
  std::size_t places_checked = 0;
  // The bound is a supremum over the registered fragment only.
  std::string scope = "registered places only";
};

inline double RatioToLambda(FieldRegistry& reg, const ConsistentMap& c, const PlaceKey& v) {
  return std::fabs(c.Evaluate(reg, v).ToDouble()) / reg.Lambda(v).get_d();
}

inline BoundReport IsBounded(const ConsistentMap& c, FieldRegistry& reg, const FieldScope& scope = {}) {
  BoundReport r;
  for (const auto& v : RegisteredPlaces(reg, c.place_set(), scope)) {
    if (!c.InIndex(reg, v)) continue;
    double ratio = RatioToLambda(reg, c, v);
    ++r.places_checked;
    if (!std::isfinite(ratio)) r.bounded = false;
    if (ratio > r.bound) {
      r.bound = ratio;
      r.witness = v;
    }
  }
  return r;
}

struct SpanReport {
  bool in_span = false;
  ExactScalar ratio;
  std::optional<PlaceKey> witness;
};

// The ratio is read at the first indexed place, (Q, smallest prime) for maps over Q.
inline SpanReport IsInSpanLambda(const ConsistentMap& c, FieldRegistry& reg, const FieldScope& scope = {}) {
  SpanReport r;
  bool have_ratio = false;
  r.in_span = true;
  for (const auto& v : RegisteredPlaces(reg, c.place_set(), scope)) {
    if (!c.InIndex(reg, v)) continue;
    Rational lam = reg.Lambda(v);
    ExactScalar value = c.Evaluate(reg, v);
    if (!have_ratio) {
      r.ratio = value.Scaled(1 / lam);
      have_ratio = true;
      continue;
    }
    if (value != r.ratio.Scaled(lam)) {
      r.in_span = false;
      r.witness = v;
      break;
    }
  }
  return r;
}

}  // namespace consmap
