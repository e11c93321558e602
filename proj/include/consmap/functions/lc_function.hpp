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

#include <map>
#include <string>
#include <utility>

#include "consmap/error.hpp"
#include "consmap/exactnum/exact_scalar.hpp"
#include "consmap/numberfields/registry.hpp"
#include "consmap/places/place.hpp"
#include "consmap/places/places.hpp"

namespace consmap {

inline bool PlaceInSet(const PlaceSet& s, const PlaceKey& v) {
  return v.archimedean() ? s.archimedean() : s.Contains(v.prime);
}

// A locally constant, compactly supported function on the place space,
// stored as its values on the places of a base field. Absent entries are 0.
class LCFunction {
 public:
  using Values = std::map<PlaceKey, ExactScalar>;

  LCFunction(PlaceSet place_set, FieldId base) : place_set_(std::move(place_set)), base_(base) {}

  const PlaceSet& place_set() const { return place_set_; }
  FieldId base_field() const { return base_; }
  const Values& values() const { return values_; }
  bool IsZero() const { return values_.empty(); }

  ExactScalar Value(const PlaceKey& v) const {
    if (v.field != base_) Fail(ErrorKind::kInvalidInput, "place " + v.Id() + " is not on the base field");
    auto it = values_.find(v);
    return it == values_.end() ? ExactScalar() : it->second;
  }

  // Zero values are dropped to keep the representation canonical.
  void Set(const PlaceKey& v, const ExactScalar& value) {
    if (v.field != base_) Fail(ErrorKind::kInvalidInput, "place " + v.Id() + " is not on the base field");
    if (!PlaceInSet(place_set_, v)) Fail(ErrorKind::kIndexOutOfRange, "place " + v.Id() + " is outside " + place_set_.ToString());
    if (value.IsZero()) {
      values_.erase(v);
    } else {
      values_[v] = value;
    }
  }

  LCFunction Scaled(const ExactScalar& r) const {
    LCFunction out(place_set_, base_);
    for (const auto& [v, x] : values_) out.Set(v, r * x);
    return out;
  }
  LCFunction operator-() const { return Scaled(ExactScalar(-1)); }

  bool operator==(const LCFunction& o) const {
    return place_set_ == o.place_set_ && base_ == o.base_ && values_ == o.values_;
  }

  std::string ToString() const {
    std::string s = "LC[" + std::to_string(base_) + " over " + place_set_.ToString() + "]{";
    bool first = true;
    for (const auto& [v, x] : values_) {
      s += (first ? "" : ", ") + v.Id() + ": " + x.ToString();
      first = false;
    }
    return s + "}";
  }

 private:
  PlaceSet place_set_;
  FieldId base_;
  Values values_;
};

inline LCFunction Indicator(FieldRegistry& reg, const PlaceSet& s, const PlaceKey& v, const ExactScalar& value = ExactScalar(1)) {
  reg.GetPlace(v);
  LCFunction f(s, v.field);
  f.Set(v, value);
  return f;
}

// Pull f back along emb: each place w of the target takes the value at the place below it.
inline LCFunction Refine(FieldRegistry& reg, const LCFunction& f, const Embedding& emb) {
  if (emb.source != f.base_field()) Fail(ErrorKind::kInvalidInput, "embedding does not start at the base field");
  if (emb.source == emb.target) return f;
  LCFunction out(f.place_set(), emb.target);
  for (const auto& [v, x] : f.values())
    for (const auto& w : PlacesOver(reg, emb, v)) out.Set(w, x);
  return out;
}

inline LCFunction RefineTo(FieldRegistry& reg, const LCFunction& f, FieldId target) {
  if (target == f.base_field()) return f;
  return Refine(reg, f, reg.RequireEmbedding(f.base_field(), target));
}

inline LCFunction Add(FieldRegistry& reg, const LCFunction& f, const LCFunction& g) {
  if (f.place_set() != g.place_set()) Fail(ErrorKind::kInvalidInput, "place sets differ");
  FieldId m = f.base_field() == g.base_field() ? f.base_field() : reg.Compositum(f.base_field(), g.base_field()).field;
  LCFunction a = RefineTo(reg, f, m);
  LCFunction b = RefineTo(reg, g, m);
  for (const auto& [v, x] : b.values()) a.Set(v, a.Value(v) + x);
  return a;
}

inline LCFunction Subtract(FieldRegistry& reg, const LCFunction& f, const LCFunction& g) { return Add(reg, f, -g); }

inline ExactScalar Integral(FieldRegistry& reg, const LCFunction& f) {
  ExactScalar total;
  for (const auto& [v, x] : f.values()) total += x.Scaled(reg.Lambda(v));
  return total;
}

inline ExactScalar L1Norm(FieldRegistry& reg, const LCFunction& f, double tolerance = 1e-9) {
  ExactScalar total;
  for (const auto& [v, x] : f.values()) total += AbsoluteValue(x, tolerance).Scaled(reg.Lambda(v));
  return total;
}

inline bool IsInL0(FieldRegistry& reg, const LCFunction& f, double tolerance = 1e-9) {
  ExactScalar r = Integral(reg, f);
  return r.IsSymbolicZero() && std::fabs(r.residual()) <= tolerance;
}

// g minus integral(g) times the indicator of the rational place p.
inline LCFunction ProjectToL0(FieldRegistry& reg, const LCFunction& g, std::uint64_t p) {
  if (!g.place_set().Contains(p)) Fail(ErrorKind::kInvalidInput, std::to_string(p) + " is not in " + g.place_set().ToString());
  ExactScalar r = Integral(reg, g);
  if (r.IsZero()) return g;
  PlaceKey rational_p{FieldRegistry::kRationals, PlaceKind::kFinite, p, 0};
  LCFunction shift = RefineTo(reg, Indicator(reg, g.place_set(), rational_p, r), g.base_field());
  return Subtract(reg, g, shift);
}

inline LCFunction ProjectToL0(FieldRegistry& reg, const LCFunction& g) {
  return ProjectToL0(reg, g, g.place_set().SmallestPrime());
}

}  // namespace consmap
