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

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "consmap/consistent/consistent_map.hpp"
#include "consmap/functions/lc_function.hpp"
#include "consmap/numberfields/default_registry.hpp"

namespace consmap {

struct NamedPlaceSet {
  std::string name;
  PlaceSet set;
};

inline std::vector<NamedPlaceSet> DefaultPlaceSets() {
  return {
      {"all", PlaceSet::All()},
      {"nonarch", PlaceSet::NonArchimedean()},
      {"s25", PlaceSet::Finite({2, 5})},
      {"s5", PlaceSet::Finite({5})},
  };
}

// The shipped fields located by minimal polynomial; nullopt if any is missing.
inline std::optional<DefaultFields> LocateDefaultFields(const FieldRegistry& reg) {
  DefaultFields d;
  auto find = [&](const char* poly, FieldId& out) {
    auto id = reg.FindField(QPoly::Parse(poly));
    if (!id) return false;
    out = *id;
    return true;
  };
  if (!find("x^2 + 1", d.gaussian) || !find("x^2 - 2", d.sqrt2) || !find("x^2 - 5", d.sqrt5) || !find("x^3 - 2", d.cbrt2) ||
      !find("x^4 - 10*x^2 + 1", d.sqrt2_sqrt3) || !find("x^4 + 1", d.zeta8))
    return std::nullopt;
  if (!reg.Embeds(d.gaussian, d.zeta8) || !reg.Embeds(d.sqrt2, d.zeta8) || !reg.Embeds(d.sqrt2, d.sqrt2_sqrt3)) return std::nullopt;
  return d;
}

struct NamedMap {
  std::string name;
  ConsistentMap map;
};

// Lambda, three Dirac maps, two density maps and one combination, keeping the
// pieces whose places lie over S.
inline std::vector<NamedMap> ShippedMaps(FieldRegistry& reg, const DefaultFields& d, const PlaceSet& s) {
  std::vector<NamedMap> out;
  out.push_back({"lambda", ConsistentMap::Lambda(s)});
  auto q = [](std::uint64_t p) { return PlaceKey{FieldRegistry::kRationals, PlaceKind::kFinite, p, 0}; };
  auto at = [](FieldId k, std::uint64_t p, int i) { return PlaceKey{k, PlaceKind::kFinite, p, i}; };
  std::optional<ConsistentMap> dirac5, density_a;
  if (s.Contains(5)) {
    dirac5 = ConsistentMap::Dirac(reg, s, {q(5), at(d.gaussian, 5, 0)}, ExactScalar(1));
    out.push_back({"dirac5", *dirac5});
  }
  if (s.Contains(2)) out.push_back({"dirac2", ConsistentMap::Dirac(reg, s, {q(2), at(d.sqrt2, 2, 0), at(d.zeta8, 2, 0)}, ExactScalar(1))});
  if (s.Contains(7)) {
    PlaceKey mid = at(d.sqrt2, 7, 1);
    PlaceKey top = reg.PlacesOver(d.sqrt2_sqrt3, mid).front();
    out.push_back({"dirac7", ConsistentMap::Dirac(reg, s, {q(7), mid, top}, ExactScalar(MakeRational(3, 2)))});
  }
  // Density with a signed step function on Q(i).
  {
    LCFunction g(s, d.gaussian);
    if (s.Contains(5)) g.Set(at(d.gaussian, 5, 0), ExactScalar(3));
    if (s.Contains(2)) g.Set(at(d.gaussian, 2, 0), ExactScalar(-1));
    if (!g.IsZero()) {
      density_a = ConsistentMap::Density(g);
      out.push_back({"density_gauss", *density_a});
    }
  }
  // Density on Q(sqrt5) mixing finite and Archimedean places.
  {
    LCFunction g(s, d.sqrt5);
    if (s.Contains(11)) g.Set(at(d.sqrt5, 11, 0), ExactScalar(2));
    if (s.Contains(3)) g.Set(at(d.sqrt5, 3, 0), ExactScalar(MakeRational(-1, 2)));
    if (s.Contains(5)) g.Set(at(d.sqrt5, 5, 0), ExactScalar(MakeRational(1, 4)));
    if (s.archimedean()) g.Set({d.sqrt5, PlaceKind::kReal, 0, 1}, ExactScalar(5));
    if (!g.IsZero()) out.push_back({"density_sqrt5", ConsistentMap::Density(g)});
  }
  std::vector<std::pair<Rational, ConsistentMap>> terms = {{Rational(2), out.front().map}};
  if (dirac5) terms.emplace_back(Rational(-1), *dirac5);
  if (density_a) terms.emplace_back(MakeRational(1, 3), *density_a);
  out.push_back({"combo", ConsistentMap::Combo(terms)});
  return out;
}

// Uniform-ish integers from the raw engine output; stable across standard libraries.
inline long DrawInt(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

// Random function with small rational values on some places of k over S (primes up to 13).
inline LCFunction RandomFunction(FieldRegistry& reg, std::mt19937_64& rng, const PlaceSet& s, FieldId k) {
  LCFunction f(s, k);
  for (const auto& v : reg.PlacesOverSet(k, s, DefaultPrimeWindow())) {
    if (DrawInt(rng, 0, 2) == 0) continue;
    f.Set(v, ExactScalar(MakeRational(DrawInt(rng, -6, 6), DrawInt(rng, 1, 4))));
  }
  return f;
}

inline FieldId RandomField(const std::vector<FieldId>& ids, std::mt19937_64& rng) {
  return ids[static_cast<std::size_t>(DrawInt(rng, 0, static_cast<long>(ids.size()) - 1))];
}

inline std::vector<FieldId> DefaultFieldIds(const DefaultFields& d) {
  return {d.q, d.gaussian, d.sqrt2, d.sqrt5, d.cbrt2, d.sqrt2_sqrt3, d.zeta8};
}

}  // namespace consmap
