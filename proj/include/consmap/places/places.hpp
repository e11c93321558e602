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
#include <vector>

#include "consmap/error.hpp"
#include "consmap/numberfields/registry.hpp"
#include "consmap/places/place.hpp"

namespace consmap {

inline const std::vector<Place>& PlacesAbove(FieldRegistry& reg, FieldId k, std::uint64_t p) { return reg.PlacesAbove(k, p); }

inline const std::vector<Place>& ArchimedeanPlaces(FieldRegistry& reg, FieldId k) { return reg.ArchimedeanPlaces(k); }

// Primes consulted when a place set is cofinite and a finite listing is needed.
inline const std::vector<std::uint64_t>& DefaultPrimeWindow() {
  static const std::vector<std::uint64_t> window = {2, 3, 5, 7, 11, 13};
  return window;
}

inline Rational LambdaValue(const Place& v) { return v.lambda(); }

// Places w of emb.target with w | v, where v is a place of emb.source.
inline std::vector<PlaceKey> PlacesOver(FieldRegistry& reg, const Embedding& emb, const PlaceKey& v) {
  if (v.field != emb.source) Fail(ErrorKind::kInvalidInput, "place " + v.Id() + " is not on the embedding source");
  Embedding registered = reg.RequireEmbedding(emb.source, emb.target);
  if (registered.image != reg.Field(emb.target).Reduce(emb.image))
    Fail(ErrorKind::kConflictingEmbedding, "embedding differs from the registered one");
  return reg.PlacesOver(emb.target, v);
}

// Sum of e*f over the places above p; equals the degree.
inline int LocalDegreeSum(FieldRegistry& reg, FieldId k, std::uint64_t p) {
  int s = 0;
  for (const auto& pl : reg.PlacesAbove(k, p)) s += pl.local_degree();
  return s;
}

}  // namespace consmap
