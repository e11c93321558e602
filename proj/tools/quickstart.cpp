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

// A short tour: places, a Dirac map, the functional it induces, and a height.

#include <iostream>

#include "consmap/consmap.hpp"

using namespace consmap;

int main() {
  FieldRegistry reg;
  DefaultFields d = PopulateDefaultRegistry(reg);

  for (const auto& v : reg.PlacesAbove(d.sqrt2_sqrt3, 3))
    std::cout << v.Id() << "  e=" << v.e << " f=" << v.f << "  lambda=" << v.lambda() << "\n";

  PlaceSet s = PlaceSet::Finite({2, 5});
  PlaceKey q5{FieldRegistry::kRationals, PlaceKind::kFinite, 5, 0};
  PlaceKey g5{d.gaussian, PlaceKind::kFinite, 5, 0};
  ConsistentMap dirac = ConsistentMap::Dirac(reg, s, {q5, g5}, ExactScalar(1));
  std::cout << dirac.Describe() << " consistent: " << VerifyConsistency(dirac, reg).ok() << "\n";

  LCFunction f = Indicator(reg, s, g5, ExactScalar(7));
  std::cout << "phi(dirac, 7*1[g5]) = " << Phi(reg, dirac, f).ToString() << "\n";
  std::cout << "phi(lambda, 7*1[g5]) = " << Phi(reg, ConsistentMap::Lambda(s), f).ToString() << "\n";

  AlgebraicNumber phi = MakeAlgebraic(reg, d.sqrt5, QPoly::Parse("1/2 + 1/2*x"), "phi");
  std::cout << "h(phi) = " << GNorm(reg, phi).ToDouble() / 2 << ", Mahler: " << WeilHeightViaMahler(reg, phi) << "\n";
  return 0;
}
