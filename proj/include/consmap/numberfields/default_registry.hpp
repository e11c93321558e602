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

#include "consmap/numberfields/registry.hpp"

namespace consmap {

// Handles of the shipped fields.
struct DefaultFields {
  FieldId q = FieldRegistry::kRationals;
  FieldId gaussian = 0;      // x^2 + 1
  FieldId sqrt2 = 0;         // x^2 - 2
  FieldId sqrt5 = 0;         // x^2 - 5
  FieldId cbrt2 = 0;         // x^3 - 2
  FieldId sqrt2_sqrt3 = 0;   // x^4 - 10x^2 + 1, theta = sqrt2 + sqrt3
  FieldId zeta8 = 0;         // x^4 + 1
};

inline DefaultFields PopulateDefaultRegistry(FieldRegistry& reg) {
  DefaultFields d;
  d.gaussian = reg.AddField(QPoly::Parse("x^2 + 1"));
  d.sqrt2 = reg.AddField(QPoly::Parse("x^2 - 2"));
  d.sqrt5 = reg.AddField(QPoly::Parse("x^2 - 5"));
  d.cbrt2 = reg.AddField(QPoly::Parse("x^3 - 2"));
  d.sqrt2_sqrt3 = reg.AddField(QPoly::Parse("x^4 - 10*x^2 + 1"));
  d.zeta8 = reg.AddField(QPoly::Parse("x^4 + 1"));
  reg.DeclareEmbeddings({
      {d.gaussian, d.zeta8, QPoly::Parse("x^2")},
      {d.sqrt2, d.zeta8, QPoly::Parse("-x^3 + x")},
      {d.sqrt2, d.sqrt2_sqrt3, QPoly::Parse("1/2*x^3 - 9/2*x")},
  });
  return d;
}

}  // namespace consmap
