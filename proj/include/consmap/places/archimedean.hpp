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
#include <limits>
#include <vector>

#include "consmap/error.hpp"
#include "consmap/exactnum/roots.hpp"
#include "consmap/numberfields/number_field.hpp"

namespace consmap {

struct ArchimedeanRoots {
  std::vector<double> real;      // ascending
  std::vector<Complex> complex;  // one per conjugate pair, Im > 0, by (Re, Im)
  double min_separation = std::numeric_limits<double>::infinity();
  double log_separation_bound = 0;  // Mahler lower bound, for the log

  // All n roots: reals, then each pair as (z, conj z).
  std::vector<Complex> All() const {
    std::vector<Complex> out;
    for (double r : real) out.emplace_back(r, 0.0);
    for (auto z : complex) {
      out.push_back(z);
      out.push_back(std::conj(z));
    }
    return out;
  }
};

inline ArchimedeanRoots ComputeArchimedeanRoots(const NumberField& k) {
  ArchimedeanRoots out;
  const QPoly& f = k.min_poly();
  out.real = RealRoots(f);
  std::vector<Complex> all = ComplexRoots(f);
  std::sort(all.begin(), all.end(), [](Complex a, Complex b) { return std::abs(a.imag()) < std::abs(b.imag()); });
  std::size_t r = out.real.size();
  for (std::size_t i = r; i < all.size(); ++i)
    if (all[i].imag() > 0) out.complex.push_back(all[i]);
  if (r + 2 * out.complex.size() != static_cast<std::size_t>(k.degree()))
    Fail(ErrorKind::kRootFindingFailure, "conjugate pairs not resolved for " + f.ToString());
  std::sort(out.complex.begin(), out.complex.end(), [](Complex a, Complex b) {
    double tol = 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
    if (std::abs(a.real() - b.real()) > tol) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  auto roots = out.All();
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j) out.min_separation = std::min(out.min_separation, std::abs(roots[i] - roots[j]));
  if (k.degree() > 1) out.log_separation_bound = LogRootSeparationBound(f, k.Discriminant());
  return out;
}

}  // namespace consmap
