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

// Independent oracles shared by the tests. Nothing here calls into the library's
// factorization or root finding.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "consmap/heights/heights.hpp"

namespace consmap::oracle {

// Naive F_p arithmetic on coefficient vectors, low degree first.
using Naive = std::vector<long>;

inline Naive NaiveMod(Naive a, const Naive& m, long p) {
  while (a.size() >= m.size()) {
    long t = a.back() % p;
    std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] = ((a[shift + i] - t * m[i]) % p + p) % p;
    a.pop_back();
  }
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

inline Naive NaiveDiv(Naive a, const Naive& m, long p) {
  Naive q(a.size() - m.size() + 1);
  while (a.size() >= m.size()) {
    long t = a.back() % p;
    std::size_t shift = a.size() - m.size();
    q[shift] = t;
    for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] = ((a[shift + i] - t * m[i]) % p + p) % p;
    a.pop_back();
  }
  return q;
}

// Degrees (with multiplicity) of the irreducible factors of a monic integer polynomial mod p,
// by trial division with every monic polynomial of increasing degree.
inline std::vector<int> BruteForceFactorDegrees(const QPoly& f, long p) {
  Naive a;
  for (const auto& c : f.coeffs()) a.push_back((BigInt(BigInt(c) % p).get_si() + p) % p);
  std::vector<int> degrees;
  for (int d = 1; static_cast<int>(a.size()) - 1 >= d;) {
    if (2 * d > static_cast<int>(a.size()) - 1) {
      degrees.push_back(static_cast<int>(a.size()) - 1);
      break;
    }
    bool found = false;
    long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (long code = 0; code < count && !found; ++code) {
      Naive m(static_cast<std::size_t>(d) + 1);
      long c = code;
      for (int i = 0; i < d; ++i) {
        m[static_cast<std::size_t>(i)] = c % p;
        c /= p;
      }
      m[static_cast<std::size_t>(d)] = 1;
      if (NaiveMod(a, m, p).empty()) {
        degrees.push_back(d);
        a = NaiveDiv(a, m, p);
        found = true;
      }
    }
    if (!found) ++d;
  }
  std::sort(degrees.begin(), degrees.end());
  return degrees;
}

// gcd(f, f') over F_p is constant iff f is squarefree mod p.
inline bool NaiveSquarefree(const QPoly& f, long p) {
  Naive a;
  for (const auto& c : f.coeffs()) a.push_back((BigInt(BigInt(c) % p).get_si() + p) % p);
  Naive b;
  for (std::size_t i = 1; i < a.size(); ++i) b.push_back(static_cast<long>(i % p) * a[i] % p);
  while (!b.empty() && b.back() == 0) b.pop_back();
  if (b.empty()) return false;
  while (!b.empty()) {
    long lead = b.back(), inv = 1;
    for (long e = p - 2, base = lead; e > 0; e >>= 1, base = base * base % p)
      if (e & 1) inv = inv * base % p;
    for (auto& x : b) x = x * inv % p;
    Naive r = NaiveMod(a, b, p);
    a = b;
    b = r;
  }
  return a.size() == 1;
}

// Durand-Kerner on a monic double polynomial; written separately from the library root finder.
inline std::vector<std::complex<double>> OracleRoots(const std::vector<double>& monic) {
  std::size_t n = monic.size() - 1;
  std::vector<std::complex<double>> z(n);
  for (std::size_t k = 0; k < n; ++k) z[k] = std::pow(std::complex<double>(0.4, 0.9), static_cast<double>(k));
  for (int it = 0; it < 5000; ++it)
    for (std::size_t k = 0; k < n; ++k) {
      std::complex<double> num = monic[n];
      for (std::size_t i = n; i-- > 0;) num = num * z[k] + monic[i];
      std::complex<double> den = 1;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) den *= z[k] - z[j];
      z[k] -= num / den;
    }
  return z;
}

// 2 h(a) from the Mahler measure of the primitive minimal polynomial.
inline double OracleGNorm(FieldRegistry& reg, const AlgebraicNumber& a) {
  QPoly m = reg.Field(a.field).MinPolyOf(a.value).Monic();
  BigInt lead = m.DenominatorLcm();
  std::vector<double> c;
  for (int i = 0; i <= m.degree(); ++i) c.push_back(m.coeff(i).get_d());
  double total = std::log(lead.get_d());
  for (auto r : OracleRoots(c)) total += std::max(0.0, std::log(std::abs(r)));
  return 2 * total / m.degree();
}

}  // namespace consmap::oracle
