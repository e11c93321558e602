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
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "consmap/error.hpp"
#include "consmap/exactnum/exact_scalar.hpp"
#include "consmap/exactnum/factor.hpp"
#include "consmap/exactnum/qpoly.hpp"
#include "consmap/exactnum/roots.hpp"
#include "consmap/functions/lc_function.hpp"
#include "consmap/numberfields/default_registry.hpp"
#include "consmap/numberfields/registry.hpp"

namespace consmap {

struct AlgebraicNumber {
  FieldId field = 0;
  QPoly value;  // polynomial in the field generator, reduced
  std::string label;
};

inline AlgebraicNumber MakeAlgebraic(FieldRegistry& reg, FieldId field, const QPoly& value, std::string label = "") {
  QPoly r = reg.Field(field).Reduce(value);
  if (r.IsZero()) Fail(ErrorKind::kZeroElement, "zero is not allowed here");
  if (label.empty()) label = r.ToString("t") + " in " + reg.Field(field).Name();
  return {field, r, std::move(label)};
}

inline QPoly Cyclotomic(int n) {
  QPoly num = QPoly::Monomial(1, n) - QPoly::Constant(1);
  for (int d = 1; d < n; ++d)
    if (n % d == 0) num = num / Cyclotomic(d);
  return num;
}

inline QPoly MinimalPolynomial(FieldRegistry& reg, const AlgebraicNumber& a) {
  return reg.Field(a.field).MinPolyOf(a.value).Monic();
}

// Minimal polynomial compared against the cyclotomic polynomials of the same degree.
inline bool IsRootOfUnity(FieldRegistry& reg, const AlgebraicNumber& a) {
  QPoly m = MinimalPolynomial(reg, a);
  if (!m.IsIntegral()) return false;
  int d = m.degree();
  for (int n = 1; n <= 2 * d * d + 2; ++n) {
    QPoly c = Cyclotomic(n);
    if (c.degree() == d && c == m) return true;
  }
  return false;
}

// Primes p with ord_v(a) possibly nonzero for some v | p.
inline std::vector<std::uint64_t> SupportPrimes(FieldRegistry& reg, const AlgebraicNumber& a) {
  const NumberField& k = reg.Field(a.field);
  BigInt d = 1;
  BigInt sp = 1;
  for (int i = 0; i < k.degree(); ++i) {
    Rational c = a.value.coeff(i) / Rational(sp);
    d = Lcm(d, c.get_den());
    sp *= k.scale();
  }
  Rational norm = k.Norm(a.value);
  std::set<std::uint64_t> primes;
  for (auto p : PrimeDivisors(d)) primes.insert(p);
  for (auto p : PrimeDivisors(Abs(BigInt(norm.get_num())))) primes.insert(p);
  for (auto p : PrimeDivisors(norm.get_den())) primes.insert(p);
  return {primes.begin(), primes.end()};
}

// (1/n) log|N(a)| as an exact combination of log p.
inline ExactScalar NormLogShare(FieldRegistry& reg, const AlgebraicNumber& a) {
  const NumberField& k = reg.Field(a.field);
  Rational norm = Abs(k.Norm(a.value));
  ExactScalar out;
  for (auto p : PrimeDivisors(norm.get_num())) out += ExactScalar::Log(p, MakeRational(Valuation(norm, FromU64(p)), k.degree()));
  for (auto p : PrimeDivisors(norm.get_den())) out += ExactScalar::Log(p, MakeRational(Valuation(norm, FromU64(p)), k.degree()));
  return out;
}

// log ||a||_v. Non-Archimedean: -ord_v(a) log p. Archimedean: the share
// (1/n) log|N(a)| kept exact, the rest of log|sigma_v(a)| as residual.
inline ExactScalar LocalLog(FieldRegistry& reg, const AlgebraicNumber& a, const PlaceKey& v) {
  if (a.value.IsZero()) Fail(ErrorKind::kZeroElement, "log of zero");
  if (v.field != a.field) Fail(ErrorKind::kInvalidInput, "place " + v.Id() + " is not on the field of " + a.label);
  if (!v.archimedean()) return ExactScalar::Log(v.prime, -reg.Ord(v, a.value));
  if (IsRootOfUnity(reg, a)) return ExactScalar();
  ExactScalar share = NormLogShare(reg, a);
  double total = std::log(reg.AbsoluteValueAt(v, a.value));
  return share + ExactScalar::Residual(total - share.ToDouble());
}

// f_a on the places of the field of a over S.
inline LCFunction HeightFunction(FieldRegistry& reg, const AlgebraicNumber& a, const PlaceSet& s) {
  if (a.value.IsZero()) Fail(ErrorKind::kZeroElement, "height function of zero");
  LCFunction f(s, a.field);
  if (IsRootOfUnity(reg, a)) return f;
  for (auto p : SupportPrimes(reg, a)) {
    if (!s.Contains(p)) continue;
    for (const auto& v : reg.PlacesAbove(a.field, p)) f.Set(v.key, LocalLog(reg, a, v.key));
  }
  if (s.archimedean())
    for (const auto& v : reg.ArchimedeanPlaces(a.field)) f.Set(v.key, LocalLog(reg, a, v.key));
  return f;
}

// Sum over all places of lambda(v) |log ||a||_v|; twice the Weil height.
inline ExactScalar GNorm(FieldRegistry& reg, const AlgebraicNumber& a) {
  return L1Norm(reg, HeightFunction(reg, a, PlaceSet::All()));
}

inline ExactScalar VNorm(FieldRegistry& reg, const AlgebraicNumber& a) {
  return L1Norm(reg, HeightFunction(reg, a, PlaceSet::NonArchimedean()));
}

// (log|lead| + sum log+ |root|) / deg for the primitive minimal polynomial.
inline double WeilHeightViaMahler(FieldRegistry& reg, const AlgebraicNumber& a) {
  if (a.value.IsZero()) Fail(ErrorKind::kZeroElement, "height of zero");
  QPoly m = MinimalPolynomial(reg, a).PrimitivePart();
  double total = std::log(std::fabs(m.lead().get_d()));
  for (const auto& r : ComplexRoots(m)) total += std::max(0.0, std::log(std::abs(r)));
  return total / m.degree();
}

struct ProductFormulaReport {
  ExactScalar sum;
  bool symbolic_zero = false;
  bool ok = false;
};

inline ProductFormulaReport ProductFormulaCheck(FieldRegistry& reg, const AlgebraicNumber& a, double tolerance = 1e-9) {
  ProductFormulaReport r;
  r.sum = Integral(reg, HeightFunction(reg, a, PlaceSet::All()));
  r.symbolic_zero = r.sum.IsSymbolicZero();
  r.ok = r.symbolic_zero && std::fabs(r.sum.residual()) <= tolerance;
  return r;
}

// The shipped catalog over the default fields.
inline std::vector<AlgebraicNumber> HeightCatalog(FieldRegistry& reg, const DefaultFields& d) {
  auto make = [&](FieldId k, const char* poly, const char* label) { return MakeAlgebraic(reg, k, QPoly::Parse(poly), label); };
  return {
      make(d.q, "2", "2"),
      make(d.q, "1/2", "1/2"),
      make(d.gaussian, "1 + x", "1+i"),
      make(d.sqrt2, "x", "sqrt2"),
      make(d.sqrt5, "1/2 + 1/2*x", "phi"),
      make(d.cbrt2, "x", "cbrt2"),
      make(d.gaussian, "x", "i"),
      make(d.q, "-1", "-1"),
      make(d.q, "3/5", "3/5"),
      make(d.sqrt5, "x", "sqrt5"),
      make(d.sqrt2, "1 + x", "1+sqrt2"),
      make(d.zeta8, "x", "zeta8"),
  };
}

}  // namespace consmap
