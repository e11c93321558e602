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
#include <complex>
#include <vector>

#include "consmap/error.hpp"
#include "consmap/exactnum/qpoly.hpp"

namespace consmap {

using Complex = std::complex<double>;

inline std::vector<QPoly> SturmSequence(const QPoly& f) {
  std::vector<QPoly> seq{f, f.Derivative()};
  while (!seq.back().IsZero() && seq.back().degree() > 0) {
    QPoly r = seq[seq.size() - 2] % seq.back();
    if (r.IsZero()) break;
    seq.push_back(-r);
  }
  return seq;
}

inline int SignVariations(const std::vector<QPoly>& seq, const Rational& x) {
  int count = 0, last = 0;
  for (const auto& q : seq) {
    int s = sgn(q.Eval(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

inline void RequireSquarefree(const QPoly& f) {
  if (f.degree() < 1) Fail(ErrorKind::kInvalidInput, "constant polynomial has no roots");
  if (!IsSquarefree(f)) Fail(ErrorKind::kNotSquarefree, f.ToString());
}

// Cauchy bound: every root has |z| < bound.
inline Rational RootBound(const QPoly& f) {
  Rational m = 0;
  for (int i = 0; i < f.degree(); ++i) m = std::max(m, Abs(f.coeff(i) / f.lead()));
  return m + 1;
}

inline int RealRootCount(const QPoly& f) {
  RequireSquarefree(f);
  auto seq = SturmSequence(f);
  Rational b = RootBound(f);
  return SignVariations(seq, -b) - SignVariations(seq, b);
}

// Real roots of a squarefree polynomial in ascending order, refined by exact bisection.
inline std::vector<double> RealRoots(const QPoly& f) {
  RequireSquarefree(f);
  auto seq = SturmSequence(f);
  Rational b = RootBound(f);
  struct Interval {
    Rational lo, hi;
    int count;
  };
  std::vector<Interval> work{{-b, b, SignVariations(seq, -b) - SignVariations(seq, b)}};
  std::vector<std::pair<Rational, Rational>> isolated;
  while (!work.empty()) {
    Interval iv = work.back();
    work.pop_back();
    if (iv.count == 0) continue;
    if (iv.count == 1) {
      isolated.emplace_back(iv.lo, iv.hi);
      continue;
    }
    Rational mid = (iv.lo + iv.hi) / 2;
    if (f.Eval(mid) == 0) mid += (iv.hi - iv.lo) / 7;
    while (f.Eval(mid) == 0) mid = (mid + iv.hi) / 2;
    int vm = SignVariations(seq, mid);
    work.push_back({iv.lo, mid, SignVariations(seq, iv.lo) - vm});
    work.push_back({mid, iv.hi, vm - SignVariations(seq, iv.hi)});
  }
  std::vector<double> roots;
  for (auto [lo, hi] : isolated) {
    // Root lies in (lo, hi]; bisect on the sign of f.
    if (f.Eval(hi) == 0) {
      roots.push_back(hi.get_d());
      continue;
    }
    int shi = sgn(f.Eval(hi));
    for (int it = 0; it < 200; ++it) {
      double dlo = lo.get_d(), dhi = hi.get_d();
      if (std::abs(dhi - dlo) <= 1e-17 * std::max(1.0, std::abs(dhi))) break;
      Rational mid = (lo + hi) / 2;
      int sm = sgn(f.Eval(mid));
      if (sm == 0) {
        lo = hi = mid;
        break;
      }
      if (sm == shi)
        hi = mid;
      else
        lo = mid;
    }
    roots.push_back(Rational((lo + hi) / 2).get_d());
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// All complex roots by Aberth iteration followed by Newton polishing.
inline std::vector<Complex> ComplexRoots(const QPoly& f) {
  int n = f.degree();
  if (n < 1) return {};
  using LC = std::complex<long double>;
  std::vector<LC> c;
  for (int i = 0; i <= n; ++i) c.emplace_back(static_cast<long double>(Rational(f.coeff(i) / f.lead()).get_d()));
  auto eval = [&](LC z, LC& deriv) {
    LC v = c[static_cast<std::size_t>(n)];
    deriv = 0;
    for (int i = n - 1; i >= 0; --i) {
      deriv = deriv * z + v;
      v = v * z + c[static_cast<std::size_t>(i)];
    }
    return v;
  };
  long double radius = static_cast<long double>(RootBound(f).get_d());
  std::vector<LC> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    long double ang = 2.0L * 3.14159265358979323846L * k / n + 0.4L;
    z[static_cast<std::size_t>(k)] = std::polar(radius * 0.5L, ang);
  }
  bool converged = false;
  for (int iter = 0; iter < 2000 && !converged; ++iter) {
    converged = true;
    for (int k = 0; k < n; ++k) {
      LC d;
      LC v = eval(z[static_cast<std::size_t>(k)], d);
      if (v == LC(0)) continue;
      LC ratio = v / d;
      LC sum = 0;
      for (int j = 0; j < n; ++j)
        if (j != k) sum += LC(1) / (z[static_cast<std::size_t>(k)] - z[static_cast<std::size_t>(j)]);
      LC step = ratio / (LC(1) - ratio * sum);
      z[static_cast<std::size_t>(k)] -= step;
      if (std::abs(step) > 1e-16L * std::max(1.0L, std::abs(z[static_cast<std::size_t>(k)]))) converged = false;
    }
  }
  if (!converged) Fail(ErrorKind::kRootFindingFailure, "Aberth iteration did not converge for " + f.ToString());
  std::vector<Complex> out;
  for (auto& r : z) {
    for (int it = 0; it < 3; ++it) {
      LC d;
      LC v = eval(r, d);
      if (d == LC(0)) break;
      r -= v / d;
    }
    out.emplace_back(static_cast<double>(r.real()), static_cast<double>(r.imag()));
  }
  return out;
}

// log of the Mahler lower bound on root separation of a squarefree polynomial.
inline double LogRootSeparationBound(const QPoly& f, const Rational& discriminant) {
  QPoly g = f.PrimitivePart();
  int n = g.degree();
  double norm2 = 0;
  for (const auto& a : g.coeffs()) norm2 += a.get_d() * a.get_d();
  return 0.5 * std::log(3.0) + 0.5 * Log(Abs(discriminant)) - (n + 2) / 2.0 * std::log(static_cast<double>(n)) -
         (n - 1) * 0.5 * std::log(norm2);
}

}  // namespace consmap
