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
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "consmap/error.hpp"
#include "consmap/exactnum/factor.hpp"
#include "consmap/exactnum/fp_poly.hpp"
#include "consmap/exactnum/qpoly.hpp"
#include "consmap/exactnum/rational.hpp"

namespace consmap {

using QVector = std::vector<Rational>;
using QMatrix = std::vector<QVector>;
using ZVector = std::vector<BigInt>;
using ZMatrix = std::vector<ZVector>;
using FpVector = std::vector<std::uint64_t>;
using FpMatrix = std::vector<FpVector>;

inline QMatrix Identity(std::size_t n) {
  QMatrix m(n, QVector(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline QVector RowTimes(const QVector& x, const QMatrix& m) {
  QVector out(m.empty() ? 0 : m[0].size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += x[i] * m[i][j];
  }
  return out;
}

inline QMatrix Multiply(const QMatrix& a, const QMatrix& b) {
  QMatrix out;
  for (const auto& row : a) out.push_back(RowTimes(row, b));
  return out;
}

// Inverse over Q, or nullopt when singular.
inline std::optional<QMatrix> Inverse(QMatrix a) {
  std::size_t n = a.size();
  QMatrix inv = Identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    Rational s = Rational(1) / a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] *= s;
      inv[col][j] *= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational t = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= t * a[col][j];
        inv[r][j] -= t * inv[col][j];
      }
    }
  }
  return inv;
}

// x with x * rows = target, or nullopt. Rows need not be independent.
inline std::optional<QVector> SolveLeft(const QMatrix& rows, const QVector& target) {
  std::size_t m = rows.size(), n = target.size();
  // Columns of the augmented system: unknowns are the m row coefficients.
  QMatrix sys(n, QVector(m + 1));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) sys[j][i] = rows[i][j];
    sys[j][m] = target[j];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m && r < n; ++c) {
    std::size_t piv = r;
    while (piv < n && sys[piv][c] == 0) ++piv;
    if (piv == n) continue;
    std::swap(sys[piv], sys[r]);
    Rational s = Rational(1) / sys[r][c];
    for (auto& v : sys[r]) v *= s;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == r || sys[k][c] == 0) continue;
      Rational t = sys[k][c];
      for (std::size_t j = c; j <= m; ++j) sys[k][j] -= t * sys[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t k = r; k < n; ++k)
    if (sys[k][m] != 0) return std::nullopt;
  QVector x(m);
  for (std::size_t k = 0; k < r; ++k) x[pivot_col[k]] = sys[k][m];
  return x;
}

// Row-style Hermite normal form of the lattice spanned by the rows; zero rows dropped.
// When modulus is given, the lattice must contain modulus * Z^n.
inline ZMatrix Hnf(ZMatrix rows, const BigInt* modulus = nullptr) {
  std::size_t ncols = rows.empty() ? 0 : rows[0].size();
  std::size_t cur = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t col = 0; col < ncols; ++col) {
    if (modulus) {
      // modulus * e_col belongs to the lattice; adding it here keeps earlier reductions valid.
      ZVector e(ncols);
      e[col] = *modulus;
      rows.push_back(e);
    }
    if (cur >= rows.size()) break;
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t r = cur; r < rows.size(); ++r)
        if (rows[r][col] != 0 && (best == rows.size() || Abs(rows[r][col]) < Abs(rows[best][col]))) best = r;
      if (best == rows.size()) break;
      std::swap(rows[cur], rows[best]);
      bool done = true;
      for (std::size_t r = cur + 1; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), rows[r][col].get_mpz_t(), rows[cur][col].get_mpz_t());
        for (std::size_t j = col; j < ncols; ++j) rows[r][j] -= q * rows[cur][j];
        if (rows[r][col] != 0) done = false;
      }
      if (done) break;
    }
    if (rows[cur][col] == 0) continue;
    if (rows[cur][col] < 0)
      for (auto& v : rows[cur]) v = -v;
    if (modulus) {
      for (std::size_t r = cur; r < rows.size(); ++r)
        for (std::size_t j = col + 1; j < ncols; ++j) rows[r][j] = Mod(rows[r][j], *modulus);
      // Drop rows that became zero.
      std::size_t keep = cur + 1;
      for (std::size_t r = cur + 1; r < rows.size(); ++r) {
        bool zero = std::all_of(rows[r].begin(), rows[r].end(), [](const BigInt& v) { return v == 0; });
        if (!zero) rows[keep++] = rows[r];
      }
      rows.resize(keep);
    }
    pivots.push_back(col);
    ++cur;
  }
  rows.resize(cur);
  for (std::size_t i = 0; i < cur; ++i) {
    std::size_t col = pivots[i];
    for (std::size_t r = 0; r < i; ++r) {
      BigInt q;
      mpz_fdiv_q(q.get_mpz_t(), rows[r][col].get_mpz_t(), rows[i][col].get_mpz_t());
      if (q == 0) continue;
      for (std::size_t j = col; j < ncols; ++j) rows[r][j] -= q * rows[i][j];
    }
  }
  return rows;
}

inline BigInt CommonDenominator(const QMatrix& m) {
  BigInt d = 1;
  for (const auto& row : m)
    for (const auto& v : row) d = Lcm(d, BigInt(v.get_den()));
  return d;
}

// Canonical basis of a rational lattice: HNF of the scaled integer lattice, scaled back.
inline QMatrix RationalHnf(const QMatrix& rows, const Rational* modulus = nullptr) {
  BigInt d = CommonDenominator(rows);
  if (modulus) d = Lcm(d, BigInt(modulus->get_den()));
  ZMatrix z;
  for (const auto& row : rows) {
    ZVector v;
    for (const auto& a : row) v.push_back(BigInt(a * d));
    z.push_back(v);
  }
  ZMatrix h;
  if (modulus) {
    BigInt m = BigInt(*modulus * d);
    h = Hnf(z, &m);
  } else {
    h = Hnf(z);
  }
  QMatrix out;
  for (const auto& row : h) {
    QVector v;
    for (const auto& a : row) v.push_back(MakeRational(a, d));
    out.push_back(v);
  }
  return out;
}

// Basis of {x : x * m = 0} over F_p; m has r rows.
inline std::vector<FpVector> LeftKernelModP(const FpMatrix& m, std::uint64_t p) {
  std::size_t r = m.size(), c = r ? m[0].size() : 0;
  // Row-reduce the transpose augmented with identity tracking.
  FpMatrix a(r, FpVector(c + r));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) a[i][j] = m[i][j] % p;
    a[i][c + i] = 1;
  }
  std::size_t row = 0;
  for (std::size_t col = 0; col < c && row < r; ++col) {
    std::size_t piv = row;
    while (piv < r && a[piv][col] == 0) ++piv;
    if (piv == r) continue;
    std::swap(a[piv], a[row]);
    std::uint64_t inv = InvMod(a[row][col], p);
    for (auto& v : a[row]) v = MulMod(v, inv, p);
    for (std::size_t k = 0; k < r; ++k) {
      if (k == row || a[k][col] == 0) continue;
      std::uint64_t t = a[k][col];
      for (std::size_t j = 0; j < c + r; ++j) {
        std::uint64_t s = MulMod(t, a[row][j], p);
        a[k][j] = a[k][j] >= s ? a[k][j] - s : a[k][j] + (p - s);
      }
    }
    ++row;
  }
  std::vector<FpVector> out;
  for (std::size_t k = row; k < r; ++k) out.emplace_back(a[k].begin() + static_cast<long>(c), a[k].end());
  return out;
}

// Row-reduced basis of the F_p span of the given vectors.
inline std::vector<FpVector> SpanModP(std::vector<FpVector> rows, std::uint64_t p) {
  std::size_t c = rows.empty() ? 0 : rows[0].size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < c && row < rows.size(); ++col) {
    std::size_t piv = row;
    while (piv < rows.size() && rows[piv][col] % p == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[row]);
    std::uint64_t inv = InvMod(rows[row][col], p);
    for (auto& v : rows[row]) v = MulMod(v, inv, p);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (k == row || rows[k][col] == 0) continue;
      std::uint64_t t = rows[k][col];
      for (std::size_t j = 0; j < c; ++j) {
        std::uint64_t s = MulMod(t, rows[row][j], p);
        rows[k][j] = rows[k][j] >= s ? rows[k][j] - s : rows[k][j] + (p - s);
      }
    }
    ++row;
  }
  rows.resize(row);
  return rows;
}

// Characteristic polynomial over Q via Hessenberg reduction.
inline QPoly CharPoly(QMatrix h) {
  std::size_t n = h.size();
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t piv = m;
    while (piv < n && h[piv][m - 1] == 0) ++piv;
    if (piv == n) continue;
    if (piv != m) {
      std::swap(h[piv], h[m]);
      for (std::size_t i = 0; i < n; ++i) std::swap(h[i][piv], h[i][m]);
    }
    for (std::size_t i = m + 1; i < n; ++i) {
      if (h[i][m - 1] == 0) continue;
      Rational u = h[i][m - 1] / h[m][m - 1];
      for (std::size_t j = 0; j < n; ++j) h[i][j] -= u * h[m][j];
      for (std::size_t j = 0; j < n; ++j) h[j][m] += u * h[j][i];
    }
  }
  std::vector<QPoly> p(n + 1);
  p[0] = QPoly::Constant(1);
  for (std::size_t k = 1; k <= n; ++k) {
    p[k] = QPoly(std::vector<Rational>{-h[k - 1][k - 1], 1}) * p[k - 1];
    Rational prod = 1;
    for (std::size_t i = k - 1; i-- > 0;) {
      prod *= h[i + 1][i];
      if (prod == 0) break;
      p[k] -= p[i].Scaled(prod * h[i][k - 1]);
    }
  }
  return p[n];
}

// Characteristic polynomial modulo m (division free), ascending coefficients.
inline ZPoly CharPolyMod(const ZMatrix& a, const BigInt& m) {
  std::size_t n = a.size();
  std::vector<BigInt> vect{1, Mod(-a[0][0], m)};
  for (std::size_t r = 1; r < n; ++r) {
    // q = [1, -a_rr, -C R, -C A R, ..., -C A^{r-1} R]
    std::vector<BigInt> q{1, Mod(-a[r][r], m)};
    std::vector<BigInt> col(r);
    for (std::size_t i = 0; i < r; ++i) col[i] = a[i][r];
    for (std::size_t k = 0; k < r; ++k) {
      BigInt s = 0;
      for (std::size_t i = 0; i < r; ++i) s += a[r][i] * col[i];
      q.push_back(Mod(-s, m));
      std::vector<BigInt> next(r);
      for (std::size_t i = 0; i < r; ++i) {
        BigInt t = 0;
        for (std::size_t j = 0; j < r; ++j) t += a[i][j] * col[j];
        next[i] = Mod(t, m);
      }
      col = std::move(next);
    }
    std::vector<BigInt> out(r + 2);
    for (std::size_t i = 0; i < r + 2; ++i) {
      BigInt t = 0;
      for (std::size_t j = 0; j <= i && j < vect.size(); ++j) t += q[i - j] * vect[j];
      out[i] = Mod(t, m);
    }
    vect = std::move(out);
  }
  ZPoly asc(vect.rbegin(), vect.rend());
  zpoly::Trim(asc);
  return asc;
}

}  // namespace consmap
