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

#include <string>
#include <vector>

#include "consmap/error.hpp"
#include "consmap/exactnum/factor.hpp"
#include "consmap/exactnum/matrix.hpp"
#include "consmap/exactnum/qpoly.hpp"

namespace consmap {

using FieldId = int;

// Q(theta) with theta a root of a monic irreducible polynomial. Elements are
// polynomials in theta of degree < n; coordinates are w.r.t. 1, theta, ..., theta^(n-1).
class NumberField {
 public:
  NumberField() = default;
  NumberField(FieldId id, QPoly min_poly) : id_(id), min_poly_(std::move(min_poly)) {
    scale_ = min_poly_.DenominatorLcm();
    int n = degree();
    std::vector<Rational> c(static_cast<std::size_t>(n) + 1);
    BigInt sp = 1;
    for (int i = n; i >= 0; --i) {
      c[static_cast<std::size_t>(i)] = min_poly_.coeff(i) * sp;
      sp *= scale_;
    }
    integral_poly_ = QPoly(std::move(c));
  }

  FieldId id() const { return id_; }
  int degree() const { return min_poly_.degree(); }
  const QPoly& min_poly() const { return min_poly_; }
  bool IsRationalField() const { return degree() == 1; }

  // theta_int = scale * theta is a root of the monic integer polynomial integral_poly().
  const BigInt& scale() const { return scale_; }
  const QPoly& integral_poly() const { return integral_poly_; }

  QPoly Reduce(const QPoly& a) const { return a % min_poly_; }
  QPoly Mul(const QPoly& a, const QPoly& b) const { return (a * b) % min_poly_; }
  QPoly Pow(QPoly a, long k) const {
    if (k < 0) {
      a = Inverse(a);
      k = -k;
    }
    QPoly r = QPoly::Constant(1) % min_poly_;
    a = Reduce(a);
    while (k) {
      if (k & 1) r = Mul(r, a);
      a = Mul(a, a);
      k >>= 1;
    }
    return r;
  }
  QPoly Inverse(const QPoly& a) const {
    QPoly r = Reduce(a);
    if (r.IsZero()) Fail(ErrorKind::kZeroElement, "inverse of zero");
    XgcdResult x = ExtendedGcd(r, min_poly_);
    return Reduce(x.s);
  }

  QVector Coords(const QPoly& a) const {
    QPoly r = Reduce(a);
    QVector v(static_cast<std::size_t>(degree()));
    for (int i = 0; i <= r.degree(); ++i) v[static_cast<std::size_t>(i)] = r.coeff(i);
    return v;
  }
  QPoly FromCoords(const QVector& v) const { return QPoly(v); }

  // Row j holds the coordinates of theta^j * a.
  QMatrix MulMatrix(const QPoly& a) const {
    QMatrix m;
    QPoly cur = Reduce(a);
    for (int j = 0; j < degree(); ++j) {
      m.push_back(Coords(cur));
      cur = Mul(cur, QPoly::X());
    }
    return m;
  }
  QPoly CharPoly(const QPoly& a) const { return consmap::CharPoly(MulMatrix(a)); }
  // Minimal polynomial over Q of a.
  QPoly MinPolyOf(const QPoly& a) const { return SquarefreePart(CharPoly(a)); }
  Rational Norm(const QPoly& a) const {
    QPoly cp = CharPoly(a);
    return degree() % 2 ? Rational(-cp.coeff(0)) : cp.coeff(0);
  }
  Rational Trace(const QPoly& a) const { return -CharPoly(a).coeff(degree() - 1); }

  Rational Discriminant() const {
    // disc(f) = (-1)^(n(n-1)/2) Res(f, f') for monic f.
    int n = degree();
    Rational r = Resultant(min_poly_, min_poly_.Derivative());
    return ((n * (n - 1) / 2) % 2) ? Rational(-r) : r;
  }

  std::string Name() const { return "K" + std::to_string(id_); }

 private:
  FieldId id_ = -1;
  QPoly min_poly_;
  BigInt scale_ = 1;
  QPoly integral_poly_;
};

// Image of the source generator as a polynomial in the target generator.
struct Embedding {
  FieldId source = -1;
  FieldId target = -1;
  QPoly image;
};

inline bool IsRootImage(const NumberField& src, const NumberField& tgt, const QPoly& image) {
  return src.min_poly().ComposeMod(image, tgt.min_poly()).IsZero();
}

// Maps an element of src into tgt along the embedding.
inline QPoly ApplyEmbedding(const Embedding& e, const NumberField& tgt, const QPoly& a) {
  return a.ComposeMod(e.image, tgt.min_poly());
}

}  // namespace consmap
