// Copyright 2026 The kreincalc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <compare>
#include <map>
#include <string>
#include <string_view>

#include "kreincalc/dense.hpp"
#include "kreincalc/gaussian_rational.hpp"

namespace kreincalc {

/// Which variable pair a polynomial lives in: (x, y) are real/imaginary
/// coordinates, (z, w) stand for (x + iy, x - iy).
enum class Vars { kXY, kZW };

struct Monomial {
  int a = 0;  // exponent of x (or z)
  int b = 0;  // exponent of y (or w)

  int Degree() const { return a + b; }
  bool Divides(const Monomial& o) const { return a <= o.a && b <= o.b; }
  Monomial operator*(const Monomial& o) const { return {a + o.a, b + o.b}; }
  /// Requires Divides(o).
  Monomial Quotient(const Monomial& o) const { return {o.a - a, o.b - b}; }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

Monomial Lcm(const Monomial& m, const Monomial& n);

/// Graded lexicographic order with x > y.
std::strong_ordering GrlexCompare(const Monomial& m, const Monomial& n);

struct GrlexGreater {
  bool operator()(const Monomial& m, const Monomial& n) const { return GrlexCompare(m, n) > 0; }
};

/// Exact bivariate polynomial over Q + iQ. Terms are stored in decreasing
/// grlex order; zero coefficients are never stored.
class Poly2 {
 public:
  using TermMap = std::map<Monomial, GaussianRational, GrlexGreater>;

  explicit Poly2(Vars vars = Vars::kXY) : vars_(vars) {}

  static Poly2 Constant(const GaussianRational& c, Vars vars = Vars::kXY);
  static Poly2 Term(const GaussianRational& c, Monomial m, Vars vars = Vars::kXY);
  /// x (or z).
  static Poly2 First(Vars vars = Vars::kXY) { return Term(1, {1, 0}, vars); }
  /// y (or w).
  static Poly2 Second(Vars vars = Vars::kXY) { return Term(1, {0, 1}, vars); }

  /// Parses e.g. "x^2 + y^2 - 1" or "(1/2+3/4*i)*x*y". The variable pair is
  /// inferred from the letters used, defaulting to `fallback`.
  static Poly2 Parse(std::string_view text, Vars fallback = Vars::kXY);

  Vars vars() const { return vars_; }
  const TermMap& terms() const { return terms_; }

  bool IsZero() const { return terms_.empty(); }
  bool IsConstant() const;
  const Monomial& LeadingMonomial() const;
  const GaussianRational& LeadingCoefficient() const;
  GaussianRational Coefficient(const Monomial& m) const;
  int DegreeFirst() const;
  int DegreeSecond() const;
  int TotalDegree() const;

  /// Adds c * m, dropping the term if it cancels.
  void AddTerm(const Monomial& m, const GaussianRational& c);

  Poly2& operator+=(const Poly2& o);
  Poly2& operator-=(const Poly2& o);
  Poly2& operator*=(const Poly2& o);
  Poly2& operator*=(const GaussianRational& c);
  friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
  friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }
  friend Poly2 operator*(const Poly2& a, const Poly2& b);
  friend Poly2 operator*(Poly2 a, const GaussianRational& c) { return a *= c; }
  friend Poly2 operator*(const GaussianRational& c, Poly2 a) { return a *= c; }
  Poly2 operator-() const;
  friend bool operator==(const Poly2& a, const Poly2& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

  Poly2 MulTerm(const Monomial& m, const GaussianRational& c) const;
  Poly2 Pow(int k) const;
  /// Divides every coefficient so the leading coefficient becomes 1.
  Poly2 Monic() const;

  /// p^#(x, y) = conj(p(conj x, conj y)): conjugates every coefficient.
  Poly2 Sharp() const;
  bool IsReal() const;

  Complex Eval(Complex first, Complex second) const;
  /// p(Re z, Im z).
  Complex EvalAt(Complex z) const { return Eval(z.real(), z.imag()); }
  GaussianRational EvalExact(const GaussianRational& first, const GaussianRational& second) const;

  /// Substitutes first := f, second := s. The result lives in f's variables.
  Poly2 Compose(const Poly2& f, const Poly2& s) const;

  /// Same terms, relabelled into another variable pair.
  Poly2 WithVars(Vars vars) const;

  std::string ToString() const;

 private:
  Vars vars_;
  TermMap terms_;
};

/// Substitutes x = (z + w)/2, y = (z - w)/(2i).
Poly2 PhiTransform(const Poly2& p);
/// Substitutes z = x + iy, w = x - iy.
Poly2 PhiInverse(const Poly2& q);
/// max(z-degree, w-degree).
int MaxDegree(const Poly2& q);
/// (zw)^d q(1/z, 1/w) with d = MaxDegree(q).
Poly2 Varpi(const Poly2& q);

/// sum c_ij A^i B^j. A and B must commute (relative tolerance eps_comm).
/// For a zw-polynomial pass (N, N^+) as (A, B).
Matrix MatSubst(const Poly2& p, const Matrix& a, const Matrix& b, double eps_comm = 1e-10);

}  // namespace kreincalc
