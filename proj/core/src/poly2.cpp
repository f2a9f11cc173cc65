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

#include "kreincalc/poly2.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <vector>

#include "kreincalc/errors.hpp"

namespace kreincalc {

Monomial Lcm(const Monomial& m, const Monomial& n) {
  return {std::max(m.a, n.a), std::max(m.b, n.b)};
}

std::strong_ordering GrlexCompare(const Monomial& m, const Monomial& n) {
  if (m.Degree() != n.Degree()) return m.Degree() <=> n.Degree();
  return m.a <=> n.a;
}

Poly2 Poly2::Constant(const GaussianRational& c, Vars vars) { return Term(c, {0, 0}, vars); }

Poly2 Poly2::Term(const GaussianRational& c, Monomial m, Vars vars) {
  Poly2 p(vars);
  p.AddTerm(m, c);
  return p;
}

bool Poly2::IsConstant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial{0, 0});
}

const Monomial& Poly2::LeadingMonomial() const {
  if (terms_.empty()) throw std::logic_error("leading monomial of zero polynomial");
  return terms_.begin()->first;
}

const GaussianRational& Poly2::LeadingCoefficient() const {
  if (terms_.empty()) throw std::logic_error("leading coefficient of zero polynomial");
  return terms_.begin()->second;
}

GaussianRational Poly2::Coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? GaussianRational() : it->second;
}

int Poly2::DegreeFirst() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.a);
  return d;
}

int Poly2::DegreeSecond() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.b);
  return d;
}

int Poly2::TotalDegree() const { return terms_.empty() ? 0 : terms_.begin()->first.Degree(); }

void Poly2::AddTerm(const Monomial& m, const GaussianRational& c) {
  if (c.IsZero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.IsZero()) terms_.erase(it);
}

namespace {

void CheckSameVars(const Poly2& a, const Poly2& b) {
  // Constants are compatible with either variable pair.
  if (a.vars() != b.vars() && !a.IsConstant() && !b.IsConstant()) {
    throw WrongVariables("mixing (x,y) and (z,w) polynomials");
  }
}

Vars MergedVars(const Poly2& a, const Poly2& b) {
  return a.IsConstant() ? b.vars() : a.vars();
}

}  // namespace

Poly2& Poly2::operator+=(const Poly2& o) {
  CheckSameVars(*this, o);
  vars_ = MergedVars(*this, o);
  for (const auto& [m, c] : o.terms_) AddTerm(m, c);
  return *this;
}

Poly2& Poly2::operator-=(const Poly2& o) {
  CheckSameVars(*this, o);
  vars_ = MergedVars(*this, o);
  for (const auto& [m, c] : o.terms_) AddTerm(m, -c);
  return *this;
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
  CheckSameVars(a, b);
  Poly2 out(MergedVars(a, b));
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.AddTerm(ma * mb, ca * cb);
  }
  return out;
}

Poly2& Poly2::operator*=(const Poly2& o) { return *this = *this * o; }

Poly2& Poly2::operator*=(const GaussianRational& c) {
  if (c.IsZero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

Poly2 Poly2::operator-() const {
  Poly2 out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Poly2 Poly2::MulTerm(const Monomial& m, const GaussianRational& c) const {
  Poly2 out(vars_);
  if (c.IsZero()) return out;
  for (const auto& [mm, cc] : terms_) out.terms_.emplace(mm * m, cc * c);
  return out;
}

Poly2 Poly2::Pow(int k) const {
  if (k < 0) throw std::invalid_argument("negative polynomial power");
  Poly2 result = Constant(1, vars_);
  Poly2 base = *this;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k > 0) base *= base;
  }
  return result;
}

Poly2 Poly2::Monic() const {
  if (IsZero()) return *this;
  return *this * LeadingCoefficient().Inverse();
}

Poly2 Poly2::Sharp() const {
  Poly2 out(vars_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, c.Conj());
  return out;
}

bool Poly2::IsReal() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.IsReal(); });
}

Complex Poly2::Eval(Complex first, Complex second) const {
  if (terms_.empty()) return 0.0;
  std::vector<Complex> pa(DegreeFirst() + 1, 1.0), pb(DegreeSecond() + 1, 1.0);
  for (size_t i = 1; i < pa.size(); ++i) pa[i] = pa[i - 1] * first;
  for (size_t i = 1; i < pb.size(); ++i) pb[i] = pb[i - 1] * second;
  Complex sum = 0.0;
  for (const auto& [m, c] : terms_) sum += c.ToComplex() * pa[m.a] * pb[m.b];
  return sum;
}

GaussianRational Poly2::EvalExact(const GaussianRational& first, const GaussianRational& second) const {
  if (terms_.empty()) return {};
  std::vector<GaussianRational> pa(DegreeFirst() + 1, 1), pb(DegreeSecond() + 1, 1);
  for (size_t i = 1; i < pa.size(); ++i) pa[i] = pa[i - 1] * first;
  for (size_t i = 1; i < pb.size(); ++i) pb[i] = pb[i - 1] * second;
  GaussianRational sum;
  for (const auto& [m, c] : terms_) sum += c * pa[m.a] * pb[m.b];
  return sum;
}

Poly2 Poly2::Compose(const Poly2& f, const Poly2& s) const {
  CheckSameVars(f, s);
  Vars target = MergedVars(f, s);
  std::vector<Poly2> pf{Constant(1, target)}, ps{Constant(1, target)};
  for (int i = 1; i <= DegreeFirst(); ++i) pf.push_back(pf.back() * f);
  for (int i = 1; i <= DegreeSecond(); ++i) ps.push_back(ps.back() * s);
  Poly2 out(target);
  for (const auto& [m, c] : terms_) out += (pf[m.a] * ps[m.b]) * c;
  out.vars_ = target;
  return out;
}

Poly2 Poly2::WithVars(Vars vars) const {
  Poly2 out = *this;
  out.vars_ = vars;
  return out;
}

namespace {

std::string MonomialString(const Monomial& m, Vars vars) {
  const char* first = vars == Vars::kXY ? "x" : "z";
  const char* second = vars == Vars::kXY ? "y" : "w";
  std::string out;
  auto append = [&](const char* v, int e) {
    if (e == 0) return;
    if (!out.empty()) out += "*";
    out += v;
    if (e > 1) out += "^" + std::to_string(e);
  };
  append(first, m.a);
  append(second, m.b);
  return out;
}

}  // namespace

std::string Poly2::ToString() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first_term = true;
  for (const auto& [m, c] : terms_) {
    std::string mono = MonomialString(m, vars_);
    // A coefficient is printed with an explicit leading sign when it is
    // purely real or purely imaginary; mixed ones are parenthesized.
    bool negative = false;
    std::string coeff;
    if (c.IsReal()) {
      negative = sgn(c.re()) < 0;
      mpq_class mag = abs(c.re());
      if (!(mag == 1 && !mono.empty())) coeff = mag.get_str();
    } else if (sgn(c.re()) == 0) {
      negative = sgn(c.im()) < 0;
      mpq_class mag = abs(c.im());
      coeff = mag == 1 ? "i" : mag.get_str() + "*i";
    } else {
      coeff = "(" + c.ToString() + ")";
    }
    if (first_term) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    out += coeff;
    if (!coeff.empty() && !mono.empty()) out += "*";
    out += mono;
    first_term = false;
  }
  return out;
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, Vars fallback) : text_(text), vars_(fallback) {
    bool has_xy = false, has_zw = false;
    for (char ch : text) {
      has_xy |= ch == 'x' || ch == 'y';
      has_zw |= ch == 'z' || ch == 'w';
    }
    if (has_xy && has_zw) throw ParseError("polynomial mixes (x,y) and (z,w): " + std::string(text));
    if (has_xy) vars_ = Vars::kXY;
    if (has_zw) vars_ = Vars::kZW;
  }

  Poly2 Parse() {
    Poly2 p = Expr();
    SkipSpace();
    if (pos_ != text_.size()) Fail("unexpected character");
    return p.WithVars(vars_);
  }

 private:
  [[noreturn]] void Fail(const std::string& what) const {
    throw ParseError(what + " at position " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  void SkipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool Accept(char ch) {
    SkipSpace();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly2 Expr() {
    Poly2 acc = Term();
    while (true) {
      if (Accept('+')) {
        acc += Term();
      } else if (Accept('-')) {
        acc -= Term();
      } else {
        return acc;
      }
    }
  }

  Poly2 Term() {
    Poly2 acc = Unary();
    while (true) {
      if (Accept('*')) {
        acc *= Unary();
      } else if (Accept('/')) {
        Poly2 d = Unary();
        if (!d.IsConstant() || d.IsZero()) Fail("division by a non-constant or zero");
        acc *= d.Coefficient({0, 0}).Inverse();
      } else {
        return acc;
      }
    }
  }

  Poly2 Unary() {
    if (Accept('-')) return -Unary();
    if (Accept('+')) return Unary();
    return Power();
  }

  Poly2 Power() {
    Poly2 base = Primary();
    if (Accept('^')) {
      SkipSpace();
      size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) Fail("expected exponent");
      base = base.Pow(std::stoi(std::string(text_.substr(start, pos_ - start))));
    }
    return base;
  }

  Poly2 Primary() {
    SkipSpace();
    if (pos_ >= text_.size()) Fail("unexpected end");
    char ch = text_[pos_];
    if (ch == '(') {
      ++pos_;
      Poly2 inner = Expr();
      if (!Accept(')')) Fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      mpz_class value(std::string(text_.substr(start, pos_ - start)), 10);
      return Poly2::Constant(GaussianRational(mpq_class(value)), vars_);
    }
    ++pos_;
    switch (ch) {
      case 'i': return Poly2::Constant(GaussianRational::I(), vars_);
      case 'x':
      case 'z': return Poly2::First(vars_);
      case 'y':
      case 'w': return Poly2::Second(vars_);
      default: --pos_; Fail("unexpected character");
    }
  }

  std::string_view text_;
  size_t pos_ = 0;
  Vars vars_;
};

}  // namespace

Poly2 Poly2::Parse(std::string_view text, Vars fallback) { return PolyParser(text, fallback).Parse(); }

Poly2 PhiTransform(const Poly2& p) {
  if (p.vars() != Vars::kXY && !p.IsConstant()) throw WrongVariables("PhiTransform expects an (x,y) polynomial");
  const GaussianRational half(mpq_class(1, 2));
  const Poly2 z = Poly2::First(Vars::kZW), w = Poly2::Second(Vars::kZW);
  // y = (z - w)/(2i) = -i/2 * (z - w)
  const GaussianRational minus_i_half(0, mpq_class(-1, 2));
  return p.Compose((z + w) * half, (z - w) * minus_i_half).WithVars(Vars::kZW);
}

Poly2 PhiInverse(const Poly2& q) {
  if (q.vars() != Vars::kZW && !q.IsConstant()) throw WrongVariables("PhiInverse expects a (z,w) polynomial");
  const Poly2 x = Poly2::First(Vars::kXY), y = Poly2::Second(Vars::kXY);
  const Poly2 iy = y * GaussianRational::I();
  return q.Compose(x + iy, x - iy).WithVars(Vars::kXY);
}

int MaxDegree(const Poly2& q) { return std::max(q.DegreeFirst(), q.DegreeSecond()); }

Poly2 Varpi(const Poly2& q) {
  if (q.IsZero()) throw std::invalid_argument("varpi of the zero polynomial");
  const int d = MaxDegree(q);
  Poly2 out(q.vars());
  for (const auto& [m, c] : q.terms()) out.AddTerm({d - m.a, d - m.b}, c);
  return out;
}

Matrix MatSubst(const Poly2& p, const Matrix& a, const Matrix& b, double eps_comm) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw DimensionMismatch("MatSubst expects square matrices of equal size");
  }
  const Eigen::Index n = a.rows();
  // Same allowance as the normality test: relative part plus a roundoff floor
  // that matters when one of the operands is tiny.
  const double na = OpNorm(a), nb = OpNorm(b);
  const double floor = 1e2 * std::numeric_limits<double>::epsilon() * std::pow(std::max({1.0, na, nb}), 2);
  if (OpNorm(a * b - b * a) > eps_comm * na * nb + floor) {
    throw NonCommuting("MatSubst: substituted matrices do not commute");
  }
  std::vector<Matrix> pa{Matrix::Identity(n, n)};
  for (int i = 1; i <= p.DegreeFirst(); ++i) pa.push_back(pa.back() * a);
  // sum_j (sum_i c_ij A^i) B^j, evaluated by Horner in B.
  const int db = p.DegreeSecond();
  std::vector<Matrix> inner(db + 1, Matrix::Zero(n, n));
  for (const auto& [m, c] : p.terms()) inner[m.b] += c.ToComplex() * pa[m.a];
  Matrix out = inner[db];
  for (int j = db - 1; j >= 0; --j) out = out * b + inner[j];
  return out;
}

}  // namespace kreincalc
