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

#include "kreincalc/quotient.hpp"

#include <algorithm>

#include "kreincalc/errors.hpp"

namespace kreincalc {

std::string PointToString(const ExactPoint& p) {
  return "(" + p.first.ToString() + ", " + p.second.ToString() + ")";
}

QuotientAlgebra::QuotientAlgebra(IdealData ideal, std::optional<ExactPoint> point)
    : ideal_(std::move(ideal)), point_(std::move(point)) {
  if (!IsZeroDimensional(ideal_)) throw NotZeroDimensional("quotient algebra requested for a non-zero-dimensional ideal");
  int max_a = 0, max_b = 0;
  for (const auto& g : ideal_.groebner) {
    const Monomial& lm = g.LeadingMonomial();
    if (lm.b == 0) max_a = std::max(max_a, lm.a);
    if (lm.a == 0) max_b = std::max(max_b, lm.b);
  }
  for (int a = 0; a < max_a; ++a) {
    for (int b = 0; b < max_b; ++b) {
      const Monomial m{a, b};
      bool standard = true;
      for (const auto& g : ideal_.groebner) {
        if (g.LeadingMonomial().Divides(m)) {
          standard = false;
          break;
        }
      }
      if (standard) basis_.push_back(m);
    }
  }
  std::sort(basis_.begin(), basis_.end(), [](const Monomial& m, const Monomial& n) { return GrlexCompare(m, n) < 0; });

  const int n = dim();
  mult_x_ = ExactMatrix(n, n);
  mult_y_ = ExactMatrix(n, n);
  for (int k = 0; k < n; ++k) {
    mult_x_.SetColumn(k, Coordinates(Poly2::Term(1, basis_[k] * Monomial{1, 0})));
    mult_y_.SetColumn(k, Coordinates(Poly2::Term(1, basis_[k] * Monomial{0, 1})));
  }
  // Matrices of the basis monomials, built from the lowest-degree divisor
  // already present (the standard monomials form an order ideal).
  basis_mats_.resize(n);
  for (int k = 0; k < n; ++k) {
    const Monomial& m = basis_[k];
    if (m.a == 0 && m.b == 0) {
      basis_mats_[k] = ExactMatrix::Identity(n);
    } else if (m.a > 0) {
      basis_mats_[k] = mult_x_ * basis_mats_[IndexOf({m.a - 1, m.b})];
    } else {
      basis_mats_[k] = mult_y_ * basis_mats_[IndexOf({m.a, m.b - 1})];
    }
  }
}

int QuotientAlgebra::IndexOf(const Monomial& m) const {
  for (size_t k = 0; k < basis_.size(); ++k) {
    if (basis_[k] == m) return static_cast<int>(k);
  }
  return -1;
}

ExactVector QuotientAlgebra::Coordinates(const Poly2& p) const {
  ExactVector coords(basis_.size());
  const Poly2 nf = NormalForm(p.WithVars(Vars::kXY), ideal_);
  for (const auto& [m, c] : nf.terms()) coords[IndexOf(m)] = c;
  return coords;
}

Poly2 QuotientAlgebra::FromCoordinates(const ExactVector& coords) const {
  if (coords.size() != basis_.size()) throw DimensionMismatch("coordinate vector has the wrong length");
  Poly2 p;
  for (size_t k = 0; k < basis_.size(); ++k) p.AddTerm(basis_[k], coords[k]);
  return p;
}

ExactVector QuotientAlgebra::Unit() const { return Coordinates(Poly2::Constant(1)); }

ExactMatrix QuotientAlgebra::MultiplicationMatrix(const ExactVector& coords) const {
  const int n = dim();
  ExactMatrix out(n, n);
  for (int k = 0; k < n; ++k) {
    if (coords[k].IsZero()) continue;
    const ExactMatrix& mk = basis_mats_[k];
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        if (!mk(r, c).IsZero()) out(r, c) += coords[k] * mk(r, c);
      }
    }
  }
  return out;
}

ExactVector QuotientAlgebra::Multiply(const ExactVector& a, const ExactVector& b) const {
  const int n = dim();
  ExactVector out(n);
  for (int k = 0; k < n; ++k) {
    if (a[k].IsZero()) continue;
    const ExactMatrix& mk = basis_mats_[k];
    for (int j = 0; j < n; ++j) {
      if (b[j].IsZero()) continue;
      const GaussianRational f = a[k] * b[j];
      for (int r = 0; r < n; ++r) {
        if (!mk(r, j).IsZero()) out[r] += f * mk(r, j);
      }
    }
  }
  return out;
}

AlgebraPtr MakeQuotientAlgebra(IdealData ideal, std::optional<ExactPoint> point) {
  return std::make_shared<const QuotientAlgebra>(std::move(ideal), std::move(point));
}

Coset::Coset(AlgebraPtr algebra, ExactVector coords) : algebra_(std::move(algebra)), coords_(std::move(coords)) {
  if (static_cast<int>(coords_.size()) != algebra_->dim()) throw DimensionMismatch("coset coordinates do not match the algebra");
}

Coset Coset::Of(AlgebraPtr algebra, const Poly2& p) {
  ExactVector coords = algebra->Coordinates(p);
  return Coset(std::move(algebra), std::move(coords));
}

Coset Coset::Unit(AlgebraPtr algebra) {
  ExactVector coords = algebra->Unit();
  return Coset(std::move(algebra), std::move(coords));
}

Coset Coset::Zero(AlgebraPtr algebra) {
  const int n = algebra->dim();
  return Coset(std::move(algebra), ExactVector(n));
}

bool Coset::IsZero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const GaussianRational& c) { return c.IsZero(); });
}

double Coset::MaxCoordinate() const {
  double m = 0;
  for (const auto& c : coords_) m = std::max(m, c.Magnitude());
  return m;
}

GaussianRational Coset::ValueAtPoint() const {
  if (!algebra_->point()) throw AlgebraMismatch("coset algebra carries no point");
  const auto& [ax, ay] = *algebra_->point();
  return Representative().EvalExact(ax, ay);
}

void Coset::RequireSame(const Coset& o) const {
  if (algebra_ != o.algebra_ && !(algebra_->ideal().groebner == o.algebra_->ideal().groebner)) {
    throw AlgebraMismatch("cosets belong to different algebras");
  }
}

Coset Coset::operator+(const Coset& o) const {
  RequireSame(o);
  ExactVector out = coords_;
  for (size_t k = 0; k < out.size(); ++k) out[k] += o.coords_[k];
  return Coset(algebra_, std::move(out));
}

Coset Coset::operator-(const Coset& o) const {
  RequireSame(o);
  ExactVector out = coords_;
  for (size_t k = 0; k < out.size(); ++k) out[k] -= o.coords_[k];
  return Coset(algebra_, std::move(out));
}

Coset Coset::operator*(const Coset& o) const {
  RequireSame(o);
  return Coset(algebra_, algebra_->Multiply(coords_, o.coords_));
}

Coset Coset::operator*(const GaussianRational& c) const {
  ExactVector out = coords_;
  for (auto& v : out) v *= c;
  return Coset(algebra_, std::move(out));
}

Coset Coset::operator-() const { return *this * GaussianRational(-1); }

bool Coset::operator==(const Coset& o) const {
  return algebra_->ideal().groebner == o.algebra_->ideal().groebner && coords_ == o.coords_;
}

Coset Coset::Invert() const {
  const std::string where = algebra_->point() ? PointToString(*algebra_->point()) : std::string("?");
  if (algebra_->point() && ValueAtPoint().IsZero()) {
    throw NotInvertible("coset vanishes at its point " + where, where);
  }
  auto solution = SolveExact(algebra_->MultiplicationMatrix(coords_), algebra_->Unit());
  if (!solution) throw NotInvertible("coset is a zero divisor", where);
  return Coset(algebra_, std::move(*solution));
}

Coset Coset::Sharp(const AlgebraPtr& target) const {
  std::vector<Poly2> conj;
  for (const auto& g : algebra_->ideal().groebner) conj.push_back(g.Sharp());
  if (conj != target->ideal().groebner) throw AlgebraMismatch("target is not the conjugate algebra");
  // Conjugating a reduced basis gives the reduced basis of the conjugate
  // ideal, so the standard monomials coincide.
  ExactVector out;
  out.reserve(coords_.size());
  for (const auto& c : coords_) out.push_back(c.Conj());
  return Coset(target, std::move(out));
}

Coset Coset::Project(const AlgebraPtr& target) const {
  if (algebra_->point().has_value() != target->point().has_value() ||
      (algebra_->point() && *algebra_->point() != *target->point())) {
    throw AlgebraMismatch("projection between algebras at different points");
  }
  for (const auto& g : algebra_->ideal().groebner) {
    if (!Contains(target->ideal(), g)) throw AlgebraMismatch("target ideal does not contain the source ideal");
  }
  return Coset::Of(target, Representative());
}

}  // namespace kreincalc
