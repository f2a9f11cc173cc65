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

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kreincalc/exact_linalg.hpp"
#include "kreincalc/groebner.hpp"

namespace kreincalc {

using ExactPoint = std::pair<GaussianRational, GaussianRational>;

std::string PointToString(const ExactPoint& p);

/// C[x,y]/I for a zero-dimensional ideal I, with coordinates taken in the
/// basis of standard monomials (ascending grlex).
class QuotientAlgebra {
 public:
  /// Throws NotZeroDimensional. `point` tags local algebras with the single
  /// point of their variety; it is used by inversion and projection checks.
  QuotientAlgebra(IdealData ideal, std::optional<ExactPoint> point = std::nullopt);

  const IdealData& ideal() const { return ideal_; }
  const std::vector<Monomial>& basis() const { return basis_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const ExactMatrix& mult_x() const { return mult_x_; }
  const ExactMatrix& mult_y() const { return mult_y_; }
  const std::optional<ExactPoint>& point() const { return point_; }

  /// Index of a standard monomial, or -1.
  int IndexOf(const Monomial& m) const;

  ExactVector Coordinates(const Poly2& p) const;
  Poly2 FromCoordinates(const ExactVector& coords) const;
  ExactVector Unit() const;

  /// Matrix of multiplication by the element with the given coordinates.
  ExactMatrix MultiplicationMatrix(const ExactVector& coords) const;
  ExactVector Multiply(const ExactVector& a, const ExactVector& b) const;
  /// table[k] is the matrix of multiplication by the k-th basis monomial,
  /// i.e. column j of table[k] holds the coordinates of basis[k] * basis[j].
  const std::vector<ExactMatrix>& ProductTable() const { return basis_mats_; }

 private:
  IdealData ideal_;
  std::optional<ExactPoint> point_;
  std::vector<Monomial> basis_;
  ExactMatrix mult_x_;
  ExactMatrix mult_y_;
  std::vector<ExactMatrix> basis_mats_;
};

using AlgebraPtr = std::shared_ptr<const QuotientAlgebra>;

AlgebraPtr MakeQuotientAlgebra(IdealData ideal, std::optional<ExactPoint> point = std::nullopt);

/// An element of a quotient algebra.
class Coset {
 public:
  Coset() = default;
  Coset(AlgebraPtr algebra, ExactVector coords);

  static Coset Of(AlgebraPtr algebra, const Poly2& p);
  static Coset Unit(AlgebraPtr algebra);
  static Coset Zero(AlgebraPtr algebra);

  const AlgebraPtr& algebra() const { return algebra_; }
  const ExactVector& coords() const { return coords_; }
  /// The normal-form representative.
  Poly2 Representative() const { return algebra_->FromCoordinates(coords_); }
  bool IsZero() const;
  /// Largest coordinate magnitude.
  double MaxCoordinate() const;
  /// Value of the representative at the algebra's point (requires a point).
  GaussianRational ValueAtPoint() const;

  Coset operator+(const Coset& o) const;
  Coset operator-(const Coset& o) const;
  Coset operator*(const Coset& o) const;
  Coset operator*(const GaussianRational& c) const;
  Coset operator-() const;
  bool operator==(const Coset& o) const;

  /// Throws NotInvertible when the value at the point vanishes or the
  /// multiplication matrix is singular.
  Coset Invert() const;

  /// Conjugates the coefficients into `target`, the algebra of the conjugate
  /// point. Throws AlgebraMismatch if `target` is not the conjugate ideal.
  Coset Sharp(const AlgebraPtr& target) const;

  /// Natural projection into a coarser algebra at the same point, e.g.
  /// C[x,y]/(PQ) -> C[x,y]/Q.
  Coset Project(const AlgebraPtr& target) const;

 private:
  void RequireSame(const Coset& o) const;

  AlgebraPtr algebra_;
  ExactVector coords_;
};

}  // namespace kreincalc
