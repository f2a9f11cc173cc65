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
#include <utility>
#include <vector>

#include "kreincalc/dense.hpp"
#include "kreincalc/poly2.hpp"
#include "kreincalc/tolerances.hpp"

namespace kreincalc {

/// C^n with the indefinite inner product [u, v] = v* J u.
class KreinSpace {
 public:
  /// Throws NotHermitianPsd if J is not Hermitian (1e-12 relative) and
  /// SingularOperator if J is not invertible.
  explicit KreinSpace(Matrix gram);

  int dim() const { return static_cast<int>(gram_.rows()); }
  const Matrix& gram() const { return gram_; }
  const Matrix& gram_inverse() const { return gram_inverse_; }
  /// sigma_max / sigma_min of J.
  double condition() const { return condition_; }
  Complex Inner(const Vector& u, const Vector& v) const { return v.dot(gram_ * u); }

 private:
  Matrix gram_;
  Matrix gram_inverse_;
  double condition_ = 1;
};

using SpacePtr = std::shared_ptr<const KreinSpace>;

class KreinOperator {
 public:
  KreinOperator(SpacePtr space, Matrix matrix);

  const SpacePtr& space() const { return space_; }
  const Matrix& matrix() const { return matrix_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }

 private:
  SpacePtr space_;
  Matrix matrix_;
};

/// J^{-1} C* J.
KreinOperator Adjoint(const KreinOperator& c);
Matrix KreinAdjoint(const KreinSpace& space, const Matrix& c);

/// A = (N + N^+)/2 and B = (N - N^+)/(2i).
std::pair<Matrix, Matrix> RealImag(const KreinOperator& n);

/// ||AB - BA|| <= tol ||A|| ||B|| (plus a roundoff floor).
bool IsNormal(const KreinOperator& n, double tol);
double NormalityResidual(const KreinOperator& n);

struct DefinitizingResult {
  bool ok = false;
  bool hermitian = false;
  bool psd = false;
  /// ||G - G*|| in excess of the roundoff floor, relative to ||G||.
  double hermitian_residual = 0;
  /// Smallest eigenvalue of (G + G*)/2 relative to ||G||, with negative
  /// values shifted toward zero by the roundoff floor.
  double min_eigenvalue = 0;
  /// Absolute size of the evaluation error of J p(A,B) in double precision.
  double roundoff_floor = 0;
  std::vector<double> eigenvalues; ///< certificate: spectrum of (G + G*)/2
  bool numerically_zero = false;   ///< p(A,B) vanishes at roundoff level
  bool was_real = true;
  Poly2 real_part;                 ///< (p + p^#)/2, the polynomial actually tested
  Matrix gram_form;                ///< G = J p(A,B)
};

/// Tests whether J p(A,B) is Hermitian positive semidefinite. Non-real p are
/// replaced by (p + p^#)/2, which has the same quadratic form. Throws
/// std::invalid_argument for p = 0.
DefinitizingResult IsDefinitizing(const Poly2& p, const KreinOperator& n, const Tolerances& tol = {});

struct PsdFactor {
  Matrix s;  ///< r x n with s* s = G
  int rank = 0;
  double residual = 0;  ///< ||s* s - G|| / ||G||
};

/// Factorizes a Hermitian PSD matrix through its eigendecomposition.
/// `roundoff_floor` is an absolute error level for the entries of G: a
/// matrix with ||G|| below it is zero, and it is added to the Hermitian,
/// negativity and rank thresholds. Throws NotHermitianPsd.
PsdFactor PsdFactorize(const Matrix& g, const Tolerances& tol = {}, double roundoff_floor = 0);

}  // namespace kreincalc
