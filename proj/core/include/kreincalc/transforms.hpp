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

#include <vector>

#include "kreincalc/embedding.hpp"
#include "kreincalc/krein.hpp"
#include "kreincalc/poly2.hpp"

namespace kreincalc {

/// p(x - Re beta, y - Im beta): definitizing for N + beta I iff p is for N.
Poly2 ShiftDefinitizing(const Poly2& p, const GaussianRational& beta);

/// p(x Re(1/alpha) - y Im(1/alpha), x Im(1/alpha) + y Re(1/alpha)):
/// definitizing for alpha N iff p is for N. Throws std::invalid_argument for
/// alpha = 0.
Poly2 ScaleDefinitizing(const Poly2& p, const GaussianRational& alpha);

/// (zw)^d q(1/z, 1/w) with d the larger of the z- and w-degrees of q. Some
/// term of q reaches degree d, so the result never has a common factor zw.
Poly2 Reversal(const Poly2& q);

/// Phi^{-1}(reversal(Phi(p))), definitizing for N^{-1} whenever p is
/// definitizing for N. Throws std::invalid_argument for p = 0.
Poly2 InvertDefinitizing(const Poly2& p);

struct TransformReport {
  Poly2 original;
  Poly2 transformed;
  KreinOperator target_op;
  DefinitizingResult definitizing;
  bool definitizing_ok = false;
  /// <transformed p_1, ..., transformed p_m> is zero-dimensional.
  bool ideal_zero_dim_ok = false;
};

/// Transforms every p_j for N^{-1} and tests it. Throws SingularOperator
/// when N has an eigenvalue within 1e-10 of 0.
std::vector<TransformReport> InverseTransportCheck(const KreinOperator& n, const std::vector<Poly2>& defpolys,
                                            const Tolerances& tol = {});

struct SpecialCaseReport {
  bool selfadjoint = false;
  bool unitary = false;
  std::vector<IdentityCheck> checks;
};

/// Detects N = N^+ and N^+ N = N N^+ = I. For a selfadjoint N it verifies
/// that y(A,B) = 0 and that the nonreal eigenvalues come in conjugate
/// pairs; for a unitary N that x^2 + y^2 - 1 vanishes at (A,B) and that the
/// eigenvalues off the unit circle come in pairs lambda, 1/conj(lambda).
/// With a nonempty zero-dimensional `defpolys` the exceptional eigenvalues
/// must also lie in {alpha + i beta : (alpha, beta) in V(I)}.
SpecialCaseReport SpecialCaseCheck(const KreinOperator& n, const std::vector<Poly2>& defpolys = {},
                                   const Tolerances& tol = {});

}  // namespace kreincalc
