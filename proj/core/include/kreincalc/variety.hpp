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

#include "kreincalc/dense.hpp"
#include "kreincalc/quotient.hpp"

namespace kreincalc {

/// A point of V(I) together with its local primary data.
struct VarietyPoint {
  ExactPoint coords;
  /// Both coordinates real.
  bool is_real = false;
  /// Q(a): the primary component of I at this point.
  IdealData local_Q;
  /// P(a) = <x - a_x, y - a_y>.
  IdealData local_P;
  int d_x = 0;
  int d_y = 0;
  /// C[x,y]/(P(a) Q(a)).
  AlgebraPtr algebra_A;
  /// C[x,y]/Q(a).
  AlgebraPtr algebra_B;

  /// a_x + i a_y; meaningful as a spectral point only when is_real.
  Complex AsComplex() const;
  Complex X() const { return coords.first.ToComplex(); }
  Complex Y() const { return coords.second.ToComplex(); }
  /// The algebra carrying calculus values: A at real points, B otherwise.
  const AlgebraPtr& ValueAlgebra() const { return is_real ? algebra_A : algebra_B; }
};

struct Variety {
  IdealData ideal;
  AlgebraPtr quotient;
  /// Real points first, then nonreal; each group in lexicographic order of
  /// the float coordinates.
  std::vector<VarietyPoint> points;

  /// Index of the point with conjugated coordinates (itself when real), or
  /// -1 if the ideal is not conjugation invariant.
  int ConjugateIndex(int k) const;
  /// Index of an exact point, or -1.
  int Find(const ExactPoint& p) const;
};

/// Local data at a point of the variety: Q(a) = I + M_a^k for the least
/// stabilizing k. Throws NotInVariety.
/// `quotient_dim` bounds the stabilization index; pass -1 to compute it.
VarietyPoint LocalComponent(const IdealData& ideal, const ExactPoint& a, int quotient_dim = -1);

/// Solves a zero-dimensional ideal, verifies every point exactly, and checks
/// that the local algebras B(a) add up to the full quotient.
/// Throws NotZeroDimensional or NonRationalVarietyPoint.
Variety SolveVariety(const IdealData& ideal);

/// Chinese remainder interpolation across pairwise comaximal moduli. The
/// joint basis inverse is computed once and reused.
class CrtSolver {
 public:
  explicit CrtSolver(std::vector<AlgebraPtr> moduli);

  const std::vector<AlgebraPtr>& moduli() const { return moduli_; }
  const QuotientAlgebra& joint() const { return *joint_; }

  /// targets[k] are coordinates in moduli[k]. Returns the normal form with
  /// respect to the intersection of all moduli.
  Poly2 Interpolate(const std::vector<ExactVector>& targets) const;
  Poly2 Interpolate(const std::vector<Coset>& targets) const;

 private:
  std::vector<AlgebraPtr> moduli_;
  AlgebraPtr joint_;
  ExactMatrix inverse_;
};

/// Writes p = sum_j u_j p_j over the generators of `ideal` with every u_j
/// vanishing at the points of `w`. Throws MembershipFailed.
std::vector<Poly2> LiftMembership(const Poly2& p, const IdealData& ideal, const std::vector<ExactPoint>& w);

/// Exact univariate helpers exposed for testing. Coefficients are stored
/// lowest degree first.
using UniPoly = std::vector<GaussianRational>;
UniPoly UniGcd(UniPoly a, UniPoly b);
UniPoly UniSquarefree(const UniPoly& p);
/// Monic polynomial f of least degree with f(m) v = 0. For a multiplication
/// matrix and v the unit this is the minimal polynomial of the element.
UniPoly KrylovMinimalPolynomial(const ExactMatrix& m, const ExactVector& v);
GaussianRational UniEval(const UniPoly& p, const GaussianRational& t);

}  // namespace kreincalc
