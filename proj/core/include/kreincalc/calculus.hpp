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

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "kreincalc/embedding.hpp"
#include "kreincalc/spectral.hpp"
#include "kreincalc/variety.hpp"

namespace kreincalc {

/// Everything the functional calculus of one operator needs: the embedding
/// system, the variety of I = <p_1, ..., p_m> with its local algebras, the
/// spectral data of Theta(N) and Theta_j(N), and cached CRT solvers.
struct CalcContext {
  explicit CalcContext(EmbeddingSystem s) : sys(std::move(s)) {}

  EmbeddingSystem sys;
  Variety variety;
  SystemSpectra spectra;
  /// Clusters of sigma(Theta(N)) off V_R(I), as indices into spectra.e.
  std::vector<int> off_clusters;
  /// Real variety points that are eigenvalues of Theta(N) (the set W of the
  /// ideal N), as indices into variety.points.
  std::vector<int> spectral_real_points;
  /// Moduli: A(a) at real points, B(a) at nonreal points.
  std::shared_ptr<const CrtSolver> crt;
  /// Moduli for the ideal N: P(a)Q(a) at points of W, Q(a) elsewhere.
  std::shared_ptr<const CrtSolver> crt_null;
  /// max(1, ||N||).
  double scale = 1;

  const Tolerances& tol() const { return sys.tol; }
  int m() const { return sys.m(); }
  /// Eigenvalue of Theta(N) for an off-variety cluster.
  Complex OffPoint(int k) const { return spectra.e.eigenvalues[off_clusters[k]]; }
};

using ContextPtr = std::shared_ptr<const CalcContext>;

/// Builds the embedding, solves the variety and decomposes Theta(N).
/// Throws NotNormal, NotDefinitizing, NotZeroDimensional,
/// NonRationalVarietyPoint or ResidualTooLarge.
ContextPtr MakeContext(const KreinOperator& n, const std::vector<Poly2>& defpolys, const Tolerances& tol = {});
/// Same, starting from an embedding that is already built.
ContextPtr MakeContext(EmbeddingSystem sys);

/// Taylor data for CalcFunction::Jet: derivatives of f o tau in the real
/// directions at real points, holomorphic partials at nonreal points.
struct JetData {
  /// f(z) for every off-variety cluster.
  std::vector<Complex> values;
  /// derivatives[k][(i, j)] = d^{i+j} f / dx^i dy^j at variety point k.
  std::vector<std::map<std::pair<int, int>, Complex>> derivatives;
};

/// An element of the function class: scalars on sigma(Theta(N)) \ V_R(I),
/// a coset of A(w) at every real variety point and of B(a) at every
/// nonreal one.
class CalcFunction {
 public:
  CalcFunction(ContextPtr ctx, std::vector<Complex> scalars, std::vector<Coset> cosets);

  static CalcFunction Zero(const ContextPtr& ctx);
  static CalcFunction Unit(const ContextPtr& ctx);
  /// s_N: s(z) off the variety, s + P(w)Q(w) or s + Q(a) at variety points.
  static CalcFunction Poly(const ContextPtr& ctx, const Poly2& s);
  /// Taylor cosets built from jets. Throws MissingValue for absent entries.
  static CalcFunction Jet(const ContextPtr& ctx, const JetData& jets);
  /// a at variety point `point`, zero elsewhere. Throws NotInVariety.
  static CalcFunction Delta(const ContextPtr& ctx, int point, const Coset& a);

  const ContextPtr& context() const { return ctx_; }
  const std::vector<Complex>& scalars() const { return scalars_; }
  const std::vector<Coset>& cosets() const { return cosets_; }

  CalcFunction operator+(const CalcFunction& o) const;
  CalcFunction operator-(const CalcFunction& o) const;
  CalcFunction operator*(const CalcFunction& o) const;
  CalcFunction operator*(Complex c) const;
  /// phi^#: conjugated scalars; cosets sharpened and moved to the conjugate
  /// point.
  CalcFunction Sharp() const;
  /// Pointwise inverse. Throws NotInvertible naming the offending point.
  CalcFunction Invert() const;

  /// max(1, ||N||, sup |phi|, largest coset coordinate).
  double Scale() const;

 private:
  void RequireSame(const CalcFunction& o) const;

  ContextPtr ctx_;
  std::vector<Complex> scalars_;
  std::vector<Coset> cosets_;
};

/// (r, f_1, ..., f_m) with each f_k given on every cluster of
/// sigma(Theta(N)).
struct Triple {
  Poly2 r;
  std::vector<std::vector<Complex>> f;
};

Triple ZeroTriple(const CalcContext& ctx);
Triple operator+(const Triple& a, const Triple& b);
Triple operator-(const Triple& a, const Triple& b);
/// (rs, r g_j + s f_j + f_j sum_k g_k p_k).
Triple TripleMul(const CalcContext& ctx, const Triple& a, const Triple& b);
/// (r^#, conj f_1, ..., conj f_m).
Triple TripleSharp(const Triple& t);

/// Canonical decomposition: r interpolates phi at all variety points and
/// f_j = (phi - r) / sum_k p_k off V_R, zero on V_R. Throws Error when
/// sum_k p_k nearly vanishes at an off-variety eigenvalue.
Triple Decompose(const CalcFunction& phi);

/// r(A,B) + sum_k Xi_k(int f_k dE_k).
Matrix PsiApply(const CalcContext& ctx, const Triple& t);
/// max(1, ||r(A,B)||, sum_k ||Xi_k(int f_k dE_k)||): the size of the terms
/// PsiApply adds up.
double TripleScale(const CalcContext& ctx, const Triple& t);

/// phi(N) = Psi(Decompose(phi)).
Matrix PhiOfN(const CalcFunction& phi);

struct NullMembership {
  bool member = false;
  /// Worst relative residual over both defining conditions.
  double residual = 0;
  std::string reason;
  /// Exact u_j with r = sum u_j p_j, filled when every f_j vanishes on W.
  std::optional<std::vector<Poly2>> witness;
};

/// Tests t against the ideal N: r + sum f_k p_k = 0 off V_R, and r =
/// sum u_k p_k for some u with u_j = -f_j on W = V_R(I) n sigma(Theta(N)).
/// The second condition is decided in C[x,y]/J(W) against Lagrange
/// multipliers of the p_j.
NullMembership InIdealN(const CalcContext& ctx, const Triple& t);

/// A random element of N: r = sum u_k p_k for random u, f_k = -u_k on W and
/// f_k = -u_k + g_k off V_R with sum g_k p_k = 0.
Triple RandomNullElement(const CalcContext& ctx, std::mt19937_64& rng);
Triple RandomTriple(const CalcContext& ctx, std::mt19937_64& rng);
/// Mixture of random scalar/coset data, s_N, and deltas.
CalcFunction RandomFunction(const ContextPtr& ctx, std::mt19937_64& rng);
/// Random exact coset in the algebra of a variety point.
Coset RandomCoset(const AlgebraPtr& algebra, std::mt19937_64& rng);

/// chi_w(z) = max |h(z)| over the reduced basis of Q(w). Throws
/// NotInVariety if `point` is not a real variety point.
double ComputeChi(const CalcContext& ctx, int point, Complex z);

/// sigma(N) against the union of sigma(Theta(N)), V_R(I) n sigma(N) and the
/// nonreal points with both alpha + i beta and conj(alpha) + i conj(beta) in
/// sigma(N).
struct SpectrumFormula {
  std::vector<Complex> direct;
  std::vector<Complex> formula;
  double residual = 0;
  double tolerance = 0;
  bool pass = false;
};
SpectrumFormula SpectrumFormulaCheck(const CalcContext& ctx);

/// sigma(N) from the eigenvalues of N. Eigenvalues of a Jordan block split
/// by about eps^(1/k); they are merged within 1e-5 ||N|| and averaged.
std::vector<Complex> OperatorSpectrum(const Matrix& n);

/// P = (e delta_zeta)(N): idempotent, commutes with N, and (N - lambda) is
/// nilpotent on ran P, i.e. ||((N - lambda) P)^n|| vanishes.
std::vector<IdentityCheck> RieszCheck(const ContextPtr& ctx, int point);

/// *-homomorphism properties on random pairs: multiplicativity, additivity
/// and phi^#(N) = phi(N)^+.
std::vector<IdentityCheck> HomomorphismCheck(const ContextPtr& ctx, int pairs, std::uint64_t seed);
/// Psi(t + n) = Psi(t) for random n in N, and InIdealN accepts n.
std::vector<IdentityCheck> WellDefinedCheck(const ContextPtr& ctx, int samples, std::uint64_t seed);
/// Psi(t u) = Psi(t) Psi(u), Psi(t^#) = Psi(t)^+, and the commutator
/// t u - u t lies in N.
std::vector<IdentityCheck> TripleAlgebraCheck(const ContextPtr& ctx, int samples, std::uint64_t seed);
/// phi(N) commutes with random elements of {A, B}'.
std::vector<IdentityCheck> CommutantCheck(const ContextPtr& ctx, int samples, std::uint64_t seed);
/// Changing phi at w in V_R within ker pi_w does not change phi(N) when
/// E{w} = 0; phi supported off the effective set maps to 0.
std::vector<IdentityCheck> LocalityCheck(const ContextPtr& ctx, int samples, std::uint64_t seed);
/// phi^{-1}(N) phi(N) = I for random invertible phi.
std::vector<IdentityCheck> InversionCheck(const ContextPtr& ctx, int samples, std::uint64_t seed);

/// Basis of {C : AC = CA, BC = CB} from the null space of the commutator map.
std::vector<Matrix> CommutantBasis(const Matrix& a, const Matrix& b, double tol = 1e-9);

}  // namespace kreincalc
