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
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "kreincalc/groebner.hpp"
#include "kreincalc/krein.hpp"

namespace kreincalc {

/// Hilbert spaces H_j, H and the maps T_j: H_j -> K, T: H -> K,
/// R_j: H_j -> H with T_j T_j^+ = p_j(A,B), T T^+ = sum_k p_k(A,B),
/// T R_j = T_j and sum_k R_k R_k^* = I.
///
/// Zero-dimensional H or H_j are stored as matrices with zero columns.
struct EmbeddingSystem {
  explicit EmbeddingSystem(KreinOperator op) : n(std::move(op)) {}

  KreinOperator n;
  Matrix n_plus;
  Matrix a;
  Matrix b;
  std::vector<Poly2> defpolys;
  IdealData ideal;
  Poly2 sum_poly;
  std::vector<Matrix> pj_ab;  ///< p_j(A,B)
  Matrix sum_ab;              ///< sum_k p_k(A,B)
  std::vector<DefinitizingResult> definitizing;

  std::vector<Matrix> t_j;  ///< n x r_j
  std::vector<Matrix> s_j;  ///< T_j^+ = S_j, r_j x n
  Matrix t;                 ///< n x r
  Matrix s;                 ///< T^+ = S, r x n
  std::vector<Matrix> r_j;  ///< r x r_j

  Tolerances tol;

  // Cached left inverses used by the transport maps.
  Matrix t_pinv;
  std::vector<Matrix> t_j_pinv;
  std::vector<Matrix> r_j_pinv;

  int m() const { return static_cast<int>(defpolys.size()); }
  int h_dim() const { return static_cast<int>(t.cols()); }
  int hj_dim(int j) const { return static_cast<int>(t_j[j].cols()); }
  int dim() const { return n.dim(); }
  /// ||N||, at least 1.
  double OperatorScale() const;
};

/// Throws NotNormal, NotDefinitizing, or ResidualTooLarge.
EmbeddingSystem BuildEmbedding(const KreinOperator& n, const std::vector<Poly2>& defpolys, const Tolerances& tol = {});

/// Theta(C) = T^{-1} C T on H. Throws ResidualTooLarge when C does not leave
/// ran T invariant.
Matrix Theta(const EmbeddingSystem& sys, const Matrix& c);
Matrix ThetaJ(const EmbeddingSystem& sys, int j, const Matrix& c);
/// Gamma_j(D) = R_j^{-1} D R_j on H_j.
Matrix GammaJ(const EmbeddingSystem& sys, int j, const Matrix& d);
/// Xi(D) = T D T^+.
Matrix Xi(const EmbeddingSystem& sys, const Matrix& d);
Matrix XiJ(const EmbeddingSystem& sys, int j, const Matrix& d);
/// Lambda_j(D) = R_j D R_j^*.
Matrix LambdaJ(const EmbeddingSystem& sys, int j, const Matrix& d);

struct IdentityCheck {
  std::string name;
  double residual = 0;
  double tolerance = 0;
  bool pass = true;
};

/// Relative residual ||lhs - rhs|| / max(1, ||lhs||, ||rhs||) as a check.
IdentityCheck MakeCheck(const std::string& name, const Matrix& lhs, const Matrix& rhs, double tol);
/// Keeps, per name, the worst residual.
void MergeCheck(std::vector<IdentityCheck>& checks, const IdentityCheck& c);

/// Structural invariants of the system and the transfer identities between
/// K, H and H_j, evaluated on C = N, N^+ and random polynomials u.
std::vector<IdentityCheck> VerifyTransferLemmas(const EmbeddingSystem& sys, int random_polys = 3, std::uint64_t seed = 1);

/// A random polynomial with small Gaussian-integer coefficients.
Poly2 RandomPoly(std::mt19937_64& rng, int max_degree);

}  // namespace kreincalc
