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
#include <functional>
#include <vector>

#include "kreincalc/embedding.hpp"

namespace kreincalc {

/// Spectral measure of a normal matrix on a Hilbert space, one orthogonal
/// projection per (clustered) eigenvalue.
struct SpectralData {
  std::vector<Complex> eigenvalues;
  std::vector<Matrix> projections;
  Matrix unitary;

  int size() const { return static_cast<int>(eigenvalues.size()); }
  int dim() const { return static_cast<int>(unitary.rows()); }
  /// Index of the eigenvalue within `tol` of z, or -1.
  int Find(Complex z, double tol) const;
};

/// Diagonalizes Re M, then Im M inside every eigenspace of Re M, and merges
/// eigenvalues closer than tol.cluster * max(1, ||M||). Throws NotNormal.
SpectralData SpectralDecomposition(const Matrix& m, const Tolerances& tol = {});

/// sum_k values[k] P_k. Throws MissingValue on a size mismatch.
Matrix Integrate(const std::vector<Complex>& values, const SpectralData& e);
Matrix Integrate(const std::function<Complex(Complex)>& f, const SpectralData& e);

/// Spectral data of Theta(N) and every Theta_j(N), plus the position of each
/// eigenvalue relative to the real variety points.
struct SystemSpectra {
  SpectralData e;
  std::vector<SpectralData> e_j;
  /// e_j cluster -> e cluster (the spectrum of Theta_j(N) lies inside that of
  /// Theta(N)); -1 if an eigenvalue of Theta_j(N) has no partner.
  std::vector<std::vector<int>> j_to_e;
  /// For every cluster of e: index into `real_points`, or -1 when off V_R.
  std::vector<int> on_variety;
  /// Real variety points as complex numbers a_x + i a_y.
  std::vector<Complex> real_points;
};

/// Throws Error if a float eigenvalue matches more than one variety point.
SystemSpectra ComputeSpectra(const EmbeddingSystem& sys, const std::vector<Complex>& real_points);

/// Bound |p_j(z)| <= ||R_j R_j^*|| |sum_k p_k(z)| on sigma(Theta(N)), and
/// zeros of sum_k p_k among the eigenvalues lie on V_R.
std::vector<IdentityCheck> SpectralBoundCheck(const EmbeddingSystem& sys, const SystemSpectra& sp);

/// R_j R_j^* E(C \ V_R) against the spectral integral of p_j / sum_k p_k off
/// V_R, its commuted form, and the decomposition of Xi_j(int f dE_j) for
/// random f.
std::vector<IdentityCheck> OffVarietyCheck(const EmbeddingSystem& sys, const SystemSpectra& sp, int samples = 3,
                                           std::uint64_t seed = 7);

/// Gamma_j(E({z})) = E_j({z}), Gamma_j(int h dE) = int h dE_j and
/// Xi_j(int h dE_j) = Xi(R_j R_j^* int h dE) for random h; spectral
/// inclusion sigma(Theta_j(N)) in sigma(Theta(N)).
std::vector<IdentityCheck> MeasureTransferCheck(const EmbeddingSystem& sys, const SystemSpectra& sp, int samples = 3,
                                                std::uint64_t seed = 11);

}  // namespace kreincalc
