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

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace kreincalc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Spectral norm (largest singular value). Zero for empty matrices.
double OpNorm(const Matrix& m);

/// ||a - b|| / max(1, ||a||, ||b||).
double RelativeResidual(const Matrix& a, const Matrix& b);

/// Moore-Penrose pseudo-inverse with singular values below
/// `rel_cutoff * sigma_max` treated as zero.
Matrix PseudoInverse(const Matrix& m, double rel_cutoff = 1e-12);

/// Numerical rank with the same relative cutoff convention.
int NumericalRank(const Matrix& m, double rel_cutoff);

/// Orthonormal basis of the column space.
Matrix RangeBasis(const Matrix& m, double rel_cutoff);

/// Eigenvalues of a general square matrix, grouped: eigenvalues closer than
/// `rel_tol * max(1, ||m||)` are merged and replaced by their mean, which is
/// far more accurate than the individual members for defective eigenvalues.
std::vector<Complex> ClusteredEigenvalues(const Matrix& m, double rel_tol);

/// Entries with independent real and imaginary parts uniform in [-1, 1].
Matrix RandomMatrix(std::mt19937_64& rng, int rows, int cols);

}  // namespace kreincalc
