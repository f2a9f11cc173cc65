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

#include "kreincalc/dense.hpp"

#include <algorithm>
#include <numeric>

namespace kreincalc {

double OpNorm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double RelativeResidual(const Matrix& a, const Matrix& b) {
  if (a.size() == 0 && b.size() == 0) return 0.0;
  double scale = std::max({1.0, OpNorm(a), OpNorm(b)});
  return OpNorm(a - b) / scale;
}

Matrix PseudoInverse(const Matrix& m, double rel_cutoff) {
  if (m.size() == 0) return Matrix::Zero(m.cols(), m.rows());
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  double cutoff = rel_cutoff * (s.size() > 0 ? s(0) : 0.0);
  Eigen::VectorXd inv(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) inv(i) = (s(i) > cutoff && s(i) > 0) ? 1.0 / s(i) : 0.0;
  return svd.matrixV() * inv.cast<Complex>().asDiagonal() * svd.matrixU().adjoint();
}

int NumericalRank(const Matrix& m, double rel_cutoff) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > rel_cutoff * s(0) && s(i) > 0) ++rank;
  }
  return rank;
}

Matrix RangeBasis(const Matrix& m, double rel_cutoff) {
  if (m.size() == 0) return Matrix(m.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > rel_cutoff * s(0) && s(i) > 0) ++rank;
  }
  return svd.matrixU().leftCols(rank);
}

std::vector<Complex> ClusteredEigenvalues(const Matrix& m, double rel_tol) {
  if (m.rows() == 0) return {};
  Eigen::ComplexEigenSolver<Matrix> solver(m, /*computeEigenvectors=*/false);
  std::vector<Complex> ev(solver.eigenvalues().data(),
                          solver.eigenvalues().data() + solver.eigenvalues().size());
  double tol = rel_tol * std::max(1.0, OpNorm(m));
  // Single-linkage clustering; n is small so the quadratic pass is fine.
  std::vector<int> label(ev.size());
  std::iota(label.begin(), label.end(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < ev.size(); ++i) {
      for (size_t j = i + 1; j < ev.size(); ++j) {
        if (label[i] != label[j] && std::abs(ev[i] - ev[j]) <= tol) {
          int lo = std::min(label[i], label[j]);
          int hi = std::max(label[i], label[j]);
          for (auto& l : label) {
            if (l == hi) l = lo;
          }
          changed = true;
        }
      }
    }
  }
  std::vector<Complex> out;
  for (size_t i = 0; i < ev.size(); ++i) {
    if (label[i] != static_cast<int>(i)) continue;
    Complex sum = 0;
    int count = 0;
    for (size_t j = 0; j < ev.size(); ++j) {
      if (label[j] == static_cast<int>(i)) {
        sum += ev[j];
        ++count;
      }
    }
    out.push_back(sum / static_cast<double>(count));
  }
  std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

Matrix RandomMatrix(std::mt19937_64& rng, int rows, int cols) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(rows, cols);
  for (int c = 0; c < cols; ++c) {
    for (int r = 0; r < rows; ++r) m(r, c) = Complex(u(rng), u(rng));
  }
  return m;
}

}  // namespace kreincalc
