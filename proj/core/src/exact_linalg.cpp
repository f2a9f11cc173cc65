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

#include "kreincalc/exact_linalg.hpp"

#include <stdexcept>

namespace kreincalc {

ExactMatrix ExactMatrix::Identity(int n) {
  ExactMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

ExactVector ExactMatrix::Column(int c) const {
  ExactVector v(rows_);
  for (int r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void ExactMatrix::SetColumn(int c, const ExactVector& v) {
  for (int r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("exact matrix product: shape mismatch");
  ExactMatrix out(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i) {
    for (int k = 0; k < a.cols_; ++k) {
      const GaussianRational& aik = a(i, k);
      if (aik.IsZero()) continue;
      for (int j = 0; j < b.cols_; ++j) {
        if (!b(k, j).IsZero()) out(i, j) += aik * b(k, j);
      }
    }
  }
  return out;
}

ExactVector operator*(const ExactMatrix& a, const ExactVector& v) {
  if (a.cols_ != static_cast<int>(v.size())) throw std::invalid_argument("exact matrix-vector: shape mismatch");
  ExactVector out(a.rows_);
  for (int i = 0; i < a.rows_; ++i) {
    for (int k = 0; k < a.cols_; ++k) {
      if (!a(i, k).IsZero() && !v[k].IsZero()) out[i] += a(i, k) * v[k];
    }
  }
  return out;
}

namespace {

// Reduces the augmented system [a | rhs] in place to reduced row echelon
// form. Returns the rank of a.
int GaussJordan(ExactMatrix& a, ExactMatrix& rhs) {
  const int rows = a.rows(), cols = a.cols();
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r) {
      if (!a(r, c).IsZero()) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != rank) {
      for (int k = 0; k < cols; ++k) std::swap(a(pivot, k), a(rank, k));
      for (int k = 0; k < rhs.cols(); ++k) std::swap(rhs(pivot, k), rhs(rank, k));
    }
    GaussianRational inv = a(rank, c).Inverse();
    for (int k = 0; k < cols; ++k) a(rank, k) *= inv;
    for (int k = 0; k < rhs.cols(); ++k) rhs(rank, k) *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == rank || a(r, c).IsZero()) continue;
      GaussianRational f = a(r, c);
      for (int k = 0; k < cols; ++k) {
        if (!a(rank, k).IsZero()) a(r, k) -= f * a(rank, k);
      }
      for (int k = 0; k < rhs.cols(); ++k) {
        if (!rhs(rank, k).IsZero()) rhs(r, k) -= f * rhs(rank, k);
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace

std::optional<ExactVector> SolveExact(const ExactMatrix& a, const ExactVector& b) {
  if (a.rows() != a.cols() || a.rows() != static_cast<int>(b.size())) {
    throw std::invalid_argument("SolveExact: shape mismatch");
  }
  ExactMatrix m = a;
  ExactMatrix rhs(a.rows(), 1);
  rhs.SetColumn(0, b);
  if (GaussJordan(m, rhs) < a.rows()) return std::nullopt;
  return rhs.Column(0);
}

std::optional<ExactMatrix> InverseExact(const ExactMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("InverseExact: non-square matrix");
  ExactMatrix m = a;
  ExactMatrix rhs = ExactMatrix::Identity(a.rows());
  if (GaussJordan(m, rhs) < a.rows()) return std::nullopt;
  return rhs;
}

int RankExact(ExactMatrix a) {
  ExactMatrix rhs(a.rows(), 0);
  return GaussJordan(a, rhs);
}

}  // namespace kreincalc
