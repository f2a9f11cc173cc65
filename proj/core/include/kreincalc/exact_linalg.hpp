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

#include <optional>
#include <vector>

#include "kreincalc/gaussian_rational.hpp"

namespace kreincalc {

using ExactVector = std::vector<GaussianRational>;

/// Dense row-major matrix over Q + iQ.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}

  static ExactMatrix Identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  GaussianRational& operator()(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
  const GaussianRational& operator()(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

  ExactVector Column(int c) const;
  void SetColumn(int c, const ExactVector& v);

  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactVector operator*(const ExactMatrix& a, const ExactVector& v);
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<GaussianRational> data_;
};

/// Solves a x = b for square a by Gauss-Jordan elimination; nullopt when a is
/// singular.
std::optional<ExactVector> SolveExact(const ExactMatrix& a, const ExactVector& b);

/// Inverse of a square matrix; nullopt when singular.
std::optional<ExactMatrix> InverseExact(const ExactMatrix& a);

/// Rank via row reduction.
int RankExact(ExactMatrix a);

}  // namespace kreincalc
