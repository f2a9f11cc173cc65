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

#include "kreincalc/corpus.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace kreincalc {

namespace {

const Complex kI(0, 1);

Matrix Swap2() {
  Matrix j(2, 2);
  j << 0, 1, 1, 0;
  return j;
}

Matrix Nil2() {
  Matrix e(2, 2);
  e << 0, 1, 0, 0;
  return e;
}

Matrix DirectSum(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

Matrix Scalar(Complex z) { return Matrix::Constant(1, 1, z); }

Matrix Diag(std::initializer_list<Complex> values) {
  Matrix d = Matrix::Zero(values.size(), values.size());
  int k = 0;
  for (Complex v : values) {
    d(k, k) = v;
    ++k;
  }
  return d;
}

std::vector<Poly2> Polys(std::initializer_list<const char*> texts) {
  std::vector<Poly2> out;
  for (const char* t : texts) out.push_back(Poly2::Parse(t));
  return out;
}

Problem Ex1() {
  Matrix n(2, 2);
  n << kI, 1, 0, kI;
  return {"ex1", Swap2(), n, Polys({"x", "y - 1"})};
}

Problem Ex2() {
  const Matrix j = DirectSum(Scalar(1), Swap2());
  const Matrix n = DirectSum(Scalar(2), kI * Matrix::Identity(2, 2) + Nil2());
  return {"ex2", j, n, Polys({"x^2", "y^2 - y"})};
}

Problem Ex3() { return {"ex3", Matrix::Identity(3, 3), Diag({1, kI, -2}), Polys({"1"})}; }

Problem JordanAtI() {
  Matrix j = Matrix::Zero(3, 3);
  for (int k = 0; k < 3; ++k) j(k, 2 - k) = 1;
  Matrix n = kI * Matrix::Identity(3, 3);
  n(0, 1) = n(1, 2) = 1;
  return {"jordan-at-i", j, n, Polys({"x^2", "y - 1"})};
}

Problem Degenerate() {
  const Matrix j = DirectSum(Scalar(-1), Swap2());
  const Matrix n = DirectSum(Scalar(0), kI * Nil2());
  return {"degenerate", j, n, Polys({"x^2", "y^2"})};
}

Problem Selfadjoint() {
  const Matrix j = DirectSum(Swap2(), Scalar(1));
  const Matrix n = DirectSum(2.0 * Matrix::Identity(2, 2) + Nil2(), Scalar(5));
  return {"selfadjoint", j, n, Polys({"y", "x - 2"})};
}

Problem Unitary() {
  const Complex u(0.6, 0.8);
  return {"unitary", Diag({1, -1, 1, 1}), Diag({u, u, 1, -1}), Polys({"x^2 + y^2 - 1", "x^2 - 6/5*x + 9/25"})};
}

// Canonical blocks for the definitizing pair p1 = x - c0 and
// p2 = prod_d (y - d)^2 (y^2 + 1):
//   positive scalars (J = 1) with Re z > c0,
//   negative scalars (J = -1) at c0 - u + i d with u >= 0,
//   2x2 blocks in the swap form at c0 + i d, nilpotent in A or in B.
Problem Random(std::uint64_t seed, int dim) {
  if (dim < 3) throw std::invalid_argument("random instances need dim >= 3");
  std::mt19937_64 rng(seed);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  const int c0 = pick(-2, 2);
  std::vector<int> ds;
  const int count = pick(1, 2);
  while (static_cast<int>(ds.size()) < count) {
    const int d = pick(-2, 2);
    if (std::find(ds.begin(), ds.end(), d) == ds.end()) ds.push_back(d);
  }
  Poly2 p2 = Poly2::Parse("y^2 + 1");
  for (int d : ds) p2 *= (Poly2::Second() - Poly2::Constant(d)).Pow(2);
  Poly2 p1 = Poly2::First() - Poly2::Constant(c0);

  Matrix j(0, 0), n(0, 0);
  auto add = [&](const Matrix& jb, const Matrix& nb) {
    j = DirectSum(j, jb);
    n = DirectSum(n, nb);
  };
  auto half = [&](int lo, int hi) { return pick(lo, hi) / 2.0; };
  for (int block = 0; n.rows() < dim; ++block) {
    const int remaining = dim - static_cast<int>(n.rows());
    int kind = block < 3 ? block : pick(0, 2);
    if (kind == 1 && remaining < 2) kind = 0;
    const double d = ds[pick(0, static_cast<int>(ds.size()) - 1)];
    switch (kind) {
      case 0:
        add(Scalar(1), Scalar(Complex(c0 + half(1, 6), half(-4, 4))));
        break;
      case 1: {
        const Complex lambda(c0, d);
        const Complex nil = pick(0, 1) == 0 ? Complex(1) : kI;
        add(Swap2(), lambda * Matrix::Identity(2, 2) + nil * Nil2());
        break;
      }
      default:
        add(Scalar(-1), Scalar(Complex(c0 - half(0, 4), d)));
        break;
    }
  }
  const Matrix u = Eigen::HouseholderQR<Matrix>(RandomMatrix(rng, dim, dim)).householderQ();
  return {"random-" + std::to_string(seed) + "-" + std::to_string(dim), u.adjoint() * j * u, u.adjoint() * n * u,
          {p1, p2}};
}

}  // namespace

const std::vector<std::string>& NamedProblems() {
  static const std::vector<std::string> names = {"ex1",        "ex2",         "ex3",    "jordan-at-i",
                                                 "degenerate", "selfadjoint", "unitary"};
  return names;
}

Problem GenerateProblem(const std::string& name, std::uint64_t seed, int dim) {
  if (name == "ex1") return Ex1();
  if (name == "ex2") return Ex2();
  if (name == "ex3") return Ex3();
  if (name == "jordan-at-i") return JordanAtI();
  if (name == "degenerate") return Degenerate();
  if (name == "selfadjoint") return Selfadjoint();
  if (name == "unitary") return Unitary();
  if (name == "random") return Random(seed, dim);
  throw std::invalid_argument("unknown problem name '" + name + "'");
}

}  // namespace kreincalc
