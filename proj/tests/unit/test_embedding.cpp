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

// Krein-space primitives, the embedding system and the spectral layer,
// checked against hand-computed matrices.

#include <gtest/gtest.h>

#include <random>

#include "kreincalc/corpus.hpp"
#include "kreincalc/embedding.hpp"
#include "kreincalc/errors.hpp"
#include "kreincalc/krein.hpp"
#include "kreincalc/spectral.hpp"
#include "kreincalc/variety.hpp"

namespace kreincalc {
namespace {

const Complex kI(0, 1);

Matrix M2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

KreinOperator Op(const Problem& p) { return {std::make_shared<KreinSpace>(p.gram), p.op}; }

EmbeddingSystem Build(const std::string& name) {
  const Problem p = GenerateProblem(name);
  return BuildEmbedding(Op(p), p.definitizing);
}

double Diff(const Matrix& a, const Matrix& b) { return (a - b).norm(); }

TEST(Krein, AdjointExamples) {
  const Matrix j = M2(0, 1, 1, 0);
  const Matrix e = M2(0, 1, 0, 0);
  KreinSpace k(j);
  EXPECT_LT(Diff(KreinAdjoint(k, e), e), 1e-15);
  const Matrix n = M2(kI, 1, 0, kI);
  EXPECT_LT(Diff(KreinAdjoint(k, n), M2(-kI, 1, 0, -kI)), 1e-15);

  std::mt19937_64 rng(3);
  const Matrix c = RandomMatrix(rng, 3, 3);
  KreinSpace hilbert(Matrix::Identity(3, 3));
  EXPECT_LT(Diff(KreinAdjoint(hilbert, c), c.adjoint()), 1e-15);
}

TEST(Krein, AdjointIsAntiMultiplicative) {
  std::mt19937_64 rng(5);
  const Matrix g = RandomMatrix(rng, 4, 4);
  KreinSpace k(g + g.adjoint() + 8.0 * Matrix::Identity(4, 4) * Complex(-1));
  const Matrix c = RandomMatrix(rng, 4, 4), d = RandomMatrix(rng, 4, 4);
  EXPECT_LT(RelativeResidual(KreinAdjoint(k, c * d), KreinAdjoint(k, d) * KreinAdjoint(k, c)), 1e-10);
  EXPECT_LT(RelativeResidual(KreinAdjoint(k, KreinAdjoint(k, c)), c), 1e-12);
}

TEST(Krein, RejectsBadGram) {
  EXPECT_THROW(KreinSpace(M2(1, 1, 0, 1)), NotHermitianPsd);
  EXPECT_THROW(KreinSpace(M2(1, 1, 1, 1)), SingularOperator);
}

TEST(Krein, NormalityExamples) {
  const auto space = std::make_shared<KreinSpace>(M2(0, 1, 1, 0));
  KreinOperator n(space, M2(kI, 1, 0, kI));
  EXPECT_TRUE(IsNormal(n, 1e-10));
  const auto [a, b] = RealImag(n);
  EXPECT_LT(Diff(a, M2(0, 1, 0, 0)), 1e-15);
  EXPECT_LT(Diff(b, Matrix::Identity(2, 2)), 1e-15);

  KreinOperator e(std::make_shared<KreinSpace>(M2(1, 0, 0, -1)), M2(0, 1, 0, 0));
  EXPECT_FALSE(IsNormal(e, 1e-10));

  KreinOperator diag(std::make_shared<KreinSpace>(Matrix::Identity(2, 2)), M2(2.0 + kI, 0, 0, -3));
  EXPECT_TRUE(IsNormal(diag, 1e-10));
}

TEST(Krein, DefinitizingExamples) {
  const Problem ex1 = GenerateProblem("ex1");
  const DefinitizingResult r = IsDefinitizing(Poly2::Parse("x"), Op(ex1), {});
  EXPECT_TRUE(r.ok);
  EXPECT_LT(Diff(r.gram_form, M2(0, 0, 0, 1)), 1e-15);

  const Problem ex3 = GenerateProblem("ex3");
  EXPECT_TRUE(IsDefinitizing(Poly2::Parse("1"), Op(ex3), {}).ok);
  EXPECT_FALSE(IsDefinitizing(Poly2::Parse("-1"), Op(ex3), {}).ok);
  EXPECT_THROW(IsDefinitizing(Poly2(), Op(ex3), {}), std::invalid_argument);

  // A non-real p is replaced by its real part with the same operator value.
  const DefinitizingResult c = IsDefinitizing(Poly2::Parse("x + i*y - i*y"), Op(ex1), {});
  EXPECT_TRUE(c.was_real);
  const DefinitizingResult d = IsDefinitizing(Poly2::Parse("x + i*x*y - i*x*y + i*y^2 - i"), Op(ex1), {});
  EXPECT_FALSE(d.was_real);
  EXPECT_TRUE(d.real_part.IsReal());
}

TEST(Krein, PolynomialsInAandBCommute) {
  for (const std::string name : {"ex2", "unitary"}) {
    const Problem p = GenerateProblem(name);
    const auto [a, b] = RealImag(Op(p));
    std::mt19937_64 rng(17);
    const Matrix u = MatSubst(RandomPoly(rng, 3), a, b);
    const Matrix v = MatSubst(RandomPoly(rng, 3), a, b);
    EXPECT_LT(RelativeResidual(u * v, v * u), 1e-10) << name;
  }
}

TEST(Krein, PsdFactorExamples) {
  Matrix g = Matrix::Zero(3, 3);
  g(0, 0) = 4;
  const PsdFactor f = PsdFactorize(g, {}, 0.0);
  EXPECT_EQ(f.rank, 1);
  EXPECT_NEAR(std::abs(f.s(0, 0)), 2.0, 1e-14);
  EXPECT_LT(Diff(f.s.adjoint() * f.s, g), 1e-14);

  EXPECT_EQ(PsdFactorize(Matrix::Zero(3, 3), {}, 0.0).rank, 0);
  const PsdFactor id = PsdFactorize(Matrix::Identity(4, 4), {}, 0.0);
  EXPECT_EQ(id.rank, 4);
  EXPECT_LT(Diff(id.s.adjoint() * id.s, Matrix::Identity(4, 4)), 1e-14);
  EXPECT_THROW(PsdFactorize(-Matrix::Identity(2, 2), {}, 0.0), NotHermitianPsd);
}

TEST(Krein, PsdFactorRoundoffFloor) {
  // A small matrix carrying absolute noise of size 1e-14: relative to its
  // own norm the noise is far above the tolerances, relative to the floor
  // it is not.
  Matrix g = Matrix::Zero(3, 3);
  g(0, 0) = 1e-6;
  g(1, 2) = 1e-14;
  g(2, 2) = -1e-14;
  EXPECT_THROW(PsdFactorize(g, {}, 0.0), NotHermitianPsd);
  const PsdFactor f = PsdFactorize(g, {}, 1e-12);
  EXPECT_EQ(f.rank, 1);
  EXPECT_EQ(PsdFactorize(g, {}, 1e-5).rank, 0);
  // A genuinely indefinite matrix is still rejected.
  g(2, 2) = -1e-7;
  EXPECT_THROW(PsdFactorize(g, {}, 1e-12), NotHermitianPsd);
}

TEST(Embedding, Ex1) {
  const EmbeddingSystem sys = Build("ex1");
  ASSERT_EQ(sys.h_dim(), 1);
  // T and T^+ are fixed up to a common unimodular phase.
  EXPECT_NEAR(std::abs(sys.t(0, 0)), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(sys.t(1, 0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(sys.s(0, 1)), 1.0, 1e-14);
  const Matrix theta = Theta(sys, sys.n.matrix());
  EXPECT_NEAR(std::abs(theta(0, 0) - kI), 0.0, 1e-14);
  const Complex c(2, -1);
  EXPECT_LT(Diff(Xi(sys, Matrix::Constant(1, 1, c)), c * M2(0, 1, 0, 0)), 1e-14);
  EXPECT_LT(Diff(Xi(sys, Matrix::Identity(1, 1)), sys.sum_ab), 1e-14);
}

TEST(Embedding, Ex2) {
  const EmbeddingSystem sys = Build("ex2");
  ASSERT_EQ(sys.h_dim(), 1);
  EXPECT_NEAR(std::abs(sys.t(0, 0)), 2.0, 1e-14);
  EXPECT_NEAR(sys.t.col(0).tail(2).norm(), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(Theta(sys, sys.n.matrix())(0, 0) - 2.0), 0.0, 1e-13);
}

TEST(Embedding, Ex3HilbertCase) {
  const EmbeddingSystem sys = Build("ex3");
  ASSERT_EQ(sys.h_dim(), 3);
  EXPECT_LT(Diff(sys.t * sys.s, Matrix::Identity(3, 3)), 1e-14);
  EXPECT_LT(Diff(sys.r_j[0] * sys.r_j[0].adjoint(), Matrix::Identity(3, 3)), 1e-14);
  // T is unitary here, so Theta(N) is unitarily equivalent to N; with the
  // identity Gram form T is the identity.
  EXPECT_LT(Diff(Theta(sys, sys.n.matrix()), sys.n.matrix()), 1e-14);
  const Matrix d = Matrix::Random(3, 3);
  EXPECT_LT(Diff(Xi(sys, d), d), 1e-14);
}

TEST(Embedding, DegenerateHasTrivialH) {
  const EmbeddingSystem sys = Build("degenerate");
  EXPECT_EQ(sys.h_dim(), 0);
  for (int j = 0; j < sys.m(); ++j) EXPECT_EQ(sys.hj_dim(j), 0);
  EXPECT_EQ(Theta(sys, sys.n.matrix()).rows(), 0);
  EXPECT_LT(Xi(sys, Matrix(0, 0)).norm(), 1e-300);
}

TEST(Embedding, RejectsBadInput) {
  const Problem ex3 = GenerateProblem("ex3");
  EXPECT_THROW(BuildEmbedding(Op(ex3), {Poly2::Parse("-1")}), NotDefinitizing);
  KreinOperator e(std::make_shared<KreinSpace>(M2(1, 0, 0, -1)), M2(0, 1, 0, 0));
  EXPECT_THROW(BuildEmbedding(e, {Poly2::Parse("1")}), NotNormal);
}

TEST(Embedding, StructuralInvariantsOnCorpus) {
  std::vector<Problem> corpus;
  for (const auto& name : NamedProblems()) corpus.push_back(GenerateProblem(name));
  for (std::uint64_t seed : {1, 2, 3}) corpus.push_back(GenerateProblem("random", seed, 7));
  for (const auto& p : corpus) {
    const EmbeddingSystem sys = BuildEmbedding(Op(p), p.definitizing);
    const double tol = 1e-9;
    for (int j = 0; j < sys.m(); ++j) {
      EXPECT_LT(RelativeResidual(sys.t_j[j] * sys.s_j[j], sys.pj_ab[j]), tol) << p.name;
      EXPECT_LT(RelativeResidual(sys.t * sys.r_j[j], sys.t_j[j]), tol) << p.name;
      EXPECT_EQ(sys.t_j[j].cols() == 0 ? 0 : NumericalRank(sys.t_j[j], 1e-9), sys.hj_dim(j)) << p.name;
    }
    EXPECT_LT(RelativeResidual(sys.t * sys.s, sys.sum_ab), tol) << p.name;
    for (const auto& c : VerifyTransferLemmas(sys)) {
      EXPECT_TRUE(c.pass) << p.name << ": " << c.name << " residual " << c.residual;
    }
  }
}

TEST(Spectral, Examples) {
  const SpectralData one = SpectralDecomposition(Matrix::Constant(1, 1, 2.0));
  ASSERT_EQ(one.size(), 1);
  EXPECT_NEAR(std::abs(one.eigenvalues[0] - 2.0), 0.0, 1e-15);

  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1;
  d(1, 1) = kI;
  const SpectralData e = SpectralDecomposition(d);
  ASSERT_EQ(e.size(), 2);
  EXPECT_NEAR(std::abs(e.eigenvalues[0] - kI), 0.0, 1e-15);  // sorted by real part
  EXPECT_LT(Diff(e.projections[0], M2(0, 0, 0, 1)), 1e-15);
  EXPECT_LT(Diff(Integrate([](Complex) { return Complex(1); }, e), Matrix::Identity(2, 2)), 1e-15);
  EXPECT_LT(Diff(Integrate([](Complex z) { return z; }, e), d), 1e-15);
  EXPECT_LT(Diff(Integrate([](Complex z) { return Complex(std::abs(z - kI) < 1e-9 ? 1 : 0); }, e), M2(0, 0, 0, 1)),
            1e-15);
  EXPECT_THROW(Integrate(std::vector<Complex>{1}, e), MissingValue);

  EXPECT_THROW(SpectralDecomposition(M2(kI, 1, 1, -kI)), NotNormal);
  EXPECT_EQ(SpectralDecomposition(Matrix(0, 0)).size(), 0);
}

TEST(Spectral, RandomNormalMatrices) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 6;
    const Matrix u = Eigen::HouseholderQR<Matrix>(RandomMatrix(rng, n, n)).householderQ();
    Matrix diag = Matrix::Zero(n, n);
    const Matrix values = RandomMatrix(rng, n, 1);
    for (int k = 0; k < n; ++k) diag(k, k) = values(k % std::max(1, n - 1), 0);  // one repeated value
    const Matrix m = u * diag * u.adjoint();
    const SpectralData e = SpectralDecomposition(m);
    EXPECT_EQ(e.size(), n - 1);
    Matrix sum = Matrix::Zero(n, n), recon = Matrix::Zero(n, n);
    for (int k = 0; k < e.size(); ++k) {
      const Matrix& p = e.projections[k];
      EXPECT_LT(Diff(p, p.adjoint()), 1e-10);
      EXPECT_LT(Diff(p * p, p), 1e-10);
      for (int l = k + 1; l < e.size(); ++l) EXPECT_LT((p * e.projections[l]).norm(), 1e-10);
      sum += p;
      recon += e.eigenvalues[k] * p;
    }
    EXPECT_LT(Diff(sum, Matrix::Identity(n, n)), 1e-10);
    EXPECT_LT(RelativeResidual(recon, m), 1e-9);
  }
}

TEST(Spectral, SystemChecksOnExamples) {
  for (const std::string name : {"ex1", "ex2", "ex3", "unitary", "selfadjoint", "jordan-at-i", "degenerate"}) {
    const EmbeddingSystem sys = Build(name);
    std::vector<Complex> real_points;
    for (const auto& a : SolveVariety(sys.ideal).points) {
      if (a.is_real) real_points.push_back(a.AsComplex());
    }
    const SystemSpectra sp = ComputeSpectra(sys, real_points);
    for (const auto& group : {SpectralBoundCheck(sys, sp), OffVarietyCheck(sys, sp), MeasureTransferCheck(sys, sp)}) {
      for (const auto& c : group) EXPECT_TRUE(c.pass) << name << ": " << c.name << " residual " << c.residual;
    }
    if (name == "ex1") {
      ASSERT_EQ(sp.e.size(), 1);
      EXPECT_EQ(sp.on_variety[0], 0);
    }
    if (name == "ex2") {
      ASSERT_EQ(sp.e.size(), 1);
      EXPECT_EQ(sp.on_variety[0], -1);
      EXPECT_NEAR(std::abs(sys.defpolys[0].EvalAt(2.0) - sys.sum_poly.EvalAt(2.0)), 0.0, 1e-15);
    }
  }
}

}  // namespace
}  // namespace kreincalc
