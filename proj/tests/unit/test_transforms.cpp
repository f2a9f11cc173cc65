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

#include <gtest/gtest.h>

#include <random>

#include "kreincalc/corpus.hpp"
#include "kreincalc/errors.hpp"
#include "kreincalc/groebner.hpp"
#include "kreincalc/transforms.hpp"

namespace kreincalc {
namespace {

const Complex kI(0, 1);

KreinOperator Op(const Matrix& j, const Matrix& n) { return {std::make_shared<KreinSpace>(j), n}; }
KreinOperator Op(const Problem& p) { return Op(p.gram, p.op); }

Poly2 P(const char* text) { return Poly2::Parse(text); }

Matrix Swap2() {
  Matrix j(2, 2);
  j << 0, 1, 1, 0;
  return j;
}

TEST(Transforms, ShiftAndScaleExamples) {
  EXPECT_EQ(ShiftDefinitizing(P("y"), GaussianRational::I()), P("y - 1"));
  EXPECT_EQ(ShiftDefinitizing(P("x^2 + y^2 - 1"), 0), P("x^2 + y^2 - 1"));
  EXPECT_EQ(ScaleDefinitizing(P("x"), -1), P("-x"));
  // 1/(2i) = -i/2: x -> y/2, y -> -x/2.
  EXPECT_EQ(ScaleDefinitizing(P("x + y^2"), GaussianRational(0, 2)), P("y/2 + x^2/4"));
  EXPECT_THROW(ScaleDefinitizing(P("x"), 0), std::invalid_argument);
}

TEST(Transforms, InvertExamples) {
  EXPECT_EQ(InvertDefinitizing(P("y")), P("-y"));
  EXPECT_EQ(InvertDefinitizing(P("x^2 + y^2 - 1")), P("1 - x^2 - y^2"));
  EXPECT_EQ(InvertDefinitizing(P("x")), P("x"));
  EXPECT_EQ(InvertDefinitizing(P("1")), P("1"));
  EXPECT_THROW(InvertDefinitizing(Poly2()), std::invalid_argument);
  const Poly2 q = Poly2::Parse("1 + z^2*w + 3*w", Vars::kZW);
  EXPECT_EQ(Reversal(q), Poly2::Parse("z^2*w^2 + w + 3*z^2*w", Vars::kZW));
  EXPECT_EQ(Reversal(Reversal(q)), q);
}

TEST(Transforms, RealnessIsPreserved) {
  std::mt19937_64 rng(9);
  for (int s = 0; s < 30; ++s) {
    Poly2 p = RandomPoly(rng, 3);
    p = (p + p.Sharp()) * GaussianRational(mpq_class(1, 2));
    if (p.IsZero()) continue;
    ASSERT_TRUE(p.IsReal());
    EXPECT_TRUE(ShiftDefinitizing(p, GaussianRational(mpq_class(3, 2), -2)).IsReal());
    EXPECT_TRUE(ScaleDefinitizing(p, GaussianRational(1, 1)).IsReal());
    EXPECT_TRUE(InvertDefinitizing(p).IsReal());
  }
}

TEST(Transforms, ShiftAndScaleTransportDefinitizing) {
  for (const auto& name : NamedProblems()) {
    const Problem p = GenerateProblem(name);
    const KreinOperator n = Op(p);
    const int d = n.dim();
    const Complex beta(0.5, -1.25), alpha(-0.5, 2);
    const KreinOperator shifted = Op(p.gram, p.op + beta * Matrix::Identity(d, d));
    const KreinOperator scaled = Op(p.gram, alpha * p.op);
    for (const auto& q : p.definitizing) {
      EXPECT_TRUE(IsDefinitizing(ShiftDefinitizing(q, GaussianRational::FromDouble(beta)), shifted).ok) << name;
      EXPECT_TRUE(IsDefinitizing(ScaleDefinitizing(q, GaussianRational::FromDouble(alpha)), scaled).ok) << name;
    }
  }
}

TEST(Transforms, InverseTransportOnCorpus) {
  std::vector<Problem> corpus;
  for (const auto& name : NamedProblems()) corpus.push_back(GenerateProblem(name));
  for (std::uint64_t seed : {1, 2, 3, 4}) corpus.push_back(GenerateProblem("random", seed, 6));
  int checked = 0;
  for (const auto& p : corpus) {
    const KreinOperator n = Op(p);
    std::vector<TransformReport> reports;
    try {
      reports = InverseTransportCheck(n, p.definitizing);
    } catch (const SingularOperator&) {
      EXPECT_TRUE(p.name == "degenerate" || p.name.rfind("random", 0) == 0) << p.name;
      continue;
    }
    ++checked;
    ASSERT_EQ(reports.size(), p.definitizing.size());
    for (const auto& r : reports) {
      EXPECT_TRUE(r.definitizing_ok) << p.name << ": " << r.transformed.ToString();
      EXPECT_TRUE(r.ideal_zero_dim_ok) << p.name;
      EXPECT_LT((r.target_op.matrix() * p.op - Matrix::Identity(n.dim(), n.dim())).norm(), 1e-12);
    }
  }
  EXPECT_GE(checked, 6);

  const auto ex1 = InverseTransportCheck(Op(GenerateProblem("ex1")), {P("x")});
  EXPECT_EQ(ex1[0].transformed, P("x"));
  Matrix expected(2, 2);
  expected << -kI, 1, 0, -kI;
  EXPECT_LT((ex1[0].target_op.matrix() - expected).norm(), 1e-15);

  EXPECT_THROW(InverseTransportCheck(Op(GenerateProblem("degenerate")), {P("x^2")}), SingularOperator);
}

TEST(Transforms, SpecialCases) {
  const auto sa = SpecialCaseCheck(Op(GenerateProblem("selfadjoint")));
  EXPECT_TRUE(sa.selfadjoint);
  EXPECT_FALSE(sa.unitary);
  for (const auto& c : sa.checks) EXPECT_TRUE(c.pass) << c.name;

  // Nonreal eigenvalues of a selfadjoint operator in a Krein space pair up.
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = kI;
  d(1, 1) = -kI;
  const auto pair = SpecialCaseCheck(Op(Swap2(), d), {P("x^2 + 1"), P("y")});
  EXPECT_TRUE(pair.selfadjoint);
  ASSERT_EQ(pair.checks.size(), 4u);
  for (const auto& c : pair.checks) EXPECT_TRUE(c.pass) << c.name;

  const Complex u = std::exp(0.7 * kI);
  Matrix j = Matrix::Identity(2, 2);
  j(1, 1) = -1;
  const auto un = SpecialCaseCheck(Op(j, u * Matrix::Identity(2, 2)));
  EXPECT_TRUE(un.unitary);
  for (const auto& c : un.checks) EXPECT_TRUE(c.pass) << c.name;

  Matrix off = Matrix::Zero(2, 2);
  off(0, 0) = 2;
  off(1, 1) = 0.5;
  const auto reflected = SpecialCaseCheck(Op(Swap2(), off));
  EXPECT_TRUE(reflected.unitary);
  for (const auto& c : reflected.checks) EXPECT_TRUE(c.pass) << c.name;

  const auto named = SpecialCaseCheck(Op(GenerateProblem("unitary")), GenerateProblem("unitary").definitizing);
  EXPECT_TRUE(named.unitary);
  for (const auto& c : named.checks) EXPECT_TRUE(c.pass) << c.name;

  // N = iI + E with J the swap satisfies N^+ N = N N^+ = I.
  const auto ex1 = SpecialCaseCheck(Op(GenerateProblem("ex1")));
  EXPECT_FALSE(ex1.selfadjoint);
  EXPECT_TRUE(ex1.unitary);
  const auto ex2 = SpecialCaseCheck(Op(GenerateProblem("ex2")));
  EXPECT_FALSE(ex2.selfadjoint);
  EXPECT_FALSE(ex2.unitary);
  EXPECT_TRUE(ex2.checks.empty());
}

}  // namespace
}  // namespace kreincalc
