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

// The function class, the triple algebra and phi(N).

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "kreincalc/calculus.hpp"
#include "kreincalc/corpus.hpp"
#include "kreincalc/errors.hpp"

namespace kreincalc {
namespace {

const Complex kI(0, 1);

ContextPtr Context(const Problem& p) {
  return MakeContext(KreinOperator(std::make_shared<KreinSpace>(p.gram), p.op), p.definitizing);
}

ContextPtr Context(const std::string& name) { return Context(GenerateProblem(name)); }

std::vector<Problem> Corpus() {
  std::vector<Problem> out;
  for (const auto& name : NamedProblems()) out.push_back(GenerateProblem(name));
  for (std::uint64_t seed : {1, 2, 3}) out.push_back(GenerateProblem("random", seed, 6));
  return out;
}

int PointIndex(const CalcContext& ctx, long x, long y) {
  return ctx.variety.Find({GaussianRational(x), GaussianRational(y)});
}

double Diff(const Matrix& a, const Matrix& b) { return (a - b).norm(); }

// d^{i+j} p / dx^i dy^j evaluated at (x, y), straight from the monomials.
Complex Partial(const Poly2& p, int i, int j, Complex x, Complex y) {
  Complex out = 0;
  for (const auto& [m, c] : p.terms()) {
    if (m.a < i || m.b < j) continue;
    double falling = 1;
    for (int k = 0; k < i; ++k) falling *= m.a - k;
    for (int k = 0; k < j; ++k) falling *= m.b - k;
    out += c.ToComplex() * falling * std::pow(x, m.a - i) * std::pow(y, m.b - j);
  }
  return out;
}

JetData PolynomialJets(const CalcContext& ctx, const Poly2& s) {
  JetData jets;
  for (size_t k = 0; k < ctx.off_clusters.size(); ++k) jets.values.push_back(s.EvalAt(ctx.OffPoint(static_cast<int>(k))));
  for (const auto& a : ctx.variety.points) {
    std::map<std::pair<int, int>, Complex> d;
    for (int i = 0; i <= a.d_x; ++i) {
      for (int j = 0; j <= a.d_y; ++j) d[{i, j}] = Partial(s, i, j, a.X(), a.Y());
    }
    jets.derivatives.push_back(std::move(d));
  }
  return jets;
}

void ExpectSame(const CalcFunction& a, const CalcFunction& b) {
  ASSERT_EQ(a.scalars().size(), b.scalars().size());
  for (size_t k = 0; k < a.scalars().size(); ++k) EXPECT_LT(std::abs(a.scalars()[k] - b.scalars()[k]), 1e-12);
  ASSERT_EQ(a.cosets().size(), b.cosets().size());
  for (size_t k = 0; k < a.cosets().size(); ++k) {
    const auto& ca = a.cosets()[k].coords();
    const auto& cb = b.cosets()[k].coords();
    ASSERT_EQ(ca.size(), cb.size());
    for (size_t i = 0; i < ca.size(); ++i) EXPECT_LT(std::abs(ca[i].ToComplex() - cb[i].ToComplex()), 1e-12);
  }
}

TEST(Calculus, EmbedPolyEx1) {
  const ContextPtr ctx = Context("ex1");
  const int w = PointIndex(*ctx, 0, 1);
  ASSERT_GE(w, 0);
  const auto& algebra = ctx->variety.points[w].algebra_A;
  const CalcFunction id = CalcFunction::Poly(ctx, Poly2::Parse("x + i*y"));
  EXPECT_TRUE(id.cosets()[w] == Coset::Of(algebra, Poly2::Parse("i + x + i*(y - 1)")));
  EXPECT_EQ(id.cosets()[w].ValueAtPoint(), GaussianRational(0, 1));

  const CalcFunction x = CalcFunction::Poly(ctx, Poly2::First());
  EXPECT_FALSE(x.cosets()[w].IsZero());

  const CalcFunction one = CalcFunction::Unit(ctx);
  for (const auto& c : one.cosets()) EXPECT_TRUE(c == Coset::Unit(c.algebra()));
  for (Complex v : one.scalars()) EXPECT_EQ(v, Complex(1));
}

TEST(Calculus, JetsReproducePolynomials) {
  for (const auto& p : Corpus()) {
    const ContextPtr ctx = Context(p);
    std::mt19937_64 rng(5);
    for (int s = 0; s < 3; ++s) {
      const Poly2 poly = RandomPoly(rng, 3);
      ExpectSame(CalcFunction::Jet(ctx, PolynomialJets(*ctx, poly)), CalcFunction::Poly(ctx, poly));
    }
    JetData constant = PolynomialJets(*ctx, Poly2());
    for (auto& v : constant.values) v = 3.0;
    for (auto& d : constant.derivatives) d[{0, 0}] = 3.0;
    ExpectSame(CalcFunction::Jet(ctx, constant), CalcFunction::Unit(ctx) * Complex(3));
  }
}

TEST(Calculus, ExponentialJetAtI) {
  const ContextPtr ctx = Context("ex1");
  const Complex ei = std::exp(kI);
  JetData jets;
  // All partials of exp(x + i y) are i^l exp(x + i y).
  jets.derivatives.push_back({{{0, 0}, ei}, {{1, 0}, ei}, {{0, 1}, kI * ei}});
  const CalcFunction f = CalcFunction::Jet(ctx, jets);
  const Coset expected = Coset::Of(ctx->variety.points[0].algebra_A, Poly2::Parse("1 + x + i*(y - 1)"));
  const Poly2 rep = f.cosets()[0].Representative();
  const Poly2 want = expected.Representative();
  for (const auto& [m, c] : want.terms()) EXPECT_LT(std::abs(rep.Coefficient(m).ToComplex() - ei * c.ToComplex()), 1e-15);
  EXPECT_EQ(rep.terms().size(), want.terms().size());

  jets.derivatives[0].erase({0, 1});
  EXPECT_THROW(CalcFunction::Jet(ctx, jets), MissingValue);
}

TEST(Calculus, DeltaAndPointwiseAlgebra) {
  const ContextPtr ex1 = Context("ex1");
  const auto& a = ex1->variety.points[0].algebra_A;
  const CalcFunction d = CalcFunction::Delta(ex1, 0, Coset::Unit(a));
  EXPECT_TRUE(d.cosets()[0] == Coset::Unit(a));
  EXPECT_THROW(CalcFunction::Delta(ex1, 5, Coset::Unit(a)), NotInVariety);

  const ContextPtr ex2 = Context("ex2");
  const int zero = PointIndex(*ex2, 0, 0);
  const auto& b = ex2->variety.points[zero].ValueAlgebra();
  const CalcFunction d0 = CalcFunction::Delta(ex2, zero, Coset::Unit(b));
  for (size_t k = 0; k < d0.cosets().size(); ++k) EXPECT_EQ(d0.cosets()[k].IsZero(), static_cast<int>(k) != zero);
  for (Complex v : d0.scalars()) EXPECT_EQ(v, Complex(0));
  ExpectSame(d0 * d0, d0);
  ExpectSame(CalcFunction::Delta(ex2, zero, Coset::Zero(b)), CalcFunction::Zero(ex2));
  EXPECT_THROW(CalcFunction::Delta(ex2, zero, Coset::Unit(a)), AlgebraMismatch);
  EXPECT_THROW(d0 + d, AlgebraMismatch);

  for (const auto& p : Corpus()) {
    const ContextPtr ctx = Context(p);
    std::mt19937_64 rng(2);
    for (int s = 0; s < 5; ++s) {
      const CalcFunction phi = RandomFunction(ctx, rng);
      ExpectSame(phi.Sharp().Sharp(), phi);
      ExpectSame(phi * CalcFunction::Unit(ctx), phi);
    }
  }
}

TEST(Calculus, DecomposeExamples) {
  {
    const ContextPtr ctx = Context("ex1");
    const CalcFunction id = CalcFunction::Poly(ctx, Poly2::Parse("x + i*y"));
    const Triple t = Decompose(id);
    EXPECT_TRUE(ctx->off_clusters.empty());
    EXPECT_TRUE(Coset::Of(ctx->variety.points[0].algebra_A, t.r) == id.cosets()[0]);
    for (const auto& fk : t.f) {
      for (Complex v : fk) EXPECT_EQ(v, Complex(0));
    }
  }
  {
    const ContextPtr ctx = Context("ex3");
    std::mt19937_64 rng(1);
    const CalcFunction phi = RandomFunction(ctx, rng);
    const Triple t = Decompose(phi);
    EXPECT_TRUE(t.r.IsZero());
    ASSERT_EQ(t.f.size(), 1u);
    for (size_t c = 0; c < phi.scalars().size(); ++c) EXPECT_LT(std::abs(t.f[0][c] - phi.scalars()[c]), 1e-15);
  }
  {
    const ContextPtr ctx = Context("ex2");
    const int zero = PointIndex(*ctx, 0, 0), one = PointIndex(*ctx, 0, 1);
    const auto& pz = ctx->variety.points[zero];
    const auto& po = ctx->variety.points[one];
    const Triple t = Decompose(CalcFunction::Delta(ctx, zero, Coset::Unit(pz.ValueAlgebra())));
    EXPECT_TRUE(Coset::Of(pz.ValueAlgebra(), t.r) == Coset::Unit(pz.ValueAlgebra()));
    EXPECT_TRUE(Coset::Of(po.ValueAlgebra(), t.r).IsZero());
    ASSERT_EQ(ctx->off_clusters.size(), 1u);
    const Complex expected = -t.r.EvalAt(2.0) / 4.0;
    for (const auto& fk : t.f) EXPECT_LT(std::abs(fk[ctx->off_clusters[0]] - expected), 1e-14);
  }
}

TEST(Calculus, PsiExamples) {
  for (const auto& p : Corpus()) {
    const ContextPtr ctx = Context(p);
    std::mt19937_64 rng(4);
    Triple t = ZeroTriple(*ctx);
    t.r = RandomPoly(rng, 3);
    EXPECT_LT(Diff(PsiApply(*ctx, t), MatSubst(t.r, ctx->sys.a, ctx->sys.b)), 1e-12) << p.name;
    EXPECT_LT(PsiApply(*ctx, ZeroTriple(*ctx)).norm(), 1e-15);
  }
  const ContextPtr ctx = Context("ex3");
  Triple t = ZeroTriple(*ctx);
  Matrix expected = Matrix::Zero(3, 3);
  const Matrix& n = ctx->sys.n.matrix();
  for (int c = 0; c < ctx->spectra.e.size(); ++c) {
    const Complex z = ctx->spectra.e.eigenvalues[c];
    t.f[0][c] = z * z + 1.0;
    for (int k = 0; k < 3; ++k) {
      if (std::abs(n(k, k) - z) < 1e-12) expected(k, k) = z * z + 1.0;
    }
  }
  EXPECT_LT(Diff(PsiApply(*ctx, t), expected), 1e-12);
}

TEST(Calculus, TripleProductExamples) {
  const ContextPtr ctx = Context("ex3");
  std::mt19937_64 rng(6);
  const Triple t = RandomTriple(*ctx, rng);
  Triple unit = ZeroTriple(*ctx);
  unit.r = Poly2::Constant(1);
  const Triple tu = TripleMul(*ctx, t, unit);
  EXPECT_EQ(tu.r, t.r);
  for (size_t c = 0; c < t.f[0].size(); ++c) EXPECT_LT(std::abs(tu.f[0][c] - t.f[0][c]), 1e-15);

  Triple f = ZeroTriple(*ctx), g = ZeroTriple(*ctx);
  for (size_t c = 0; c < f.f[0].size(); ++c) {
    f.f[0][c] = Complex(1.0 + c, 2);
    g.f[0][c] = Complex(-1, 0.5 * c);
  }
  const Triple fg = TripleMul(*ctx, f, g);
  EXPECT_TRUE(fg.r.IsZero());
  for (size_t c = 0; c < f.f[0].size(); ++c) EXPECT_LT(std::abs(fg.f[0][c] - f.f[0][c] * g.f[0][c]), 1e-15);
}

TEST(Calculus, IdealNMembership) {
  for (const auto& p : Corpus()) {
    const ContextPtr ctx = Context(p);
    EXPECT_TRUE(InIdealN(*ctx, ZeroTriple(*ctx)).member) << p.name;
    Triple one = ZeroTriple(*ctx);
    one.r = Poly2::Constant(1);
    EXPECT_FALSE(InIdealN(*ctx, one).member) << p.name;
    std::mt19937_64 rng(8);
    for (int s = 0; s < 5; ++s) {
      const Triple n = RandomNullElement(*ctx, rng);
      const NullMembership m = InIdealN(*ctx, n);
      EXPECT_TRUE(m.member) << p.name << ": " << m.reason;
      EXPECT_LT(OpNorm(PsiApply(*ctx, n)) / TripleScale(*ctx, n), 1e-10) << p.name;
    }
  }

  // r = (y^2 - y)^2 vanishes at z = 2 where p_2 = y^2 - y does too, so f_2(2)
  // is free and f_1(2) must vanish.
  const ContextPtr ctx = Context("ex2");
  ASSERT_EQ(ctx->off_clusters.size(), 1u);
  const int c = ctx->off_clusters[0];
  Triple t = ZeroTriple(*ctx);
  t.r = Poly2::Parse("(y^2 - y)^2");
  t.f[1][c] = Complex(0.7, -2);
  const NullMembership m = InIdealN(*ctx, t);
  EXPECT_TRUE(m.member) << m.reason;
  ASSERT_TRUE(m.witness.has_value());
  Poly2 sum;
  for (size_t k = 0; k < m.witness->size(); ++k) sum += (*m.witness)[k] * ctx->sys.defpolys[k];
  EXPECT_EQ(sum, t.r);
  EXPECT_LT(OpNorm(PsiApply(*ctx, t)), 1e-12);
  t.f[0][c] = 1;
  EXPECT_FALSE(InIdealN(*ctx, t).member);
}

TEST(Calculus, IdentityFunctionGivesN) {
  for (const auto& p : Corpus()) {
    const ContextPtr ctx = Context(p);
    const Matrix n = PhiOfN(CalcFunction::Poly(ctx, Poly2::Parse("x + i*y")));
    EXPECT_LT(Diff(n, p.op), 1e-9 * std::max(1.0, OpNorm(p.op))) << p.name;
  }
}

TEST(Calculus, RieszProjectionsEx2) {
  const ContextPtr ctx = Context("ex2");
  const int zero = PointIndex(*ctx, 0, 0), one = PointIndex(*ctx, 0, 1);
  const auto e = [&](int k) {
    return PhiOfN(CalcFunction::Delta(ctx, k, Coset::Unit(ctx->variety.points[k].ValueAlgebra())));
  };
  EXPECT_LT(e(zero).norm(), 1e-12);
  Matrix expected = Matrix::Identity(3, 3);
  expected(0, 0) = 0;
  EXPECT_LT(Diff(e(one), expected), 1e-12);
  EXPECT_LT(PhiOfN(CalcFunction::Delta(Context("ex1"), 0, Coset::Unit(Context("ex1")->variety.points[0].algebra_A)))
                    .cwiseAbs()
                    .maxCoeff() -
                1.0,
            1e-12);
}

TEST(Calculus, Inversion) {
  const ContextPtr ex2 = Context("ex2");
  ExpectSame(CalcFunction::Unit(ex2).Invert(), CalcFunction::Unit(ex2));
  const Matrix n = ex2->sys.n.matrix();
  const Matrix inv = PhiOfN(CalcFunction::Poly(ex2, Poly2::Parse("x + i*y - 1")).Invert());
  EXPECT_LT(Diff(inv * (n - Matrix::Identity(3, 3)), Matrix::Identity(3, 3)), 1e-12);
  EXPECT_LT(Diff(inv, (n - Matrix::Identity(3, 3)).inverse()), 1e-12);

  try {
    CalcFunction::Poly(ex2, Poly2::Parse("x + i*y - i")).Invert();
    FAIL() << "expected NotInvertible";
  } catch (const NotInvertible& e) {
    EXPECT_NE(std::string(e.what()).find("(0, 1)"), std::string::npos) << e.what();
  }
  EXPECT_THROW(CalcFunction::Poly(Context("ex1"), Poly2::Parse("x + i*y - i")).Invert(), NotInvertible);
  EXPECT_THROW(CalcFunction::Poly(Context("ex3"), Poly2::Parse("x + i*y - 1")).Invert(), NotInvertible);
}

TEST(Calculus, SpectrumFormulaExamples) {
  auto sorted = [](std::vector<Complex> v) {
    std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
      return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return v;
  };
  auto expect_set = [&](const std::string& name, std::vector<Complex> want) {
    const SpectrumFormula f = SpectrumFormulaCheck(*Context(name));
    EXPECT_TRUE(f.pass) << name << " residual " << f.residual;
    const auto got = sorted(f.formula);
    want = sorted(want);
    ASSERT_EQ(got.size(), want.size()) << name;
    for (size_t k = 0; k < got.size(); ++k) EXPECT_LT(std::abs(got[k] - want[k]), 1e-9) << name;
  };
  expect_set("ex2", {2.0, kI});
  expect_set("ex3", {1.0, kI, -2.0});
  expect_set("ex1", {kI});
  for (const auto& p : Corpus()) {
    const SpectrumFormula f = SpectrumFormulaCheck(*Context(p));
    EXPECT_TRUE(f.pass) << p.name << " residual " << f.residual;
  }
}

TEST(Calculus, ChiVanishesOnlyAtItsPoint) {
  const ContextPtr ctx = Context("ex2");
  const int zero = PointIndex(*ctx, 0, 0);
  EXPECT_EQ(ComputeChi(*ctx, zero, 0.0), 0.0);
  EXPECT_GT(ComputeChi(*ctx, zero, kI), 0.5);
  EXPECT_GT(ComputeChi(*ctx, zero, 2.0), 0.5);

  // Q(0,1) = <x^2, y - 1> here, so chi grows quadratically along x.
  const int at_i = PointIndex(*ctx, 0, 1);
  EXPECT_EQ(ComputeChi(*ctx, at_i, kI), 0.0);
  // Q = <x, y - 1> on the two-dimensional instance: linear growth.
  const ContextPtr ex1 = Context("ex1");
  for (double eps : {1e-1, 1e-3, 0.25}) {
    EXPECT_NEAR(ComputeChi(*ctx, at_i, eps + kI), eps * eps, 1e-15);
    EXPECT_NEAR(ComputeChi(*ex1, 0, eps + kI * (1 + eps)), eps, 1e-15);
  }
  const ContextPtr unitary = Context("unitary");
  for (size_t k = 0; k < unitary->variety.points.size(); ++k) {
    if (!unitary->variety.points[k].is_real) EXPECT_THROW(ComputeChi(*unitary, static_cast<int>(k), 0.0), NotInVariety);
  }
}

TEST(Calculus, PropertySuitesOnCorpus) {
  for (const auto& p : Corpus()) {
    const ContextPtr ctx = Context(p);
    std::vector<std::vector<IdentityCheck>> groups = {
        HomomorphismCheck(ctx, 20, 1), WellDefinedCheck(ctx, 10, 2), TripleAlgebraCheck(ctx, 10, 3),
        CommutantCheck(ctx, 10, 4),    LocalityCheck(ctx, 5, 5),     InversionCheck(ctx, 10, 6)};
    for (size_t k = 0; k < ctx->variety.points.size(); ++k) groups.push_back(RieszCheck(ctx, static_cast<int>(k)));
    for (const auto& group : groups) {
      for (const auto& c : group) EXPECT_TRUE(c.pass) << p.name << ": " << c.name << " residual " << c.residual;
    }
  }
}

TEST(Calculus, RejectsForeignFunctions) {
  const ContextPtr a = Context("ex2"), b = Context("ex2");
  EXPECT_THROW(CalcFunction::Unit(a) * CalcFunction::Unit(b), AlgebraMismatch);
  EXPECT_THROW(CalcFunction(a, {}, {}), MissingValue);
}

}  // namespace
}  // namespace kreincalc
