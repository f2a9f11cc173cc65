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

#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "kreincalc/errors.hpp"
#include "kreincalc/groebner.hpp"
#include "kreincalc/quotient.hpp"
#include "kreincalc/variety.hpp"

namespace kreincalc {
namespace {

Poly2 P(const char* s) { return Poly2::Parse(s); }

IdealData Ideal(std::initializer_list<const char*> gens) {
  std::vector<Poly2> v;
  for (const char* g : gens) v.push_back(P(g));
  return Groebner(v);
}

ExactPoint Pt(long x, long y) { return {GaussianRational(x), GaussianRational(y)}; }

// Buchberger's criterion checked directly: every S-polynomial of the basis
// reduces to zero.
void ExpectGroebnerCriterion(const IdealData& ideal) {
  const auto& g = ideal.groebner;
  for (size_t i = 0; i < g.size(); ++i) {
    for (size_t j = i + 1; j < g.size(); ++j) {
      const Monomial l = Lcm(g[i].LeadingMonomial(), g[j].LeadingMonomial());
      const Poly2 s = g[i].MulTerm(g[i].LeadingMonomial().Quotient(l), g[i].LeadingCoefficient().Inverse()) -
                      g[j].MulTerm(g[j].LeadingMonomial().Quotient(l), g[j].LeadingCoefficient().Inverse());
      EXPECT_TRUE(Divide(s, g).remainder.IsZero()) << g[i].ToString() << " / " << g[j].ToString();
    }
  }
}

void ExpectCofactorsExact(const IdealData& ideal) {
  ASSERT_EQ(ideal.cofactors.size(), ideal.groebner.size());
  for (size_t k = 0; k < ideal.groebner.size(); ++k) {
    Poly2 combo;
    for (size_t j = 0; j < ideal.generators.size(); ++j) combo += ideal.cofactors[k][j] * ideal.generators[j];
    EXPECT_EQ(combo, ideal.groebner[k]);
  }
}

TEST(Groebner, ReducedBasisOfSimpleIdeals) {
  const IdealData a = Ideal({"x^2", "y^2 - y"});
  EXPECT_EQ(a.groebner, (std::vector<Poly2>{P("y^2 - y"), P("x^2")}));
  // <x y - 1, y^2 - 1>: x = y on the variety, so the basis is {x - y, y^2 - 1}.
  const IdealData b = Ideal({"x*y - 1", "y^2 - 1"});
  EXPECT_EQ(b.groebner, (std::vector<Poly2>{P("x - y"), P("y^2 - 1")}));
  EXPECT_TRUE(Ideal({"x + 1", "x"}).IsUnit());
}

TEST(Groebner, CriterionAndCofactors) {
  for (auto gens : {std::vector<const char*>{"x^2 + y^2 - 1", "x*y - 1/4"}, std::vector<const char*>{"x^3 - y", "y^2 - x*y + i"},
                    std::vector<const char*>{"x^2*y - 1", "x*y^2 - x", "x^3 - 2"}}) {
    std::vector<Poly2> v;
    for (const char* g : gens) v.push_back(P(g));
    const IdealData ideal = Groebner(v);
    ExpectGroebnerCriterion(ideal);
    ExpectCofactorsExact(ideal);
    for (const auto& g : v) EXPECT_TRUE(Contains(ideal, g));
  }
}

TEST(Groebner, PermutationInvariant) {
  std::vector<Poly2> gens = {P("x^2*y - y"), P("y^3 - x"), P("x^3 - x*y"), P("x*y^2 - 1/2*y")};
  const auto reference = Groebner(gens).groebner;
  std::sort(gens.begin(), gens.end(), [](const Poly2& a, const Poly2& b) { return a.ToString() < b.ToString(); });
  do {
    EXPECT_EQ(Groebner(gens).groebner, reference);
  } while (std::next_permutation(gens.begin(), gens.end(), [](const Poly2& a, const Poly2& b) { return a.ToString() < b.ToString(); }));
}

TEST(Groebner, DivisionIdentity) {
  const std::vector<Poly2> divisors = {P("x*y - 1"), P("y^2 - 1")};
  const Poly2 p = P("x^2*y + x*y^2 + y^2");
  const Division d = Divide(p, divisors);
  Poly2 recon = d.remainder;
  for (size_t k = 0; k < divisors.size(); ++k) recon += d.quotients[k] * divisors[k];
  EXPECT_EQ(recon, p);
  // No remainder term is divisible by a leading monomial.
  for (const auto& [m, c] : d.remainder.terms()) {
    for (const auto& g : divisors) EXPECT_FALSE(g.LeadingMonomial().Divides(m));
  }
}

TEST(Groebner, ZeroDimensionality) {
  EXPECT_TRUE(IsZeroDimensional(Ideal({"x^2", "y^2 - y"})));
  EXPECT_FALSE(IsZeroDimensional(Ideal({"x*y"})));
  EXPECT_FALSE(IsZeroDimensional(Ideal({"x^2"})));
  EXPECT_THROW(QuotientAlgebra(Ideal({"x*y"})), NotZeroDimensional);
}

TEST(Quotient, BasisAndMultiplicationMatrices) {
  const QuotientAlgebra q(Ideal({"x^2", "y^2 - y"}));
  EXPECT_EQ(q.dim(), 4);
  EXPECT_EQ(q.basis(), (std::vector<Monomial>{{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
  EXPECT_EQ(q.mult_x() * q.mult_y(), q.mult_y() * q.mult_x());
  // y * y = y in this quotient.
  EXPECT_EQ(q.Coordinates(P("y^2")), q.Coordinates(P("y")));
  // Product table entries against normal forms of monomial products.
  for (int i = 0; i < q.dim(); ++i) {
    for (int j = 0; j < q.dim(); ++j) {
      const Poly2 prod = Poly2::Term(1, q.basis()[i] * q.basis()[j]);
      EXPECT_EQ(q.ProductTable()[i].Column(j), q.Coordinates(prod));
    }
  }
}

TEST(Coset, InversionExamples) {
  const AlgebraPtr a = MakeQuotientAlgebra(Ideal({"x^2", "y"}), Pt(0, 0));
  const Coset c = Coset::Of(a, P("1 + x"));
  EXPECT_EQ(c.Invert().Representative(), P("1 - x"));
  EXPECT_EQ(c * c.Invert(), Coset::Unit(a));
  EXPECT_THROW(Coset::Of(a, P("x")).Invert(), NotInvertible);
  const AlgebraPtr b = MakeQuotientAlgebra(Ideal({"x^3", "y^2", "x*y"}), Pt(0, 0));
  const Coset d = Coset::Of(b, P("2 + i*x - y + x^2"));
  EXPECT_EQ(d * d.Invert(), Coset::Unit(b));
}

TEST(Coset, ProjectAndSharp) {
  const IdealData pq = ProductIdeal(Ideal({"x", "y - 1"}), Ideal({"x", "y - 1"}));
  const AlgebraPtr big = MakeQuotientAlgebra(pq, Pt(0, 1));
  const AlgebraPtr small = MakeQuotientAlgebra(Ideal({"x", "y - 1"}), Pt(0, 1));
  EXPECT_TRUE(Coset::Of(big, P("x")).Project(small).IsZero());
  EXPECT_THROW(Coset::Of(small, P("x")).Project(MakeQuotientAlgebra(Ideal({"x", "y"}), Pt(0, 0))), AlgebraMismatch);

  const ExactPoint at_i{GaussianRational::I(), GaussianRational(0)};
  const ExactPoint at_minus_i{-GaussianRational::I(), GaussianRational(0)};
  const AlgebraPtr qa = MakeQuotientAlgebra(Ideal({"(x - i)^2", "y"}), at_i);
  const AlgebraPtr qb = MakeQuotientAlgebra(Ideal({"(x + i)^2", "y"}), at_minus_i);
  const Coset c = Coset::Of(qa, P("(1+i) + 3*i*x"));
  const Coset s = c.Sharp(qb);
  EXPECT_EQ(s.Representative(), P("(1-i) - 3*i*x"));
  EXPECT_EQ(s.Sharp(qa), c);
  EXPECT_THROW(c.Sharp(qa), AlgebraMismatch);
}

TEST(Univariate, MinimalAndSquarefree) {
  const QuotientAlgebra q(Ideal({"x^2", "y^2 - y"}));
  // x^2 = 0 and y^2 - y = 0 are the minimal relations.
  EXPECT_EQ(KrylovMinimalPolynomial(q.mult_x(), q.Unit()), (UniPoly{0, 0, 1}));
  EXPECT_EQ(KrylovMinimalPolynomial(q.mult_y(), q.Unit()), (UniPoly{0, -1, 1}));
  // (t-1)^2 (t+2) -> (t-1)(t+2) = t^2 + t - 2.
  EXPECT_EQ(UniSquarefree(UniPoly{2, -3, 0, 1}), (UniPoly{-2, 1, 1}));
  EXPECT_EQ(UniGcd(UniPoly{-1, 0, 1}, UniPoly{1, 1}), (UniPoly{1, 1}));
}

TEST(Variety, TwoPointExample) {
  const Variety v = SolveVariety(Ideal({"x^2", "y^2 - y"}));
  ASSERT_EQ(v.points.size(), 2u);
  EXPECT_EQ(v.points[0].coords, Pt(0, 0));
  EXPECT_EQ(v.points[1].coords, Pt(0, 1));
  EXPECT_EQ(v.points[0].local_Q.groebner, Ideal({"x^2", "y"}).groebner);
  EXPECT_EQ(v.points[1].local_Q.groebner, Ideal({"x^2", "y - 1"}).groebner);
  EXPECT_EQ(v.points[0].d_x, 2);
  EXPECT_EQ(v.points[0].d_y, 1);
  // P Q = <x^3, x y, y^2> at the origin, so A has basis {1, y, x, x^2}.
  EXPECT_EQ(v.points[0].algebra_B->dim(), 2);
  EXPECT_EQ(v.points[0].algebra_A->dim(), 4);
}

TEST(Variety, ProductFamilyLocalComponents) {
  // p1 = (x-1)^2 (x+2), p2 = y^3 (y-3)^2; every local component is
  // <(x-z)^d1(z), (y-w)^d2(w)>.
  const IdealData ideal = Ideal({"(x-1)^2*(x+2)", "y^3*(y-3)^2"});
  const Variety v = SolveVariety(ideal);
  ASSERT_EQ(v.points.size(), 4u);
  for (const auto& p : v.points) {
    const long z = static_cast<long>(p.coords.first.re().get_d());
    const long w = static_cast<long>(p.coords.second.re().get_d());
    const int d1 = z == 1 ? 2 : 1;
    const int d2 = w == 0 ? 3 : 2;
    const IdealData expected = Groebner({Poly2::Parse("x - " + std::to_string(z)).Pow(d1),
                                         Poly2::Parse("y - " + std::to_string(w)).Pow(d2)});
    EXPECT_EQ(p.local_Q.groebner, expected.groebner);
    EXPECT_EQ(p.d_x, d1);
    EXPECT_EQ(p.d_y, d2);
  }
  int total = 0;
  for (const auto& p : v.points) total += p.algebra_B->dim();
  EXPECT_EQ(total, v.quotient->dim());
}

TEST(Variety, NonrealPointsAreConjugationClosed) {
  const IdealData ideal = Ideal({"(x^2 + 1)*(x - 2)", "y^2 - x*y"});
  const Variety v = SolveVariety(ideal);
  for (int k = 0; k < static_cast<int>(v.points.size()); ++k) {
    const int c = v.ConjugateIndex(k);
    ASSERT_GE(c, 0);
    // Conjugate primary components are conjugate ideals.
    std::vector<Poly2> conj;
    for (const auto& g : v.points[k].local_Q.groebner) conj.push_back(g.Sharp());
    EXPECT_EQ(conj, v.points[c].local_Q.groebner);
  }
}

TEST(Variety, IrrationalPointIsReported) {
  EXPECT_THROW(SolveVariety(Ideal({"x^2 - 2", "y"})), NonRationalVarietyPoint);
  EXPECT_THROW(LocalComponent(Ideal({"x^2", "y"}), Pt(1, 0)), NotInVariety);
}

TEST(Crt, InterpolationExamples) {
  const Variety v = SolveVariety(Ideal({"x^2", "y^2 - y"}));
  const CrtSolver crt({v.points[0].algebra_B, v.points[1].algebra_B});
  const Poly2 p = crt.Interpolate(std::vector<Coset>{Coset::Zero(v.points[0].algebra_B), Coset::Unit(v.points[1].algebra_B)});
  EXPECT_EQ(p, P("y"));
  EXPECT_TRUE(crt.Interpolate(std::vector<Coset>{Coset::Zero(v.points[0].algebra_B), Coset::Zero(v.points[1].algebra_B)}).IsZero());

  const AlgebraPtr single = MakeQuotientAlgebra(Ideal({"x", "y - 1"}), Pt(0, 1));
  const CrtSolver one({single});
  // i + x reduces to i modulo <x, y-1>.
  EXPECT_EQ(one.Interpolate(std::vector<Coset>{Coset::Of(single, P("i + x"))}), P("i"));
}

TEST(Crt, ReproducesRandomTargets) {
  const Variety v = SolveVariety(Ideal({"(x-1)^2*(x+2)", "y^2*(y-3)"}));
  std::vector<AlgebraPtr> moduli;
  for (const auto& p : v.points) moduli.push_back(p.algebra_A);
  const CrtSolver crt(moduli);
  std::mt19937 rng(3);
  std::uniform_int_distribution<long> u(-5, 5);
  for (int t = 0; t < 5; ++t) {
    std::vector<ExactVector> targets;
    for (const auto& m : moduli) {
      ExactVector c(m->dim());
      for (auto& x : c) x = GaussianRational(mpq_class(u(rng)), mpq_class(u(rng)));
      targets.push_back(c);
    }
    const Poly2 p = crt.Interpolate(targets);
    for (size_t k = 0; k < moduli.size(); ++k) EXPECT_EQ(moduli[k]->Coordinates(p), targets[k]);
  }
}

TEST(Lift, MembershipExamples) {
  const IdealData ideal = Ideal({"x^2", "y^2 - y"});
  auto check = [&](const Poly2& p, const std::vector<ExactPoint>& w) {
    const auto u = LiftMembership(p, ideal, w);
    Poly2 recon;
    for (size_t j = 0; j < u.size(); ++j) recon += u[j] * ideal.generators[j];
    EXPECT_EQ(recon, p);
    for (const auto& a : w) {
      for (const auto& uj : u) EXPECT_TRUE(uj.EvalExact(a.first, a.second).IsZero());
    }
    return u;
  };
  const auto u1 = check(P("x^2"), {});
  EXPECT_EQ(u1[0], P("1"));
  EXPECT_TRUE(u1[1].IsZero());
  check(P("(y^2 - y)^2"), {Pt(0, 0), Pt(0, 1)});
  const auto u3 = check(P("x^3"), {Pt(0, 0)});
  EXPECT_EQ(u3[0], P("x"));
  EXPECT_THROW(LiftMembership(P("x^2"), ideal, {Pt(0, 0)}), MembershipFailed);
  EXPECT_THROW(LiftMembership(P("1"), ideal, {}), MembershipFailed);
}

}  // namespace
}  // namespace kreincalc
