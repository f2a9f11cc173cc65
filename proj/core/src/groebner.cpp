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

#include "kreincalc/groebner.hpp"

#include <algorithm>

namespace kreincalc {

Division Divide(const Poly2& p, const std::vector<Poly2>& divisors) {
  Division out;
  out.quotients.assign(divisors.size(), Poly2(p.vars()));
  out.remainder = Poly2(p.vars());
  Poly2 work = p;
  while (!work.IsZero()) {
    const Monomial lt = work.LeadingMonomial();
    const GaussianRational lc = work.LeadingCoefficient();
    bool reduced = false;
    for (size_t k = 0; k < divisors.size(); ++k) {
      const Poly2& g = divisors[k];
      if (g.IsZero() || !g.LeadingMonomial().Divides(lt)) continue;
      const Monomial shift = g.LeadingMonomial().Quotient(lt);
      const GaussianRational factor = lc / g.LeadingCoefficient();
      out.quotients[k].AddTerm(shift, factor);
      work -= g.MulTerm(shift, factor);
      reduced = true;
      break;
    }
    if (!reduced) {
      out.remainder.AddTerm(lt, lc);
      work.AddTerm(lt, -lc);
    }
  }
  return out;
}

namespace {

struct Tracked {
  Poly2 poly;
  std::vector<Poly2> cof;
};

struct Pair {
  size_t i, j;
  Monomial lcm;
};

void ScaleTracked(Tracked& t, const GaussianRational& c) {
  t.poly *= c;
  for (auto& q : t.cof) q *= c;
}

// Reduces `t` fully against `basis`, updating cofactors.
void ReduceTracked(Tracked& t, const std::vector<Tracked>& basis, bool track) {
  std::vector<Poly2> divisors;
  divisors.reserve(basis.size());
  for (const auto& b : basis) divisors.push_back(b.poly);
  Division d = Divide(t.poly, divisors);
  t.poly = std::move(d.remainder);
  if (!track) return;
  for (size_t k = 0; k < basis.size(); ++k) {
    if (d.quotients[k].IsZero()) continue;
    for (size_t j = 0; j < t.cof.size(); ++j) t.cof[j] -= d.quotients[k] * basis[k].cof[j];
  }
}

Tracked SPolynomial(const Tracked& f, const Tracked& g, const Monomial& lcm, bool track) {
  // Both inputs are monic.
  const Monomial sf = f.poly.LeadingMonomial().Quotient(lcm);
  const Monomial sg = g.poly.LeadingMonomial().Quotient(lcm);
  Tracked s;
  s.poly = f.poly.MulTerm(sf, 1) - g.poly.MulTerm(sg, 1);
  if (track) {
    s.cof.resize(f.cof.size());
    for (size_t j = 0; j < f.cof.size(); ++j) s.cof[j] = f.cof[j].MulTerm(sf, 1) - g.cof[j].MulTerm(sg, 1);
  }
  return s;
}

}  // namespace

IdealData Groebner(std::vector<Poly2> generators, bool track_cofactors) {
  IdealData out;
  out.generators = generators;
  const Vars vars = generators.empty() ? Vars::kXY : generators.front().vars();
  const size_t m = generators.size();

  std::vector<Tracked> basis;
  for (size_t j = 0; j < m; ++j) {
    if (generators[j].IsZero()) continue;
    Tracked t;
    t.poly = generators[j];
    if (track_cofactors) {
      t.cof.assign(m, Poly2(vars));
      t.cof[j] = Poly2::Constant(1, vars);
    }
    ScaleTracked(t, t.poly.LeadingCoefficient().Inverse());
    basis.push_back(std::move(t));
  }

  std::vector<Pair> pairs;
  auto add_pairs_for = [&](size_t j) {
    for (size_t i = 0; i < j; ++i) {
      pairs.push_back({i, j, Lcm(basis[i].poly.LeadingMonomial(), basis[j].poly.LeadingMonomial())});
    }
  };
  for (size_t j = 0; j < basis.size(); ++j) add_pairs_for(j);

  while (!pairs.empty()) {
    // Normal selection strategy: smallest lcm first, ties by index for
    // determinism.
    auto it = std::min_element(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
      auto c = GrlexCompare(a.lcm, b.lcm);
      if (c != 0) return c < 0;
      return std::tie(a.j, a.i) < std::tie(b.j, b.i);
    });
    Pair pair = *it;
    pairs.erase(it);
    const Monomial& li = basis[pair.i].poly.LeadingMonomial();
    const Monomial& lj = basis[pair.j].poly.LeadingMonomial();
    // Coprime leading monomials: the S-polynomial reduces to zero.
    if (pair.lcm == li * lj) continue;
    Tracked s = SPolynomial(basis[pair.i], basis[pair.j], pair.lcm, track_cofactors);
    ReduceTracked(s, basis, track_cofactors);
    if (s.poly.IsZero()) continue;
    ScaleTracked(s, s.poly.LeadingCoefficient().Inverse());
    basis.push_back(std::move(s));
    add_pairs_for(basis.size() - 1);
  }

  // Minimize: drop elements whose leading monomial is divisible by another's.
  std::vector<Tracked> minimal;
  for (size_t k = 0; k < basis.size(); ++k) {
    const Monomial& lk = basis[k].poly.LeadingMonomial();
    bool redundant = false;
    for (size_t l = 0; l < basis.size() && !redundant; ++l) {
      if (l == k) continue;
      const Monomial& ll = basis[l].poly.LeadingMonomial();
      if (ll.Divides(lk) && (ll != lk || l < k)) redundant = true;
    }
    if (!redundant) minimal.push_back(basis[k]);
  }

  // Inter-reduce the tails.
  for (size_t k = 0; k < minimal.size(); ++k) {
    std::vector<Tracked> others;
    for (size_t l = 0; l < minimal.size(); ++l) {
      if (l != k) others.push_back(minimal[l]);
    }
    ReduceTracked(minimal[k], others, track_cofactors);
    ScaleTracked(minimal[k], minimal[k].poly.LeadingCoefficient().Inverse());
  }

  std::sort(minimal.begin(), minimal.end(), [](const Tracked& a, const Tracked& b) {
    return GrlexCompare(a.poly.LeadingMonomial(), b.poly.LeadingMonomial()) < 0;
  });
  for (auto& t : minimal) {
    out.groebner.push_back(std::move(t.poly));
    if (track_cofactors) out.cofactors.push_back(std::move(t.cof));
  }
  return out;
}

Poly2 NormalForm(const Poly2& p, const IdealData& ideal) { return Divide(p, ideal.groebner).remainder; }

bool Contains(const IdealData& ideal, const Poly2& p) { return NormalForm(p, ideal).IsZero(); }

bool SameIdeal(const IdealData& a, const IdealData& b) { return a.groebner == b.groebner; }

bool IsZeroDimensional(const IdealData& ideal) {
  bool pure_x = false, pure_y = false;
  for (const auto& g : ideal.groebner) {
    const Monomial& lm = g.LeadingMonomial();
    pure_x |= lm.b == 0;
    pure_y |= lm.a == 0;
  }
  return pure_x && pure_y;
}

IdealData ProductIdeal(const IdealData& a, const IdealData& b) {
  std::vector<Poly2> gens;
  for (const auto& f : a.groebner) {
    for (const auto& g : b.groebner) gens.push_back(f * g);
  }
  return Groebner(std::move(gens), /*track_cofactors=*/false);
}

IdealData SumIdeal(const IdealData& a, const IdealData& b) {
  std::vector<Poly2> gens = a.groebner;
  gens.insert(gens.end(), b.groebner.begin(), b.groebner.end());
  return Groebner(std::move(gens), /*track_cofactors=*/false);
}

}  // namespace kreincalc
