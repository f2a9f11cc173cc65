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

#include "kreincalc/variety.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "kreincalc/errors.hpp"

namespace kreincalc {

namespace {

constexpr double kSnapTolerance = 1e-6;

void Trim(UniPoly& p) {
  while (!p.empty() && p.back().IsZero()) p.pop_back();
}

int Degree(const UniPoly& p) { return static_cast<int>(p.size()) - 1; }

UniPoly MakeMonic(UniPoly p) {
  Trim(p);
  if (p.empty()) return p;
  const GaussianRational inv = p.back().Inverse();
  for (auto& c : p) c *= inv;
  return p;
}

// Quotient and remainder of a / b (b nonzero, trimmed).
std::pair<UniPoly, UniPoly> DivMod(UniPoly a, const UniPoly& b) {
  Trim(a);
  const int db = Degree(b);
  if (Degree(a) < db) return {UniPoly{}, a};
  UniPoly q(a.size() - b.size() + 1);
  const GaussianRational lead_inv = b.back().Inverse();
  for (int k = Degree(a); k >= db; --k) {
    const GaussianRational f = a[k] * lead_inv;
    q[k - db] = f;
    if (f.IsZero()) continue;
    for (int j = 0; j <= db; ++j) a[k - db + j] -= f * b[j];
  }
  Trim(a);
  Trim(q);
  return {q, a};
}

UniPoly Derivative(const UniPoly& p) {
  UniPoly d;
  for (size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * GaussianRational(static_cast<long>(k)));
  Trim(d);
  return d;
}

Poly2 LinearForm(int axis, const GaussianRational& value) {
  Poly2 var = axis == 0 ? Poly2::First() : Poly2::Second();
  return var - Poly2::Constant(value);
}

IdealData PointIdeal(const ExactPoint& a) {
  return Groebner({LinearForm(0, a.first), LinearForm(1, a.second)}, /*track_cofactors=*/false);
}

bool VanishesAt(const IdealData& ideal, const ExactPoint& a) {
  for (const auto& g : ideal.groebner) {
    if (!g.EvalExact(a.first, a.second).IsZero()) return false;
  }
  return true;
}

// Roots of a squarefree polynomial, snapped to Gaussian rationals and
// verified exactly.
std::vector<GaussianRational> ExactRoots(const UniPoly& f, bool first_axis) {
  const int d = Degree(f);
  std::vector<GaussianRational> roots;
  if (d <= 0) return roots;
  if (d == 1) {
    roots.push_back(-f[0] / f[1]);
    return roots;
  }
  Matrix companion = Matrix::Zero(d, d);
  const GaussianRational lead_inv = f[d].Inverse();
  for (int k = 0; k < d; ++k) companion(k, d - 1) = -(f[k] * lead_inv).ToComplex();
  for (int k = 1; k < d; ++k) companion(k, k - 1) = 1.0;
  Eigen::ComplexEigenSolver<Matrix> solver(companion, /*computeEigenvectors=*/false);
  for (int k = 0; k < d; ++k) {
    const Complex z = solver.eigenvalues()(k);
    GaussianRational snapped;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (!SnapGaussianRational(z, kSnapTolerance, &snapped) || !UniEval(f, snapped).IsZero()) {
      const Complex other(nan, nan);
      throw NonRationalVarietyPoint("variety coordinate " + std::to_string(z.real()) + "+" + std::to_string(z.imag()) +
                                        "i does not round to a verified Gaussian rational",
                                    first_axis ? z : other, first_axis ? other : z);
    }
    if (std::find(roots.begin(), roots.end(), snapped) == roots.end()) roots.push_back(snapped);
  }
  if (static_cast<int>(roots.size()) != d) {
    throw NonRationalVarietyPoint("distinct roots merged after rounding", solver.eigenvalues()(0), solver.eigenvalues()(0));
  }
  return roots;
}

bool PointLess(const VarietyPoint& p, const VarietyPoint& q) {
  if (p.is_real != q.is_real) return p.is_real;
  const Complex px = p.X(), py = p.Y(), qx = q.X(), qy = q.Y();
  return std::make_tuple(px.real(), px.imag(), py.real(), py.imag()) <
         std::make_tuple(qx.real(), qx.imag(), qy.real(), qy.imag());
}

}  // namespace

GaussianRational UniEval(const UniPoly& p, const GaussianRational& t) {
  GaussianRational acc;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * t + *it;
  return acc;
}

UniPoly UniGcd(UniPoly a, UniPoly b) {
  Trim(a);
  Trim(b);
  while (!b.empty()) {
    UniPoly r = DivMod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return MakeMonic(a);
}

UniPoly UniSquarefree(const UniPoly& p) {
  UniPoly f = MakeMonic(p);
  if (Degree(f) <= 0) return f;
  const UniPoly g = UniGcd(f, Derivative(f));
  return MakeMonic(DivMod(f, g).first);
}

UniPoly KrylovMinimalPolynomial(const ExactMatrix& m, const ExactVector& v) {
  struct Reduced {
    ExactVector vec;
    UniPoly rep;
    int pivot;
  };
  std::vector<Reduced> reduced;
  ExactVector w = v;
  for (int k = 0;; ++k) {
    UniPoly rep(k + 1);
    rep[k] = 1;
    ExactVector r = w;
    for (const auto& red : reduced) {
      if (r[red.pivot].IsZero()) continue;
      const GaussianRational f = r[red.pivot] / red.vec[red.pivot];
      for (size_t i = 0; i < r.size(); ++i) {
        if (!red.vec[i].IsZero()) r[i] -= f * red.vec[i];
      }
      for (size_t i = 0; i < red.rep.size(); ++i) rep[i] -= f * red.rep[i];
    }
    auto nz = std::find_if(r.begin(), r.end(), [](const GaussianRational& c) { return !c.IsZero(); });
    if (nz == r.end()) return rep;
    const int pivot = static_cast<int>(nz - r.begin());
    reduced.push_back({std::move(r), std::move(rep), pivot});
    w = m * w;
  }
}

Complex VarietyPoint::AsComplex() const {
  return {coords.first.ToComplex().real() - coords.second.ToComplex().imag(),
          coords.first.ToComplex().imag() + coords.second.ToComplex().real()};
}

int Variety::ConjugateIndex(int k) const {
  const auto& p = points[k].coords;
  return Find({p.first.Conj(), p.second.Conj()});
}

int Variety::Find(const ExactPoint& p) const {
  for (size_t k = 0; k < points.size(); ++k) {
    if (points[k].coords == p) return static_cast<int>(k);
  }
  return -1;
}

VarietyPoint LocalComponent(const IdealData& ideal, const ExactPoint& a, int quotient_dim) {
  if (!VanishesAt(ideal, a)) throw NotInVariety("point " + PointToString(a) + " is not in the variety");
  if (quotient_dim < 0) quotient_dim = QuotientAlgebra(ideal).dim();

  const Poly2 lx = LinearForm(0, a.first);
  const Poly2 ly = LinearForm(1, a.second);
  auto with_power = [&](int k) {
    std::vector<Poly2> gens = ideal.groebner;
    for (int i = 0; i <= k; ++i) gens.push_back(lx.Pow(i) * ly.Pow(k - i));
    return Groebner(std::move(gens), /*track_cofactors=*/false);
  };

  VarietyPoint out;
  out.coords = a;
  out.is_real = a.first.IsReal() && a.second.IsReal();
  IdealData current = with_power(1);
  for (int k = 1;; ++k) {
    if (k > quotient_dim + 1) throw Error("primary component did not stabilize within the quotient dimension bound");
    IdealData next = with_power(k + 1);
    if (SameIdeal(current, next)) break;
    current = std::move(next);
  }
  current.generators = current.groebner;
  out.local_Q = std::move(current);

  auto least_power = [&](const Poly2& l) {
    Poly2 power = l;
    for (int m = 1;; ++m) {
      if (NormalForm(power, out.local_Q).IsZero()) return m;
      power *= l;
    }
  };
  out.d_x = least_power(lx);
  out.d_y = least_power(ly);

  out.local_P = PointIdeal(a);
  IdealData pq = ProductIdeal(out.local_P, out.local_Q);
  pq.generators = pq.groebner;
  out.algebra_A = MakeQuotientAlgebra(std::move(pq), a);
  out.algebra_B = MakeQuotientAlgebra(out.local_Q, a);
  return out;
}

Variety SolveVariety(const IdealData& ideal) {
  if (!IsZeroDimensional(ideal)) throw NotZeroDimensional("ideal is not zero-dimensional");
  Variety out;
  out.ideal = ideal;
  out.quotient = MakeQuotientAlgebra(ideal);
  const QuotientAlgebra& q = *out.quotient;

  const UniPoly fx = UniSquarefree(KrylovMinimalPolynomial(q.mult_x(), q.Unit()));
  const UniPoly fy = UniSquarefree(KrylovMinimalPolynomial(q.mult_y(), q.Unit()));
  const auto xs = ExactRoots(fx, true);
  const auto ys = ExactRoots(fy, false);

  for (const auto& rx : xs) {
    for (const auto& ry : ys) {
      const ExactPoint a{rx, ry};
      if (VanishesAt(ideal, a)) out.points.push_back(LocalComponent(ideal, a, q.dim()));
    }
  }
  std::sort(out.points.begin(), out.points.end(), PointLess);

  int total = 0;
  for (const auto& p : out.points) total += p.algebra_B->dim();
  if (total != q.dim()) {
    throw Error("local algebra dimensions sum to " + std::to_string(total) + " but the quotient has dimension " +
                std::to_string(q.dim()));
  }
  return out;
}

CrtSolver::CrtSolver(std::vector<AlgebraPtr> moduli) : moduli_(std::move(moduli)) {
  IdealData joint = Groebner({Poly2::Constant(1)}, /*track_cofactors=*/false);
  for (const auto& m : moduli_) joint = ProductIdeal(joint, m->ideal());
  joint.generators = joint.groebner;
  joint_ = MakeQuotientAlgebra(std::move(joint));

  const int n = joint_->dim();
  int rows = 0;
  for (const auto& m : moduli_) rows += m->dim();
  if (rows != n) throw Error("CRT moduli are not pairwise comaximal");
  ExactMatrix system(n, n);
  for (int k = 0; k < n; ++k) {
    const Poly2 b = Poly2::Term(1, joint_->basis()[k]);
    int offset = 0;
    for (const auto& m : moduli_) {
      const ExactVector c = m->Coordinates(b);
      for (int r = 0; r < m->dim(); ++r) system(offset + r, k) = c[r];
      offset += m->dim();
    }
  }
  auto inv = InverseExact(system);
  if (!inv) throw Error("CRT system is singular");
  inverse_ = std::move(*inv);
}

Poly2 CrtSolver::Interpolate(const std::vector<ExactVector>& targets) const {
  if (targets.size() != moduli_.size()) throw MissingValue("CRT needs one target per modulus");
  ExactVector stacked;
  for (size_t k = 0; k < targets.size(); ++k) {
    if (static_cast<int>(targets[k].size()) != moduli_[k]->dim()) throw DimensionMismatch("CRT target has the wrong length");
    stacked.insert(stacked.end(), targets[k].begin(), targets[k].end());
  }
  return joint_->FromCoordinates(inverse_ * stacked);
}

Poly2 CrtSolver::Interpolate(const std::vector<Coset>& targets) const {
  std::vector<ExactVector> coords;
  for (size_t k = 0; k < targets.size() && k < moduli_.size(); ++k) {
    if (targets[k].algebra()->ideal().groebner != moduli_[k]->ideal().groebner) {
      throw AlgebraMismatch("CRT target lives in the wrong algebra");
    }
    coords.push_back(targets[k].coords());
  }
  if (targets.size() != moduli_.size()) throw MissingValue("CRT needs one target per modulus");
  return Interpolate(coords);
}

std::vector<Poly2> LiftMembership(const Poly2& p, const IdealData& ideal, const std::vector<ExactPoint>& w) {
  const auto& gens = ideal.generators;
  const size_t m = gens.size();
  IdealData pw = Groebner({Poly2::Constant(1)}, /*track_cofactors=*/false);
  for (const auto& a : w) pw = ProductIdeal(pw, PointIdeal(a));
  const auto& multipliers = pw.groebner;

  std::vector<Poly2> products;
  for (size_t j = 0; j < m; ++j) {
    for (const auto& g : multipliers) products.push_back(gens[j] * g);
  }
  const IdealData big = Groebner(products, /*track_cofactors=*/true);
  const Division d = Divide(p, big.groebner);
  if (!d.remainder.IsZero()) {
    throw MembershipFailed("polynomial " + p.ToString() + " is not in the product of the ideal with the vanishing ideal");
  }

  std::vector<Poly2> u(m);
  for (size_t k = 0; k < big.groebner.size(); ++k) {
    if (d.quotients[k].IsZero()) continue;
    for (size_t j = 0; j < m; ++j) {
      Poly2 combo;
      for (size_t g = 0; g < multipliers.size(); ++g) combo += big.cofactors[k][j * multipliers.size() + g] * multipliers[g];
      if (!combo.IsZero()) u[j] += d.quotients[k] * combo;
    }
  }

  Poly2 check = p;
  for (size_t j = 0; j < m; ++j) check -= u[j] * gens[j];
  if (!check.IsZero()) throw MembershipFailed("membership witness failed exact verification");
  for (const auto& a : w) {
    for (const auto& uj : u) {
      if (!uj.EvalExact(a.first, a.second).IsZero()) throw MembershipFailed("membership witness does not vanish on W");
    }
  }
  return u;
}

}  // namespace kreincalc
