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

#include "kreincalc/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "kreincalc/errors.hpp"

namespace kreincalc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const Complex kI(0, 1);

std::string ComplexToString(Complex z) {
  std::ostringstream os;
  os.precision(12);
  os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

Complex RandomComplex(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return {u(rng), u(rng)};
}

std::vector<Complex> ToComplex(const ExactVector& v) {
  std::vector<Complex> out;
  out.reserve(v.size());
  for (const auto& c : v) out.push_back(c.ToComplex());
  return out;
}

double Norm2(const std::vector<Complex>& v) {
  double s = 0;
  for (const auto& c : v) s += std::norm(c);
  return std::sqrt(s);
}

IdentityCheck Check(const std::string& name, double residual, double tol) {
  IdentityCheck c;
  c.name = name;
  c.residual = residual;
  c.tolerance = tol;
  c.pass = residual <= tol;
  return c;
}

double Factorial(int k) { return std::tgamma(k + 1.0); }

// Lagrange polynomials for distinct real points: l_k(a_k) = 1 and
// l_k(a_j) = 0 otherwise.
std::vector<Poly2> LagrangeBasis(const std::vector<ExactPoint>& pts) {
  std::vector<Poly2> out;
  const Poly2 x = Poly2::First(), y = Poly2::Second();
  for (size_t k = 0; k < pts.size(); ++k) {
    Poly2 l = Poly2::Constant(1);
    for (size_t j = 0; j < pts.size(); ++j) {
      if (j == k) continue;
      const Poly2 dx = x - Poly2::Constant(pts[j].first), dy = y - Poly2::Constant(pts[j].second);
      const GaussianRational ex = pts[k].first - pts[j].first, ey = pts[k].second - pts[j].second;
      l *= (dx * dx + dy * dy) * (ex * ex + ey * ey).Inverse();
    }
    out.push_back(std::move(l));
  }
  return out;
}

}  // namespace

// ----------------------------------------------------------------------------
// Context

ContextPtr MakeContext(const KreinOperator& n, const std::vector<Poly2>& defpolys, const Tolerances& tol) {
  return MakeContext(BuildEmbedding(n, defpolys, tol));
}

ContextPtr MakeContext(EmbeddingSystem sys) {
  auto ctx = std::make_shared<CalcContext>(std::move(sys));
  ctx->variety = SolveVariety(ctx->sys.ideal);
  const auto& points = ctx->variety.points;

  std::vector<Complex> real_values;
  std::vector<int> real_index;
  for (size_t k = 0; k < points.size(); ++k) {
    if (!points[k].is_real) continue;
    real_values.push_back(points[k].AsComplex());
    real_index.push_back(static_cast<int>(k));
  }
  ctx->spectra = ComputeSpectra(ctx->sys, real_values);
  for (int c = 0; c < ctx->spectra.e.size(); ++c) {
    const int on = ctx->spectra.on_variety[c];
    if (on < 0) {
      ctx->off_clusters.push_back(c);
    } else {
      ctx->spectral_real_points.push_back(real_index[on]);
    }
  }

  std::vector<AlgebraPtr> value_moduli, null_moduli;
  for (size_t k = 0; k < points.size(); ++k) {
    value_moduli.push_back(points[k].ValueAlgebra());
    const bool in_w = std::find(ctx->spectral_real_points.begin(), ctx->spectral_real_points.end(),
                                static_cast<int>(k)) != ctx->spectral_real_points.end();
    null_moduli.push_back(in_w ? points[k].algebra_A : points[k].algebra_B);
  }
  ctx->crt = std::make_shared<CrtSolver>(value_moduli);
  ctx->crt_null = std::make_shared<CrtSolver>(null_moduli);
  ctx->scale = ctx->sys.OperatorScale();
  return ctx;
}

// ----------------------------------------------------------------------------
// CalcFunction

CalcFunction::CalcFunction(ContextPtr ctx, std::vector<Complex> scalars, std::vector<Coset> cosets)
    : ctx_(std::move(ctx)), scalars_(std::move(scalars)), cosets_(std::move(cosets)) {
  if (scalars_.size() != ctx_->off_clusters.size()) throw MissingValue("one scalar per off-variety eigenvalue is required");
  const auto& points = ctx_->variety.points;
  if (cosets_.size() != points.size()) throw MissingValue("one coset per variety point is required");
  for (size_t k = 0; k < points.size(); ++k) {
    if (cosets_[k].algebra()->ideal().groebner != points[k].ValueAlgebra()->ideal().groebner) {
      throw AlgebraMismatch("coset at " + PointToString(points[k].coords) + " lives in the wrong algebra");
    }
  }
}

CalcFunction CalcFunction::Zero(const ContextPtr& ctx) {
  std::vector<Coset> cosets;
  for (const auto& a : ctx->variety.points) cosets.push_back(Coset::Zero(a.ValueAlgebra()));
  return {ctx, std::vector<Complex>(ctx->off_clusters.size(), 0.0), std::move(cosets)};
}

CalcFunction CalcFunction::Unit(const ContextPtr& ctx) { return Poly(ctx, Poly2::Constant(1)); }

CalcFunction CalcFunction::Poly(const ContextPtr& ctx, const Poly2& s) {
  std::vector<Complex> scalars;
  for (size_t k = 0; k < ctx->off_clusters.size(); ++k) scalars.push_back(s.EvalAt(ctx->OffPoint(static_cast<int>(k))));
  std::vector<Coset> cosets;
  for (const auto& a : ctx->variety.points) cosets.push_back(Coset::Of(a.ValueAlgebra(), s));
  return {ctx, std::move(scalars), std::move(cosets)};
}

CalcFunction CalcFunction::Jet(const ContextPtr& ctx, const JetData& jets) {
  const auto& points = ctx->variety.points;
  if (jets.derivatives.size() != points.size()) throw MissingValue("one jet per variety point is required");
  std::vector<Coset> cosets;
  for (size_t k = 0; k < points.size(); ++k) {
    const VarietyPoint& a = points[k];
    std::vector<std::pair<int, int>> index;
    for (int i = 0; i < a.d_x; ++i) {
      for (int j = 0; j < a.d_y; ++j) index.emplace_back(i, j);
    }
    if (a.is_real) {
      index.emplace_back(a.d_x, 0);
      index.emplace_back(0, a.d_y);
    }
    const Poly2 dx = Poly2::First() - Poly2::Constant(a.coords.first);
    const Poly2 dy = Poly2::Second() - Poly2::Constant(a.coords.second);
    Poly2 taylor;
    for (const auto& [i, j] : index) {
      const auto it = jets.derivatives[k].find({i, j});
      if (it == jets.derivatives[k].end()) {
        throw MissingValue("jet entry (" + std::to_string(i) + "," + std::to_string(j) + ") missing at " +
                           PointToString(a.coords));
      }
      const GaussianRational c =
          GaussianRational::FromDouble(it->second) * GaussianRational::FromDouble(1.0 / (Factorial(i) * Factorial(j)));
      taylor += dx.Pow(i) * dy.Pow(j) * c;
    }
    cosets.push_back(Coset::Of(a.ValueAlgebra(), taylor));
  }
  return {ctx, jets.values, std::move(cosets)};
}

CalcFunction CalcFunction::Delta(const ContextPtr& ctx, int point, const Coset& a) {
  if (point < 0 || point >= static_cast<int>(ctx->variety.points.size())) {
    throw NotInVariety("delta needs a point of the variety");
  }
  CalcFunction out = Zero(ctx);
  if (a.algebra()->ideal().groebner != out.cosets_[point].algebra()->ideal().groebner) {
    throw AlgebraMismatch("delta value lives in the wrong algebra");
  }
  out.cosets_[point] = a;
  return out;
}

void CalcFunction::RequireSame(const CalcFunction& o) const {
  if (ctx_ != o.ctx_) throw AlgebraMismatch("functions belong to different operators");
}

CalcFunction CalcFunction::operator+(const CalcFunction& o) const {
  RequireSame(o);
  CalcFunction out = *this;
  for (size_t k = 0; k < scalars_.size(); ++k) out.scalars_[k] += o.scalars_[k];
  for (size_t k = 0; k < cosets_.size(); ++k) out.cosets_[k] = cosets_[k] + o.cosets_[k];
  return out;
}

CalcFunction CalcFunction::operator-(const CalcFunction& o) const { return *this + o * Complex(-1); }

CalcFunction CalcFunction::operator*(const CalcFunction& o) const {
  RequireSame(o);
  CalcFunction out = *this;
  for (size_t k = 0; k < scalars_.size(); ++k) out.scalars_[k] *= o.scalars_[k];
  for (size_t k = 0; k < cosets_.size(); ++k) out.cosets_[k] = cosets_[k] * o.cosets_[k];
  return out;
}

CalcFunction CalcFunction::operator*(Complex c) const {
  CalcFunction out = *this;
  for (auto& s : out.scalars_) s *= c;
  const GaussianRational exact = GaussianRational::FromDouble(c);
  for (auto& a : out.cosets_) a = a * exact;
  return out;
}

CalcFunction CalcFunction::Sharp() const {
  CalcFunction out = *this;
  for (auto& s : out.scalars_) s = std::conj(s);
  const auto& points = ctx_->variety.points;
  for (size_t k = 0; k < points.size(); ++k) {
    const int c = ctx_->variety.ConjugateIndex(static_cast<int>(k));
    if (c < 0) throw AlgebraMismatch("the variety is not closed under conjugation");
    out.cosets_[k] = cosets_[c].Sharp(points[k].ValueAlgebra());
  }
  return out;
}

CalcFunction CalcFunction::Invert() const {
  CalcFunction out = *this;
  const double margin = ctx_->tol().invert_margin;
  for (size_t k = 0; k < scalars_.size(); ++k) {
    if (std::abs(scalars_[k]) <= margin) {
      const std::string where = ComplexToString(ctx_->OffPoint(static_cast<int>(k)));
      throw NotInvertible("function value vanishes at the spectral point " + where, where);
    }
    out.scalars_[k] = 1.0 / scalars_[k];
  }
  for (size_t k = 0; k < cosets_.size(); ++k) out.cosets_[k] = cosets_[k].Invert();
  return out;
}

double CalcFunction::Scale() const {
  double s = std::max(1.0, ctx_->scale);
  for (const auto& v : scalars_) s = std::max(s, std::abs(v));
  for (const auto& a : cosets_) s = std::max(s, a.MaxCoordinate());
  return s;
}

// ----------------------------------------------------------------------------
// Triples

Triple ZeroTriple(const CalcContext& ctx) {
  return {Poly2(), std::vector<std::vector<Complex>>(ctx.m(), std::vector<Complex>(ctx.spectra.e.size(), 0.0))};
}

Triple operator+(const Triple& a, const Triple& b) {
  Triple out = a;
  out.r += b.r;
  for (size_t k = 0; k < a.f.size(); ++k) {
    for (size_t c = 0; c < a.f[k].size(); ++c) out.f[k][c] += b.f[k][c];
  }
  return out;
}

Triple operator-(const Triple& a, const Triple& b) {
  Triple out = a;
  out.r -= b.r;
  for (size_t k = 0; k < a.f.size(); ++k) {
    for (size_t c = 0; c < a.f[k].size(); ++c) out.f[k][c] -= b.f[k][c];
  }
  return out;
}

Triple TripleMul(const CalcContext& ctx, const Triple& a, const Triple& b) {
  Triple out = ZeroTriple(ctx);
  out.r = a.r * b.r;
  const auto& ev = ctx.spectra.e.eigenvalues;
  for (size_t c = 0; c < ev.size(); ++c) {
    const Complex z = ev[c];
    Complex gp = 0;
    for (int k = 0; k < ctx.m(); ++k) gp += b.f[k][c] * ctx.sys.defpolys[k].EvalAt(z);
    const Complex r = a.r.EvalAt(z), s = b.r.EvalAt(z);
    for (int j = 0; j < ctx.m(); ++j) out.f[j][c] = r * b.f[j][c] + s * a.f[j][c] + a.f[j][c] * gp;
  }
  return out;
}

Triple TripleSharp(const Triple& t) {
  Triple out = t;
  out.r = t.r.Sharp();
  for (auto& fk : out.f) {
    for (auto& v : fk) v = std::conj(v);
  }
  return out;
}

Triple Decompose(const CalcFunction& phi) {
  const CalcContext& ctx = *phi.context();
  Triple t = ZeroTriple(ctx);
  t.r = ctx.crt->Interpolate(phi.cosets());
  const double floor = ctx.tol().denominator * phi.Scale();
  for (size_t k = 0; k < ctx.off_clusters.size(); ++k) {
    const Complex z = ctx.OffPoint(static_cast<int>(k));
    const Complex sum = ctx.sys.sum_poly.EvalAt(z);
    if (std::abs(sum) < floor) {
      throw Error("sum of the definitizing polynomials nearly vanishes at the spectral point " + ComplexToString(z));
    }
    const Complex q = (phi.scalars()[k] - t.r.EvalAt(z)) / sum;
    for (int j = 0; j < ctx.m(); ++j) t.f[j][ctx.off_clusters[k]] = q;
  }
  return t;
}

namespace {

Matrix XiIntegral(const CalcContext& ctx, int k, const std::vector<Complex>& f) {
  const EmbeddingSystem& sys = ctx.sys;
  if (sys.hj_dim(k) == 0) return Matrix::Zero(sys.dim(), sys.dim());
  std::vector<Complex> values;
  for (int e : ctx.spectra.j_to_e[k]) {
    if (e < 0) throw Error("an eigenvalue of Theta_j(N) is missing from the spectrum of Theta(N)");
    values.push_back(f[e]);
  }
  return XiJ(sys, k, Integrate(values, ctx.spectra.e_j[k]));
}

}  // namespace

Matrix PsiApply(const CalcContext& ctx, const Triple& t) {
  const EmbeddingSystem& sys = ctx.sys;
  Matrix out = MatSubst(t.r, sys.a, sys.b, ctx.tol().commute);
  for (int k = 0; k < ctx.m(); ++k) out += XiIntegral(ctx, k, t.f[k]);
  return out;
}

double TripleScale(const CalcContext& ctx, const Triple& t) {
  const EmbeddingSystem& sys = ctx.sys;
  double s = std::max(1.0, OpNorm(MatSubst(t.r, sys.a, sys.b, ctx.tol().commute)));
  double xi = 0;
  for (int k = 0; k < ctx.m(); ++k) xi += OpNorm(XiIntegral(ctx, k, t.f[k]));
  return std::max(s, xi);
}

Matrix PhiOfN(const CalcFunction& phi) { return PsiApply(*phi.context(), Decompose(phi)); }

// ----------------------------------------------------------------------------
// The ideal N

NullMembership InIdealN(const CalcContext& ctx, const Triple& t) {
  NullMembership out;
  const double tol = ctx.tol().residual;
  const auto& p = ctx.sys.defpolys;

  for (int c : ctx.off_clusters) {
    const Complex z = ctx.spectra.e.eigenvalues[c];
    Complex sum = t.r.EvalAt(z);
    double size = std::max(1.0, std::abs(sum));
    for (int k = 0; k < ctx.m(); ++k) {
      const Complex term = t.f[k][c] * p[k].EvalAt(z);
      sum += term;
      size += std::abs(term);
    }
    const double res = std::abs(sum) / size;
    if (res > out.residual) {
      out.residual = res;
      if (res > tol) out.reason = "r + sum f_k p_k does not vanish at " + ComplexToString(z);
    }
  }

  // Lagrange multipliers: u = sum_w c(w) l_w e_j + (terms vanishing on W).
  std::vector<ExactPoint> w_points;
  std::vector<int> w_clusters;
  for (int c = 0; c < ctx.spectra.e.size(); ++c) {
    const int on = ctx.spectra.on_variety[c];
    if (on < 0) continue;
    w_clusters.push_back(c);
  }
  for (int v : ctx.spectral_real_points) w_points.push_back(ctx.variety.points[v].coords);
  const std::vector<Poly2> lagrange = LagrangeBasis(w_points);
  const QuotientAlgebra& joint = ctx.crt_null->joint();
  const std::vector<Complex> target = ToComplex(joint.Coordinates(t.r));
  std::vector<Complex> combo(target.size(), 0.0);
  double size = std::max(1.0, Norm2(target));
  bool all_zero = true;
  for (size_t w = 0; w < w_points.size(); ++w) {
    for (int j = 0; j < ctx.m(); ++j) {
      const Complex c = -t.f[j][w_clusters[w]];
      if (c == 0.0) continue;
      all_zero = false;
      const std::vector<Complex> v = ToComplex(joint.Coordinates(lagrange[w] * p[j]));
      for (size_t i = 0; i < v.size(); ++i) combo[i] += c * v[i];
      size += std::abs(c) * Norm2(v);
    }
  }
  for (size_t i = 0; i < combo.size(); ++i) combo[i] -= target[i];
  const double res = Norm2(combo) / size;
  if (res > out.residual) {
    out.residual = res;
    if (res > tol) out.reason = "r is not of the form sum u_k p_k with u_j = -f_j on V_R n sigma(Theta(N))";
  }
  out.member = out.residual <= tol;
  if (out.member && all_zero) {
    try {
      out.witness = LiftMembership(t.r, ctx.sys.ideal, w_points);
    } catch (const MembershipFailed& e) {
      out.member = false;
      out.reason = e.what();
    }
  }
  return out;
}

Triple RandomNullElement(const CalcContext& ctx, std::mt19937_64& rng) {
  Triple t = ZeroTriple(ctx);
  const auto& p = ctx.sys.defpolys;
  std::vector<Poly2> u;
  for (int k = 0; k < ctx.m(); ++k) {
    u.push_back(RandomPoly(rng, 2));
    t.r += u.back() * p[k];
  }
  for (int c = 0; c < ctx.spectra.e.size(); ++c) {
    const Complex z = ctx.spectra.e.eigenvalues[c];
    std::vector<Complex> g(ctx.m(), 0.0);
    if (ctx.spectra.on_variety[c] < 0) {
      Complex gp = 0;
      double pp = 0;
      std::vector<Complex> pz;
      for (int k = 0; k < ctx.m(); ++k) {
        g[k] = RandomComplex(rng);
        pz.push_back(p[k].EvalAt(z));
        gp += g[k] * pz[k];
        pp += std::norm(pz[k]);
      }
      for (int k = 0; k < ctx.m(); ++k) g[k] -= std::conj(pz[k]) * gp / pp;
    }
    for (int k = 0; k < ctx.m(); ++k) t.f[k][c] = -u[k].EvalAt(z) + g[k];
  }
  return t;
}

Triple RandomTriple(const CalcContext& ctx, std::mt19937_64& rng) {
  Triple t = ZeroTriple(ctx);
  t.r = RandomPoly(rng, 3);
  for (auto& fk : t.f) {
    for (auto& v : fk) v = RandomComplex(rng);
  }
  return t;
}

Coset RandomCoset(const AlgebraPtr& algebra, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-2, 2);
  ExactVector coords(algebra->dim());
  for (auto& c : coords) c = GaussianRational(mpq_class(d(rng)), mpq_class(d(rng)));
  return {algebra, coords};
}

CalcFunction RandomFunction(const ContextPtr& ctx, std::mt19937_64& rng) {
  const auto& points = ctx->variety.points;
  auto raw = [&] {
    std::vector<Complex> scalars(ctx->off_clusters.size());
    for (auto& s : scalars) s = RandomComplex(rng);
    std::vector<Coset> cosets;
    for (const auto& a : points) cosets.push_back(RandomCoset(a.ValueAlgebra(), rng));
    return CalcFunction(ctx, std::move(scalars), std::move(cosets));
  };
  switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
    case 0:
      return raw();
    case 1:
      return CalcFunction::Poly(ctx, RandomPoly(rng, 3));
    case 2: {
      if (points.empty()) return raw();
      const int k = std::uniform_int_distribution<int>(0, static_cast<int>(points.size()) - 1)(rng);
      return CalcFunction::Delta(ctx, k, RandomCoset(points[k].ValueAlgebra(), rng)) +
             CalcFunction::Unit(ctx) * RandomComplex(rng);
    }
    default:
      return raw() + CalcFunction::Poly(ctx, Poly2::Parse("x + i*y")) * RandomComplex(rng);
  }
}

// ----------------------------------------------------------------------------
// Spectral consequences

double ComputeChi(const CalcContext& ctx, int point, Complex z) {
  const auto& points = ctx.variety.points;
  if (point < 0 || point >= static_cast<int>(points.size()) || !points[point].is_real) {
    throw NotInVariety("chi_w needs a real point of the variety");
  }
  double out = 0;
  for (const auto& h : points[point].local_Q.groebner) out = std::max(out, std::abs(h.EvalAt(z)));
  return out;
}

std::vector<Complex> OperatorSpectrum(const Matrix& n) { return ClusteredEigenvalues(n, 1e-5); }

namespace {

bool Contains(const std::vector<Complex>& set, Complex z, double tol) {
  return std::any_of(set.begin(), set.end(), [&](Complex w) { return std::abs(w - z) <= tol; });
}

// One-sided Hausdorff distance.
double Excess(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double out = 0;
  for (Complex z : a) {
    double best = kInf;
    for (Complex w : b) best = std::min(best, std::abs(z - w));
    out = std::max(out, best);
  }
  return out;
}

// Points of the effective set: sigma(Theta(N)) u (V_R n sigma(N)) and the
// nonreal points with both alpha + i beta and conj alpha + i conj beta in
// sigma(N). Returns a flag per variety point.
std::vector<bool> EffectivePoints(const CalcContext& ctx, const std::vector<Complex>& direct, double tol) {
  std::vector<bool> out;
  for (const auto& a : ctx.variety.points) {
    if (a.is_real) {
      out.push_back(Contains(direct, a.AsComplex(), tol));
    } else {
      const Complex z1 = a.X() + kI * a.Y();
      const Complex z2 = std::conj(a.X()) + kI * std::conj(a.Y());
      out.push_back(Contains(direct, z1, tol) && Contains(direct, z2, tol));
    }
  }
  return out;
}

}  // namespace

SpectrumFormula SpectrumFormulaCheck(const CalcContext& ctx) {
  SpectrumFormula out;
  out.direct = OperatorSpectrum(ctx.sys.n.matrix());
  const double match = ctx.tol().spectrum * ctx.scale;
  out.tolerance = ctx.tol().spectrum;
  auto add = [&](Complex z) {
    if (!Contains(out.formula, z, match)) out.formula.push_back(z);
  };
  for (Complex z : ctx.spectra.e.eigenvalues) add(z);
  const std::vector<bool> effective = EffectivePoints(ctx, out.direct, match);
  for (size_t k = 0; k < ctx.variety.points.size(); ++k) {
    if (!effective[k]) continue;
    const auto& a = ctx.variety.points[k];
    add(a.is_real ? a.AsComplex() : a.X() + kI * a.Y());
  }
  std::sort(out.formula.begin(), out.formula.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  if (out.direct.empty() != out.formula.empty()) {
    out.residual = kInf;
  } else {
    out.residual = std::max(Excess(out.direct, out.formula), Excess(out.formula, out.direct)) / ctx.scale;
  }
  out.pass = out.residual <= out.tolerance;
  return out;
}

std::vector<IdentityCheck> RieszCheck(const ContextPtr& ctx, int point) {
  const VarietyPoint& a = ctx->variety.points.at(point);
  const Matrix p = PhiOfN(CalcFunction::Delta(ctx, point, Coset::Unit(a.ValueAlgebra())));
  const Matrix& n = ctx->sys.n.matrix();
  const Complex lambda = a.is_real ? a.AsComplex() : a.X() + kI * a.Y();
  const double tol = ctx->tol().residual;
  const double np = std::max(1.0, OpNorm(p));
  std::vector<IdentityCheck> out;
  out.push_back(Check("riesz: P^2 = P", OpNorm(p * p - p) / (np * np), tol));
  out.push_back(Check("riesz: PN = NP", OpNorm(p * n - n * p) / (np * ctx->scale), tol));
  const Matrix shifted = n - lambda * Matrix::Identity(n.rows(), n.cols());
  const Matrix x = shifted * p;
  Matrix power = Matrix::Identity(n.rows(), n.cols());
  for (int k = 0; k < n.rows(); ++k) power = power * x;
  const double base = std::max(1.0, OpNorm(shifted) * np);
  out.push_back(Check("riesz: sigma(N on ran P) in {xi + i eta}", OpNorm(power) / std::pow(base, n.rows()), tol));
  return out;
}

// ----------------------------------------------------------------------------
// Property suites

std::vector<IdentityCheck> HomomorphismCheck(const ContextPtr& ctx, int pairs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double tol = ctx->tol().residual;
  const KreinSpace& space = *ctx->sys.n.space();
  std::vector<IdentityCheck> out;
  for (int s = 0; s < pairs; ++s) {
    const CalcFunction phi = RandomFunction(ctx, rng), psi = RandomFunction(ctx, rng);
    const Matrix a = PhiOfN(phi), b = PhiOfN(psi);
    const double sa = phi.Scale(), sb = psi.Scale();
    MergeCheck(out, Check("homomorphism: (phi psi)(N) = phi(N) psi(N)", OpNorm(PhiOfN(phi * psi) - a * b) / (sa * sb), tol));
    MergeCheck(out, Check("homomorphism: (phi + psi)(N) = phi(N) + psi(N)",
                          OpNorm(PhiOfN(phi + psi) - a - b) / std::max(sa, sb), tol));
    MergeCheck(out, Check("homomorphism: phi^#(N) = phi(N)^+",
                          OpNorm(PhiOfN(phi.Sharp()) - KreinAdjoint(space, a)) / (sa * space.condition()), tol));
  }
  return out;
}

std::vector<IdentityCheck> WellDefinedCheck(const ContextPtr& ctx, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double tol = ctx->tol().residual;
  std::vector<IdentityCheck> out;
  for (int s = 0; s < samples; ++s) {
    const Triple t = RandomTriple(*ctx, rng);
    const Triple n = RandomNullElement(*ctx, rng);
    const double scale = std::max(TripleScale(*ctx, t), TripleScale(*ctx, n));
    MergeCheck(out, Check("well-defined: Psi(t + n) = Psi(t) for n in N",
                          OpNorm(PsiApply(*ctx, t + n) - PsiApply(*ctx, t)) / scale, tol));
    const NullMembership m = InIdealN(*ctx, n);
    MergeCheck(out, Check("well-defined: constructed n passes the membership test", m.member ? m.residual : kInf, tol));
  }
  return out;
}

std::vector<IdentityCheck> TripleAlgebraCheck(const ContextPtr& ctx, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double tol = ctx->tol().residual;
  const KreinSpace& space = *ctx->sys.n.space();
  std::vector<IdentityCheck> out;
  for (int s = 0; s < samples; ++s) {
    const Triple t = RandomTriple(*ctx, rng), u = RandomTriple(*ctx, rng);
    const Matrix pt = PsiApply(*ctx, t), pu = PsiApply(*ctx, u);
    const double st = TripleScale(*ctx, t), su = TripleScale(*ctx, u);
    MergeCheck(out, Check("triples: Psi(t u) = Psi(t) Psi(u)", OpNorm(PsiApply(*ctx, TripleMul(*ctx, t, u)) - pt * pu) / (st * su), tol));
    MergeCheck(out, Check("triples: Psi(t^#) = Psi(t)^+",
                          OpNorm(PsiApply(*ctx, TripleSharp(t)) - KreinAdjoint(space, pt)) / (st * space.condition()), tol));
    const NullMembership m = InIdealN(*ctx, TripleMul(*ctx, t, u) - TripleMul(*ctx, u, t));
    MergeCheck(out, Check("triples: t u - u t lies in N", m.member ? m.residual : kInf, tol));
  }
  return out;
}

std::vector<Matrix> CommutantBasis(const Matrix& a, const Matrix& b, double tol) {
  const Eigen::Index n = a.rows();
  if (n == 0) return {};
  const Matrix id = Matrix::Identity(n, n);
  Matrix map(2 * n * n, n * n);
  // vec(XC - CX) = (I (x) X - X^T (x) I) vec(C), column-major vec.
  for (int which = 0; which < 2; ++which) {
    const Matrix& x = which == 0 ? a : b;
    Matrix block = Matrix::Zero(n * n, n * n);
    for (Eigen::Index j = 0; j < n; ++j) block.block(j * n, j * n, n, n) += x;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) block.block(i * n, j * n, n, n) -= x(j, i) * id;
    }
    map.middleRows(which * n * n, n * n) = block;
  }
  Eigen::JacobiSVD<Matrix> svd(map, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = tol * std::max(1.0, sv(0));
  std::vector<Matrix> out;
  for (Eigen::Index k = 0; k < n * n; ++k) {
    if (k < sv.size() && sv(k) > cutoff) continue;
    out.push_back(svd.matrixV().col(k).reshaped(n, n));
  }
  return out;
}

std::vector<IdentityCheck> CommutantCheck(const ContextPtr& ctx, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double tol = ctx->tol().residual;
  const std::vector<Matrix> basis = CommutantBasis(ctx->sys.a, ctx->sys.b);
  std::vector<IdentityCheck> out;
  for (int s = 0; s < samples; ++s) {
    const CalcFunction phi = RandomFunction(ctx, rng);
    const Matrix f = PhiOfN(phi);
    Matrix c = MatSubst(RandomPoly(rng, 2), ctx->sys.a, ctx->sys.b);
    for (const auto& m : basis) c += RandomComplex(rng) * m;
    const double nc = std::max(1.0, OpNorm(c));
    MergeCheck(out, Check("commutant: phi(N) commutes with {A, B}'", OpNorm(f * c - c * f) / (phi.Scale() * nc), tol));
  }
  return out;
}

std::vector<IdentityCheck> LocalityCheck(const ContextPtr& ctx, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double tol = ctx->tol().residual;
  const auto& points = ctx->variety.points;
  std::vector<IdentityCheck> out;
  for (size_t w = 0; w < points.size(); ++w) {
    const VarietyPoint& a = points[w];
    const bool spectral = std::find(ctx->spectral_real_points.begin(), ctx->spectral_real_points.end(),
                                    static_cast<int>(w)) != ctx->spectral_real_points.end();
    if (!a.is_real || spectral) continue;
    for (int s = 0; s < samples; ++s) {
      const CalcFunction phi = RandomFunction(ctx, rng);
      Poly2 q;
      for (const auto& h : a.local_Q.groebner) q += h * RandomPoly(rng, 2);
      const CalcFunction psi = phi + CalcFunction::Delta(ctx, static_cast<int>(w), Coset::Of(a.algebra_A, q));
      MergeCheck(out, Check("locality: E{w} = 0 leaves phi(N) depending on pi_w phi(w) only",
                            OpNorm(PhiOfN(psi) - PhiOfN(phi)) / std::max(phi.Scale(), psi.Scale()), tol));
    }
  }

  const std::vector<Complex> direct = OperatorSpectrum(ctx->sys.n.matrix());
  const std::vector<bool> effective = EffectivePoints(*ctx, direct, ctx->tol().spectrum * ctx->scale);
  if (std::find(effective.begin(), effective.end(), false) != effective.end()) {
    for (int s = 0; s < samples; ++s) {
      CalcFunction phi = CalcFunction::Zero(ctx);
      for (size_t k = 0; k < points.size(); ++k) {
        if (!effective[k]) phi = phi + CalcFunction::Delta(ctx, static_cast<int>(k), RandomCoset(points[k].ValueAlgebra(), rng));
      }
      MergeCheck(out, Check("locality: phi vanishing on the effective set gives phi(N) = 0",
                            OpNorm(PhiOfN(phi)) / phi.Scale(), tol));
    }
  }
  return out;
}

std::vector<IdentityCheck> InversionCheck(const ContextPtr& ctx, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double tol = ctx->tol().residual;
  const int n = ctx->sys.dim();
  std::vector<IdentityCheck> out;
  for (int s = 0, attempts = 0; s < samples && attempts < 20 * samples; ++attempts) {
    const CalcFunction phi = RandomFunction(ctx, rng);
    CalcFunction inv = phi;
    try {
      inv = phi.Invert();
    } catch (const NotInvertible&) {
      continue;
    }
    ++s;
    const double scale = phi.Scale() * inv.Scale();
    MergeCheck(out, Check("inverse: phi^{-1}(N) phi(N) = I",
                          OpNorm(PhiOfN(inv) * PhiOfN(phi) - Matrix::Identity(n, n)) / scale, tol));
  }
  return out;
}

}  // namespace kreincalc
