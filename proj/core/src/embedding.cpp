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

#include "kreincalc/embedding.hpp"

#include <algorithm>
#include <limits>

#include "kreincalc/errors.hpp"

namespace kreincalc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Solves X D = C X for D given a left inverse of X, verifying the residual.
Matrix Transport(const Matrix& x, const Matrix& x_pinv, const Matrix& c, double tol, const char* what) {
  if (x.cols() == 0) return Matrix(0, 0);
  if (c.rows() != x.rows() || c.cols() != x.rows()) throw DimensionMismatch(std::string(what) + ": operand has the wrong size");
  const Matrix cx = c * x;
  const Matrix d = x_pinv * cx;
  const double scale = std::max(OpNorm(c) * OpNorm(x), std::numeric_limits<double>::min());
  const double residual = OpNorm(x * d - cx) / scale;
  if (residual > tol) {
    throw ResidualTooLarge(std::string(what) + ": operand does not leave the range invariant (relative residual " +
                               std::to_string(residual) + ")",
                           residual);
  }
  return d;
}

}  // namespace

double EmbeddingSystem::OperatorScale() const { return std::max(1.0, OpNorm(n.matrix())); }

EmbeddingSystem BuildEmbedding(const KreinOperator& n, const std::vector<Poly2>& defpolys, const Tolerances& tol) {
  if (defpolys.empty()) throw NotDefinitizing("at least one definitizing polynomial is required");
  if (!IsNormal(n, tol.commute)) {
    throw NotNormal("operator is not normal: ||AB - BA|| = " + std::to_string(NormalityResidual(n)));
  }
  const KreinSpace& space = *n.space();
  const int dim = n.dim();

  EmbeddingSystem sys(n);
  sys.tol = tol;
  sys.n_plus = KreinAdjoint(space, n.matrix());
  std::tie(sys.a, sys.b) = RealImag(n);

  bool all_zero = true;
  double sum_floor = 0;
  for (const auto& p : defpolys) {
    if (p.IsZero()) throw NotDefinitizing("the zero polynomial is not a definitizing polynomial");
    DefinitizingResult r = IsDefinitizing(p, n, tol);
    if (!r.ok) {
      throw NotDefinitizing("polynomial " + p.ToString() + " is not definitizing (hermitian residual " +
                            std::to_string(r.hermitian_residual) + ", smallest relative eigenvalue " +
                            std::to_string(r.min_eigenvalue) + ")");
    }
    all_zero &= r.numerically_zero;
    sum_floor += r.roundoff_floor;
    sys.defpolys.push_back(r.real_part);
    sys.definitizing.push_back(std::move(r));
  }
  sys.ideal = Groebner(sys.defpolys, /*track_cofactors=*/true);

  sys.sum_poly = Poly2();
  sys.sum_ab = Matrix::Zero(dim, dim);
  for (int j = 0; j < sys.m(); ++j) {
    sys.sum_poly += sys.defpolys[j];
    // A polynomial classified as vanishing on N contributes an exact zero, so
    // later transports are not asked to act on pure roundoff.
    sys.pj_ab.push_back(sys.definitizing[j].numerically_zero ? Matrix(Matrix::Zero(dim, dim))
                                                             : MatSubst(sys.defpolys[j], sys.a, sys.b, tol.commute));
    sys.sum_ab += sys.pj_ab.back();

    const PsdFactor f = PsdFactorize(sys.definitizing[j].gram_form, tol,
                                    sys.definitizing[j].numerically_zero ? kInf : sys.definitizing[j].roundoff_floor);
    sys.s_j.push_back(f.s);
    sys.t_j.push_back(space.gram_inverse() * f.s.adjoint());
  }

  const PsdFactor f = PsdFactorize(space.gram() * sys.sum_ab, tol, all_zero ? kInf : sum_floor);
  sys.s = f.s;
  sys.t = space.gram_inverse() * f.s.adjoint();
  const int r = sys.h_dim();

  const Matrix s_pinv = PseudoInverse(sys.s);
  Matrix partition = Matrix::Zero(r, r);
  for (int j = 0; j < sys.m(); ++j) {
    const Matrix rj_star = sys.s_j[j] * s_pinv;
    const double scale = std::max({OpNorm(sys.s), OpNorm(sys.s_j[j]), std::numeric_limits<double>::min()});
    const double residual = OpNorm(rj_star * sys.s - sys.s_j[j]) / scale;
    if (sys.s_j[j].rows() > 0 && residual > tol.residual) {
      throw ResidualTooLarge("R_" + std::to_string(j + 1) + " does not factor T_j through T (relative residual " +
                                 std::to_string(residual) + ")",
                             residual);
    }
    sys.r_j.push_back(rj_star.adjoint());
    partition += sys.r_j.back() * rj_star;
  }
  if (r > 0) {
    const double residual = OpNorm(partition - Matrix::Identity(r, r));
    if (residual > tol.residual) throw ResidualTooLarge("sum_k R_k R_k^* differs from the identity", residual);
  }

  sys.t_pinv = PseudoInverse(sys.t);
  for (int j = 0; j < sys.m(); ++j) {
    sys.t_j_pinv.push_back(PseudoInverse(sys.t_j[j]));
    sys.r_j_pinv.push_back(PseudoInverse(sys.r_j[j]));
  }
  return sys;
}

Matrix Theta(const EmbeddingSystem& sys, const Matrix& c) { return Transport(sys.t, sys.t_pinv, c, sys.tol.residual, "Theta"); }

Matrix ThetaJ(const EmbeddingSystem& sys, int j, const Matrix& c) {
  return Transport(sys.t_j[j], sys.t_j_pinv[j], c, sys.tol.residual, "Theta_j");
}

Matrix GammaJ(const EmbeddingSystem& sys, int j, const Matrix& d) {
  return Transport(sys.r_j[j], sys.r_j_pinv[j], d, sys.tol.residual, "Gamma_j");
}

Matrix Xi(const EmbeddingSystem& sys, const Matrix& d) {
  if (d.rows() != sys.h_dim() || d.cols() != sys.h_dim()) throw DimensionMismatch("Xi: operand is not an operator on H");
  return sys.t * d * sys.s;
}

Matrix XiJ(const EmbeddingSystem& sys, int j, const Matrix& d) {
  if (d.rows() != sys.hj_dim(j) || d.cols() != sys.hj_dim(j)) throw DimensionMismatch("Xi_j: operand is not an operator on H_j");
  return sys.t_j[j] * d * sys.s_j[j];
}

Matrix LambdaJ(const EmbeddingSystem& sys, int j, const Matrix& d) {
  if (d.rows() != sys.hj_dim(j) || d.cols() != sys.hj_dim(j)) throw DimensionMismatch("Lambda_j: operand is not an operator on H_j");
  return sys.r_j[j] * d * sys.r_j[j].adjoint();
}

IdentityCheck MakeCheck(const std::string& name, const Matrix& lhs, const Matrix& rhs, double tol) {
  IdentityCheck c;
  c.name = name;
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) {
    c.residual = kInf;
  } else {
    c.residual = RelativeResidual(lhs, rhs);
  }
  c.tolerance = tol;
  c.pass = c.residual <= tol;
  return c;
}

void MergeCheck(std::vector<IdentityCheck>& checks, const IdentityCheck& c) {
  for (auto& existing : checks) {
    if (existing.name == c.name) {
      if (c.residual > existing.residual) existing = c;
      return;
    }
  }
  checks.push_back(c);
}

Poly2 RandomPoly(std::mt19937_64& rng, int max_degree) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  Poly2 p;
  for (int a = 0; a <= max_degree; ++a) {
    for (int b = 0; a + b <= max_degree; ++b) {
      p.AddTerm({a, b}, GaussianRational(mpq_class(coeff(rng)), mpq_class(coeff(rng))));
    }
  }
  return p;
}

std::vector<IdentityCheck> VerifyTransferLemmas(const EmbeddingSystem& sys, int random_polys, std::uint64_t seed) {
  std::vector<IdentityCheck> out;
  const double tol = sys.tol.residual;
  const int r = sys.h_dim();
  auto add = [&](const std::string& name, const Matrix& lhs, const Matrix& rhs) { MergeCheck(out, MakeCheck(name, lhs, rhs, tol)); };
  auto subst = [&](const Poly2& p, const Matrix& x, const Matrix& y) { return MatSubst(p, x, y, 1e-8); };

  Matrix sum_factors = Matrix::Zero(sys.dim(), sys.dim());
  Matrix partition = Matrix::Zero(r, r);
  for (int j = 0; j < sys.m(); ++j) {
    add("factor: T_j T_j^+ = p_j(A,B)", sys.t_j[j] * sys.s_j[j], sys.pj_ab[j]);
    add("factor: T R_j = T_j", sys.t * sys.r_j[j], sys.t_j[j]);
    sum_factors += sys.t_j[j] * sys.s_j[j];
    partition += sys.r_j[j] * sys.r_j[j].adjoint();
  }
  add("factor: T T^+ = sum_k p_k(A,B)", sys.t * sys.s, sys.sum_ab);
  add("factor: T T^+ = sum_k T_k T_k^+", sys.t * sys.s, sum_factors);
  add("factor: sum_k R_k R_k^* = I", partition, Matrix::Identity(r, r));

  const Matrix id_k = Matrix::Identity(sys.dim(), sys.dim());
  const Matrix th_n = Theta(sys, sys.n.matrix());
  const Matrix th_np = Theta(sys, sys.n_plus);
  const Matrix th_a = Theta(sys, sys.a);
  const Matrix th_b = Theta(sys, sys.b);
  add("theta: unital", Theta(sys, id_k), Matrix::Identity(r, r));
  add("theta: multiplicative", Theta(sys, sys.n.matrix() * sys.n_plus), th_n * th_np);
  add("theta: star", th_np, th_n.adjoint());
  add("theta: normal image", th_n * th_n.adjoint(), th_n.adjoint() * th_n);
  const Matrix st = sys.s * sys.t;  // T^+ T
  add("theta: T^+T = sum_k p_k(Theta(A),Theta(B))", st, subst(sys.sum_poly, th_a, th_b));

  std::mt19937_64 rng(seed);
  std::vector<Poly2> us;
  for (int k = 0; k < random_polys; ++k) us.push_back(RandomPoly(rng, 2));

  for (int j = 0; j < sys.m(); ++j) {
    const Matrix& rj = sys.r_j[j];
    const Matrix rr = rj * rj.adjoint();
    const int rjdim = sys.hj_dim(j);
    const Matrix thj_n = ThetaJ(sys, j, sys.n.matrix());
    add("theta_j: normal image", thj_n * thj_n.adjoint(), thj_n.adjoint() * thj_n);
    for (const Matrix* c : {&sys.n.matrix(), &sys.n_plus}) {
      const Matrix th = Theta(sys, *c);
      const Matrix thj = ThetaJ(sys, j, *c);
      add("intertwine: Theta(C) R_j R_j^* = R_j Theta_j(C) R_j^*", th * rr, rj * thj * rj.adjoint());
      add("intertwine: R_j R_j^* Theta(C) = R_j Theta_j(C) R_j^*", rr * th, rj * thj * rj.adjoint());
      add("intertwine: Theta_j(C) = Gamma_j(Theta(C))", thj, GammaJ(sys, j, th));
    }
    const Matrix th_pj = Theta(sys, sys.pj_ab[j]);
    add("range: Theta(T_j T_j^+) = R_j R_j^* T^+ T", th_pj, rr * st);
    add("range: Theta(T_j T_j^+) = T^+ T R_j R_j^*", th_pj, st * rr);
    const Matrix pj_th = subst(sys.defpolys[j], th_a, th_b);
    const Matrix sum_th = subst(sys.sum_poly, th_a, th_b);
    add("range: p_j(Theta(A),Theta(B)) = R_j R_j^* sum_k p_k(Theta(A),Theta(B))", pj_th, rr * sum_th);
    add("range: p_j(Theta(A),Theta(B)) = sum_k p_k(Theta(A),Theta(B)) R_j R_j^*", pj_th, sum_th * rr);

    const Matrix thj_a = ThetaJ(sys, j, sys.a);
    const Matrix thj_b = ThetaJ(sys, j, sys.b);
    for (const auto& u : us) {
      const Matrix lhs = sys.pj_ab[j] * subst(u, sys.a, sys.b);
      add("product: p_j(A,B) u(A,B) = Xi_j(u(Theta_j(A),Theta_j(B)))", lhs, XiJ(sys, j, subst(u, thj_a, thj_b)));
      add("product: p_j(A,B) u(A,B) = Xi(R_j R_j^* u(Theta(A),Theta(B)))", lhs, Xi(sys, rr * subst(u, th_a, th_b)));
      add("theta: Theta(u(A,B)) = u(Theta(A),Theta(B))", Theta(sys, subst(u, sys.a, sys.b)), subst(u, th_a, th_b));
    }
    const Matrix dj = RandomMatrix(rng, rjdim, rjdim);
    add("xi: Xi_j = Xi o Lambda_j", XiJ(sys, j, dj), Xi(sys, LambdaJ(sys, j, dj)));
  }
  return out;
}

}  // namespace kreincalc
