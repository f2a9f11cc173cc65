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

#include "kreincalc/krein.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "kreincalc/errors.hpp"

namespace kreincalc {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Magnitude below which p(A,B) is indistinguishable from zero: a generous
// multiple of machine epsilon times the size of the individual terms.
double SubstitutionFloor(const Poly2& p, double norm_a, double norm_b) {
  const double a = std::max(1.0, norm_a), b = std::max(1.0, norm_b);
  double bound = 0;
  for (const auto& [m, c] : p.terms()) bound += c.Magnitude() * std::pow(a, m.a) * std::pow(b, m.b);
  return 1e3 * kEps * bound;
}

}  // namespace

KreinSpace::KreinSpace(Matrix gram) : gram_(std::move(gram)) {
  if (gram_.rows() != gram_.cols()) throw DimensionMismatch("Gram matrix must be square");
  const double norm = OpNorm(gram_);
  if (OpNorm(gram_ - gram_.adjoint()) > 1e-12 * std::max(norm, 1e-300)) {
    throw NotHermitianPsd("Gram matrix is not Hermitian");
  }
  if (gram_.rows() > 0) {
    Eigen::JacobiSVD<Matrix> svd(gram_);
    const auto& s = svd.singularValues();
    const double smin = s(s.size() - 1);
    if (!(smin > 1e-12 * s(0))) throw SingularOperator("Gram matrix is not invertible");
    condition_ = s(0) / smin;
  }
  gram_inverse_ = gram_.rows() > 0 ? Matrix(gram_.inverse()) : gram_;
}

KreinOperator::KreinOperator(SpacePtr space, Matrix matrix) : space_(std::move(space)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != space_->dim() || matrix_.cols() != space_->dim()) {
    throw DimensionMismatch("operator size does not match the Krein space");
  }
}

Matrix KreinAdjoint(const KreinSpace& space, const Matrix& c) { return space.gram_inverse() * c.adjoint() * space.gram(); }

KreinOperator Adjoint(const KreinOperator& c) { return {c.space(), KreinAdjoint(*c.space(), c.matrix())}; }

std::pair<Matrix, Matrix> RealImag(const KreinOperator& n) {
  const Matrix plus = KreinAdjoint(*n.space(), n.matrix());
  const Matrix a = (n.matrix() + plus) / 2.0;
  const Matrix b = (n.matrix() - plus) / Complex(0, 2);
  return {a, b};
}

double NormalityResidual(const KreinOperator& n) {
  const auto [a, b] = RealImag(n);
  return OpNorm(a * b - b * a);
}

bool IsNormal(const KreinOperator& n, double tol) {
  const auto [a, b] = RealImag(n);
  const double bound = tol * OpNorm(a) * OpNorm(b) + 1e2 * kEps * std::pow(std::max(1.0, OpNorm(n.matrix())), 2);
  return OpNorm(a * b - b * a) <= bound;
}

DefinitizingResult IsDefinitizing(const Poly2& p, const KreinOperator& n, const Tolerances& tol) {
  if (p.IsZero()) throw std::invalid_argument("the zero polynomial cannot be tested for definitizing");
  DefinitizingResult out;
  out.was_real = p.IsReal();
  out.real_part = out.was_real ? p : (p + p.Sharp()) * GaussianRational(mpq_class(1, 2));
  const auto [a, b] = RealImag(n);
  const Matrix pab = MatSubst(out.real_part, a, b, tol.commute);
  out.gram_form = n.space()->gram() * pab;
  const Matrix& g = out.gram_form;
  const double norm = OpNorm(g);
  const double floor = OpNorm(n.space()->gram()) * SubstitutionFloor(out.real_part, OpNorm(a), OpNorm(b));
  out.roundoff_floor = floor;

  const Matrix herm = (g + g.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(herm, Eigen::EigenvaluesOnly);
  out.eigenvalues.assign(eig.eigenvalues().data(), eig.eigenvalues().data() + eig.eigenvalues().size());

  if (norm <= floor) {
    out.numerically_zero = true;
    out.hermitian = out.psd = out.ok = true;
    return out;
  }
  out.hermitian_residual = std::max(0.0, OpNorm(g - g.adjoint()) - floor) / norm;
  out.hermitian = out.hermitian_residual <= tol.hermitian;
  const double lowest = out.eigenvalues.empty() ? 0.0 : out.eigenvalues.front();
  out.min_eigenvalue = (lowest >= 0 ? lowest : std::min(0.0, lowest + floor)) / norm;
  out.psd = out.min_eigenvalue >= -tol.psd;
  out.ok = out.hermitian && out.psd;
  return out;
}

PsdFactor PsdFactorize(const Matrix& g, const Tolerances& tol, double roundoff_floor) {
  PsdFactor out;
  const Eigen::Index n = g.rows();
  const double norm = OpNorm(g);
  if (n == 0 || norm <= roundoff_floor || norm == 0.0) {
    out.s = Matrix(0, n);
    return out;
  }
  if (OpNorm(g - g.adjoint()) > tol.hermitian * norm + roundoff_floor) throw NotHermitianPsd("matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> eig((g + g.adjoint()) / 2.0);
  const auto& lambda = eig.eigenvalues();
  if (lambda(0) < -(tol.psd * norm + roundoff_floor)) {
    throw NotHermitianPsd("matrix has a negative eigenvalue " + std::to_string(lambda(0)));
  }
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (lambda(k) > tol.rank * norm + roundoff_floor) keep.push_back(k);
  }
  out.rank = static_cast<int>(keep.size());
  out.s = Matrix(out.rank, n);
  for (int r = 0; r < out.rank; ++r) {
    out.s.row(r) = std::sqrt(lambda(keep[r])) * eig.eigenvectors().col(keep[r]).adjoint();
    // Fix the phase of each row: its largest entry becomes real positive.
    Eigen::Index at = 0;
    out.s.row(r).cwiseAbs().maxCoeff(&at);
    out.s.row(r) *= std::abs(out.s(r, at)) / out.s(r, at);
  }
  out.residual = OpNorm(out.s.adjoint() * out.s - g) / norm;
  if (out.residual * norm > 10 * tol.psd * norm + roundoff_floor) throw NotHermitianPsd("PSD factorization residual too large");
  return out;
}

}  // namespace kreincalc
