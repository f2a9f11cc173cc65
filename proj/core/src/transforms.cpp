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

#include "kreincalc/transforms.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "kreincalc/errors.hpp"
#include "kreincalc/groebner.hpp"
#include "kreincalc/variety.hpp"

namespace kreincalc {

Poly2 ShiftDefinitizing(const Poly2& p, const GaussianRational& beta) {
  const Poly2 x = Poly2::First() - Poly2::Constant(GaussianRational(beta.re()));
  const Poly2 y = Poly2::Second() - Poly2::Constant(GaussianRational(beta.im()));
  return p.Compose(x, y);
}

Poly2 ScaleDefinitizing(const Poly2& p, const GaussianRational& alpha) {
  if (alpha.IsZero()) throw std::invalid_argument("scaling factor must be nonzero");
  const GaussianRational inv = alpha.Inverse();
  const GaussianRational re(inv.re()), im(inv.im());
  const Poly2 x = Poly2::First(), y = Poly2::Second();
  return p.Compose(x * re - y * im, x * im + y * re);
}

Poly2 Reversal(const Poly2& q) {
  if (q.IsZero()) throw std::invalid_argument("reversal of the zero polynomial");
  const int d = std::max(q.DegreeFirst(), q.DegreeSecond());
  Poly2 out(q.vars());
  for (const auto& [m, c] : q.terms()) out.AddTerm({d - m.a, d - m.b}, c);
  return out;
}

Poly2 InvertDefinitizing(const Poly2& p) {
  if (p.IsZero()) throw std::invalid_argument("cannot transform the zero polynomial");
  return PhiInverse(Reversal(PhiTransform(p)));
}

std::vector<TransformReport> InverseTransportCheck(const KreinOperator& n, const std::vector<Poly2>& defpolys,
                                            const Tolerances& tol) {
  const Matrix& m = n.matrix();
  if (m.rows() > 0) {
    const Eigen::ComplexEigenSolver<Matrix> eig(m, false);
    const double smallest = eig.eigenvalues().cwiseAbs().minCoeff();
    if (smallest <= 1e-10) throw SingularOperator("N has an eigenvalue within 1e-10 of 0");
  }
  const KreinOperator inverse(n.space(), m.inverse());
  std::vector<Poly2> transformed;
  for (const auto& p : defpolys) transformed.push_back(InvertDefinitizing(p));
  const bool zero_dim = !transformed.empty() && IsZeroDimensional(Groebner(transformed, false));

  std::vector<TransformReport> out;
  for (size_t k = 0; k < defpolys.size(); ++k) {
    DefinitizingResult r = IsDefinitizing(transformed[k], inverse, tol);
    const bool ok = r.ok;
    out.push_back({defpolys[k], transformed[k], inverse, std::move(r), ok, zero_dim});
  }
  return out;
}

namespace {

IdentityCheck Check(const std::string& name, double residual, double tol) {
  return {name, residual, tol, residual <= tol};
}

double Distance(const std::vector<Complex>& set, Complex z) {
  double best = std::numeric_limits<double>::infinity();
  for (Complex w : set) best = std::min(best, std::abs(w - z));
  return best;
}

}  // namespace

SpecialCaseReport SpecialCaseCheck(const KreinOperator& n, const std::vector<Poly2>& defpolys, const Tolerances& tol) {
  SpecialCaseReport out;
  const Matrix& m = n.matrix();
  const int dim = n.dim();
  const double scale = std::max(1.0, OpNorm(m));
  const Matrix adj = KreinAdjoint(*n.space(), m);
  const Matrix id = Matrix::Identity(dim, dim);
  const double cond = n.space()->condition();
  const double flag_tol = tol.commute * cond;
  out.selfadjoint = OpNorm(m - adj) <= flag_tol * scale;
  out.unitary = std::max(OpNorm(adj * m - id), OpNorm(m * adj - id)) <= flag_tol * scale * scale;
  if (!out.selfadjoint && !out.unitary) return out;

  const auto [a, b] = RealImag(n);
  const std::vector<Complex> spectrum = ClusteredEigenvalues(m, 1e-5);
  const double match = tol.spectrum * scale;

  std::vector<Complex> images;
  bool have_images = false;
  if (!defpolys.empty()) {
    try {
      const IdealData ideal = Groebner(defpolys, false);
      if (IsZeroDimensional(ideal)) {
        for (const auto& pt : SolveVariety(ideal).points) images.push_back(pt.X() + Complex(0, 1) * pt.Y());
        have_images = true;
      }
    } catch (const NonRationalVarietyPoint&) {
    }
  }

  auto add_special = [&](const std::string& label, const Poly2& p, auto exceptional, auto partner) {
    out.checks.push_back(
        Check(label + ": p(A,B) = 0 for p = " + p.ToString(), OpNorm(MatSubst(p, a, b, tol.commute)) / (scale * scale), tol.residual));
    const DefinitizingResult def = IsDefinitizing(p, n, tol);
    out.checks.push_back(Check(label + ": " + p.ToString() + " is definitizing", def.ok ? 0.0 : 1.0, 0.0));
    double pair = 0, image = 0;
    for (Complex z : spectrum) {
      if (!exceptional(z)) continue;
      pair = std::max(pair, Distance(spectrum, partner(z)) / scale);
      if (have_images) image = std::max(image, Distance(images, z) / scale);
    }
    out.checks.push_back(Check(label + ": exceptional eigenvalues come in symmetric pairs", pair, tol.spectrum));
    if (have_images) {
      out.checks.push_back(Check(label + ": exceptional eigenvalues lie in the variety image", image, tol.spectrum));
    }
  };
  if (out.selfadjoint) {
    add_special(
        "selfadjoint", Poly2::Second(), [&](Complex z) { return std::abs(z.imag()) > match; },
        [](Complex z) { return std::conj(z); });
  }
  if (out.unitary) {
    add_special(
        "unitary", Poly2::Parse("x^2 + y^2 - 1"), [&](Complex z) { return std::abs(std::abs(z) - 1.0) > match; },
        [](Complex z) { return 1.0 / std::conj(z); });
  }
  return out;
}

}  // namespace kreincalc
