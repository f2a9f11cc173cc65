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

#include "kreincalc/spectral.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

#include "kreincalc/errors.hpp"

namespace kreincalc {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();

// Single-linkage clustering of complex numbers; returns cluster labels
// 0..k-1 in order of first appearance.
std::vector<int> Cluster(const std::vector<Complex>& z, double tol) {
  const size_t n = z.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      if (std::abs(z[i] - z[j]) <= tol) parent[root(static_cast<int>(j))] = root(static_cast<int>(i));
    }
  }
  std::vector<int> label(n, -1), remap(n, -1);
  int next = 0;
  for (size_t i = 0; i < n; ++i) {
    const int r = root(static_cast<int>(i));
    if (remap[r] < 0) remap[r] = next++;
    label[i] = remap[r];
  }
  return label;
}

IdentityCheck BoolCheck(const std::string& name, bool ok, double tol) {
  IdentityCheck c;
  c.name = name;
  c.residual = ok ? 0.0 : kInf;
  c.tolerance = tol;
  c.pass = ok;
  return c;
}

std::vector<Complex> RandomValues(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> v(n);
  for (auto& z : v) z = Complex(u(rng), u(rng));
  return v;
}

// Values of f (given per e-cluster) on the clusters of e_j.
std::vector<Complex> Restrict(const std::vector<Complex>& f, const std::vector<int>& j_to_e) {
  std::vector<Complex> out;
  for (int k : j_to_e) out.push_back(k >= 0 ? f[k] : Complex(0));
  return out;
}

}  // namespace

int SpectralData::Find(Complex z, double tol) const {
  int best = -1;
  double best_d = tol;
  for (int k = 0; k < size(); ++k) {
    const double d = std::abs(eigenvalues[k] - z);
    if (d <= best_d) {
      best = k;
      best_d = d;
    }
  }
  return best;
}

SpectralData SpectralDecomposition(const Matrix& m, const Tolerances& tol) {
  SpectralData out;
  const Eigen::Index n = m.rows();
  out.unitary = Matrix(n, n);
  if (n == 0) return out;
  const double norm = OpNorm(m);
  const double comm = OpNorm(m * m.adjoint() - m.adjoint() * m);
  if (comm > tol.commute * norm * norm + 1e2 * kEps * std::max(1.0, norm * norm)) {
    throw NotNormal("matrix is not normal: ||MM* - M*M|| = " + std::to_string(comm));
  }
  const double ctol = tol.cluster * std::max(1.0, norm);
  const Matrix re = (m + m.adjoint()) / 2.0;
  const Matrix im = (m - m.adjoint()) / Complex(0, 2);

  Eigen::SelfAdjointEigenSolver<Matrix> eig_re(re);
  const auto& lambda = eig_re.eigenvalues();
  Eigen::Index col = 0;
  for (Eigen::Index start = 0; start < n;) {
    Eigen::Index end = start + 1;
    while (end < n && lambda(end) - lambda(end - 1) <= ctol) ++end;
    const Matrix v = eig_re.eigenvectors().middleCols(start, end - start);
    Eigen::SelfAdjointEigenSolver<Matrix> eig_im(v.adjoint() * im * v);
    out.unitary.middleCols(col, end - start) = v * eig_im.eigenvectors();
    col += end - start;
    start = end;
  }

  std::vector<Complex> rayleigh(n);
  for (Eigen::Index k = 0; k < n; ++k) rayleigh[k] = out.unitary.col(k).dot(m * out.unitary.col(k));
  const std::vector<int> label = Cluster(rayleigh, ctol);
  const int clusters = *std::max_element(label.begin(), label.end()) + 1;
  std::vector<Complex> mean(clusters, 0.0);
  std::vector<int> count(clusters, 0);
  std::vector<Matrix> proj(clusters, Matrix::Zero(n, n));
  for (Eigen::Index k = 0; k < n; ++k) {
    mean[label[k]] += rayleigh[k];
    ++count[label[k]];
    proj[label[k]] += out.unitary.col(k) * out.unitary.col(k).adjoint();
  }
  std::vector<int> order(clusters);
  std::iota(order.begin(), order.end(), 0);
  for (int c = 0; c < clusters; ++c) mean[c] /= static_cast<double>(count[c]);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return mean[a].real() != mean[b].real() ? mean[a].real() < mean[b].real() : mean[a].imag() < mean[b].imag();
  });
  for (int c : order) {
    out.eigenvalues.push_back(mean[c]);
    out.projections.push_back(proj[c]);
  }
  return out;
}

Matrix Integrate(const std::vector<Complex>& values, const SpectralData& e) {
  if (static_cast<int>(values.size()) != e.size()) throw MissingValue("spectral integral needs one value per eigenvalue");
  Matrix out = Matrix::Zero(e.dim(), e.dim());
  for (int k = 0; k < e.size(); ++k) out += values[k] * e.projections[k];
  return out;
}

Matrix Integrate(const std::function<Complex(Complex)>& f, const SpectralData& e) {
  std::vector<Complex> values;
  for (const auto& z : e.eigenvalues) values.push_back(f(z));
  return Integrate(values, e);
}

SystemSpectra ComputeSpectra(const EmbeddingSystem& sys, const std::vector<Complex>& real_points) {
  SystemSpectra sp;
  sp.real_points = real_points;
  sp.e = SpectralDecomposition(Theta(sys, sys.n.matrix()), sys.tol);
  const double match = sys.tol.spectrum * sys.OperatorScale();
  for (int j = 0; j < sys.m(); ++j) {
    sp.e_j.push_back(SpectralDecomposition(ThetaJ(sys, j, sys.n.matrix()), sys.tol));
    std::vector<int> map;
    for (const auto& z : sp.e_j.back().eigenvalues) map.push_back(sp.e.Find(z, match));
    sp.j_to_e.push_back(std::move(map));
  }
  for (const auto& z : sp.e.eigenvalues) {
    int found = -1;
    for (size_t k = 0; k < real_points.size(); ++k) {
      if (std::abs(z - real_points[k]) <= sys.tol.match) {
        if (found >= 0) throw Error("eigenvalue matches more than one variety point");
        found = static_cast<int>(k);
      }
    }
    sp.on_variety.push_back(found);
  }
  return sp;
}

std::vector<IdentityCheck> SpectralBoundCheck(const EmbeddingSystem& sys, const SystemSpectra& sp) {
  std::vector<IdentityCheck> out;
  const double tol = sys.tol.residual;
  for (int k = 0; k < sp.e.size(); ++k) {
    const Complex z = sp.e.eigenvalues[k];
    const Complex sum = sys.sum_poly.EvalAt(z);
    for (int j = 0; j < sys.m(); ++j) {
      const double rr = OpNorm(sys.r_j[j] * sys.r_j[j].adjoint());
      const double pj = std::abs(sys.defpolys[j].EvalAt(z));
      IdentityCheck c;
      c.name = "bound: |p_j(z)| <= ||R_j R_j^*|| |sum_k p_k(z)| on sigma(Theta(N))";
      c.residual = std::max(0.0, pj - rr * std::abs(sum)) / std::max({1.0, pj, std::abs(sum)});
      c.tolerance = tol;
      c.pass = c.residual <= tol;
      MergeCheck(out, c);
    }
    const bool zero_sum = std::abs(sum) <= tol * std::max(1.0, std::abs(z));
    MergeCheck(out, BoolCheck("bound: zeros of sum_k p_k in sigma(Theta(N)) lie on V_R", !zero_sum || sp.on_variety[k] >= 0, tol));
  }
  if (out.empty()) out.push_back(BoolCheck("bound: |p_j(z)| <= ||R_j R_j^*|| |sum_k p_k(z)| on sigma(Theta(N))", true, tol));
  return out;
}

std::vector<IdentityCheck> OffVarietyCheck(const EmbeddingSystem& sys, const SystemSpectra& sp, int samples,
                                           std::uint64_t seed) {
  std::vector<IdentityCheck> out;
  const double tol = sys.tol.residual;
  const int r = sys.h_dim();
  const int nc = sp.e.size();
  Matrix e_off = Matrix::Zero(r, r);
  for (int k = 0; k < nc; ++k) {
    if (sp.on_variety[k] < 0) e_off += sp.e.projections[k];
  }
  std::mt19937_64 rng(seed);
  for (int j = 0; j < sys.m(); ++j) {
    const Matrix rr = sys.r_j[j] * sys.r_j[j].adjoint();
    std::vector<Complex> ratio(nc, 0.0);
    for (int k = 0; k < nc; ++k) {
      if (sp.on_variety[k] >= 0) continue;
      const Complex z = sp.e.eigenvalues[k];
      ratio[k] = sys.defpolys[j].EvalAt(z) / sys.sum_poly.EvalAt(z);
    }
    const Matrix rhs = Integrate(ratio, sp.e);
    MergeCheck(out, MakeCheck("off-variety: R_j R_j^* E(C \\ V_R) = int p_j / sum_k p_k dE", rr * e_off, rhs, tol));
    MergeCheck(out, MakeCheck("off-variety: E(C \\ V_R) R_j R_j^* = int p_j / sum_k p_k dE", e_off * rr, rhs, tol));

    for (int s = 0; s < samples; ++s) {
      const std::vector<Complex> f = RandomValues(rng, nc);
      std::vector<Complex> off(nc, 0.0), on(nc, 0.0);
      for (int k = 0; k < nc; ++k) (sp.on_variety[k] < 0 ? off[k] : on[k]) = f[k];
      for (int k = 0; k < nc; ++k) off[k] *= ratio[k];
      const Matrix lhs = XiJ(sys, j, Integrate(Restrict(f, sp.j_to_e[j]), sp.e_j[j]));
      const Matrix right = Xi(sys, Integrate(off, sp.e) + rr * Integrate(on, sp.e));
      MergeCheck(out, MakeCheck("off-variety: Xi_j(int f dE_j) splits along V_R", lhs, right, tol));
    }
  }
  return out;
}

std::vector<IdentityCheck> MeasureTransferCheck(const EmbeddingSystem& sys, const SystemSpectra& sp, int samples,
                                                std::uint64_t seed) {
  std::vector<IdentityCheck> out;
  const double tol = sys.tol.residual;
  const int nc = sp.e.size();
  std::mt19937_64 rng(seed);
  for (int j = 0; j < sys.m(); ++j) {
    const auto& ej = sp.e_j[j];
    const bool included = std::all_of(sp.j_to_e[j].begin(), sp.j_to_e[j].end(), [](int k) { return k >= 0; });
    MergeCheck(out, BoolCheck("measure: sigma(Theta_j(N)) in sigma(Theta(N))", included, sys.tol.spectrum));
    if (!included) continue;
    const int hj = sys.hj_dim(j);
    auto guarded = [&](const std::string& name, auto&& lhs_fn, const Matrix& rhs) {
      try {
        MergeCheck(out, MakeCheck(name, lhs_fn(), rhs, tol));
      } catch (const ResidualTooLarge& e) {
        IdentityCheck c;
        c.name = name;
        c.residual = e.residual();
        c.tolerance = tol;
        c.pass = false;
        MergeCheck(out, c);
      }
    };
    for (int k = 0; k < nc; ++k) {
      Matrix ej_k = Matrix::Zero(hj, hj);
      for (int l = 0; l < ej.size(); ++l) {
        if (sp.j_to_e[j][l] == k) ej_k += ej.projections[l];
      }
      guarded("measure: Gamma_j(E({z})) = E_j({z})", [&] { return GammaJ(sys, j, sp.e.projections[k]); }, ej_k);
    }
    const Matrix rr = sys.r_j[j] * sys.r_j[j].adjoint();
    for (int s = 0; s < samples; ++s) {
      const std::vector<Complex> h = RandomValues(rng, nc);
      const Matrix int_e = Integrate(h, sp.e);
      const Matrix int_ej = Integrate(Restrict(h, sp.j_to_e[j]), ej);
      guarded("measure: Gamma_j(int h dE) = int h dE_j", [&] { return GammaJ(sys, j, int_e); }, int_ej);
      MergeCheck(out, MakeCheck("measure: Xi_j(int h dE_j) = Xi(R_j R_j^* int h dE)", XiJ(sys, j, int_ej), Xi(sys, rr * int_e), tol));
    }
  }
  return out;
}

}  // namespace kreincalc
