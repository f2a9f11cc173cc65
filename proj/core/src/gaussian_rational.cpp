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

#include "kreincalc/gaussian_rational.hpp"

#include <cmath>
#include <stdexcept>

namespace kreincalc {

namespace {

mpq_class ExactFromDouble(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite coefficient");
  mpq_class q;
  mpq_set_d(q.get_mpq_t(), x);
  q.canonicalize();
  return q;
}

std::string RationalToString(const mpq_class& q) {
  return q.get_str(10);
}

}  // namespace

GaussianRational::GaussianRational(mpq_class re, mpq_class im)
    : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussianRational GaussianRational::FromDouble(std::complex<double> z) {
  return {ExactFromDouble(z.real()), ExactFromDouble(z.imag())};
}

GaussianRational GaussianRational::Inverse() const {
  if (IsZero()) throw std::domain_error("division by zero Gaussian rational");
  mpq_class n = Norm();
  return {re_ / n, -im_ / n};
}

std::string GaussianRational::ToString() const {
  if (sgn(im_) == 0) return RationalToString(re_);
  std::string im_part = RationalToString(im_) + "*i";
  if (sgn(re_) == 0) return im_part;
  std::string out = RationalToString(re_);
  if (sgn(im_) > 0) out += "+";
  return out + im_part;
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (o.IsReal()) {
    re_ *= o.re_;
    im_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.IsReal()) {
    if (sgn(o.re_) == 0) throw std::domain_error("division by zero Gaussian rational");
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  return *this *= o.Inverse();
}

mpq_class ApproximateRational(double x, long max_denominator) {
  // Convergents h/k of the continued fraction of x.
  mpz_class h_prev = 1, h = static_cast<long>(std::floor(x));
  mpz_class k_prev = 0, k = 1;
  double frac = x - std::floor(x);
  while (frac > 1e-15) {
    double inv = 1.0 / frac;
    if (inv > 1e15) break;
    long a = static_cast<long>(std::floor(inv));
    frac = inv - std::floor(inv);
    mpz_class h_next = a * h + h_prev;
    mpz_class k_next = a * k + k_prev;
    if (k_next > max_denominator) break;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
  }
  mpq_class q(h, k);
  q.canonicalize();
  return q;
}

bool SnapGaussianRational(std::complex<double> z, double tol, GaussianRational* out) {
  constexpr long kMaxDenominator = 1000000;
  mpq_class re = ApproximateRational(z.real(), kMaxDenominator);
  mpq_class im = ApproximateRational(z.imag(), kMaxDenominator);
  GaussianRational snapped(re, im);
  if (std::abs(snapped.ToComplex() - z) > tol) return false;
  *out = snapped;
  return true;
}

}  // namespace kreincalc
