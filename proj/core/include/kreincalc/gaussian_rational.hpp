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

#pragma once

#include <complex>
#include <string>

#include <gmpxx.h>

namespace kreincalc {

/// Exact element of Q + iQ. Both parts are kept canonical by GMP, so
/// equality is structural.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(mpq_class re, mpq_class im = 0);

  /// Exact conversion: every finite double is a dyadic rational.
  static GaussianRational FromDouble(std::complex<double> z);
  static GaussianRational I() { return {0, 1}; }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool IsZero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool IsOne() const { return re_ == 1 && sgn(im_) == 0; }
  bool IsReal() const { return sgn(im_) == 0; }

  GaussianRational Conj() const { return {re_, -im_}; }
  /// |z|^2, exact.
  mpq_class Norm() const { return re_ * re_ + im_ * im_; }
  GaussianRational Inverse() const;

  std::complex<double> ToComplex() const { return {re_.get_d(), im_.get_d()}; }
  /// Magnitude bound used for scale estimates; not exact.
  double Magnitude() const { return std::abs(ToComplex()); }

  /// `a/b`, `c/d*i`, or `a/b+c/d*i`.
  std::string ToString() const;

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  GaussianRational operator-() const { return {-re_, -im_}; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

 private:
  mpq_class re_ = 0;
  mpq_class im_ = 0;
};

/// Best rational approximation of `x` with denominator at most
/// `max_denominator` (continued fractions).
mpq_class ApproximateRational(double x, long max_denominator);

/// Snaps a float to a nearby Gaussian rational, or returns false when no
/// candidate with a small denominator lies within `tol`.
bool SnapGaussianRational(std::complex<double> z, double tol, GaussianRational* out);

}  // namespace kreincalc
