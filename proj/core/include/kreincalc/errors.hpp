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
#include <stdexcept>
#include <string>
#include <utility>

namespace kreincalc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class WrongVariables : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NonCommuting : public Error {
 public:
  using Error::Error;
};

class NotZeroDimensional : public Error {
 public:
  using Error::Error;
};

/// A float variety coordinate did not round to a verified Gaussian rational.
class NonRationalVarietyPoint : public Error {
 public:
  NonRationalVarietyPoint(const std::string& what, std::complex<double> x, std::complex<double> y)
      : Error(what), coords_(x, y) {}
  const std::pair<std::complex<double>, std::complex<double>>& coords() const { return coords_; }

 private:
  std::pair<std::complex<double>, std::complex<double>> coords_;
};

class NotInVariety : public Error {
 public:
  using Error::Error;
};

class NotInvertible : public Error {
 public:
  NotInvertible(const std::string& what, std::string point) : Error(what), point_(std::move(point)) {}
  const std::string& point() const { return point_; }

 private:
  std::string point_;
};

class MembershipFailed : public Error {
 public:
  using Error::Error;
};

class AlgebraMismatch : public Error {
 public:
  using Error::Error;
};

class NotNormal : public Error {
 public:
  using Error::Error;
};

class NotDefinitizing : public Error {
 public:
  using Error::Error;
};

class NotHermitianPsd : public Error {
 public:
  using Error::Error;
};

class ResidualTooLarge : public Error {
 public:
  ResidualTooLarge(const std::string& what, double residual) : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

class MissingValue : public Error {
 public:
  using Error::Error;
};

class SingularOperator : public Error {
 public:
  using Error::Error;
};

}  // namespace kreincalc
