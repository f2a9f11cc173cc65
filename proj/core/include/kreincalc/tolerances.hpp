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

#include <map>
#include <string>

namespace kreincalc {

/// Numerical thresholds used across the library. All are relative unless
/// noted.
struct Tolerances {
  double hermitian = 1e-10;     ///< ||G - G*|| against ||G||
  double psd = 1e-9;            ///< slack on the smallest eigenvalue
  double rank = 1e-9;           ///< eigenvalue cutoff in PSD factorizations
  double commute = 1e-10;       ///< normality / commuting substitutions
  double residual = 1e-8;       ///< solve residuals (theta, R_j) and identity checks
  double cluster = 1e-8;        ///< eigenvalue clustering
  double match = 1e-6;          ///< absolute distance float eigenvalue -> exact point
  double spectrum = 1e-8;       ///< spectral set matching
  double invert_margin = 1e-10; ///< absolute margin for scalar inversion
  double denominator = 1e-12;   ///< smallest admissible |sum p_k(z)| / scale

  /// "default", "strict" (all thresholds divided by 10) or "loose"
  /// (multiplied by 100). Throws std::invalid_argument for other names.
  static Tolerances Profile(const std::string& name);

  /// Sets one field by name; throws std::invalid_argument for unknown keys
  /// or non-positive values.
  void Set(const std::string& key, double value);

  std::map<std::string, double> AsMap() const;
};

}  // namespace kreincalc
