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

#include <vector>

#include "kreincalc/poly2.hpp"

namespace kreincalc {

/// An ideal of C[x,y] given by generators together with its reduced
/// Groebner basis (grlex, x > y).
struct IdealData {
  std::vector<Poly2> generators;
  /// Reduced, monic, sorted by increasing leading monomial. Empty for the
  /// zero ideal.
  std::vector<Poly2> groebner;
  /// groebner[k] == sum_j cofactors[k][j] * generators[j]. Empty when the
  /// basis was computed without tracking.
  std::vector<std::vector<Poly2>> cofactors;

  bool IsUnit() const { return groebner.size() == 1 && groebner[0].IsConstant(); }
};

/// Buchberger's algorithm. With `track_cofactors` every basis element carries
/// its exact expression in the input generators.
IdealData Groebner(std::vector<Poly2> generators, bool track_cofactors = true);

struct Division {
  std::vector<Poly2> quotients;
  Poly2 remainder;
};

/// Multivariate division with full reduction of the remainder.
Division Divide(const Poly2& p, const std::vector<Poly2>& divisors);

Poly2 NormalForm(const Poly2& p, const IdealData& ideal);
bool Contains(const IdealData& ideal, const Poly2& p);
/// Equality of ideals via their (unique) reduced bases.
bool SameIdeal(const IdealData& a, const IdealData& b);

/// True iff the leading terms contain a pure power of x and a pure power of y.
bool IsZeroDimensional(const IdealData& ideal);

/// Ideal generated by all pairwise products of basis elements.
IdealData ProductIdeal(const IdealData& a, const IdealData& b);

/// Ideal generated by both bases together.
IdealData SumIdeal(const IdealData& a, const IdealData& b);

}  // namespace kreincalc
