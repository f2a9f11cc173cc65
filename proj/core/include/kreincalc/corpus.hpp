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

#include <cstdint>
#include <string>
#include <vector>

#include "kreincalc/dense.hpp"
#include "kreincalc/poly2.hpp"

namespace kreincalc {

/// A definitizable normal operator together with its definitizing list.
struct Problem {
  std::string name;
  Matrix gram;
  Matrix op;
  std::vector<Poly2> definitizing;
};

/// Names accepted by GenerateProblem besides "random".
const std::vector<std::string>& NamedProblems();

/// Deterministic reference instances. "random" uses `seed` and `dim` and
/// conjugates canonical Krein blocks by a random unitary; every other name
/// ignores both. Throws std::invalid_argument for unknown names.
Problem GenerateProblem(const std::string& name, std::uint64_t seed = 1, int dim = 6);

}  // namespace kreincalc
