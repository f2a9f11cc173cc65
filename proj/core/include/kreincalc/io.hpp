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

// JSON problem and function files, reports, and the analyze / calc / verify
// pipelines behind the command line tool. JSON handling stays inside the
// implementation; this header only exchanges strings and plain structs.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kreincalc/calculus.hpp"
#include "kreincalc/corpus.hpp"
#include "kreincalc/tolerances.hpp"

namespace kreincalc {

/// A coset entry of a function file. Point coordinates are complex so the
/// same type serves real and nonreal variety points.
struct CosetSpec {
  std::pair<Complex, Complex> point;
  std::string poly;
};

/// One function of a function file. When `poly` is set the function is
/// s_N for that polynomial and the other fields must be empty.
struct FunctionSpec {
  std::string name;
  /// Evaluate phi^{-1} instead of phi.
  bool invert = false;
  std::optional<std::string> poly;
  std::vector<std::pair<Complex, Complex>> scalars;  ///< (z, value)
  std::vector<CosetSpec> real_cosets;
  std::vector<CosetSpec> nonreal_cosets;
};

struct ProblemSpec {
  std::string name;
  Matrix gram;
  Matrix op;
  std::vector<std::string> definitizing;
  std::vector<FunctionSpec> functions;
  /// Tolerance overrides; values must be positive.
  std::map<std::string, double> options;
  /// Optional tolerance profile name ("default", "strict", "loose").
  std::optional<std::string> profile;
};

/// Throws ParseError with a JSON path on malformed input.
ProblemSpec ParseProblem(const std::string& text);
/// Floats are written as [re, im] pairs with 17 significant digits, so
/// ParseProblem(PrintProblem(p)) reproduces p exactly.
std::string PrintProblem(const ProblemSpec& spec);

/// Accepts a single function object, an array of them, or {"functions": [...]}.
std::vector<FunctionSpec> ParseFunctions(const std::string& text);

ProblemSpec SpecFromProblem(const Problem& problem);

/// Starts from the profile named by `env_profile`; a profile named in the
/// file replaces it. The file's options and then `overrides` are applied on
/// top, in order. Throws std::invalid_argument.
Tolerances ResolveTolerances(const ProblemSpec& spec, const std::optional<std::string>& env_profile,
                             const std::vector<std::pair<std::string, double>>& overrides);

/// Name of the environment variable selecting the default tolerance profile.
inline constexpr const char* kToleranceProfileEnv = "KREINCALC_TOLERANCE_PROFILE";

/// Builds phi from a function spec. Scalars are matched to the off-variety
/// eigenvalues of Theta(N) and cosets to variety points within tol.match.
/// Throws MissingValue or NotInVariety.
CalcFunction BuildFunction(const ContextPtr& ctx, const FunctionSpec& spec);

enum ExitCode : int {
  kExitPass = 0,
  kExitUsage = 1,
  kExitModel = 2,
  kExitResidual = 3,
};

struct RunOutcome {
  int exit_code = kExitPass;
  std::string report_json;
  std::string summary;
};

struct AnalyzeOptions {
  /// Adds the calculus property suites, transforms and special cases.
  bool full_suite = false;
  int homomorphism_pairs = 20;
  int null_samples = 10;
  std::uint64_t seed = 1;
};

/// Runs the pipeline on one problem. Failures of normality or of a
/// definitizing polynomial, and any other modeling error, give exit code 2;
/// a failed check gives 3. The report is produced in every case.
RunOutcome RunAnalyze(const ProblemSpec& spec, const Tolerances& tol, const AnalyzeOptions& options = {});

/// Evaluates phi(N) for each function and spot-checks products, sums and
/// sharps across the supplied set.
RunOutcome RunCalc(const ProblemSpec& spec, const std::vector<FunctionSpec>& functions, const Tolerances& tol);

}  // namespace kreincalc
