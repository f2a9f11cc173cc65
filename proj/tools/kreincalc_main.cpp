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

// kreincalc command line tool.
//
//   kreincalc analyze <problem.json> [--report out.json] [--tol key=value]...
//   kreincalc verify  <problem.json> [--report out.json] [--tol key=value]...
//   kreincalc calc    <problem.json> <functions.json> [--out out.json]
//   kreincalc generate <name> [--seed s] [--dim n] [--out file]
//
// Exit codes: 0 pass, 1 usage or parse error, 2 modeling failure, 3 failed
// numerical check.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "kreincalc/errors.hpp"
#include "kreincalc/io.hpp"

namespace {

using namespace kreincalc;

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << text;
}

std::vector<std::pair<std::string, double>> ParseOverrides(const std::vector<std::string>& items) {
  std::vector<std::pair<std::string, double>> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--tol expects key=value, got '" + item + "'");
    std::size_t used = 0;
    const std::string value = item.substr(eq + 1);
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("bad tolerance value '" + value + "'");
    out.emplace_back(item.substr(0, eq), v);
  }
  return out;
}

std::optional<std::string> EnvProfile() {
  const char* v = std::getenv(kToleranceProfileEnv);
  if (!v) return std::nullopt;
  return std::string(v);
}

int Emit(const RunOutcome& outcome, const std::string& report_path) {
  if (report_path.empty()) {
    std::cout << outcome.report_json;
    std::cerr << outcome.summary;
  } else {
    WriteFile(report_path, outcome.report_json);
    std::cout << outcome.summary;
  }
  return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Functional calculus for definitizable normal operators on finite-dimensional Krein spaces"};
  app.require_subcommand(1);

  std::string problem_path, functions_path, report_path, out_path, name;
  std::vector<std::string> tol_items;
  std::uint64_t seed = 1;
  int dim = 6;
  int pairs = 20;

  auto* analyze = app.add_subcommand("analyze", "Embedding, ideal and spectral data with the transfer checks");
  analyze->add_option("problem", problem_path, "Problem JSON file")->required();
  analyze->add_option("--report", report_path, "Write the JSON report here and print a summary");
  analyze->add_option("--tol", tol_items, "Tolerance override key=value (repeatable)");

  auto* verify = app.add_subcommand("verify", "Everything analyze does plus the full calculus property suite");
  verify->add_option("problem", problem_path, "Problem JSON file")->required();
  verify->add_option("--report", report_path, "Write the JSON report here and print a summary");
  verify->add_option("--tol", tol_items, "Tolerance override key=value (repeatable)");
  verify->add_option("--seed", seed, "Seed for the random samples");
  verify->add_option("--pairs", pairs, "Random function pairs for the homomorphism checks");

  auto* calc = app.add_subcommand("calc", "Evaluate phi(N) for the functions in a function file");
  calc->add_option("problem", problem_path, "Problem JSON file")->required();
  calc->add_option("functions", functions_path, "Function JSON file")->required();
  calc->add_option("--out", report_path, "Write the JSON output here and print a summary");
  calc->add_option("--tol", tol_items, "Tolerance override key=value (repeatable)");

  auto* generate = app.add_subcommand("generate", "Write a reference problem");
  generate->add_option("name", name, "ex1, ex2, ex3, jordan-at-i, degenerate, selfadjoint, unitary or random")
      ->required();
  generate->add_option("--seed", seed, "Seed for random instances");
  generate->add_option("--dim", dim, "Dimension of random instances");
  generate->add_option("--out", out_path, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (generate->parsed()) {
      const std::string text = PrintProblem(SpecFromProblem(GenerateProblem(name, seed, dim)));
      if (out_path.empty()) {
        std::cout << text;
      } else {
        WriteFile(out_path, text);
      }
      return kExitPass;
    }
    const ProblemSpec spec = ParseProblem(ReadFile(problem_path));
    const Tolerances tol = ResolveTolerances(spec, EnvProfile(), ParseOverrides(tol_items));
    if (calc->parsed()) return Emit(RunCalc(spec, ParseFunctions(ReadFile(functions_path)), tol), report_path);
    AnalyzeOptions options;
    options.full_suite = verify->parsed();
    options.seed = seed;
    options.homomorphism_pairs = pairs;
    return Emit(RunAnalyze(spec, tol, options), report_path);
  } catch (const kreincalc::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitModel;
  }
}
