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

#include "kreincalc/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "kreincalc/errors.hpp"
#include "kreincalc/transforms.hpp"

namespace kreincalc {

namespace {

using Json = nlohmann::ordered_json;

// ----------------------------------------------------------------------------
// Parsing helpers

[[noreturn]] void Fail(const std::string& path, const std::string& what) {
  throw ParseError(path + ": " + what);
}

Complex ParseComplex(const Json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  if (j.is_string()) {
    const Poly2 p = Poly2::Parse(j.get<std::string>());
    if (!p.IsConstant() && !p.IsZero()) Fail(path, "expected a constant");
    return p.Coefficient({0, 0}).ToComplex();
  }
  Fail(path, "expected a number, a string constant or an [re, im] pair");
}

Matrix ParseMatrix(const Json& j, int dim, const std::string& path) {
  if (!j.is_array()) Fail(path, "expected an array");
  std::vector<Complex> flat;
  // Entries are either flat row-major [re, im] pairs or rows of such pairs.
  const bool nested = !j.empty() && j[0].is_array() && !j[0].empty() && j[0][0].is_array();
  int idx = 0;
  for (const auto& e : j) {
    if (nested) {
      for (const auto& x : e) flat.push_back(ParseComplex(x, path + "[" + std::to_string(idx++) + "]"));
    } else {
      flat.push_back(ParseComplex(e, path + "[" + std::to_string(idx++) + "]"));
    }
  }
  if (static_cast<int>(flat.size()) != dim * dim) {
    Fail(path, "expected " + std::to_string(dim * dim) + " entries, got " + std::to_string(flat.size()));
  }
  Matrix m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) m(r, c) = flat[r * dim + c];
  }
  return m;
}

std::vector<CosetSpec> ParseCosets(const Json& j, const std::string& path) {
  std::vector<CosetSpec> out;
  if (j.is_null()) return out;
  if (!j.is_array()) Fail(path, "expected an array");
  for (size_t k = 0; k < j.size(); ++k) {
    const std::string at = path + "[" + std::to_string(k) + "]";
    const Json& e = j[k];
    if (!e.is_object() || !e.contains("point") || !e.contains("poly")) Fail(at, "expected {\"point\", \"poly\"}");
    const Json& p = e["point"];
    if (!p.is_array() || p.size() != 2) Fail(at + ".point", "expected [a_x, a_y]");
    if (!e["poly"].is_string()) Fail(at + ".poly", "expected a polynomial string");
    out.push_back({{ParseComplex(p[0], at + ".point[0]"), ParseComplex(p[1], at + ".point[1]")}, e["poly"].get<std::string>()});
  }
  return out;
}

FunctionSpec ParseFunction(const Json& j, const std::string& path) {
  if (!j.is_object()) Fail(path, "expected an object");
  FunctionSpec f;
  if (j.contains("name")) f.name = j["name"].get<std::string>();
  if (j.contains("invert")) f.invert = j["invert"].get<bool>();
  if (j.contains("poly")) {
    if (!j["poly"].is_string()) Fail(path + ".poly", "expected a polynomial string");
    f.poly = j["poly"].get<std::string>();
  }
  if (j.contains("scalars")) {
    const Json& s = j["scalars"];
    if (!s.is_array()) Fail(path + ".scalars", "expected an array");
    for (size_t k = 0; k < s.size(); ++k) {
      const std::string at = path + ".scalars[" + std::to_string(k) + "]";
      if (!s[k].is_object() || !s[k].contains("z") || !s[k].contains("v")) Fail(at, "expected {\"z\", \"v\"}");
      f.scalars.emplace_back(ParseComplex(s[k]["z"], at + ".z"), ParseComplex(s[k]["v"], at + ".v"));
    }
  }
  f.real_cosets = ParseCosets(j.value("real_cosets", Json()), path + ".real_cosets");
  f.nonreal_cosets = ParseCosets(j.value("nonreal_cosets", Json()), path + ".nonreal_cosets");
  if (f.poly && (!f.scalars.empty() || !f.real_cosets.empty() || !f.nonreal_cosets.empty())) {
    Fail(path, "\"poly\" cannot be combined with explicit values");
  }
  return f;
}

Json ParseJson(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

// ----------------------------------------------------------------------------
// Printing helpers

std::string Num17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string Pair17(Complex z) { return "[" + Num17(z.real()) + ", " + Num17(z.imag()) + "]"; }

std::string Quote(const std::string& s) { return Json(s).dump(); }

Json Number(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

Json PairJson(Complex z) { return Json::array({Number(z.real()), Number(z.imag())}); }

Json MatrixJson(const Matrix& m) {
  Json entries = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) entries.push_back(PairJson(m(r, c)));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

Json CheckJson(const IdentityCheck& c) {
  return {{"name", c.name}, {"residual", Number(c.residual)}, {"tolerance", c.tolerance}, {"pass", c.pass}};
}

std::string PointJsonString(const VarietyPoint& a) { return PointToString(a.coords); }

// Collects checks for the report and the rollup.
struct CheckLog {
  std::vector<IdentityCheck> all;
  Json Section(const std::vector<IdentityCheck>& checks) {
    Json out = Json::array();
    for (const auto& c : checks) {
      all.push_back(c);
      out.push_back(CheckJson(c));
    }
    return out;
  }
  bool Pass() const {
    for (const auto& c : all) {
      if (!c.pass) return false;
    }
    return true;
  }
};

IdentityCheck BoolCheck(const std::string& name, bool ok) { return {name, ok ? 0.0 : 1.0, 0.0, ok}; }

std::string Summarize(const std::vector<IdentityCheck>& checks) {
  std::ostringstream os;
  int failed = 0;
  for (const auto& c : checks) {
    if (c.pass) continue;
    ++failed;
    os << "  FAIL " << c.name << " (residual " << c.residual << ", tolerance " << c.tolerance << ")\n";
  }
  std::ostringstream head;
  head << checks.size() - failed << "/" << checks.size() << " checks passed\n";
  return head.str() + os.str();
}

int ExitCodeFor(const std::exception& e) {
  if (dynamic_cast<const ResidualTooLarge*>(&e)) return kExitResidual;
  if (dynamic_cast<const ParseError*>(&e)) return kExitUsage;
  if (dynamic_cast<const std::invalid_argument*>(&e)) return kExitUsage;
  return kExitModel;
}

std::string ErrorKind(const std::exception& e) {
  if (dynamic_cast<const NotNormal*>(&e)) return "NotNormal";
  if (dynamic_cast<const NotDefinitizing*>(&e)) return "NotDefinitizing";
  if (dynamic_cast<const NotZeroDimensional*>(&e)) return "NotZeroDimensional";
  if (dynamic_cast<const NonRationalVarietyPoint*>(&e)) return "NonRationalVarietyPoint";
  if (dynamic_cast<const ResidualTooLarge*>(&e)) return "ResidualTooLarge";
  if (dynamic_cast<const NotInvertible*>(&e)) return "NotInvertible";
  if (dynamic_cast<const MissingValue*>(&e)) return "MissingValue";
  if (dynamic_cast<const NotInVariety*>(&e)) return "NotInVariety";
  if (dynamic_cast<const NotHermitianPsd*>(&e)) return "NotHermitianPsd";
  if (dynamic_cast<const SingularOperator*>(&e)) return "SingularOperator";
  if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
  if (dynamic_cast<const Error*>(&e)) return "Error";
  return "InvalidArgument";
}

std::vector<Poly2> ParsePolys(const std::vector<std::string>& texts) {
  std::vector<Poly2> out;
  for (const auto& t : texts) out.push_back(Poly2::Parse(t));
  return out;
}

Json IdealSummary(const CalcContext& ctx) {
  Json gb = Json::array();
  for (const auto& g : ctx.sys.ideal.groebner) gb.push_back(g.ToString());
  Json table = Json::array();
  int sum_b = 0;
  for (const auto& a : ctx.variety.points) {
    sum_b += a.algebra_B->dim();
    table.push_back({{"point", PointJsonString(a)},
                     {"coords", Json::array({PairJson(a.X()), PairJson(a.Y())})},
                     {"real", a.is_real},
                     {"d_x", a.d_x},
                     {"d_y", a.d_y},
                     {"dim_A", a.algebra_A->dim()},
                     {"dim_B", a.algebra_B->dim()}});
  }
  const int dim = ctx.variety.quotient ? ctx.variety.quotient->dim() : 0;
  return {{"ideal_generated_by_user_list", true},
          {"groebner_basis", gb},
          {"zero_dimensional", true},
          {"quotient_dim", dim},
          {"sum_dim_B", sum_b},
          {"variety", table}};
}

Json SpectrumJson(const SpectralData& e) {
  Json out = Json::array();
  for (int c = 0; c < e.size(); ++c) {
    const double mult = std::round(e.projections[c].trace().real());
    out.push_back({{"z", PairJson(e.eigenvalues[c])}, {"multiplicity", static_cast<int>(mult)}});
  }
  return out;
}

Json SpectralSummary(const CalcContext& ctx, const SpectrumFormula& f) {
  Json theta = SpectrumJson(ctx.spectra.e);
  for (int c = 0; c < ctx.spectra.e.size(); ++c) {
    const int on = ctx.spectra.on_variety[c];
    theta[c]["on_real_variety"] = on < 0 ? Json() : Json(PairJson(ctx.spectra.real_points[on]));
  }
  Json theta_j = Json::array();
  for (const auto& e : ctx.spectra.e_j) theta_j.push_back(SpectrumJson(e));
  Json direct = Json::array(), formula = Json::array();
  for (Complex z : f.direct) direct.push_back(PairJson(z));
  for (Complex z : f.formula) formula.push_back(PairJson(z));
  return {{"h_dim", ctx.sys.h_dim()},
          {"theta_spectrum", theta},
          {"theta_j_spectra", theta_j},
          {"sigma_N", direct},
          {"sigma_N_formula", formula},
          {"formula_residual", Number(f.residual)},
          {"formula_tolerance", f.tolerance}};
}

}  // namespace

// ----------------------------------------------------------------------------
// Problem files

ProblemSpec ParseProblem(const std::string& text) {
  const Json j = ParseJson(text);
  if (!j.is_object()) Fail("$", "expected an object");
  ProblemSpec spec;
  spec.name = j.value("name", std::string());
  if (!j.contains("dim") || !j["dim"].is_number_integer()) Fail("$.dim", "expected an integer");
  const int dim = j["dim"].get<int>();
  if (dim < 0) Fail("$.dim", "must be nonnegative");
  Json gram = j.contains("gram") ? j["gram"] : Json();
  if (gram.is_null() && j.contains("space")) {
    gram = j["space"].is_object() ? j["space"].value("gram", Json()) : j["space"];
  }
  if (gram.is_null()) Fail("$.gram", "missing");
  if (!j.contains("operator")) Fail("$.operator", "missing");
  spec.gram = ParseMatrix(gram, dim, "$.gram");
  spec.op = ParseMatrix(j["operator"], dim, "$.operator");
  if (!j.contains("definitizing") || !j["definitizing"].is_array()) Fail("$.definitizing", "expected an array of strings");
  for (size_t k = 0; k < j["definitizing"].size(); ++k) {
    const Json& p = j["definitizing"][k];
    if (!p.is_string()) Fail("$.definitizing[" + std::to_string(k) + "]", "expected a polynomial string");
    spec.definitizing.push_back(p.get<std::string>());
  }
  if (j.contains("functions")) {
    if (!j["functions"].is_array()) Fail("$.functions", "expected an array");
    for (size_t k = 0; k < j["functions"].size(); ++k) {
      spec.functions.push_back(ParseFunction(j["functions"][k], "$.functions[" + std::to_string(k) + "]"));
    }
  }
  if (j.contains("options")) {
    if (!j["options"].is_object()) Fail("$.options", "expected an object");
    for (const auto& [key, value] : j["options"].items()) {
      if (key == "profile") {
        if (!value.is_string()) Fail("$.options.profile", "expected a string");
        spec.profile = value.get<std::string>();
        continue;
      }
      if (!value.is_number()) Fail("$.options." + key, "expected a number");
      const double v = value.get<double>();
      if (!(v > 0)) Fail("$.options." + key, "tolerances must be positive");
      spec.options[key] = v;
    }
  }
  return spec;
}

namespace {

std::string PrintCosets(const std::vector<CosetSpec>& cosets) {
  std::string out = "[";
  for (size_t k = 0; k < cosets.size(); ++k) {
    if (k) out += ", ";
    out += "{\"point\": [" + Pair17(cosets[k].point.first) + ", " + Pair17(cosets[k].point.second) +
           "], \"poly\": " + Quote(cosets[k].poly) + "}";
  }
  return out + "]";
}

std::string PrintFunction(const FunctionSpec& f) {
  std::string out = "{";
  std::vector<std::string> fields;
  if (!f.name.empty()) fields.push_back("\"name\": " + Quote(f.name));
  if (f.invert) fields.push_back("\"invert\": true");
  if (f.poly) fields.push_back("\"poly\": " + Quote(*f.poly));
  if (!f.scalars.empty()) {
    std::string s = "\"scalars\": [";
    for (size_t k = 0; k < f.scalars.size(); ++k) {
      if (k) s += ", ";
      s += "{\"z\": " + Pair17(f.scalars[k].first) + ", \"v\": " + Pair17(f.scalars[k].second) + "}";
    }
    fields.push_back(s + "]");
  }
  if (!f.real_cosets.empty()) fields.push_back("\"real_cosets\": " + PrintCosets(f.real_cosets));
  if (!f.nonreal_cosets.empty()) fields.push_back("\"nonreal_cosets\": " + PrintCosets(f.nonreal_cosets));
  for (size_t k = 0; k < fields.size(); ++k) out += (k ? ", " : "") + fields[k];
  return out + "}";
}

std::string PrintMatrix(const Matrix& m) {
  std::string out = "[";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out += r ? ",\n    " : "\n    ";
    for (Eigen::Index c = 0; c < m.cols(); ++c) out += (c ? ", " : "") + Pair17(m(r, c));
  }
  return out + (m.rows() ? "\n  ]" : "]");
}

}  // namespace

std::string PrintProblem(const ProblemSpec& spec) {
  std::string out = "{\n";
  if (!spec.name.empty()) out += "  \"name\": " + Quote(spec.name) + ",\n";
  out += "  \"dim\": " + std::to_string(spec.op.rows()) + ",\n";
  out += "  \"gram\": " + PrintMatrix(spec.gram) + ",\n";
  out += "  \"operator\": " + PrintMatrix(spec.op) + ",\n";
  out += "  \"definitizing\": [";
  for (size_t k = 0; k < spec.definitizing.size(); ++k) out += (k ? ", " : "") + Quote(spec.definitizing[k]);
  out += "]";
  if (!spec.functions.empty()) {
    out += ",\n  \"functions\": [";
    for (size_t k = 0; k < spec.functions.size(); ++k) out += (k ? ",\n    " : "\n    ") + PrintFunction(spec.functions[k]);
    out += "\n  ]";
  }
  if (!spec.options.empty() || spec.profile) {
    out += ",\n  \"options\": {";
    bool first = true;
    if (spec.profile) {
      out += "\"profile\": " + Quote(*spec.profile);
      first = false;
    }
    for (const auto& [k, v] : spec.options) {
      out += (first ? "" : ", ") + Quote(k) + ": " + Num17(v);
      first = false;
    }
    out += "}";
  }
  return out + "\n}\n";
}

std::vector<FunctionSpec> ParseFunctions(const std::string& text) {
  Json j = ParseJson(text);
  if (j.is_object() && j.contains("functions") && !j.contains("scalars") && !j.contains("poly")) j = j["functions"];
  std::vector<FunctionSpec> out;
  if (j.is_array()) {
    for (size_t k = 0; k < j.size(); ++k) out.push_back(ParseFunction(j[k], "$[" + std::to_string(k) + "]"));
  } else {
    out.push_back(ParseFunction(j, "$"));
  }
  return out;
}

ProblemSpec SpecFromProblem(const Problem& problem) {
  ProblemSpec spec;
  spec.name = problem.name;
  spec.gram = problem.gram;
  spec.op = problem.op;
  for (const auto& p : problem.definitizing) spec.definitizing.push_back(p.ToString());
  return spec;
}

Tolerances ResolveTolerances(const ProblemSpec& spec, const std::optional<std::string>& env_profile,
                             const std::vector<std::pair<std::string, double>>& overrides) {
  Tolerances tol;
  if (env_profile && !env_profile->empty()) tol = Tolerances::Profile(*env_profile);
  if (spec.profile) tol = Tolerances::Profile(*spec.profile);
  for (const auto& [k, v] : spec.options) tol.Set(k, v);
  for (const auto& [k, v] : overrides) tol.Set(k, v);
  return tol;
}

// ----------------------------------------------------------------------------
// Functions

CalcFunction BuildFunction(const ContextPtr& ctx, const FunctionSpec& spec) {
  CalcFunction out = CalcFunction::Zero(ctx);
  if (spec.poly) {
    out = CalcFunction::Poly(ctx, Poly2::Parse(*spec.poly));
  } else {
    const double match = ctx->tol().match * ctx->scale;
    std::vector<Complex> scalars(ctx->off_clusters.size());
    std::vector<bool> seen(scalars.size(), false);
    for (const auto& [z, v] : spec.scalars) {
      bool found = false;
      for (size_t k = 0; k < scalars.size(); ++k) {
        if (std::abs(ctx->OffPoint(static_cast<int>(k)) - z) > match) continue;
        scalars[k] = v;
        seen[k] = found = true;
      }
      if (!found) {
        std::ostringstream os;
        os << "value given at " << z << ", which is not an eigenvalue of Theta(N) off the real variety";
        throw NotInVariety(os.str());
      }
    }
    for (size_t k = 0; k < seen.size(); ++k) {
      if (seen[k]) continue;
      std::ostringstream os;
      os << "no value for the spectral point " << ctx->OffPoint(static_cast<int>(k));
      throw MissingValue(os.str());
    }

    const auto& points = ctx->variety.points;
    std::vector<Coset> cosets;
    std::vector<bool> used_real(spec.real_cosets.size(), false), used_nonreal(spec.nonreal_cosets.size(), false);
    for (const auto& a : points) {
      const auto& list = a.is_real ? spec.real_cosets : spec.nonreal_cosets;
      auto& used = a.is_real ? used_real : used_nonreal;
      int hit = -1;
      for (size_t k = 0; k < list.size(); ++k) {
        if (std::abs(list[k].point.first - a.X()) + std::abs(list[k].point.second - a.Y()) <= ctx->tol().match) {
          hit = static_cast<int>(k);
        }
      }
      if (hit < 0) throw MissingValue("no coset for the variety point " + PointToString(a.coords));
      used[hit] = true;
      cosets.push_back(Coset::Of(a.ValueAlgebra(), Poly2::Parse(list[hit].poly)));
    }
    for (size_t k = 0; k < used_real.size(); ++k) {
      if (!used_real[k]) throw NotInVariety("real_cosets[" + std::to_string(k) + "] is not at a real variety point");
    }
    for (size_t k = 0; k < used_nonreal.size(); ++k) {
      if (!used_nonreal[k]) throw NotInVariety("nonreal_cosets[" + std::to_string(k) + "] is not at a nonreal variety point");
    }
    out = CalcFunction(ctx, std::move(scalars), std::move(cosets));
  }
  return spec.invert ? out.Invert() : out;
}

// ----------------------------------------------------------------------------
// Pipelines

RunOutcome RunAnalyze(const ProblemSpec& spec, const Tolerances& tol, const AnalyzeOptions& options) {
  Json report;
  report["tool"] = "kreincalc";
  report["mode"] = options.full_suite ? "verify" : "analyze";
  report["problem"] = {{"name", spec.name}, {"dim", spec.op.rows()}, {"definitizing", spec.definitizing}};
  Json tol_json;
  for (const auto& [k, v] : tol.AsMap()) tol_json[k] = v;
  report["tolerances"] = tol_json;

  CheckLog log;
  std::ostringstream summary;
  summary << "problem " << (spec.name.empty() ? "<unnamed>" : spec.name) << ", dim " << spec.op.rows() << "\n";
  RunOutcome outcome;

  auto finish = [&](int code, const std::exception* error) {
    if (error) {
      report["error"] = {{"kind", ErrorKind(*error)}, {"message", error->what()}};
      if (auto* ni = dynamic_cast<const NotInvertible*>(error)) report["error"]["point"] = ni->point();
      summary << "error (" << ErrorKind(*error) << "): " << error->what() << "\n";
    }
    const bool pass = !error && log.Pass();
    Json failed = Json::array();
    for (const auto& c : log.all) {
      if (!c.pass) failed.push_back(c.name);
    }
    report["rollup"] = {{"pass", pass}, {"checks", log.all.size()}, {"failed", failed}};
    summary << Summarize(log.all) << "rollup: " << (pass ? "PASS" : "FAIL") << "\n";
    outcome.exit_code = error ? code : (pass ? kExitPass : kExitResidual);
    outcome.report_json = report.dump(2) + "\n";
    outcome.summary = summary.str();
    return outcome;
  };

  try {
    const std::vector<Poly2> defpolys = ParsePolys(spec.definitizing);
    if (defpolys.empty()) throw std::invalid_argument("at least one definitizing polynomial is required");
    const KreinOperator n(std::make_shared<KreinSpace>(spec.gram), spec.op);
    const double normal_residual = NormalityResidual(n);
    const double na = std::max(1.0, OpNorm(spec.op));
    report["normality"] = {{"residual", Number(normal_residual / (na * na))}, {"tolerance", tol.commute},
                           {"pass", IsNormal(n, tol.commute)}};

    Json defs = Json::array();
    bool all_def = true;
    for (size_t k = 0; k < defpolys.size(); ++k) {
      const DefinitizingResult r = IsDefinitizing(defpolys[k], n, tol);
      all_def = all_def && r.ok;
      defs.push_back({{"poly", spec.definitizing[k]},
                      {"tested_as", r.real_part.ToString()},
                      {"ok", r.ok},
                      {"hermitian_residual", Number(r.hermitian_residual)},
                      {"hermitian_tolerance", tol.hermitian},
                      {"min_eigenvalue", Number(r.min_eigenvalue)},
                      {"psd_slack", tol.psd},
                      {"numerically_zero", r.numerically_zero}});
      summary << "definitizing " << spec.definitizing[k] << ": " << (r.ok ? "ok" : "FAILED") << "\n";
    }
    report["definitizing_results"] = defs;

    EmbeddingSystem sys = BuildEmbedding(n, defpolys, tol);
    report["embedding_residuals"] = log.Section(VerifyTransferLemmas(sys, 3, options.seed));
    summary << "H has dimension " << sys.h_dim() << "\n";

    const ContextPtr ctx = MakeContext(std::move(sys));
    report["ideal_summary"] = IdealSummary(*ctx);
    summary << "variety: " << ctx->variety.points.size() << " points, quotient dimension "
            << report["ideal_summary"]["quotient_dim"].get<int>() << "\n";

    const SpectrumFormula formula = SpectrumFormulaCheck(*ctx);
    report["spectral_summary"] = SpectralSummary(*ctx, formula);

    std::vector<IdentityCheck> lemmas;
    for (const auto& group :
         {SpectralBoundCheck(ctx->sys, ctx->spectra), OffVarietyCheck(ctx->sys, ctx->spectra, 3, options.seed + 6),
          MeasureTransferCheck(ctx->sys, ctx->spectra, 3, options.seed + 10)}) {
      lemmas.insert(lemmas.end(), group.begin(), group.end());
    }
    lemmas.push_back({"spectrum: sigma(N) = sigma(Theta(N)) u (V_R n sigma(N)) u paired nonreal points",
                      formula.residual, formula.tolerance, formula.pass});
    const Matrix id = PhiOfN(CalcFunction::Poly(ctx, Poly2::Parse("x + i*y")));
    lemmas.push_back({"calculus: (x + iy)(N) = N", OpNorm(id - spec.op) / ctx->scale, 1e-9,
                      OpNorm(id - spec.op) <= 1e-9 * ctx->scale});

    if (options.full_suite) {
      const std::uint64_t s = options.seed;
      for (const auto& group :
           {HomomorphismCheck(ctx, options.homomorphism_pairs, s), WellDefinedCheck(ctx, options.null_samples, s + 1),
            TripleAlgebraCheck(ctx, options.null_samples, s + 2), CommutantCheck(ctx, options.null_samples, s + 3),
            LocalityCheck(ctx, 3, s + 4), InversionCheck(ctx, options.null_samples, s + 5)}) {
        lemmas.insert(lemmas.end(), group.begin(), group.end());
      }
      for (size_t k = 0; k < ctx->variety.points.size(); ++k) {
        for (auto c : RieszCheck(ctx, static_cast<int>(k))) {
          c.name += " at " + PointJsonString(ctx->variety.points[k]);
          lemmas.push_back(c);
        }
      }
      const SpecialCaseReport special = SpecialCaseCheck(n, defpolys, tol);
      report["special_cases"] = {{"selfadjoint", special.selfadjoint}, {"unitary", special.unitary}};
      lemmas.insert(lemmas.end(), special.checks.begin(), special.checks.end());
      try {
        Json transforms = Json::array();
        for (const auto& r : InverseTransportCheck(n, defpolys, tol)) {
          transforms.push_back({{"original", r.original.ToString()},
                                {"transformed", r.transformed.ToString()},
                                {"definitizing_ok", r.definitizing_ok},
                                {"ideal_zero_dim_ok", r.ideal_zero_dim_ok}});
          lemmas.push_back(BoolCheck("inverse transport: " + r.transformed.ToString() + " definitizes N^{-1}", r.definitizing_ok));
          lemmas.push_back(BoolCheck("inverse transport: transformed ideal is zero-dimensional", r.ideal_zero_dim_ok));
        }
        report["inverse_transport"] = transforms;
      } catch (const SingularOperator&) {
        report["inverse_transport"] = "skipped: N is singular";
      }
    }
    report["lemma_checks"] = log.Section(lemmas);

    Json outputs = Json::array();
    for (size_t k = 0; k < spec.functions.size(); ++k) {
      const CalcFunction phi = BuildFunction(ctx, spec.functions[k]);
      const std::string name = spec.functions[k].name.empty() ? "f" + std::to_string(k) : spec.functions[k].name;
      outputs.push_back({{"name", name}, {"scale", phi.Scale()}, {"matrix", MatrixJson(PhiOfN(phi))}});
    }
    report["calculus_outputs"] = outputs;
    if (!all_def) throw NotDefinitizing("a definitizing polynomial failed the PSD test");
  } catch (const std::exception& e) {
    return finish(ExitCodeFor(e), &e);
  }
  return finish(kExitPass, nullptr);
}

RunOutcome RunCalc(const ProblemSpec& spec, const std::vector<FunctionSpec>& functions, const Tolerances& tol) {
  Json report;
  report["tool"] = "kreincalc";
  report["mode"] = "calc";
  RunOutcome outcome;
  std::ostringstream summary;
  std::vector<IdentityCheck> checks;
  try {
    const KreinOperator n(std::make_shared<KreinSpace>(spec.gram), spec.op);
    const ContextPtr ctx = MakeContext(n, ParsePolys(spec.definitizing), tol);
    std::vector<CalcFunction> phis;
    std::vector<Matrix> values;
    Json outputs = Json::array();
    for (size_t k = 0; k < functions.size(); ++k) {
      phis.push_back(BuildFunction(ctx, functions[k]));
      values.push_back(PhiOfN(phis.back()));
      const std::string name = functions[k].name.empty() ? "f" + std::to_string(k) : functions[k].name;
      outputs.push_back({{"name", name}, {"scale", phis.back().Scale()}, {"matrix", MatrixJson(values.back())}});
      summary << name << "(N) computed, norm " << OpNorm(values.back()) << "\n";
    }
    report["functions"] = outputs;

    const double t = tol.residual;
    const KreinSpace& space = *n.space();
    for (size_t i = 0; i < phis.size(); ++i) {
      const double si = phis[i].Scale();
      const double sharp = OpNorm(PhiOfN(phis[i].Sharp()) - KreinAdjoint(space, values[i])) / (si * space.condition());
      MergeCheck(checks, {"calc: phi^#(N) = phi(N)^+", sharp, t, sharp <= t});
      for (size_t j = i; j < phis.size(); ++j) {
        const double sj = phis[j].Scale();
        const double prod = OpNorm(PhiOfN(phis[i] * phis[j]) - values[i] * values[j]) / (si * sj);
        const double sum = OpNorm(PhiOfN(phis[i] + phis[j]) - values[i] - values[j]) / std::max(si, sj);
        MergeCheck(checks, {"calc: (phi psi)(N) = phi(N) psi(N)", prod, t, prod <= t});
        MergeCheck(checks, {"calc: (phi + psi)(N) = phi(N) + psi(N)", sum, t, sum <= t});
      }
    }
    Json cj = Json::array();
    for (const auto& c : checks) cj.push_back(CheckJson(c));
    report["checks"] = cj;
  } catch (const std::exception& e) {
    report["error"] = {{"kind", ErrorKind(e)}, {"message", e.what()}};
    if (auto* ni = dynamic_cast<const NotInvertible*>(&e)) report["error"]["point"] = ni->point();
    summary << "error (" << ErrorKind(e) << "): " << e.what() << "\n";
    outcome.exit_code = ExitCodeFor(e);
    outcome.report_json = report.dump(2) + "\n";
    outcome.summary = summary.str();
    return outcome;
  }
  bool pass = true;
  for (const auto& c : checks) pass = pass && c.pass;
  report["rollup"] = {{"pass", pass}, {"checks", checks.size()}};
  summary << Summarize(checks) << "rollup: " << (pass ? "PASS" : "FAIL") << "\n";
  outcome.exit_code = pass ? kExitPass : kExitResidual;
  outcome.report_json = report.dump(2) + "\n";
  outcome.summary = summary.str();
  return outcome;
}

}  // namespace kreincalc
