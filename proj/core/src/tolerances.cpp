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

#include "kreincalc/tolerances.hpp"

#include <stdexcept>

namespace kreincalc {

namespace {

template <typename F>
void ForEachField(Tolerances& t, F&& f) {
  f("hermitian", t.hermitian);
  f("psd", t.psd);
  f("rank", t.rank);
  f("commute", t.commute);
  f("residual", t.residual);
  f("cluster", t.cluster);
  f("match", t.match);
  f("spectrum", t.spectrum);
  f("invert_margin", t.invert_margin);
  f("denominator", t.denominator);
}

}  // namespace

Tolerances Tolerances::Profile(const std::string& name) {
  Tolerances t;
  double factor;
  if (name == "default" || name.empty()) {
    return t;
  } else if (name == "strict") {
    factor = 0.1;
  } else if (name == "loose") {
    factor = 100.0;
  } else {
    throw std::invalid_argument("unknown tolerance profile '" + name + "'");
  }
  ForEachField(t, [&](const char*, double& v) { v *= factor; });
  return t;
}

void Tolerances::Set(const std::string& key, double value) {
  if (!(value > 0)) throw std::invalid_argument("tolerance '" + key + "' must be positive");
  bool found = false;
  ForEachField(*this, [&](const char* name, double& v) {
    if (key == name) {
      v = value;
      found = true;
    }
  });
  if (!found) throw std::invalid_argument("unknown tolerance '" + key + "'");
}

std::map<std::string, double> Tolerances::AsMap() const {
  std::map<std::string, double> out;
  Tolerances copy = *this;
  ForEachField(copy, [&](const char* name, double& v) { out[name] = v; });
  return out;
}

}  // namespace kreincalc
