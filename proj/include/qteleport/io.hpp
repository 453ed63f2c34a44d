// Copyright 2026 The qteleport Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Gate files, gate specifiers and the JSON correction report.

#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "qteleport/correction_solver.hpp"

namespace qtele {

/// Reads {"re": [[...]], "im": [[...]]}; "im" may be omitted for real gates.
inline GateMatrix gate_from_json(const nlohmann::json& j) {
  detail::require(j.is_object() && j.contains("re"), "gate file: expected an object with a \"re\" array");
  const auto& re = j.at("re");
  detail::require(re.is_array() && !re.empty(), "gate file: \"re\" must be a non-empty array of rows");
  const std::size_t n = re.size();
  const nlohmann::json* im = j.contains("im") ? &j.at("im") : nullptr;
  detail::require(im == nullptr || (im->is_array() && im->size() == n), "gate file: \"im\" shape differs from \"re\"");
  ComplexMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    detail::require(re[r].is_array() && re[r].size() == n, "gate file: matrix must be square");
    detail::require(im == nullptr || ((*im)[r].is_array() && (*im)[r].size() == n),
                    "gate file: \"im\" shape differs from \"re\"");
    for (std::size_t c = 0; c < n; ++c) {
      detail::require(re[r][c].is_number() && (im == nullptr || (*im)[r][c].is_number()),
                      "gate file: entries must be numbers");
      m(r, c) = cplx(re[r][c].get<double>(), im ? (*im)[r][c].get<double>() : 0.0);
    }
  }
  detail::require(n == 4, "gate file: expected a 4x4 two-qubit gate, got " + std::to_string(n) + "x" + std::to_string(n));
  detail::require(is_unitary(m, tol::kUnitary), "gate file: matrix is not unitary");
  return GateMatrix(std::move(m));
}

inline GateMatrix load_gate_file(const std::string& path) {
  std::ifstream in(path);
  detail::require(static_cast<bool>(in), "cannot open gate file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("gate file " + path + ": " + e.what());
  }
  return gate_from_json(j);
}

inline nlohmann::json gate_to_json(const ComplexMatrix& m) {
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    nlohmann::json rr = nlohmann::json::array();
    nlohmann::json ri = nlohmann::json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ri.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  return {{"re", std::move(re)}, {"im", std::move(im)}};
}

/// "cnot", "cphase:THETA" or "file:PATH".
inline GateMatrix parse_gate_spec(std::string_view spec) {
  if (spec == "cnot" || spec == "CNOT") return gates::cnot();
  if (spec.starts_with("cphase:")) {
    const std::string arg(spec.substr(7));
    std::size_t used = 0;
    double theta = 0.0;
    try {
      theta = std::stod(arg, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    detail::require(used == arg.size() && !arg.empty() && std::isfinite(theta), "bad cphase angle: " + arg);
    return gates::controlled_phase(theta);
  }
  if (spec.starts_with("file:")) return load_gate_file(std::string(spec.substr(5)));
  throw InvalidArgument("unknown gate specifier: " + std::string(spec));
}

/// Per-branch parameters, factors where found, sigma_2 minima and end-to-end
/// fidelities of the assembled correction set.
inline nlohmann::ordered_json solve_report(const GateMatrix& f, const SolvedCorrections& solved,
                                           const CorrectionSetReport& verified) {
  nlohmann::ordered_json out;
  out["gate"] = gate_to_json(f.matrix());
  out["all_factorized"] = solved.all_factorized;
  out["ancilla_copy_defect"] = ancilla_copy_defect(f);
  auto& branches = out["branches"] = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < solved.branches.size(); ++k) {
    const int j = static_cast<int>(k) + 1;
    const auto& r = solved.branches[k];
    nlohmann::ordered_json b;
    b["j"] = j;
    b["status"] = is_found(r) ? "found" : "not_found";
    if (const auto* fz = std::get_if<Factorized>(&r)) {
      b["params"] = {{"gamma", fz->params.gamma}, {"theta", fz->params.theta}, {"phi", fz->params.phi}};
      b["sigma2"] = fz->sigma2;
      b["residual"] = fz->residual;
      b["A"] = gate_to_json(fz->a.matrix());
      b["B"] = gate_to_json(fz->b.matrix());
    } else {
      const auto& nf = std::get<NotFactorized>(r);
      b["params"] = {{"gamma", nf.params_at_min.gamma}, {"theta", nf.params_at_min.theta},
                     {"phi", nf.params_at_min.phi}};
      b["min_sigma2"] = nf.min_sigma2;
    }
    b["V"] = gate_to_json(solved.set.at(j).matrix());
    b["min_fidelity"] = verified.min_fidelity_per_branch[k];
    branches.push_back(std::move(b));
  }
  out["min_fidelity"] = verified.min_fidelity;
  return out;
}

}  // namespace qtele
