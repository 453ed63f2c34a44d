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


// Invariant suites behind the `verify` command. Informational rows are
// printed but never change the exit status.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qteleport/correction_solver.hpp"
#include "qteleport/format.hpp"
#include "qteleport/noise_analytics.hpp"
#include "qteleport/session.hpp"
#include "qteleport/sweep.hpp"

namespace qtele {

struct Check {
  std::string suite;
  std::string name;
  bool asserted = true;
  bool passed = false;
  std::string detail;
};

enum class Fault {
  None,
  CorruptTable1,  // V_1 and V_5 exchanged in the default correction set
};

struct VerifyOptions {
  Fault fault = Fault::None;
  unsigned workers = 1;
};

namespace detail {

inline ProtocolConfig faulty_config(Fault fault) {
  ProtocolConfig config;
  if (fault == Fault::CorruptTable1) {
    const GateMatrix v1 = config.corrections.at(1);
    config.corrections.set(1, config.corrections.at(5)).set(5, v1);
  }
  return config;
}

inline Check bound_check(std::string suite, std::string name, double value, double bound) {
  value = std::abs(value);
  return Check{std::move(suite), std::move(name), true, value <= bound,
               "max deviation " + format_number(value, 3) + " (bound " + format_number(bound, 3) + ")"};
}

inline Check info(std::string suite, std::string name, std::string detail) {
  return Check{std::move(suite), std::move(name), false, true, std::move(detail)};
}

}  // namespace detail

inline std::vector<Check> verify_protocol(const VerifyOptions& opt = {}) {
  const std::string s = "protocol";
  std::vector<Check> out;
  const ProtocolConfig config = detail::faulty_config(opt.fault);

  Rng rng(12345);
  double fid_dev = 0.0;
  double prob_dev = 0.0;
  for (int n = 0; n < 20; ++n) {
    const InputState input = random_input_state(rng);
    for (const auto& r : run_pure_all(input, config)) {
      fid_dev = std::max(fid_dev, 1.0 - branch_fidelity(r, input));
      prob_dev = std::max(prob_dev, std::abs(r.probability - 0.125));
    }
  }
  out.push_back(detail::bound_check(s, "replica equals input on every branch", fid_dev, 1e-12));
  out.push_back(detail::bound_check(s, "branch probabilities are 1/8", prob_dev, 1e-12));

  const auto report = verify_correction_set(gates::cnot(), config.corrections);
  out.push_back(detail::bound_check(s, "default corrections verified end to end", 1.0 - report.min_fidelity, 1e-12));

  bool roundtrip = true;
  for (int j = 1; j <= kNumBranches; ++j) {
    const BranchOutcome b = BranchOutcome::from_index(j);
    roundtrip = roundtrip && decode_message(encode_message(b)).index() == j;
  }
  out.push_back(Check{s, "message round trip over all eight outcomes", true, roundtrip, ""});

  const InputState probe = InputState::from_alpha_sq(0.3, 0.4);
  const std::string a = run_session(probe, ChannelSpec::pure_bell(), config, 99).to_text();
  const std::string b = run_session(probe, ChannelSpec::pure_bell(), config, 99).to_text();
  out.push_back(Check{s, "session log reproducible for a fixed seed", true, a == b, ""});

  const auto mixed = run_mixed(probe, ChannelSpec::pure_bell(), config);
  out.push_back(detail::bound_check(s, "density-operator run matches the state-vector run",
                                    1.0 - fidelity_pure(mixed.averaged, make_input_state(probe)), 1e-12));
  return out;
}

inline std::vector<Check> verify_analytics(const VerifyOptions& /*opt*/ = {}) {
  const std::string s = "analytics";
  std::vector<Check> out;
  const auto grid = unit_grid(11);
  const AnalyticsReport r = crosscheck_analytics(grid, grid);
  out.push_back(detail::bound_check(s, "fidelity formula vs overlap", r.fidelity_mismatch, 1e-10));
  out.push_back(detail::bound_check(s, "lambda_neg vs partial-transpose spectrum", r.lambda_neg_mismatch, 1e-10));
  out.push_back(detail::bound_check(s, "-2 lambda_neg vs numeric negativity", r.negativity_mismatch, 1e-10));
  out.push_back(detail::bound_check(s, "replica negativity formula vs numeric", r.replica_mismatch, 1e-10));
  out.push_back(detail::info(s, "two-branch fidelity vs fidelity formula",
                             "max gap " + format_number(r.branch_fidelity_mismatch, 6) +
                                 " (the two expressions disagree away from eps_c = 1)"));

  double neg_dev = 0.0;
  for (BellLabel label : kBellLabels)
    for (double p : unit_grid(21))
      neg_dev = std::max(neg_dev, std::abs(negativity(make_werner_variant(WernerParam(p), label), Bipartition{1}) -
                                           std::max(0.0, channel_negativity(p))));
  for (double a : unit_grid(21)) {
    const InputState in = InputState::from_alpha_sq(a);
    neg_dev = std::max(neg_dev, std::abs(negativity(DensityMatrix::from_pure(make_input_state(in)), Bipartition{1}) -
                                         input_negativity(a)));
  }
  out.push_back(detail::bound_check(s, "channel and input negativity formulas", neg_dev, 1e-10));

  double avg_dev = 0.0;
  for (double p : unit_grid(11)) {
    const double oracle = p + (1.0 - p) / 4.0;
    avg_dev = std::max({avg_dev, std::abs(average_fidelity_numeric(p, AveragingMeasure::UniformAlphaSq) - oracle),
                        std::abs(average_fidelity_numeric(p, AveragingMeasure::UniformBloch) - oracle)});
  }
  out.push_back(detail::bound_check(s, "average fidelity quadrature vs p + (1-p)/4", avg_dev, 1e-6));
  for (double p : {0.0, 0.5, 1.0})
    out.push_back(detail::info(s, "average fidelity at p=" + format_number(p),
                               "uniform |alpha|^2 " +
                                   format_number(average_fidelity_numeric(p, AveragingMeasure::UniformAlphaSq), 8) +
                                   ", uniform Bloch " +
                                   format_number(average_fidelity_numeric(p, AveragingMeasure::UniformBloch), 8) +
                                   ", closed form (1+2p)/3 " + format_number(average_fidelity_closed_form(p), 8)));

  const SimulationReport sim = crosscheck_simulation(grid, grid);
  out.push_back(detail::bound_check(s, "simulated replica is affine in p", sim.max_affine_residual_simulation, 1e-12));
  out.push_back(detail::bound_check(s, "closed-form replica is affine in p", sim.max_affine_residual_closed_form, 1e-12));
  out.push_back(detail::info(s, "simulation vs closed-form replica", sim.summary()));
  return out;
}

inline std::vector<Check> verify_solver(const VerifyOptions& opt = {}) {
  const std::string s = "solver";
  std::vector<Check> out;
  const ProtocolConfig config = detail::faulty_config(opt.fault);

  double table_dev = 0.0;
  for (int j = 1; j <= kNumBranches; ++j)
    table_dev = std::max(table_dev, phase_aligned_distance(
                                        solve_correction(gates::cnot(), j, documented_cnot_params(j)).matrix(),
                                        config.corrections.at(j).matrix()));
  out.push_back(detail::bound_check(s, "documented angles reproduce the correction table", table_dev, 1e-10));

  SearchOptions so;
  so.workers = opt.workers;
  const SolvedCorrections cnot = solve_all(gates::cnot(), so);
  out.push_back(Check{s, "search finds product corrections for C-not", true, cnot.all_factorized, ""});
  out.push_back(detail::bound_check(s, "searched C-not corrections verified end to end",
                                    1.0 - verify_correction_set(gates::cnot(), cnot.set).min_fidelity, 1e-10));

  Rng rng(777);
  const GateMatrix copy = random_copy_compatible_gate(rng);
  const SolvedCorrections cc = solve_all(copy, so);
  out.push_back(Check{s, "search finds product corrections for a copy-compatible gate", true, cc.all_factorized,
                      "copy defect " + format_number(ancilla_copy_defect(copy), 3)});

  const GateMatrix product = random_product_unitary(rng);
  const auto pr = find_factorized(product, 1, so);
  out.push_back(Check{s, "product gate reported as not factorizable", true, !is_found(pr),
                      "attained sigma2 " + format_number(attained_sigma2(pr), 6)});

  const GateMatrix haar = haar_unitary(2, rng);
  const SolvedCorrections hs = solve_all(haar, so);
  double worst = 0.0;
  for (const auto& b : hs.branches) worst = std::max(worst, attained_sigma2(b));
  out.push_back(detail::info(s, "Haar-random gate", std::string(hs.all_factorized ? "factorized" : "not factorized") +
                                                        ", largest attained sigma2 " + format_number(worst, 6) +
                                                        ", copy defect " + format_number(ancilla_copy_defect(haar), 6)));
  return out;
}

inline std::vector<Check> run_verify(std::string_view suite, const VerifyOptions& opt = {}) {
  std::vector<Check> out;
  auto append = [&](std::vector<Check> v) { out.insert(out.end(), v.begin(), v.end()); };
  if (suite == "all" || suite == "protocol") append(verify_protocol(opt));
  if (suite == "all" || suite == "analytics") append(verify_analytics(opt));
  if (suite == "all" || suite == "solver") append(verify_solver(opt));
  detail::require(!out.empty(), "unknown verify suite: " + std::string(suite));
  return out;
}

inline bool all_passed(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return !c.asserted || c.passed; });
}

}  // namespace qtele
