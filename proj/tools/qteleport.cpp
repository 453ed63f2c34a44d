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


// qteleport: single sessions, curve datasets, correction solving and the
// verification suites. Exit status: 0 success, 1 failed check or internal
// error, 2 usage or input error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "qteleport/qteleport.hpp"

namespace {

using namespace qtele;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

/// "bell:LABEL", "werner:P" or "werner:P:LABEL".
ChannelSpec parse_channel(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (kind == "bell") return ChannelSpec::pure_bell(parse_bell_name(rest.empty() ? "phi+" : rest));
  if (kind == "werner") {
    const auto second = rest.find(':');
    const std::string p_text = rest.substr(0, second);
    std::size_t used = 0;
    double p = 0.0;
    try {
      p = std::stod(p_text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (p_text.empty() || used != p_text.size()) throw InvalidArgument("bad Werner weight: " + p_text);
    const BellLabel label = second == std::string::npos ? BellLabel::PhiPlus : parse_bell_name(rest.substr(second + 1));
    return ChannelSpec::werner(p, label);
  }
  throw InvalidArgument("unknown channel: " + text + " (expected bell:LABEL or werner:P)");
}

/// Writes to `path`, or stdout when empty. An unwritable path is an input error.
void emit(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << content;
  out.flush();
  if (!out) throw InvalidArgument("write failed: " + path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Teleportation of two-qubit entangled states with a Bob-side gate"};
  app.require_subcommand(1);
  unsigned threads = workers_from_env(1);
  app.add_option("--threads", threads, "Worker threads (default: QTELEPORT_THREADS or 1)")
      ->check(CLI::Range(1U, 256U));

  // teleport
  auto* teleport = app.add_subcommand("teleport", "Run one sampled session and print its log");
  double alpha_sq = 0.5;
  double beta_phase = 0.0;
  std::string channel_text = "bell:phi+";
  std::uint64_t seed = 0;
  std::string format = "text";
  teleport->add_option("--alpha-sq", alpha_sq, "|alpha|^2 of the input")->check(CLI::Range(0.0, 1.0));
  teleport->add_option("--beta-phase", beta_phase, "Phase of beta in radians");
  teleport->add_option("--channel", channel_text, "bell:LABEL or werner:P[:LABEL]");
  teleport->add_option("--seed", seed, "64-bit seed");
  teleport->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  // sweep-fidelity
  auto* sweep_fid = app.add_subcommand("sweep-fidelity", "Two-branch fidelity curves as CSV");
  std::vector<double> eps_c_levels = default_fidelity_levels();
  int fid_grid = 200;
  std::string fid_out;
  sweep_fid->add_option("--eps-c", eps_c_levels, "Channel entanglement levels")->delimiter(',');
  sweep_fid->add_option("--grid", fid_grid, "Points on eps_phi in [0, 1]")->check(CLI::Range(2, 1000000));
  sweep_fid->add_option("--out", fid_out, "Output path (stdout if omitted)");

  // sweep-entanglement
  auto* sweep_ent = app.add_subcommand("sweep-entanglement", "Replica entanglement curves as CSV");
  std::string axis = "input";
  std::vector<double> ent_levels = default_entanglement_levels();
  int ent_grid = 200;
  std::string ent_out;
  sweep_ent->add_option("--axis", axis, "input (sweep eps_phi) or channel (sweep eps_c)")
      ->check(CLI::IsMember({"input", "channel"}));
  sweep_ent->add_option("--levels", ent_levels, "Levels of the fixed parameter")->delimiter(',');
  sweep_ent->add_option("--grid", ent_grid, "Points on the swept axis")->check(CLI::Range(2, 1000000));
  sweep_ent->add_option("--out", ent_out, "Output path (stdout if omitted)");

  // solve
  auto* solve = app.add_subcommand("solve", "Search product corrections for a Bob-side gate");
  std::string gate_text = "cnot";
  double solve_tol = 1e-8;
  std::string solve_out;
  solve->add_option("--gate", gate_text, "cnot, cphase:THETA or file:PATH");
  solve->add_option("--tol", solve_tol, "Factorization tolerance")->check(CLI::PositiveNumber);
  solve->add_option("--out", solve_out, "JSON report path (stdout if omitted)");

  // verify
  auto* verify = app.add_subcommand("verify", "Run the invariant suites");
  std::string suite = "all";
  std::string fault = "none";
  verify->add_option("--suite", suite, "all, protocol, analytics or solver")
      ->check(CLI::IsMember({"all", "protocol", "analytics", "solver"}));
  verify->add_option("--inject-fault", fault, "Negative control: none or table1")
      ->check(CLI::IsMember({"none", "table1"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*teleport) {
      const InputState input = InputState::from_alpha_sq(alpha_sq, beta_phase);
      const SessionLog log = run_session(input, parse_channel(channel_text), ProtocolConfig{}, seed);
      std::cout << (format == "json" ? log.to_json().dump(2) + "\n" : log.to_text());
      return kExitOk;
    }
    if (*sweep_fid) {
      emit(fid_out, to_csv(sweep_fidelity({eps_c_levels, fid_grid, threads})));
      return kExitOk;
    }
    if (*sweep_ent) {
      const EntanglementAxis ax = axis == "input" ? EntanglementAxis::Input : EntanglementAxis::Channel;
      emit(ent_out, to_csv(sweep_entanglement({ax, ent_levels, ent_grid, threads})));
      return kExitOk;
    }
    if (*solve) {
      const GateMatrix f = parse_gate_spec(gate_text);
      SearchOptions opt;
      opt.tolerance = solve_tol;
      opt.workers = threads;
      const SolvedCorrections solved = solve_all(f, opt);
      const CorrectionSetReport verified = verify_correction_set(f, solved.set);
      emit(solve_out, solve_report(f, solved, verified).dump(2) + "\n");
      return kExitOk;
    }
    if (*verify) {
      VerifyOptions opt;
      opt.fault = fault == "table1" ? Fault::CorruptTable1 : Fault::None;
      opt.workers = threads;
      const auto checks = run_verify(suite, opt);
      for (const auto& c : checks) {
        const char* status = !c.asserted ? "INFO" : c.passed ? "PASS" : "FAIL";
        std::cout << status << "  [" << c.suite << "] " << c.name;
        if (!c.detail.empty()) std::cout << ": " << c.detail;
        std::cout << "\n";
      }
      const bool ok = all_passed(checks);
      std::cout << (ok ? "all asserted checks passed\n" : "some asserted checks FAILED\n");
      return ok ? kExitOk : kExitFailure;
    }
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
