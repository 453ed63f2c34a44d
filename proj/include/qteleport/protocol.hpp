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

// Five-qubit teleportation of alpha|00> + beta|11> through one shared Bell
// pair.
//
// Register layout (positions, most significant first):
//   0: qubit 1  Alice's half of the channel
//   1: qubit 2  Bob's half of the channel
//   2: qubit 3  first input qubit (Alice)
//   3: qubit 4  second input qubit (Alice)
//   4: qubit 5  Bob's ancilla
//
// Sequence: Bell projection on (1,3), Bob's two-qubit gate on (2,5), Hadamard
// on 4, projection of 4, correction V_j on (2,5). The replica lives on (2,5).

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qteleport/corrections.hpp"
#include "qteleport/format.hpp"
#include "qteleport/register.hpp"

namespace qtele {

namespace pos {
inline constexpr std::size_t kQ1 = 0;
inline constexpr std::size_t kQ2 = 1;
inline constexpr std::size_t kQ3 = 2;
inline constexpr std::size_t kQ4 = 3;
inline constexpr std::size_t kQ5 = 4;
}  // namespace pos

inline constexpr std::size_t kProtocolQubits = 5;

/// The state shared by Alice (qubit 1) and Bob (qubit 2).
class ChannelSpec {
 public:
  struct PureBell {
    BellLabel label = BellLabel::PhiPlus;
  };
  struct Werner {
    WernerParam p;
    BellLabel label = BellLabel::PhiPlus;
  };
  struct Explicit {
    DensityMatrix rho;
  };

  static ChannelSpec pure_bell(BellLabel label = BellLabel::PhiPlus) { return ChannelSpec(PureBell{label}); }
  static ChannelSpec werner(double p, BellLabel label = BellLabel::PhiPlus) {
    return ChannelSpec(Werner{WernerParam(p), label});
  }
  static ChannelSpec explicit_state(DensityMatrix rho) {
    detail::require(rho.num_qubits() == 2, "ChannelSpec: channel must be a two-qubit state");
    return ChannelSpec(Explicit{std::move(rho)});
  }

  const auto& variant() const { return spec_; }

  bool is_pure_bell() const { return std::holds_alternative<PureBell>(spec_); }

  DensityMatrix density() const {
    if (const auto* b = std::get_if<PureBell>(&spec_)) return DensityMatrix::from_pure(make_bell(b->label));
    if (const auto* w = std::get_if<Werner>(&spec_)) return make_werner_variant(w->p, w->label);
    return std::get<Explicit>(spec_).rho;
  }

  /// "bell:phi+", "werner:0.5", "werner:0.5:psi-" or "explicit".
  std::string describe() const {
    if (const auto* b = std::get_if<PureBell>(&spec_)) return "bell:" + std::string(bell_name(b->label));
    if (const auto* w = std::get_if<Werner>(&spec_)) {
      std::string s = "werner:" + format_number(w->p.p);
      if (w->label != BellLabel::PhiPlus) s += ":" + std::string(bell_name(w->label));
      return s;
    }
    return "explicit";
  }

 private:
  explicit ChannelSpec(std::variant<PureBell, Werner, Explicit> spec) : spec_(std::move(spec)) {}
  std::variant<PureBell, Werner, Explicit> spec_;
};

struct ProtocolConfig {
  GateMatrix bob_gate = gates::cnot();
  CorrectionSet corrections = corrections_for_cnot();
  AncillaPrep ancilla{};
};

/// Intermediate states of one pure-channel branch. Vectors are normalized;
/// qubit order inside each is ascending physical qubit number.
struct ProtocolTrace {
  StateVector conditional_24;  // after the Bell projection, before qubit 5
  StateVector after_gates_245; // after Bob's gate on (2,5) and H on 4
  StateVector pre_correction_25;
  StateVector output_25;
};

struct BranchResult {
  BranchOutcome branch;
  double probability = 0.0;
  std::optional<DensityMatrix> output;  // absent only for zero-probability branches
  std::optional<ProtocolTrace> trace;
};

struct ConditionalState {
  StateVector state;
  double probability = 0.0;
};

namespace detail {

inline ComplexMatrix z_projector(int z) {
  ComplexMatrix p(2, 2);
  p(static_cast<std::size_t>(z), static_cast<std::size_t>(z)) = 1.0;
  return p;
}

inline void require_complete(const ProtocolConfig& config) {
  require(config.bob_gate.num_qubits() == 2, "ProtocolConfig: Bob's gate must act on two qubits");
  require(config.corrections.complete(), "ProtocolConfig: correction set is missing branches");
}

inline std::vector<cplx> initial_amplitudes(const StateVector& channel, const InputState& input,
                                            const AncillaPrep& ancilla) {
  const StateVector psi = channel.tensor(make_input_state(input)).tensor(ancilla.state());
  return {psi.amplitudes().begin(), psi.amplitudes().end()};
}

inline void check_forced_probability(double probability, const BranchOutcome& b) {
  const std::string what = "branch j=" + std::to_string(b.index());
  if (probability == 0.0) throw ImpossibleBranch(what + " has probability zero");
  if (probability < tol::kBranchUnderflow)
    throw BranchUnderflow(what + " probability " + std::to_string(probability) +
                          " is below the renormalization threshold");
}

}  // namespace detail

/// Normalized state of qubits (2,4) after Alice's Bell outcome i, for the
/// ideal phi+ channel.
inline ConditionalState bell_conditional(const InputState& input, int i) {
  const BellLabel label = bell_from_index(i);
  Register reg = Register::pure(
      detail::initial_amplitudes(make_bell(BellLabel::PhiPlus), input, AncillaPrep{}));
  const StateVector bell = make_bell(label);
  auto rest = reg.contract(bell.amplitudes(), {pos::kQ1, pos::kQ3});  // (q2, q4, q5)
  Register tail = Register::pure(std::move(rest));
  const cplx zero_bra[2] = {1.0, 0.0};
  ProjectedState projected{tail.contract(zero_bra, {2}), 0.0};
  for (const auto& z : projected.amplitudes) projected.norm_sq += std::norm(z);
  return {projected.normalized(), projected.norm_sq};
}

/// Runs one forced branch with a pure Bell channel.
inline BranchResult run_pure(const InputState& input, const ProtocolConfig& config,
                             const BranchOutcome& forced,
                             BellLabel channel = BellLabel::PhiPlus) {
  detail::require_complete(config);
  const StateVector bell = make_bell(forced.bell);
  const StateVector anc = config.ancilla.state();
  const int z = forced.z4;
  const cplx z_bra[2] = {z == 0 ? cplx(1.0) : cplx(0.0), z == 1 ? cplx(1.0) : cplx(0.0)};

  Register reg = Register::pure(detail::initial_amplitudes(make_bell(channel), input, config.ancilla));
  reg.apply(bell.projector(), {pos::kQ1, pos::kQ3});
  const double bell_weight = reg.weight();
  if (bell_weight == 0.0) detail::check_forced_probability(0.0, forced);

  // (q2, q4, q5) after the Bell projection.
  const StateVector chi_with_ancilla =
      StateVector::normalized(reg.contract(bell.amplitudes(), {pos::kQ1, pos::kQ3}));
  const StateVector conditional_24 =
      StateVector::normalized(Register::pure({chi_with_ancilla.amplitudes().begin(),
                                              chi_with_ancilla.amplitudes().end()})
                                  .contract(anc.amplitudes(), {2}));

  reg.apply(config.bob_gate.matrix(), {pos::kQ2, pos::kQ5});
  reg.apply(gates::hadamard().matrix(), {pos::kQ4});
  const StateVector after_gates =
      StateVector::normalized(reg.contract(bell.amplitudes(), {pos::kQ1, pos::kQ3}));

  reg.apply(detail::z_projector(z), {pos::kQ4});
  const double probability = reg.weight();
  detail::check_forced_probability(probability, forced);

  const StateVector pre_correction = StateVector::normalized(
      Register::pure({after_gates.amplitudes().begin(), after_gates.amplitudes().end()})
          .contract(z_bra, {1}));

  reg.apply(config.corrections.at(forced.index()).matrix(), {pos::kQ2, pos::kQ5});
  const Register after_bell = Register::pure(reg.contract(bell.amplitudes(), {pos::kQ1, pos::kQ3}));
  const StateVector output = StateVector::normalized(after_bell.contract(z_bra, {1}));

  BranchResult result;
  result.branch = forced;
  result.probability = probability;
  result.output = DensityMatrix::from_pure(output);
  result.trace = ProtocolTrace{conditional_24, after_gates, pre_correction, output};
  return result;
}

/// All eight branches of the pure-channel protocol, in j order. Zero-weight
/// branches are reported with probability 0 and no output.
inline std::vector<BranchResult> run_pure_all(const InputState& input, const ProtocolConfig& config,
                                              BellLabel channel = BellLabel::PhiPlus) {
  std::vector<BranchResult> out;
  out.reserve(kNumBranches);
  for (int j = 1; j <= kNumBranches; ++j) {
    const BranchOutcome b = BranchOutcome::from_index(j);
    try {
      out.push_back(run_pure(input, config, b, channel));
    } catch (const ImpossibleBranch&) {
      out.push_back(BranchResult{b, 0.0, std::nullopt, std::nullopt});
    } catch (const BranchUnderflow&) {
      out.push_back(BranchResult{b, 0.0, std::nullopt, std::nullopt});
    }
  }
  return out;
}

struct MixedRun {
  std::vector<BranchResult> branches;  // j order
  DensityMatrix averaged;              // sum_j p_j rho_j on (2,5)
};

/// Deterministic enumeration of all eight branches on the full 32x32
/// density operator.
inline MixedRun run_mixed(const InputState& input, const ChannelSpec& channel,
                          const ProtocolConfig& config) {
  detail::require_complete(config);
  const ComplexMatrix rho0 = kron(kron(channel.density().matrix(), make_input_state(input).projector()),
                                  config.ancilla.state().projector());
  std::vector<BranchResult> branches;
  branches.reserve(kNumBranches);
  ComplexMatrix averaged(4, 4);
  for (BellLabel label : kBellLabels) {
    Register after_gates = Register::mixed(rho0);
    after_gates.apply(make_bell(label).projector(), {pos::kQ1, pos::kQ3});
    after_gates.apply(config.bob_gate.matrix(), {pos::kQ2, pos::kQ5});
    after_gates.apply(gates::hadamard().matrix(), {pos::kQ4});
    for (int z = 0; z < 2; ++z) {
      const BranchOutcome b{label, z};
      Register reg = after_gates;
      reg.apply(detail::z_projector(z), {pos::kQ4});
      reg.apply(config.corrections.at(b.index()).matrix(), {pos::kQ2, pos::kQ5});
      const double probability = std::max(0.0, reg.weight());
      ComplexMatrix out = reg.reduced({pos::kQ2, pos::kQ5});
      averaged += out;
      BranchResult r{b, probability, std::nullopt, std::nullopt};
      if (probability >= tol::kBranchUnderflow) r.output = DensityMatrix(out * cplx(1.0 / probability));
      branches.push_back(std::move(r));
    }
  }
  return MixedRun{std::move(branches), DensityMatrix(std::move(averaged))};
}

/// Pure run through an alternate Bell channel; the configured corrections
/// must have been derived for that channel.
inline std::vector<BranchResult> run_with_alternate_channel(const InputState& input, BellLabel label,
                                                            const ProtocolConfig& config) {
  detail::require(config.corrections.complete(),
                  "run_with_alternate_channel: corrections missing for channel " +
                      std::string(bell_name(label)));
  return run_pure_all(input, config, label);
}

/// C-not preceded by the inverse of the ancilla preparation: C (I (x) V5^dagger).
inline GateMatrix compensated_gate(const AncillaPrep& ancilla) {
  return gates::cnot() * kron(gates::identity(), ancilla.preparation_unitary().adjoint());
}

/// Fidelity of a branch's replica with the input, 0 for absent output.
inline double branch_fidelity(const BranchResult& r, const InputState& input) {
  return r.output ? fidelity_pure(*r.output, make_input_state(input)) : 0.0;
}

}  // namespace qtele
