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

#pragma once

#include <array>
#include <optional>
#include <string>

#include "qteleport/states_gates.hpp"

namespace qtele {

inline constexpr int kNumBranches = 8;

/// Alice's joint result: the Bell outcome on qubits (1,3) and the
/// computational-basis result on qubit 4 after the Hadamard.
struct BranchOutcome {
  BellLabel bell = BellLabel::PhiPlus;
  int z4 = 0;

  /// j = 2(i - 1) + z4 + 1, in 1..8.
  int index() const { return 2 * (bell_index(bell) - 1) + z4 + 1; }

  static BranchOutcome from_index(int j) {
    detail::require(j >= 1 && j <= kNumBranches, "branch index must be in 1..8");
    return BranchOutcome{bell_from_index((j - 1) / 2 + 1), (j - 1) % 2};
  }

  friend bool operator==(const BranchOutcome&, const BranchOutcome&) = default;
};

/// Bob's eight conditional unitaries V_1..V_8 on qubits (2,5).
class CorrectionSet {
 public:
  enum class Provenance { Table1, Solved, Custom };

  explicit CorrectionSet(Provenance provenance = Provenance::Custom) : provenance_(provenance) {}

  Provenance provenance() const { return provenance_; }

  CorrectionSet& set(int j, GateMatrix v) {
    detail::require(j >= 1 && j <= kNumBranches, "CorrectionSet: branch index must be in 1..8");
    detail::require(v.num_qubits() == 2, "CorrectionSet: corrections act on two qubits");
    gates_[static_cast<std::size_t>(j - 1)] = std::move(v);
    return *this;
  }

  bool has(int j) const {
    return j >= 1 && j <= kNumBranches && gates_[static_cast<std::size_t>(j - 1)].has_value();
  }

  bool complete() const {
    for (const auto& g : gates_)
      if (!g) return false;
    return true;
  }

  const GateMatrix& at(int j) const {
    detail::require(has(j), "CorrectionSet: no correction for branch " + std::to_string(j));
    return *gates_[static_cast<std::size_t>(j - 1)];
  }

 private:
  Provenance provenance_;
  std::array<std::optional<GateMatrix>, kNumBranches> gates_;
};

/// The factorized corrections for the C-not scheme, in j order:
/// I(x)I, Z(x)I, Z(x)I, I(x)I, X(x)X, X(x)iY, X(x)iY, X(x)X.
inline CorrectionSet corrections_for_cnot() {
  using namespace gates;
  CorrectionSet set(CorrectionSet::Provenance::Table1);
  const GateMatrix ii = kron(identity(), identity());
  const GateMatrix zi = kron(pauli_z(), identity());
  const GateMatrix xx = kron(pauli_x(), pauli_x());
  const GateMatrix xiy = kron(pauli_x(), i_pauli_y());
  set.set(1, ii).set(2, zi).set(3, zi).set(4, ii);
  set.set(5, xx).set(6, xiy).set(7, xiy).set(8, xx);
  return set;
}

}  // namespace qtele
