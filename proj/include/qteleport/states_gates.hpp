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

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "qteleport/tensor.hpp"

namespace qtele {

/// Unitary operator on one or more qubits.
class GateMatrix {
 public:
  explicit GateMatrix(ComplexMatrix m, double tolerance = tol::kUnitary) : matrix_(std::move(m)) {
    detail::require(matrix_.is_square(), "GateMatrix: matrix is not square");
    num_qubits_ = qubits_for_dimension(matrix_.rows()) ;
    detail::require(is_unitary(matrix_, tolerance), "GateMatrix: matrix is not unitary");
  }

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }
  cplx operator()(std::size_t r, std::size_t c) const { return matrix_(r, c); }

  GateMatrix adjoint() const { return GateMatrix(matrix_.adjoint()); }

  friend GateMatrix operator*(const GateMatrix& a, const GateMatrix& b) {
    return GateMatrix(a.matrix_ * b.matrix_);
  }
  friend GateMatrix kron(const GateMatrix& a, const GateMatrix& b) {
    return GateMatrix(kron(a.matrix_, b.matrix_));
  }

 private:
  std::size_t num_qubits_ = 0;
  ComplexMatrix matrix_;
};

/// Smallest Frobenius distance between a and e^{i w} b over w.
inline double phase_aligned_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  cplx overlap{0.0, 0.0};
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    overlap += std::conj(b.entries()[i]) * a.entries()[i];
  const cplx phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : cplx{1.0, 0.0};
  return (a - b * phase).frobenius_norm();
}

namespace gates {

inline constexpr double kInvSqrt2 = 0.70710678118654752440;

inline GateMatrix identity(std::size_t num_qubits = 1) {
  return GateMatrix(ComplexMatrix::identity(std::size_t{1} << num_qubits));
}
inline GateMatrix hadamard() {
  return GateMatrix({{kInvSqrt2, kInvSqrt2}, {kInvSqrt2, -kInvSqrt2}});
}
inline GateMatrix pauli_x() { return GateMatrix({{0.0, 1.0}, {1.0, 0.0}}); }
/// sigma_y = [[0, -i], [i, 0]]
inline GateMatrix pauli_y() {
  return GateMatrix({{0.0, cplx(0.0, -1.0)}, {cplx(0.0, 1.0), 0.0}});
}
inline GateMatrix pauli_z() { return GateMatrix({{1.0, 0.0}, {0.0, -1.0}}); }
/// i*sigma_y = [[0, 1], [-1, 0]]: |0> -> -|1>, |1> -> |0>.
inline GateMatrix i_pauli_y() { return GateMatrix({{0.0, 1.0}, {-1.0, 0.0}}); }

/// Control is the first (more significant) qubit.
inline GateMatrix cnot() {
  return GateMatrix({{1.0, 0.0, 0.0, 0.0},
                     {0.0, 1.0, 0.0, 0.0},
                     {0.0, 0.0, 0.0, 1.0},
                     {0.0, 0.0, 1.0, 0.0}});
}

/// diag(1, 1, 1, e^{i theta})
inline GateMatrix controlled_phase(double theta = std::numbers::pi) {
  ComplexMatrix m = ComplexMatrix::identity(4);
  m(3, 3) = std::polar(1.0, theta);
  return GateMatrix(std::move(m));
}

}  // namespace gates

/// Looks up a gate by name: I, H, X, Y, Z, iY, CNOT (alias CX), CZ/CPHASE
/// (angle defaults to pi). Names are case-insensitive.
inline GateMatrix gate(std::string_view name, std::optional<double> angle = std::nullopt) {
  std::string key(name);
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  const bool takes_angle = key == "cz" || key == "cphase";
  detail::require(takes_angle || !angle.has_value(),
                  "gate: '" + std::string(name) + "' takes no angle");
  if (key == "i" || key == "id") return gates::identity();
  if (key == "h") return gates::hadamard();
  if (key == "x") return gates::pauli_x();
  if (key == "y") return gates::pauli_y();
  if (key == "z") return gates::pauli_z();
  if (key == "iy") return gates::i_pauli_y();
  if (key == "cnot" || key == "cx") return gates::cnot();
  if (takes_angle) return gates::controlled_phase(angle.value_or(std::numbers::pi));
  throw InvalidArgument("gate: unknown gate name '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Input states

/// alpha|00> + beta|11>
struct InputState {
  cplx alpha{1.0, 0.0};
  cplx beta{0.0, 0.0};

  InputState() = default;
  InputState(cplx a, cplx b) : alpha(a), beta(b) {
    detail::require(std::abs(std::norm(alpha) + std::norm(beta) - 1.0) <= tol::kNorm,
                    "InputState: |alpha|^2 + |beta|^2 != 1");
  }

  /// alpha = sqrt(a), beta = sqrt(1 - a) e^{i phase}
  static InputState from_alpha_sq(double alpha_sq, double beta_phase = 0.0) {
    detail::require(alpha_sq >= 0.0 && alpha_sq <= 1.0, "InputState: alpha_sq outside [0, 1]");
    return InputState(std::sqrt(alpha_sq), std::polar(std::sqrt(1.0 - alpha_sq), beta_phase));
  }

  double alpha_sq() const { return std::norm(alpha); }
};

/// The single-qubit prep a|0> + b|1> of Bob's ancilla.
struct AncillaPrep {
  cplx a{1.0, 0.0};
  cplx b{0.0, 0.0};

  AncillaPrep() = default;
  AncillaPrep(cplx a_, cplx b_) : a(a_), b(b_) {
    detail::require(std::abs(std::norm(a) + std::norm(b) - 1.0) <= tol::kNorm,
                    "AncillaPrep: |a|^2 + |b|^2 != 1");
  }

  StateVector state() const { return StateVector({a, b}); }

  /// Unitary with first column (a, b) and second column (-b*, a*).
  GateMatrix preparation_unitary() const {
    return GateMatrix({{a, -std::conj(b)}, {b, std::conj(a)}});
  }
};

enum class BellLabel { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

inline constexpr std::array<BellLabel, 4> kBellLabels = {BellLabel::PhiPlus, BellLabel::PhiMinus,
                                                         BellLabel::PsiPlus, BellLabel::PsiMinus};

/// Table index i = 1..4.
inline int bell_index(BellLabel label) { return static_cast<int>(label) + 1; }

inline BellLabel bell_from_index(int i) {
  detail::require(i >= 1 && i <= 4, "Bell index must be in 1..4");
  return kBellLabels[static_cast<std::size_t>(i - 1)];
}

inline std::string_view bell_name(BellLabel label) {
  switch (label) {
    case BellLabel::PhiPlus: return "phi+";
    case BellLabel::PhiMinus: return "phi-";
    case BellLabel::PsiPlus: return "psi+";
    case BellLabel::PsiMinus: return "psi-";
  }
  return "?";
}

inline BellLabel parse_bell_name(std::string_view name) {
  for (BellLabel l : kBellLabels)
    if (bell_name(l) == name) return l;
  throw InvalidArgument("unknown Bell label '" + std::string(name) + "'");
}

/// Pauli P with (I (x) P)|phi+> = |label> up to a global phase.
inline GateMatrix bell_pauli(BellLabel label) {
  switch (label) {
    case BellLabel::PhiPlus: return gates::identity();
    case BellLabel::PhiMinus: return gates::pauli_z();
    case BellLabel::PsiPlus: return gates::pauli_x();
    case BellLabel::PsiMinus: return gates::pauli_x() * gates::pauli_z();
  }
  return gates::identity();
}

inline StateVector make_bell(BellLabel label) {
  const double h = gates::kInvSqrt2;
  switch (label) {
    case BellLabel::PhiPlus: return StateVector({h, 0.0, 0.0, h});
    case BellLabel::PhiMinus: return StateVector({h, 0.0, 0.0, -h});
    case BellLabel::PsiPlus: return StateVector({0.0, h, h, 0.0});
    case BellLabel::PsiMinus: return StateVector({0.0, h, -h, 0.0});
  }
  throw InvalidArgument("make_bell: bad label");
}

inline StateVector make_input_state(const InputState& s) {
  return StateVector({s.alpha, 0.0, 0.0, s.beta});
}

/// Werner mixing parameter p in [0, 1].
struct WernerParam {
  double p = 1.0;

  WernerParam() = default;
  explicit WernerParam(double value) : p(value) {
    detail::require(p >= 0.0 && p <= 1.0, "WernerParam: p outside [0, 1]");
  }
};

/// p|label><label| + (1 - p) I/4
inline DensityMatrix make_werner_variant(WernerParam p, BellLabel label) {
  ComplexMatrix m = make_bell(label).projector() * cplx(p.p);
  for (std::size_t i = 0; i < 4; ++i) m(i, i) += (1.0 - p.p) / 4.0;
  return DensityMatrix(std::move(m));
}

inline DensityMatrix make_werner(WernerParam p) {
  return make_werner_variant(p, BellLabel::PhiPlus);
}

// ---------------------------------------------------------------------------
// Generalized two-term inputs alpha|m1 n1> + beta|m2 n2>

struct GeneralizedInput {
  cplx alpha{1.0, 0.0};
  cplx beta{0.0, 0.0};
  int m1 = 0, n1 = 0, m2 = 1, n2 = 1;

  GeneralizedInput() = default;
  GeneralizedInput(cplx a, cplx b, int m1_, int n1_, int m2_, int n2_)
      : alpha(a), beta(b), m1(m1_), n1(n1_), m2(m2_), n2(n2_) {
    for (int bit : {m1, n1, m2, n2})
      detail::require(bit == 0 || bit == 1, "GeneralizedInput: indices must be bits");
    detail::require(m1 != m2 || n1 != n2, "GeneralizedInput: both terms name the same basis state");
    detail::require(std::abs(std::norm(alpha) + std::norm(beta) - 1.0) <= tol::kNorm,
                    "GeneralizedInput: |alpha|^2 + |beta|^2 != 1");
  }

  StateVector state() const {
    std::vector<cplx> amps(4, cplx{0.0, 0.0});
    amps[static_cast<std::size_t>(2 * m1 + n1)] += alpha;
    amps[static_cast<std::size_t>(2 * m2 + n2)] += beta;
    return StateVector(std::move(amps));
  }
};

struct CanonicalInput {
  enum class Kind {
    Entangled,            // mapped to alpha|00> + beta|11>
    ProductTeleportable,  // terms differ in one bit: alpha|00> + beta|01> or |10>
  };
  Kind kind = Kind::Entangled;
  InputState state;
  GateMatrix local3 = gates::identity();
  GateMatrix local4 = gates::identity();
  StateVector mapped = StateVector::basis(2, 0);
};

/// Local bit flips on Alice's qubits that bring the first term to |00>.
/// The flips only permute basis states, so no phase correction is needed.
inline CanonicalInput canonicalize_input(const GeneralizedInput& g) {
  detail::require(g.m1 != g.m2 || g.n1 != g.n2,
                  "canonicalize_input: both terms name the same basis state");
  CanonicalInput out;
  out.local3 = g.m1 == 1 ? gates::pauli_x() : gates::identity();
  out.local4 = g.n1 == 1 ? gates::pauli_x() : gates::identity();
  out.state = InputState(g.alpha, g.beta);
  const ComplexMatrix mapped =
      kron(out.local3.matrix(), out.local4.matrix()) * ComplexMatrix::column(g.state().amplitudes());
  out.mapped = StateVector(std::vector<cplx>(mapped.entries().begin(), mapped.entries().end()));
  out.kind = (g.m1 != g.m2 && g.n1 != g.n2) ? CanonicalInput::Kind::Entangled
                                              : CanonicalInput::Kind::ProductTeleportable;
  return out;
}

}  // namespace qtele
