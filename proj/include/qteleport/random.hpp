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

// Random states and operators for verification runs. Everything is keyed by
// an explicit std::mt19937_64 so callers control reproducibility.

#pragma once

#include <cstdint>
#include <numbers>
#include <random>

#include "qteleport/states_gates.hpp"

namespace qtele {

using Rng = std::mt19937_64;

inline cplx random_gaussian_complex(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

/// Haar-random alpha|00> + beta|11> (uniform on the two-term Bloch sphere).
inline InputState random_input_state(Rng& rng) {
  cplx a = random_gaussian_complex(rng);
  cplx b = random_gaussian_complex(rng);
  const double n = std::sqrt(std::norm(a) + std::norm(b));
  a /= n;
  b /= n;
  // Renormalize once more so the 1e-12 invariant holds exactly enough.
  const double n2 = std::sqrt(std::norm(a) + std::norm(b));
  return InputState(a / n2, b / n2);
}

inline AncillaPrep random_ancilla(Rng& rng) {
  const InputState s = random_input_state(rng);
  return AncillaPrep(s.alpha, s.beta);
}

/// Haar-distributed unitary: Gram-Schmidt on a complex Ginibre matrix.
inline ComplexMatrix haar_unitary_matrix(std::size_t dim, Rng& rng) {
  ComplexMatrix m(dim, dim);
  for (auto& z : m.entries()) z = random_gaussian_complex(rng);
  for (std::size_t c = 0; c < dim; ++c) {
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t prev = 0; prev < c; ++prev) {
        cplx dot{0.0, 0.0};
        for (std::size_t r = 0; r < dim; ++r) dot += std::conj(m(r, prev)) * m(r, c);
        for (std::size_t r = 0; r < dim; ++r) m(r, c) -= dot * m(r, prev);
      }
    double n2 = 0.0;
    for (std::size_t r = 0; r < dim; ++r) n2 += std::norm(m(r, c));
    const double inv = 1.0 / std::sqrt(n2);
    for (std::size_t r = 0; r < dim; ++r) m(r, c) *= inv;
  }
  return m;
}

inline GateMatrix haar_unitary(std::size_t num_qubits, Rng& rng) {
  return GateMatrix(haar_unitary_matrix(std::size_t{1} << num_qubits, rng));
}

inline GateMatrix random_product_unitary(Rng& rng) {
  const GateMatrix a = haar_unitary(1, rng);
  return kron(a, haar_unitary(1, rng));
}

/// (A (x) B) M, where M sends |x0> to |xx> and mixes |01>, |10> on the |x1>
/// inputs with a Haar U(2). These are the entangling gates for which Bob's
/// corrections can be chosen as products.
inline GateMatrix random_copy_compatible_gate(Rng& rng) {
  const GateMatrix a = haar_unitary(1, rng);
  const GateMatrix b = haar_unitary(1, rng);
  const ComplexMatrix w = haar_unitary_matrix(2, rng);
  ComplexMatrix m(4, 4);
  m(0, 0) = 1.0;
  m(3, 2) = 1.0;
  m(1, 1) = w(0, 0);
  m(2, 1) = w(1, 0);
  m(1, 3) = w(0, 1);
  m(2, 3) = w(1, 1);
  return kron(a, b) * GateMatrix(std::move(m));
}

inline ComplexMatrix random_hermitian(std::size_t dim, Rng& rng) {
  ComplexMatrix g(dim, dim);
  for (auto& z : g.entries()) z = random_gaussian_complex(rng);
  return (g + g.adjoint()) * cplx(0.5);
}

/// Random density operator from a Ginibre matrix: G G^dagger / tr.
inline DensityMatrix random_density(std::size_t num_qubits, Rng& rng) {
  const std::size_t dim = std::size_t{1} << num_qubits;
  ComplexMatrix g(dim, dim);
  for (auto& z : g.entries()) z = random_gaussian_complex(rng);
  ComplexMatrix rho = g * g.adjoint();
  rho *= cplx(1.0 / rho.trace().real());
  // Exact Hermitian symmetry.
  rho = (rho + rho.adjoint()) * cplx(0.5);
  return DensityMatrix(std::move(rho));
}

}  // namespace qtele
