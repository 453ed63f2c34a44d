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

#include <span>
#include <variant>
#include <vector>

#include "qteleport/tensor.hpp"

namespace qtele {

/// Working register for protocol execution. Holds either amplitudes or a
/// density operator, neither necessarily normalized: operators applied here
/// may be projectors, and weight() is the squared norm (or trace) that
/// remains.
class Register {
 public:
  static Register pure(std::vector<cplx> amplitudes) {
    Register r;
    r.num_qubits_ = qubits_for_dimension(amplitudes.size());
    r.state_ = std::move(amplitudes);
    return r;
  }

  static Register mixed(ComplexMatrix rho) {
    detail::require(rho.is_square(), "Register: density operator is not square");
    Register r;
    r.num_qubits_ = qubits_for_dimension(rho.rows());
    r.state_ = std::move(rho);
    return r;
  }

  std::size_t num_qubits() const { return num_qubits_; }
  bool is_pure() const { return std::holds_alternative<std::vector<cplx>>(state_); }

  const std::vector<cplx>& amplitudes() const { return std::get<std::vector<cplx>>(state_); }
  const ComplexMatrix& density() const { return std::get<ComplexMatrix>(state_); }

  /// psi -> O psi, or rho -> O rho O^dagger. The first listed position is the
  /// most significant qubit of `op`.
  void apply(const ComplexMatrix& op, std::span<const std::size_t> positions) {
    const auto offsets = local_offsets(positions);
    detail::require(op.rows() == offsets.size() && op.cols() == offsets.size(),
                    "Register::apply: operator size does not match qubit count");
    if (is_pure()) {
      auto& v = std::get<std::vector<cplx>>(state_);
      for_each_base(offsets, [&](std::size_t base) { apply_local(op, false, v.data(), 1, base, offsets); });
      return;
    }
    auto& rho = std::get<ComplexMatrix>(state_);
    const std::size_t d = rho.rows();
    cplx* data = rho.entries().data();
    // Columns: rho -> O rho.
    for (std::size_t col = 0; col < d; ++col)
      for_each_base(offsets, [&](std::size_t base) { apply_local(op, false, data + col, d, base, offsets); });
    // Rows: rho -> rho O^dagger, i.e. conj(O) acting on each row.
    for (std::size_t row = 0; row < d; ++row)
      for_each_base(offsets, [&](std::size_t base) { apply_local(op, true, data + row * d, 1, base, offsets); });
  }

  void apply(const ComplexMatrix& op, std::initializer_list<std::size_t> positions) {
    const std::vector<std::size_t> p(positions);
    apply(op, std::span<const std::size_t>(p));
  }

  /// Squared norm (pure) or trace (mixed).
  double weight() const {
    if (is_pure()) {
      double s = 0.0;
      for (const auto& z : amplitudes()) s += std::norm(z);
      return s;
    }
    return density().trace().real();
  }

  /// Unnormalized reduced operator on `keep`.
  ComplexMatrix reduced(std::vector<std::size_t> keep) const {
    if (is_pure()) {
      const auto& v = amplitudes();
      ComplexMatrix rho(v.size(), v.size());
      for (std::size_t r = 0; r < v.size(); ++r)
        for (std::size_t c = 0; c < v.size(); ++c) rho(r, c) = v[r] * std::conj(v[c]);
      return partial_trace(rho, std::move(keep));
    }
    return partial_trace(density(), std::move(keep));
  }

  /// Pure registers only: (<bra| on `positions`) |psi>, leaving the other
  /// qubits in register order.
  std::vector<cplx> contract(std::span<const cplx> bra, std::span<const std::size_t> positions) const {
    const auto& v = amplitudes();
    const auto offsets = local_offsets(positions);
    detail::require(bra.size() == offsets.size(), "Register::contract: bra size mismatch");
    std::vector<cplx> out;
    out.reserve(v.size() / offsets.size());
    for_each_base(offsets, [&](std::size_t base) {
      cplx s{0.0, 0.0};
      for (std::size_t l = 0; l < offsets.size(); ++l) s += std::conj(bra[l]) * v[base + offsets[l]];
      out.push_back(s);
    });
    return out;
  }

  std::vector<cplx> contract(std::span<const cplx> bra, std::initializer_list<std::size_t> positions) const {
    const std::vector<std::size_t> p(positions);
    return contract(bra, std::span<const std::size_t>(p));
  }

 private:
  Register() = default;

  std::vector<std::size_t> local_offsets(std::span<const std::size_t> positions) const {
    detail::require(!positions.empty(), "Register: empty qubit list");
    std::vector<std::size_t> offsets(std::size_t{1} << positions.size(), 0);
    for (std::size_t k = 0; k < positions.size(); ++k) {
      detail::require(positions[k] < num_qubits_, "Register: qubit position out of range");
      for (std::size_t j = 0; j < k; ++j)
        detail::require(positions[j] != positions[k], "Register: repeated qubit position");
    }
    for (std::size_t l = 0; l < offsets.size(); ++l)
      for (std::size_t k = 0; k < positions.size(); ++k)
        if ((l >> (positions.size() - 1 - k)) & 1U)
          offsets[l] |= std::size_t{1} << (num_qubits_ - 1 - positions[k]);
    return offsets;
  }

  // Visits every index whose target bits are all zero, in ascending order.
  template <typename Fn>
  void for_each_base(const std::vector<std::size_t>& offsets, Fn&& fn) const {
    const std::size_t mask = offsets.back();
    const std::size_t dim = std::size_t{1} << num_qubits_;
    for (std::size_t i = 0; i < dim; ++i)
      if ((i & mask) == 0) fn(i);
  }

  static void apply_local(const ComplexMatrix& op, bool conjugate, cplx* data, std::size_t stride,
                          std::size_t base, const std::vector<std::size_t>& offsets) {
    const std::size_t k = offsets.size();
    cplx in[256];
    for (std::size_t l = 0; l < k; ++l) in[l] = data[(base + offsets[l]) * stride];
    for (std::size_t r = 0; r < k; ++r) {
      cplx s{0.0, 0.0};
      for (std::size_t c = 0; c < k; ++c) s += (conjugate ? std::conj(op(r, c)) : op(r, c)) * in[c];
      data[(base + offsets[r]) * stride] = s;
    }
  }

  std::size_t num_qubits_ = 0;
  std::variant<std::vector<cplx>, ComplexMatrix> state_;
};

}  // namespace qtele
