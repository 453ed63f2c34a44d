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


#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "qteleport/qteleport.hpp"

namespace qtele {
namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

ComplexMatrix phi_plus_projector() { return make_bell(BellLabel::PhiPlus).projector(); }

TEST(Kron, IdentityTimesIdentity) {
  EXPECT_TRUE(approx_equal(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)), ComplexMatrix::identity(4)));
}

TEST(Kron, BasisOrderingPutsFirstFactorMostSignificant) {
  const ComplexMatrix v = kron(StateVector::basis(1, 0).projector(), StateVector::basis(1, 1).projector());
  EXPECT_EQ(v(1, 1), cplx(1.0));
  EXPECT_DOUBLE_EQ(std::abs(v.trace()), 1.0);
  const StateVector ket = StateVector::basis(1, 0).tensor(StateVector::basis(1, 1));
  EXPECT_EQ(ket.amplitudes()[1], cplx(1.0));
}

TEST(Kron, XXIsAnInvolution) {
  const ComplexMatrix xx = kron(gates::pauli_x().matrix(), gates::pauli_x().matrix());
  EXPECT_TRUE(approx_equal(xx * xx, ComplexMatrix::identity(4)));
}

TEST(HermitianEigen, DiagonalInput) {
  const auto ev = hermitian_eigenvalues(ComplexMatrix{{2.0, 0.0}, {0.0, 1.0}});
  ASSERT_EQ(ev.size(), 2U);
  EXPECT_NEAR(ev[0], 1.0, 1e-14);
  EXPECT_NEAR(ev[1], 2.0, 1e-14);
}

TEST(HermitianEigen, PauliX) {
  const auto ev = hermitian_eigenvalues(gates::pauli_x().matrix());
  EXPECT_NEAR(ev[0], -1.0, 1e-14);
  EXPECT_NEAR(ev[1], 1.0, 1e-14);
}

TEST(HermitianEigen, RejectsNonHermitian) {
  EXPECT_THROW(hermitian_eigenvalues(ComplexMatrix{{1.0, 1.0}, {0.0, 1.0}}), InvalidArgument);
}

TEST(HermitianEigen, RandomSpectraMatchTraceInvariants) {
  Rng rng(11);
  for (std::size_t dim : {2U, 4U, 8U, 16U, 32U}) {
    const ComplexMatrix h = random_hermitian(dim, rng);
    const auto ev = hermitian_eigenvalues(h);
    EXPECT_TRUE(std::is_sorted(ev.begin(), ev.end()));
    const double sum = std::accumulate(ev.begin(), ev.end(), 0.0);
    double sum_sq = 0.0;
    for (double x : ev) sum_sq += x * x;
    EXPECT_NEAR(sum, h.trace().real(), 1e-10) << "dim " << dim;
    EXPECT_NEAR(sum_sq, (h * h).trace().real(), 1e-9) << "dim " << dim;
  }
}

TEST(HermitianEigen, VectorsReconstructTheMatrix) {
  Rng rng(12);
  const ComplexMatrix h = random_hermitian(8, rng);
  const HermitianEigen e = hermitian_eigen(h);
  ComplexMatrix d(8, 8);
  for (std::size_t k = 0; k < 8; ++k) d(k, k) = e.values[k];
  EXPECT_LT(max_abs_difference(e.vectors * d * e.vectors.adjoint(), h), 1e-12);
  EXPECT_TRUE(is_unitary(e.vectors, 1e-12));
}

TEST(PartialTranspose, PhiPlusSpectrumMatchesHandDiagonalization) {
  const ComplexMatrix pt = partial_transpose(phi_plus_projector(), Bipartition{1});
  // Entrywise: the transposed operator is SWAP / 2.
  ComplexMatrix swap_half(4, 4);
  swap_half(0, 0) = swap_half(3, 3) = swap_half(1, 2) = swap_half(2, 1) = 0.5;
  EXPECT_TRUE(approx_equal(pt, swap_half));
  // Eigenvectors |00>, |11>, psi+ with 1/2 and psi- with -1/2.
  const StateVector psi_minus = make_bell(BellLabel::PsiMinus);
  const ComplexMatrix v = ComplexMatrix::column(psi_minus.amplitudes());
  EXPECT_TRUE(approx_equal(pt * v, v * cplx(-0.5)));
  const auto ev = hermitian_eigenvalues(pt);
  const double expected[] = {-0.5, 0.5, 0.5, 0.5};
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(ev[k], expected[k], 1e-12);
}

TEST(PartialTranspose, DiagonalInvariant) {
  const ComplexMatrix d = ComplexMatrix{{0.1, 0, 0, 0}, {0, 0.2, 0, 0}, {0, 0, 0.3, 0}, {0, 0, 0, 0.4}};
  EXPECT_TRUE(approx_equal(partial_transpose(d, Bipartition{1}), d));
}

TEST(PartialTranspose, ProductRuleInvolutionTraceAndHermiticity) {
  Rng rng(13);
  const DensityMatrix a = random_density(1, rng);
  const DensityMatrix b = random_density(2, rng);
  const ComplexMatrix ab = kron(a.matrix(), b.matrix());
  EXPECT_TRUE(approx_equal(partial_transpose(ab, Bipartition{1}), kron(a.matrix(), b.matrix().transpose())));
  const DensityMatrix r = random_density(3, rng);
  for (std::size_t cut : {1U, 2U}) {
    const ComplexMatrix once = partial_transpose(r, Bipartition{cut});
    EXPECT_TRUE(approx_equal(partial_transpose(once, Bipartition{cut}), r.matrix()));
    EXPECT_NEAR(std::abs(once.trace() - cplx(1.0)), 0.0, 1e-12);
    EXPECT_TRUE(is_hermitian(once));
  }
}

TEST(PartialTranspose, RejectsInvalidCut) {
  EXPECT_THROW(partial_transpose(phi_plus_projector(), Bipartition{0}), InvalidArgument);
  EXPECT_THROW(partial_transpose(phi_plus_projector(), Bipartition{2}), InvalidArgument);
}

TEST(PartialTrace, MarginalOfPhiPlusIsMaximallyMixed) {
  const DensityMatrix rho = DensityMatrix::from_pure(make_bell(BellLabel::PhiPlus));
  EXPECT_TRUE(approx_equal(partial_trace(rho, {0}).matrix(), ComplexMatrix::identity(2) * cplx(0.5)));
}

TEST(PartialTrace, KeepingEverythingIsTheIdentityOperation) {
  Rng rng(14);
  const DensityMatrix r = random_density(3, rng);
  EXPECT_TRUE(approx_equal(partial_trace(r, {0, 1, 2}).matrix(), r.matrix()));
}

TEST(PartialTrace, DroppingLastQubitOfAllZeros) {
  const DensityMatrix zero5 = DensityMatrix::from_pure(StateVector::basis(5, 0));
  EXPECT_TRUE(approx_equal(partial_trace(zero5, {0, 1, 2, 3}).matrix(), StateVector::basis(4, 0).projector()));
}

TEST(PartialTrace, ProductStateGivesFactor) {
  Rng rng(15);
  const DensityMatrix a = random_density(2, rng);
  const DensityMatrix b = random_density(1, rng);
  const ComplexMatrix ab = kron(a.matrix(), b.matrix());
  EXPECT_LT(max_abs_difference(partial_trace(ab, {0, 1}), a.matrix()), 1e-12);
  EXPECT_LT(max_abs_difference(partial_trace(ab, {2}), b.matrix()), 1e-12);
}

TEST(PartialTrace, RejectsEmptyKeepSet) {
  EXPECT_THROW(partial_trace(DensityMatrix::maximally_mixed(2), {}), InvalidArgument);
}

TEST(Negativity, KnownValues) {
  EXPECT_NEAR(negativity(DensityMatrix::from_pure(make_bell(BellLabel::PhiPlus)), Bipartition{1}), 1.0, 1e-12);
  EXPECT_NEAR(negativity(DensityMatrix::maximally_mixed(2), Bipartition{1}), 0.0, 1e-12);
  EXPECT_NEAR(negativity(make_werner(WernerParam(2.0 / 3.0)), Bipartition{1}), 0.5, 1e-12);
}

TEST(Negativity, InvariantUnderLocalUnitaries) {
  Rng rng(16);
  for (int n = 0; n < 10; ++n) {
    const DensityMatrix rho = random_density(2, rng);
    const GateMatrix u = kron(haar_unitary(1, rng), haar_unitary(1, rng));
    const DensityMatrix rotated(u.matrix() * rho.matrix() * u.matrix().adjoint());
    EXPECT_NEAR(negativity(rotated, Bipartition{1}), negativity(rho, Bipartition{1}), 1e-10);
  }
}

TEST(Realignment, IdentityHasOneSingularValue) {
  const auto s = realignment_singular_values(ComplexMatrix::identity(4));
  EXPECT_NEAR(s[0], 2.0, 1e-12);
  for (std::size_t k = 1; k < 4; ++k) EXPECT_NEAR(s[k], 0.0, 1e-12);
}

TEST(Realignment, CnotAndCzHaveOperatorSchmidtRankTwo) {
  // |0><0| (x) I + |1><1| (x) X: orthogonal terms of norm 1 * sqrt(2).
  for (const GateMatrix& g : {gates::cnot(), gates::controlled_phase()}) {
    const auto s = realignment_singular_values(g.matrix());
    EXPECT_NEAR(s[0], kSqrt2, 1e-12);
    EXPECT_NEAR(s[1], kSqrt2, 1e-12);
    EXPECT_NEAR(s[2], 0.0, 1e-12);
    EXPECT_NEAR(s[3], 0.0, 1e-12);
  }
}

TEST(Realignment, ProductOperatorHasOneNonzeroValue) {
  Rng rng(17);
  for (int n = 0; n < 10; ++n) {
    ComplexMatrix a(2, 2), b(2, 2);
    for (auto& z : a.entries()) z = random_gaussian_complex(rng);
    for (auto& z : b.entries()) z = random_gaussian_complex(rng);
    const auto s = realignment_singular_values(kron(a, b));
    EXPECT_NEAR(s[0], a.frobenius_norm() * b.frobenius_norm(), 1e-10);
    for (std::size_t k = 1; k < 4; ++k) EXPECT_NEAR(s[k], 0.0, 1e-10);
  }
}

TEST(Realignment, RejectsWrongDimension) {
  EXPECT_THROW(realignment_singular_values(ComplexMatrix::identity(8)), InvalidArgument);
}

TEST(Realignment, LeadingFactorsReconstructProducts) {
  Rng rng(18);
  const GateMatrix a = haar_unitary(1, rng);
  const GateMatrix b = haar_unitary(1, rng);
  const ProductFactors f = leading_product_factors(kron(a, b).matrix());
  EXPECT_LT(f.residual, 1e-12);
  EXPECT_LT(max_abs_difference(kron(f.a, f.b), kron(a, b).matrix()), 1e-12);
}

TEST(Fidelity, PureAndMixedReferenceValues) {
  Rng rng(19);
  const StateVector psi = make_input_state(random_input_state(rng));
  EXPECT_NEAR(fidelity_pure(DensityMatrix::from_pure(psi), psi), 1.0, 1e-12);
  EXPECT_NEAR(fidelity_pure(DensityMatrix::maximally_mixed(2), psi), 0.25, 1e-12);
  const InputState half = InputState::from_alpha_sq(0.5);
  EXPECT_NEAR(fidelity_pure(closed_form_output_state(WernerParam(0.5), half), make_input_state(half)), 0.625, 1e-12);
}

TEST(Fidelity, RejectsDimensionMismatch) {
  EXPECT_THROW(fidelity_pure(DensityMatrix::maximally_mixed(2), StateVector::basis(3, 0)), InvalidArgument);
}

TEST(States, ValidationRejectsBadInputs) {
  EXPECT_THROW(StateVector({1.0, 1.0}), InvalidArgument);
  EXPECT_THROW(DensityMatrix(ComplexMatrix{{1.0, 0.0}, {0.0, 1.0}}), InvalidArgument);
  EXPECT_THROW(DensityMatrix(ComplexMatrix{{1.5, 0.0}, {0.0, -0.5}}), InvalidArgument);
  EXPECT_THROW(DensityMatrix(ComplexMatrix{{0.5, 0.1}, {0.0, 0.5}}), InvalidArgument);
}

TEST(TraceDistance, OrthogonalPureStatesAreAtDistanceOne) {
  EXPECT_NEAR(trace_distance(make_bell(BellLabel::PhiPlus).projector(), make_bell(BellLabel::PsiMinus).projector()),
              1.0, 1e-12);
}

}  // namespace
}  // namespace qtele
