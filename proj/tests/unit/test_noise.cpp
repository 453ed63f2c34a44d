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

#include "qteleport/qteleport.hpp"

namespace qtele {
namespace {

TEST(ClosedFormReplica, Examples) {
  const InputState s(cplx(0.6), cplx(0.0, 0.8));
  EXPECT_TRUE(approx_equal(closed_form_output_state(WernerParam(1.0), s).matrix(), make_input_state(s).projector()));
  const ComplexMatrix zero = closed_form_output_state(WernerParam(0.0), s).matrix();
  EXPECT_TRUE(approx_equal(zero, ComplexMatrix{{0.5, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0.5, 0}, {0, 0, 0, 0}}));
  for (double p : {0.0, 0.3, 0.77, 1.0})
    EXPECT_NEAR(fidelity_pure(closed_form_output_state(WernerParam(p), s), make_input_state(s)),
                p + (1.0 - p) * 0.36 / 2.0, 1e-12);
}

TEST(FidelityFormula, Examples) {
  EXPECT_DOUBLE_EQ(fidelity_formula(1.0, 0.3), 1.0);
  EXPECT_DOUBLE_EQ(fidelity_formula(0.0, 1.0), 0.5);
  EXPECT_DOUBLE_EQ(fidelity_formula(0.5, 0.5), 0.625);
  EXPECT_THROW(fidelity_formula(1.2, 0.5), InvalidArgument);
  EXPECT_THROW(fidelity_formula(0.5, -0.1), InvalidArgument);
}

TEST(FidelityBranches, Examples) {
  const auto one = fidelity_branches(1.0, 0.37);
  EXPECT_DOUBLE_EQ(one.plus, 1.0);
  EXPECT_DOUBLE_EQ(one.minus, 1.0);
  for (double e : {0.0, 0.4, 0.9}) {
    const auto b = fidelity_branches(e, 1.0);
    EXPECT_DOUBLE_EQ(b.plus, (3.0 * e + 1.0) / 4.0);
    EXPECT_DOUBLE_EQ(b.minus, (3.0 * e + 1.0) / 4.0);
  }
  // (eps_c - 1)/12 is negative, so the "+" branch is the lower one.
  const auto zero = fidelity_branches(0.0, 0.0);
  EXPECT_NEAR(zero.plus, 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(zero.minus, 1.0 / 3.0, 1e-15);
  EXPECT_THROW(fidelity_branches(-0.1, 0.5), InvalidArgument);
}

TEST(FidelityBranches, DisagreeWithTheSingleFormulaAwayFromPerfectChannels) {
  // Substituting p = (2 eps_c + 1)/3 and a = (1 +- s)/2 into the single
  // formula gives (eps_c + 1)/2 +- (1 - eps_c) s / 6, not the two-branch form.
  for (double e : {0.0, 0.3, 0.7}) {
    const double p = (2.0 * e + 1.0) / 3.0;
    for (double phi : {0.0, 0.5, 0.9}) {
      const double s = std::sqrt(1.0 - phi * phi);
      for (AlphaBranch br : {AlphaBranch::Plus, AlphaBranch::Minus}) {
        const double a = alpha_from_negativity(phi, br);
        const double sign = br == AlphaBranch::Plus ? 1.0 : -1.0;
        EXPECT_NEAR(fidelity_formula(p, a), (e + 1.0) / 2.0 + sign * (1.0 - e) * s / 6.0, 1e-12);
      }
    }
  }
  EXPECT_GT(crosscheck_analytics(unit_grid(11), unit_grid(11)).branch_fidelity_mismatch, 0.1);
}

TEST(AverageFidelity, ClosedForm) {
  EXPECT_DOUBLE_EQ(average_fidelity_closed_form(1.0), 1.0);
  EXPECT_NEAR(average_fidelity_closed_form(0.0), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(average_fidelity_closed_form(0.5), 2.0 / 3.0, 1e-15);
}

TEST(AverageFidelity, QuadratureMatchesAnalyticIntegral) {
  for (double p : unit_grid(21)) {
    const double oracle = p + (1.0 - p) / 4.0;  // integral of p + (1-p) a / 2 over a in [0, 1]
    EXPECT_NEAR(average_fidelity_numeric(p, AveragingMeasure::UniformAlphaSq), oracle, 1e-6);
    // |alpha|^2 = cos^2(t/2) is uniform when t has density sin(t)/2.
    EXPECT_NEAR(average_fidelity_numeric(p, AveragingMeasure::UniformBloch), oracle, 1e-6);
  }
  EXPECT_NEAR(average_fidelity_numeric(0.0, AveragingMeasure::UniformAlphaSq), 0.25, 1e-12);
  EXPECT_NEAR(average_fidelity_numeric(1.0, AveragingMeasure::UniformBloch), 1.0, 1e-6);
}

TEST(LambdaNeg, Examples) {
  EXPECT_NEAR(lambda_neg(1.0, 0.5), -0.5, 1e-15);
  for (double a : {0.0, 0.3, 1.0}) EXPECT_NEAR(lambda_neg(0.0, a), 0.0, 1e-15);
  EXPECT_THROW(lambda_neg(1.5, 0.5), InvalidArgument);
}

TEST(LambdaNeg, EqualsSmallestPartialTransposeEigenvalue) {
  for (double p : unit_grid(11))
    for (double a : unit_grid(11)) {
      const auto ev = hermitian_eigenvalues(
          partial_transpose(closed_form_output_state(WernerParam(p), InputState::from_alpha_sq(a)), Bipartition{1}));
      EXPECT_NEAR(lambda_neg(p, a), std::min(0.0, ev.front()), 1e-10) << p << " " << a;
    }
}

TEST(ReplicaNegativity, Examples) {
  for (double e : {0.0, 0.5, 1.0}) EXPECT_NEAR(replica_negativity(e, 0.0), 0.0, 1e-15);
  for (double phi : {0.0, 0.3, 1.0}) EXPECT_NEAR(replica_negativity(1.0, phi), phi, 1e-15);
  EXPECT_NEAR(replica_negativity(0.0, 1.0), (std::sqrt(2.0) - 1.0) / 3.0, 1e-15);
  EXPECT_THROW(replica_negativity(0.5, 1.5), InvalidArgument);
}

TEST(ReplicaNegativity, MonotoneInInputAndPositiveForEntangledInputs) {
  const auto g = unit_grid(101);
  for (double e : unit_grid(11)) {
    for (std::size_t k = 1; k < g.size(); ++k) {
      EXPECT_GE(replica_negativity(e, g[k]), replica_negativity(e, g[k - 1]));
      EXPECT_GT(replica_negativity(e, g[k]), 0.0);
    }
  }
}

TEST(NegativityHelpers, Examples) {
  EXPECT_DOUBLE_EQ(channel_negativity(1.0), 1.0);
  EXPECT_DOUBLE_EQ(channel_negativity(0.0), -0.5);  // unclamped
  EXPECT_DOUBLE_EQ(input_negativity(0.5), 1.0);
  EXPECT_NEAR(alpha_from_negativity(0.96, AlphaBranch::Minus), 0.36, 1e-12);
  EXPECT_NEAR(alpha_from_negativity(0.96, AlphaBranch::Plus), 0.64, 1e-12);
  for (double e : unit_grid(21))
    for (AlphaBranch br : {AlphaBranch::Plus, AlphaBranch::Minus})
      EXPECT_NEAR(input_negativity(alpha_from_negativity(e, br)), e, 1e-12);
  EXPECT_THROW(channel_negativity(-0.1), InvalidArgument);
}

TEST(CrosscheckAnalytics, GridAgreesWithDenseNumerics) {
  const AnalyticsReport r = crosscheck_analytics(unit_grid(11), unit_grid(11));
  EXPECT_EQ(r.points, 121U);
  EXPECT_LT(r.max_formula_mismatch(), 1e-10);
}

TEST(CrosscheckAnalytics, EdgeLines) {
  // p = 1: replica negativity equals the input negativity.
  for (double a : unit_grid(11)) {
    const AnalyticsPoint pt = analytics_point(1.0, a);
    EXPECT_NEAR(pt.eps_t, pt.eps_phi, 1e-12);
    EXPECT_NEAR(-2.0 * pt.lambda_neg, pt.eps_phi, 1e-12);
  }
  // alpha = 0: nothing is entangled.
  for (double p : unit_grid(11)) {
    const AnalyticsPoint pt = analytics_point(p, 0.0);
    EXPECT_NEAR(pt.eps_phi, 0.0, 1e-15);
    EXPECT_NEAR(pt.eps_t, 0.0, 1e-12);
    EXPECT_NEAR(pt.lambda_neg, 0.0, 1e-12);
  }
}

TEST(CrosscheckSimulation, ReportsDistancesAndAffineStructure) {
  const auto g = unit_grid(5);
  const SimulationReport r = crosscheck_simulation(g, g);
  EXPECT_EQ(r.points, 25U);
  EXPECT_LT(r.max_affine_residual_simulation, 1e-12);
  EXPECT_LT(r.max_affine_residual_closed_form, 1e-12);
  EXPECT_LT(r.max_distance_linearity_residual, 1e-12);
  EXPECT_GE(r.max_distance_closed_form, 0.0);
  // Perfect channel: no noise term, both forms coincide with the simulation.
  const SimulationReport one = crosscheck_simulation({1.0}, g);
  EXPECT_LT(one.max_distance_closed_form, 1e-12);
  EXPECT_LT(one.max_distance_dephased, 1e-12);
}

TEST(CrosscheckSimulation, ProductInputAtZeroWeightIsRecorded) {
  const SimulationReport r = crosscheck_simulation({0.0}, {1.0});
  EXPECT_GE(r.max_distance_closed_form, 0.0);
  EXPECT_TRUE(std::isfinite(r.max_distance_closed_form));
}

}  // namespace
}  // namespace qtele
