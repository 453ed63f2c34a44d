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

// Closed-form fidelity and entanglement expressions for the Werner channel,
// plus cross-checks of those expressions against dense numerics and against
// a full simulation of the protocol.
//
// Notation: p is the Werner weight, a = |alpha|^2, eps_c = (3p - 1)/2 the
// channel negativity (unclamped), eps_phi = 2 sqrt(a (1 - a)) the input
// negativity, eps_t the negativity of the replica.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "qteleport/protocol.hpp"

namespace qtele {

namespace detail {

inline void require_unit(double x, const char* what) {
  require(x >= 0.0 && x <= 1.0, std::string(what) + " outside [0, 1]: " + std::to_string(x));
}

}  // namespace detail

/// p|phi><phi| + (1 - p) (I/2) (x) |0><0|, the replica claimed for the
/// Werner channel.
inline DensityMatrix closed_form_output_state(WernerParam p, const InputState& s) {
  ComplexMatrix m = make_input_state(s).projector() * cplx(p.p);
  m(0, 0) += 0.5 * (1.0 - p.p);
  m(2, 2) += 0.5 * (1.0 - p.p);
  return DensityMatrix(std::move(m));
}

/// p|phi><phi| + (1 - p)(|00><00| + |11><11|)/2, the alternative noise form.
inline DensityMatrix dephased_output_state(WernerParam p, const InputState& s) {
  ComplexMatrix m = make_input_state(s).projector() * cplx(p.p);
  m(0, 0) += 0.5 * (1.0 - p.p);
  m(3, 3) += 0.5 * (1.0 - p.p);
  return DensityMatrix(std::move(m));
}

/// F = p + (1 - p) a / 2
inline double fidelity_formula(double p, double alpha_sq) {
  detail::require_unit(p, "p");
  detail::require_unit(alpha_sq, "alpha_sq");
  return p + (1.0 - p) * alpha_sq / 2.0;
}

struct FidelityBranches {
  double plus = 0.0;
  double minus = 0.0;
};

/// F_+- = (3 eps_c + 1)/4 +- ((eps_c - 1)/12) sqrt(1 - eps_phi^2)
inline FidelityBranches fidelity_branches(double eps_c, double eps_phi) {
  detail::require_unit(eps_c, "eps_c");
  detail::require_unit(eps_phi, "eps_phi");
  const double base = (3.0 * eps_c + 1.0) / 4.0;
  const double spread = (eps_c - 1.0) / 12.0 * std::sqrt(1.0 - eps_phi * eps_phi);
  return {base + spread, base - spread};
}

/// (1 + 2p)/3
inline double average_fidelity_closed_form(double p) {
  detail::require_unit(p, "p");
  return (1.0 + 2.0 * p) / 3.0;
}

enum class AveragingMeasure {
  UniformAlphaSq,  // a uniform on [0, 1]
  UniformBloch,    // (alpha, beta) uniform on the Bloch sphere, integrated in the polar angle
};

/// Midpoint-rule average of fidelity_formula over the chosen input measure.
inline double average_fidelity_numeric(double p, AveragingMeasure measure, int nodes = 10000) {
  detail::require_unit(p, "p");
  detail::require(nodes > 0, "average_fidelity_numeric: nodes must be positive");
  double sum = 0.0;
  if (measure == AveragingMeasure::UniformAlphaSq) {
    for (int k = 0; k < nodes; ++k) sum += fidelity_formula(p, (k + 0.5) / nodes);
    return sum / nodes;
  }
  const double dt = std::numbers::pi / nodes;
  for (int k = 0; k < nodes; ++k) {
    const double t = (k + 0.5) * dt;
    const double c = std::cos(t / 2.0);
    sum += fidelity_formula(p, std::clamp(c * c, 0.0, 1.0)) * 0.5 * std::sin(t) * dt;
  }
  return sum;
}

/// The single negative eigenvalue of the partially transposed
/// closed_form_output_state: (1/4)[(1 - p) - sqrt(1 + p(16 a (1 - a) p + p - 2))].
inline double lambda_neg(double p, double alpha_sq) {
  detail::require_unit(p, "p");
  detail::require_unit(alpha_sq, "alpha_sq");
  const double radicand = 1.0 + p * (16.0 * alpha_sq * (1.0 - alpha_sq) * p + p - 2.0);
  if (radicand < 0.0)
    throw Error("lambda_neg: negative radicand " + std::to_string(radicand) + " at p=" + std::to_string(p) +
                ", alpha_sq=" + std::to_string(alpha_sq));
  return 0.25 * ((1.0 - p) - std::sqrt(radicand));
}

/// eps_t = (1/3)[eps_c - 1 + sqrt((1 - eps_c)^2 + eps_phi^2 (1 + 2 eps_c)^2)].
/// eps_c is the unclamped channel value, so it may go down to -1/2.
inline double replica_negativity(double eps_c, double eps_phi) {
  detail::require(eps_c >= -0.5 && eps_c <= 1.0, "eps_c outside [-1/2, 1]: " + std::to_string(eps_c));
  detail::require_unit(eps_phi, "eps_phi");
  const double one_minus = 1.0 - eps_c;
  const double weight = 1.0 + 2.0 * eps_c;
  return (eps_c - 1.0 + std::sqrt(one_minus * one_minus + eps_phi * eps_phi * weight * weight)) / 3.0;
}

/// (3p - 1)/2, not clamped at zero.
inline double channel_negativity(double p) {
  detail::require_unit(p, "p");
  return (3.0 * p - 1.0) / 2.0;
}

/// 2 sqrt(a (1 - a))
inline double input_negativity(double alpha_sq) {
  detail::require_unit(alpha_sq, "alpha_sq");
  return 2.0 * std::sqrt(alpha_sq * (1.0 - alpha_sq));
}

enum class AlphaBranch { Plus, Minus };

/// a = (1 +- sqrt(1 - eps_phi^2))/2
inline double alpha_from_negativity(double eps_phi, AlphaBranch branch) {
  detail::require_unit(eps_phi, "eps_phi");
  const double s = std::sqrt(1.0 - eps_phi * eps_phi);
  return 0.5 * (branch == AlphaBranch::Plus ? 1.0 + s : 1.0 - s);
}

/// Every closed-form quantity at one (p, a) point.
struct AnalyticsPoint {
  double p = 0.0;
  double alpha_sq = 0.0;
  double eps_c = 0.0;
  double eps_phi = 0.0;
  double F = 0.0;
  double F_plus = 0.0;
  double F_minus = 0.0;
  double F_bar_closed_form = 0.0;
  double F_bar_numeric = 0.0;
  double lambda_neg = 0.0;
  double eps_t = 0.0;
};

inline AnalyticsPoint analytics_point(double p, double alpha_sq) {
  AnalyticsPoint pt;
  pt.p = p;
  pt.alpha_sq = alpha_sq;
  pt.eps_c = channel_negativity(p);
  pt.eps_phi = input_negativity(alpha_sq);
  pt.F = fidelity_formula(p, alpha_sq);
  if (pt.eps_c >= 0.0) {
    const auto br = fidelity_branches(pt.eps_c, pt.eps_phi);
    pt.F_plus = br.plus;
    pt.F_minus = br.minus;
  }
  pt.F_bar_closed_form = average_fidelity_closed_form(p);
  pt.F_bar_numeric = average_fidelity_numeric(p, AveragingMeasure::UniformAlphaSq);
  pt.lambda_neg = lambda_neg(p, alpha_sq);
  pt.eps_t = replica_negativity(pt.eps_c, pt.eps_phi);
  return pt;
}

/// Evenly spaced points 0, 1/(n-1), ..., 1.
inline std::vector<double> unit_grid(int n) {
  detail::require(n >= 2, "unit_grid: need at least two points");
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) g[static_cast<std::size_t>(k)] = static_cast<double>(k) / (n - 1);
  return g;
}

// ---------------------------------------------------------------------------
// Internal consistency of the closed forms

struct AnalyticsReport {
  std::size_t points = 0;
  double fidelity_mismatch = 0.0;        // fidelity_formula vs <phi|rho_t|phi>
  double lambda_neg_mismatch = 0.0;      // lambda_neg vs min eigenvalue of rho_t^tau
  double negativity_mismatch = 0.0;      // -2 lambda_neg vs numeric negativity
  double replica_mismatch = 0.0;         // replica_negativity vs numeric negativity
  double branch_fidelity_mismatch = 0.0; // F_+- vs fidelity_formula (points with eps_c >= 0)

  double max_formula_mismatch() const {
    return std::max({fidelity_mismatch, lambda_neg_mismatch, negativity_mismatch, replica_mismatch});
  }
};

/// Evaluates the closed forms against closed_form_output_state on a (p, a) grid.
/// alpha is taken real: alpha = sqrt(a), beta = sqrt(1 - a).
inline AnalyticsReport crosscheck_analytics(const std::vector<double>& p_values,
                                            const std::vector<double>& alpha_sq_values) {
  AnalyticsReport r;
  for (double p : p_values)
    for (double a : alpha_sq_values) {
      const InputState s = InputState::from_alpha_sq(a);
      const DensityMatrix rho = closed_form_output_state(WernerParam(p), s);
      const double numeric_f = fidelity_pure(rho, make_input_state(s));
      const auto ev = hermitian_eigenvalues(partial_transpose(rho, Bipartition{1}));
      const double numeric_neg = negativity(rho, Bipartition{1});
      const double lam = lambda_neg(p, a);
      const double eps_c = channel_negativity(p);
      const double eps_phi = input_negativity(a);

      r.fidelity_mismatch = std::max(r.fidelity_mismatch, std::abs(fidelity_formula(p, a) - numeric_f));
      r.lambda_neg_mismatch = std::max(r.lambda_neg_mismatch, std::abs(lam - std::min(0.0, ev.front())));
      r.negativity_mismatch = std::max(r.negativity_mismatch, std::abs(-2.0 * lam - numeric_neg));
      r.replica_mismatch =
          std::max(r.replica_mismatch, std::abs(replica_negativity(eps_c, eps_phi) - numeric_neg));
      if (eps_c >= 0.0) {
        const auto br = fidelity_branches(eps_c, eps_phi);
        // a >= 1/2 sits on the + inversion branch.
        const double f_branch = a >= 0.5 ? br.plus : br.minus;
        r.branch_fidelity_mismatch =
            std::max(r.branch_fidelity_mismatch, std::abs(f_branch - fidelity_formula(p, a)));
      }
      ++r.points;
    }
  return r;
}

// ---------------------------------------------------------------------------
// Closed form vs full simulation

struct SimulationReport {
  std::size_t points = 0;
  double max_distance_closed_form = 0.0;   // trace distance, simulation vs closed_form_output_state
  double mean_distance_closed_form = 0.0;
  double max_distance_dephased = 0.0;  // simulation vs dephased_output_state
  double mean_distance_dephased = 0.0;
  double max_affine_residual_simulation = 0.0;  // |rho(p) - p rho(1) - (1-p) rho(0)|
  double max_affine_residual_closed_form = 0.0;
  double max_distance_linearity_residual = 0.0;  // |d(p) - (1-p) d(0)|
  double max_fidelity_gap = 0.0;  // |<phi|rho_sim|phi> - fidelity_formula|

  std::string summary() const {
    auto f = [](double x) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.6g", x);
      return std::string(buf);
    };
    return "points=" + std::to_string(points) + " trace-distance(sim, closed form): max=" +
           f(max_distance_closed_form) + " mean=" + f(mean_distance_closed_form) +
           "; trace-distance(sim, dephased form): max=" + f(max_distance_dephased) +
           " mean=" + f(mean_distance_dephased) + "; fidelity gap max=" + f(max_fidelity_gap);
  }
};

/// Runs the full five-qubit protocol with a Werner channel at every grid
/// point and compares the branch-averaged replica with both candidate noise
/// forms. Reports numbers only; it makes no claim about which form is right.
inline SimulationReport crosscheck_simulation(const std::vector<double>& p_values,
                                              const std::vector<double>& alpha_sq_values,
                                              const ProtocolConfig& config = {}) {
  SimulationReport r;
  double sum_closed = 0.0;
  double sum_dephased = 0.0;
  for (double a : alpha_sq_values) {
    const InputState s = InputState::from_alpha_sq(a);
    const ComplexMatrix sim0 = run_mixed(s, ChannelSpec::werner(0.0), config).averaged.matrix();
    const ComplexMatrix sim1 = run_mixed(s, ChannelSpec::werner(1.0), config).averaged.matrix();
    const ComplexMatrix closed0 = closed_form_output_state(WernerParam(0.0), s).matrix();
    const ComplexMatrix closed1 = closed_form_output_state(WernerParam(1.0), s).matrix();
    const double d0 = trace_distance(sim0, closed0);
    for (double p : p_values) {
      const DensityMatrix sim = run_mixed(s, ChannelSpec::werner(p), config).averaged;
      const DensityMatrix closed = closed_form_output_state(WernerParam(p), s);
      const DensityMatrix dephased = dephased_output_state(WernerParam(p), s);
      const double dp = trace_distance(sim, closed);
      const double dd = trace_distance(sim, dephased);
      sum_closed += dp;
      sum_dephased += dd;
      r.max_distance_closed_form = std::max(r.max_distance_closed_form, dp);
      r.max_distance_dephased = std::max(r.max_distance_dephased, dd);
      r.max_affine_residual_simulation =
          std::max(r.max_affine_residual_simulation,
                   max_abs_difference(sim.matrix(), sim1 * cplx(p) + sim0 * cplx(1.0 - p)));
      r.max_affine_residual_closed_form =
          std::max(r.max_affine_residual_closed_form,
                   max_abs_difference(closed.matrix(), closed1 * cplx(p) + closed0 * cplx(1.0 - p)));
      r.max_distance_linearity_residual =
          std::max(r.max_distance_linearity_residual, std::abs(dp - (1.0 - p) * d0));
      r.max_fidelity_gap = std::max(r.max_fidelity_gap,
                                    std::abs(fidelity_pure(sim, make_input_state(s)) - fidelity_formula(p, a)));
      ++r.points;
    }
  }
  if (r.points > 0) {
    r.mean_distance_closed_form = sum_closed / static_cast<double>(r.points);
    r.mean_distance_dephased = sum_dephased / static_cast<double>(r.points);
  }
  return r;
}

}  // namespace qtele
