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

// Correction synthesis for an arbitrary two-qubit gate F on Bob's side.
//
// Each branch fixes two columns of the product V_j F (its action on |00> and
// |10>, the only inputs qubit 5 in |0> can reach). The remaining rows form a
// U(2) block parametrized by three angles; V_j = G_j F^dagger follows with no
// linear solve. Whether some angle choice makes V_j a product A (x) B is
// decided numerically through the operator-Schmidt spectrum of V_j.

#pragma once

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <numbers>
#include <optional>
#include <variant>
#include <vector>

#include "qteleport/parallel.hpp"
#include "qteleport/protocol.hpp"
#include "qteleport/random.hpp"

namespace qtele {

/// Groups of branches sharing the same required action of V_j F.
enum class BranchClass {
  Plus,       // j = 1, 4:  |00> -> |00>,  |10> ->  |11>
  Minus,      // j = 2, 3:  |00> -> |00>,  |10> -> -|11>
  Swap,       // j = 5, 8:  |00> -> |11>,  |10> ->  |00>
  SwapMinus,  // j = 6, 7:  |00> -> |11>,  |10> -> -|00>
};

inline constexpr std::array<BranchClass, 4> kBranchClasses = {BranchClass::Plus, BranchClass::Minus,
                                                              BranchClass::Swap, BranchClass::SwapMinus};

inline BranchClass class_of(int j) {
  switch (j) {
    case 1: case 4: return BranchClass::Plus;
    case 2: case 3: return BranchClass::Minus;
    case 5: case 8: return BranchClass::Swap;
    case 6: case 7: return BranchClass::SwapMinus;
    default: throw InvalidArgument("class_of: branch index must be in 1..8");
  }
}

/// The two branch indices in a class, ascending.
inline std::array<int, 2> branches_of(BranchClass cls) {
  switch (cls) {
    case BranchClass::Plus: return {1, 4};
    case BranchClass::Minus: return {2, 3};
    case BranchClass::Swap: return {5, 8};
    case BranchClass::SwapMinus: return {6, 7};
  }
  return {0, 0};
}

/// Angles of the free U(2) block.
struct SU2Params {
  double gamma = 0.0;
  double theta = 0.0;
  double phi = 0.0;

  /// Angles folded into [0, 2pi).
  SU2Params reduced() const {
    auto fold = [](double x) {
      constexpr double kTwoPi = 2.0 * std::numbers::pi;
      double r = std::fmod(x, kTwoPi);
      if (r < 0.0) r += kTwoPi;
      if (r >= kTwoPi) r -= kTwoPi;
      return r;
    };
    return {fold(gamma), fold(theta), fold(phi)};
  }
};

/// Angles at which the solver reproduces the C-not corrections.
inline SU2Params documented_cnot_params(int j) {
  constexpr double pi = std::numbers::pi;
  switch (class_of(j)) {
    case BranchClass::Plus: return {0.0, 0.0, 0.0};
    case BranchClass::Minus: return {0.0, 0.0, pi};
    case BranchClass::Swap: return {pi / 2.0, 0.0, pi};
    case BranchClass::SwapMinus: return {pi / 2.0, pi, 0.0};
  }
  return {};
}

/// The constrained product G = V_j F. Rows 1 and 4 are fixed by the class;
/// rows 2 and 3 are
///   (0, cos g,          0, -sin g e^{i(phi - theta)})
///   (0, sin g e^{i th}, 0,  cos g e^{i phi})
/// which is unitary for every (g, th, phi).
inline ComplexMatrix template_entries(BranchClass cls, const SU2Params& p) {
  ComplexMatrix g(4, 4);
  const double s = std::sin(p.gamma);
  const double c = std::cos(p.gamma);
  g(1, 1) = c;
  g(1, 3) = -s * std::polar(1.0, p.phi - p.theta);
  g(2, 1) = s * std::polar(1.0, p.theta);
  g(2, 3) = c * std::polar(1.0, p.phi);
  switch (cls) {
    case BranchClass::Plus: g(0, 0) = 1.0; g(3, 2) = 1.0; break;
    case BranchClass::Minus: g(0, 0) = 1.0; g(3, 2) = -1.0; break;
    case BranchClass::Swap: g(0, 2) = 1.0; g(3, 0) = 1.0; break;
    case BranchClass::SwapMinus: g(0, 2) = -1.0; g(3, 0) = 1.0; break;
  }
  return g;
}

inline GateMatrix template_matrix(BranchClass cls, const SU2Params& p) {
  return GateMatrix(template_entries(cls, p), tol::kEntrywise);
}

/// V_j = G_j F^dagger.
inline GateMatrix solve_correction(const GateMatrix& f, int j, const SU2Params& params) {
  detail::require(f.num_qubits() == 2, "solve_correction: F must be a two-qubit gate");
  return GateMatrix(template_entries(class_of(j), params) * f.matrix().adjoint());
}

/// Corrections for every branch at the given per-branch angles.
inline CorrectionSet solve_correction_set(const GateMatrix& f, const std::array<SU2Params, 8>& params) {
  CorrectionSet set(CorrectionSet::Provenance::Solved);
  for (int j = 1; j <= kNumBranches; ++j) set.set(j, solve_correction(f, j, params[static_cast<std::size_t>(j - 1)]));
  return set;
}

// ---------------------------------------------------------------------------
// Relevant-line equalities

struct LineEqualityReport {
  struct Pair {
    int first = 0;
    int second = 0;
    double deviation = 0.0;  // max entry difference over rows 1 and 4
    bool pass = false;
  };
  std::array<Pair, 4> pairs{};

  bool all_pass() const {
    for (const auto& p : pairs)
      if (!p.pass) return false;
    return true;
  }
};

/// Rows 1 and 4 of V_a F and V_b F must agree for (a,b) in
/// (1,4), (2,3), (5,8), (6,7).
inline LineEqualityReport verify_relevant_line_equalities(const GateMatrix& f, const CorrectionSet& set,
                                                          double tolerance = tol::kEntrywise) {
  LineEqualityReport report;
  for (std::size_t k = 0; k < kBranchClasses.size(); ++k) {
    const auto [a, b] = branches_of(kBranchClasses[k]);
    const ComplexMatrix ga = set.at(a).matrix() * f.matrix();
    const ComplexMatrix gb = set.at(b).matrix() * f.matrix();
    double dev = 0.0;
    for (std::size_t row : {std::size_t{0}, std::size_t{3}})
      for (std::size_t c = 0; c < 4; ++c) dev = std::max(dev, std::abs(ga(row, c) - gb(row, c)));
    report.pairs[k] = {a, b, dev, dev <= tolerance};
  }
  return report;
}

// ---------------------------------------------------------------------------
// Factorized corrections

struct SearchOptions {
  double tolerance = 1e-8;      // on sigma_2 and on |V - A (x) B|_F
  int grid = 32;                // points per angle on [0, 2pi)
  int refine_rounds = 3;        // coordinate-descent rounds
  double shrink = 8.0;          // step reduction per round
  int polish_iterations = 60;   // damped Newton steps after the rounds
  int starts = 3;               // best grid points carried into refinement
  unsigned workers = 1;
  bool pair_branches = true;    // one search per class, shared by both branches
};

struct Factorized {
  GateMatrix v;
  GateMatrix a;
  GateMatrix b;
  SU2Params params;
  double sigma2 = 0.0;
  double residual = 0.0;
};

struct NotFactorized {
  double min_sigma2 = 0.0;
  SU2Params params_at_min;
};

using FactorizationResult = std::variant<Factorized, NotFactorized>;

inline bool is_found(const FactorizationResult& r) { return std::holds_alternative<Factorized>(r); }

inline double attained_sigma2(const FactorizationResult& r) {
  if (const auto* f = std::get_if<Factorized>(&r)) return f->sigma2;
  return std::get<NotFactorized>(r).min_sigma2;
}

namespace detail {

// Grid ranking on fixed-size arrays: sqrt of ||V||^2 - lambda_max(R^dagger R)
// with lambda_max from power iteration. Only used to order grid points.
class GridRanker {
 public:
  GridRanker(const ComplexMatrix& f_dag, BranchClass cls) : cls_(cls) {
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) fd_[4 * r + c] = f_dag(r, c);
  }

  double operator()(const SU2Params& p) const {
    using Row = std::array<cplx, 4>;
    std::array<Row, 4> v{};
    auto axpy = [&](Row& out, cplx a, std::size_t k) {
      for (std::size_t c = 0; c < 4; ++c) out[c] += a * fd_[4 * k + c];
    };
    const double s = std::sin(p.gamma), c = std::cos(p.gamma);
    axpy(v[1], c, 1);
    axpy(v[1], -s * std::polar(1.0, p.phi - p.theta), 3);
    axpy(v[2], s * std::polar(1.0, p.theta), 1);
    axpy(v[2], c * std::polar(1.0, p.phi), 3);
    switch (cls_) {
      case BranchClass::Plus: axpy(v[0], 1.0, 0); axpy(v[3], 1.0, 2); break;
      case BranchClass::Minus: axpy(v[0], 1.0, 0); axpy(v[3], -1.0, 2); break;
      case BranchClass::Swap: axpy(v[0], 1.0, 2); axpy(v[3], 1.0, 0); break;
      case BranchClass::SwapMinus: axpy(v[0], -1.0, 2); axpy(v[3], 1.0, 0); break;
    }
    std::array<Row, 4> r{};
    double norm2 = 0.0;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t k = 0; k < 2; ++k)
          for (std::size_t l = 0; l < 2; ++l) {
            r[2 * i + k][2 * j + l] = v[2 * i + j][2 * k + l];
            norm2 += std::norm(v[2 * i + j][2 * k + l]);
          }
    std::array<Row, 4> g{};  // R^dagger R
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = a; b < 4; ++b) {
        cplx acc{};
        for (std::size_t k = 0; k < 4; ++k) acc += std::conj(r[k][a]) * r[k][b];
        g[a][b] = acc;
        g[b][a] = std::conj(acc);
      }
    Row x{1.0, 0.75, 0.5, 0.25};
    double lambda = 0.0;
    for (int it = 0; it < 48; ++it) {
      Row y{};
      for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) y[a] += g[a][b] * x[b];
      double xy = 0.0, yy = 0.0;
      for (std::size_t a = 0; a < 4; ++a) {
        xy += std::real(std::conj(x[a]) * y[a]);
        yy += std::norm(y[a]);
      }
      const double xx = std::norm(x[0]) + std::norm(x[1]) + std::norm(x[2]) + std::norm(x[3]);
      lambda = xy / xx;
      if (yy == 0.0) break;
      const double inv = 1.0 / std::sqrt(yy);
      for (std::size_t a = 0; a < 4; ++a) x[a] = y[a] * inv;
    }
    return std::sqrt(std::max(0.0, norm2 - lambda));
  }

 private:
  std::array<cplx, 16> fd_{};
  BranchClass cls_;
};

// sigma_2^2 + sigma_3^2 + sigma_4^2: smooth where sigma_1 is simple, with
// small singular values resolved to ~eps.
inline double tail_energy(const ComplexMatrix& v) {
  const auto s = realignment_singular_values(v);
  return s[1] * s[1] + s[2] * s[2] + s[3] * s[3];
}

struct GridPoint {
  double value = 0.0;
  std::size_t index = 0;
};

inline SU2Params grid_params(std::size_t index, int n) {
  const double step = 2.0 * std::numbers::pi / n;
  const auto un = static_cast<std::size_t>(n);
  return {step * static_cast<double>(index / (un * un)), step * static_cast<double>((index / un) % un),
          step * static_cast<double>(index % un)};
}

inline std::array<double, 3> as_array(const SU2Params& p) { return {p.gamma, p.theta, p.phi}; }
inline SU2Params from_array(const std::array<double, 3>& x) { return {x[0], x[1], x[2]}; }

// Solves (H + mu I) d = -g for a 3x3 symmetric system by Gaussian elimination.
inline std::optional<std::array<double, 3>> damped_step(const std::array<std::array<double, 3>, 3>& h,
                                                        const std::array<double, 3>& g, double mu) {
  double a[3][4];
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) a[r][c] = h[r][c] + (r == c ? mu : 0.0);
    a[r][3] = -g[r];
  }
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) < 1e-300) return std::nullopt;
    for (int c = 0; c < 4; ++c) std::swap(a[col][c], a[piv][c]);
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      const double m = a[r][col] / a[col][col];
      for (int c = col; c < 4; ++c) a[r][c] -= m * a[col][c];
    }
  }
  return std::array<double, 3>{a[0][3] / a[0][0], a[1][3] / a[1][1], a[2][3] / a[2][2]};
}

}  // namespace detail

/// Searches the three angles of branch j for a correction that factorizes
/// into single-qubit unitaries. Grid scan, coordinate-descent rounds, then a
/// damped Newton polish of the tail energy sum_{k>=2} sigma_k^2.
inline FactorizationResult find_factorized(const GateMatrix& f, int j, const SearchOptions& opt = {}) {
  detail::require(f.num_qubits() == 2, "find_factorized: F must be a two-qubit gate");
  detail::require(opt.grid >= 2, "find_factorized: grid must have at least 2 points per angle");
  const BranchClass cls = class_of(j);
  const ComplexMatrix f_dag = f.matrix().adjoint();
  auto correction = [&](const SU2Params& p) { return template_entries(cls, p) * f_dag; };
  auto energy = [&](const std::array<double, 3>& x) { return detail::tail_energy(correction(detail::from_array(x))); };

  // Grid scan; ties resolved by lexicographic (gamma, theta, phi) order.
  const auto n = static_cast<std::size_t>(opt.grid);
  const std::size_t slabs = n;
  const std::size_t keep = static_cast<std::size_t>(std::max(1, opt.starts));
  const detail::GridRanker rank(f_dag, cls);
  auto slab_best = parallel_map<std::vector<detail::GridPoint>>(slabs, opt.workers, [&](std::size_t g) {
    std::vector<detail::GridPoint> best;
    for (std::size_t i = g * n * n; i < (g + 1) * n * n; ++i) {
      const double v = rank(detail::grid_params(i, opt.grid));
      best.push_back({v, i});
      std::sort(best.begin(), best.end(), [](const auto& x, const auto& y) {
        return x.value < y.value || (x.value == y.value && x.index < y.index);
      });
      if (best.size() > keep) best.pop_back();
    }
    return best;
  });
  std::vector<detail::GridPoint> candidates;
  for (const auto& s : slab_best) candidates.insert(candidates.end(), s.begin(), s.end());
  std::sort(candidates.begin(), candidates.end(), [](const auto& x, const auto& y) {
    return x.value < y.value || (x.value == y.value && x.index < y.index);
  });
  candidates.resize(std::min(candidates.size(), keep));

  std::array<double, 3> best_x{};
  double best_e = std::numeric_limits<double>::infinity();
  for (const auto& cand : candidates) {
    auto x = detail::as_array(detail::grid_params(cand.index, opt.grid));
    double e = energy(x);
    double step = 2.0 * std::numbers::pi / opt.grid;
    for (int round = 0; round < opt.refine_rounds; ++round) {
      for (int sweep = 0; sweep < 200; ++sweep) {
        bool moved = false;
        for (std::size_t c = 0; c < 3; ++c)
          for (double dir : {-1.0, 1.0}) {
            auto y = x;
            y[c] += dir * step;
            const double ey = energy(y);
            if (ey < e) {
              x = y;
              e = ey;
              moved = true;
            }
          }
        if (!moved) break;
      }
      step /= opt.shrink;
    }
    // Damped Newton on the tail energy with central differences.
    double mu = 1e-3;
    for (int it = 0; it < opt.polish_iterations && e > 0.0; ++it) {
      const double h = std::clamp(std::sqrt(e) * 1e-2, 1e-7, 1e-3);
      std::array<double, 3> g{};
      std::array<std::array<double, 3>, 3> hess{};
      for (std::size_t a = 0; a < 3; ++a) {
        auto xp = x, xm = x;
        xp[a] += h;
        xm[a] -= h;
        const double ep = energy(xp), em = energy(xm);
        g[a] = (ep - em) / (2.0 * h);
        hess[a][a] = (ep - 2.0 * e + em) / (h * h);
        for (std::size_t b = a + 1; b < 3; ++b) {
          auto xpp = x, xpm = x, xmp = x, xmm = x;
          xpp[a] += h; xpp[b] += h;
          xpm[a] += h; xpm[b] -= h;
          xmp[a] -= h; xmp[b] += h;
          xmm[a] -= h; xmm[b] -= h;
          hess[a][b] = hess[b][a] = (energy(xpp) - energy(xpm) - energy(xmp) + energy(xmm)) / (4.0 * h * h);
        }
      }
      bool accepted = false;
      for (int tries = 0; tries < 12 && !accepted; ++tries) {
        const auto d = detail::damped_step(hess, g, mu);
        if (d) {
          auto y = x;
          for (std::size_t a = 0; a < 3; ++a) y[a] += (*d)[a];
          const double ey = energy(y);
          if (ey < e) {
            x = y;
            e = ey;
            accepted = true;
            mu = std::max(mu * 0.1, 1e-12);
            break;
          }
        }
        mu *= 10.0;
      }
      if (!accepted) break;
    }
    if (e < best_e) {
      best_e = e;
      best_x = x;
    }
  }

  const SU2Params params = detail::from_array(best_x);
  const ComplexMatrix v = correction(params);
  const ProductFactors pf = leading_product_factors(v);
  const double sigma2 = pf.singular_values[1];
  if (sigma2 < opt.tolerance && pf.residual < opt.tolerance) {
    // Snap A and B onto exact unitaries before handing them out.
    auto polar_unitary = [](const ComplexMatrix& m) {
      const double n = m.frobenius_norm() / std::sqrt(2.0);
      return GateMatrix(m * cplx(1.0 / n), 1e-6);
    };
    const double scale_b = pf.b.frobenius_norm() / std::sqrt(2.0);
    return Factorized{GateMatrix(v), polar_unitary(pf.a), GateMatrix(pf.b * cplx(1.0 / scale_b), 1e-6),
                      params.reduced(), sigma2, pf.residual};
  }
  return NotFactorized{sigma2, params.reduced()};
}

struct SolvedCorrections {
  std::vector<FactorizationResult> branches;  // j order
  CorrectionSet set{CorrectionSet::Provenance::Solved};
  bool all_factorized = false;
};

/// Runs find_factorized for every branch and assembles a complete correction
/// set. Branches without a factorized solution still get the (two-qubit)
/// correction at the best angles found, which restores the state exactly.
inline SolvedCorrections solve_all(const GateMatrix& f, const SearchOptions& opt = {}) {
  SolvedCorrections out;
  out.branches.reserve(kNumBranches);
  std::array<std::optional<FactorizationResult>, 4> per_class;
  for (int j = 1; j <= kNumBranches; ++j) {
    const auto k = static_cast<std::size_t>(class_of(j));
    FactorizationResult r = opt.pair_branches && per_class[k] ? *per_class[k] : find_factorized(f, j, opt);
    if (opt.pair_branches) per_class[k] = r;
    const SU2Params p = is_found(r) ? std::get<Factorized>(r).params : std::get<NotFactorized>(r).params_at_min;
    out.set.set(j, solve_correction(f, j, p));
    out.branches.push_back(std::move(r));
  }
  out.all_factorized = std::all_of(out.branches.begin(), out.branches.end(), is_found);
  return out;
}

// ---------------------------------------------------------------------------
// End-to-end verification

struct CorrectionSetReport {
  std::array<double, 8> min_fidelity_per_branch{};
  double min_fidelity = 1.0;
};

/// Runs the pure protocol with Bob's gate `f` and `set` over `inputs` random
/// inputs and all eight forced branches.
inline CorrectionSetReport verify_correction_set(const GateMatrix& f, const CorrectionSet& set,
                                                 std::uint64_t seed = 20240611, int inputs = 5,
                                                 BellLabel channel = BellLabel::PhiPlus) {
  ProtocolConfig config{f, set, AncillaPrep{}};
  Rng rng(seed);
  CorrectionSetReport report;
  report.min_fidelity_per_branch.fill(1.0);
  for (int n = 0; n < inputs; ++n) {
    const InputState input = random_input_state(rng);
    for (int j = 1; j <= kNumBranches; ++j) {
      const BranchResult r = run_pure(input, config, BranchOutcome::from_index(j), channel);
      const double fid = branch_fidelity(r, input);
      auto& slot = report.min_fidelity_per_branch[static_cast<std::size_t>(j - 1)];
      slot = std::min(slot, fid);
      report.min_fidelity = std::min(report.min_fidelity, fid);
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Alternate channels

/// Bob's gate as seen through channel |label> = (I (x) P)|phi+>: F (P (x) I).
inline GateMatrix effective_gate_for_channel(const GateMatrix& f, BellLabel label) {
  return f * kron(bell_pauli(label), gates::identity());
}

/// Corrections for channel `label` from a set built for phi+:
/// V'_j = V_j F (P^dagger (x) I) F^dagger.
inline CorrectionSet compensate_for_channel(const CorrectionSet& base, const GateMatrix& f, BellLabel label) {
  const GateMatrix undo = f * kron(bell_pauli(label).adjoint(), gates::identity()) * f.adjoint();
  CorrectionSet out(CorrectionSet::Provenance::Custom);
  for (int j = 1; j <= kNumBranches; ++j) out.set(j, base.at(j) * undo);
  return out;
}

// ---------------------------------------------------------------------------
// Diagnostics

/// Zero exactly when factorized corrections exist for F: F|00> and F|10> must
/// be product states a0 b0 and a1 b1 with a0 orthogonal to a1 and b0 to b1.
/// Returns the largest of the two concurrences and the two factor overlaps.
inline double ancilla_copy_defect(const GateMatrix& f) {
  detail::require(f.num_qubits() == 2, "ancilla_copy_defect: F must be a two-qubit gate");
  struct Split {
    double concurrence;
    std::array<cplx, 2> a, b;
  };
  auto split = [&](std::size_t col) {
    ComplexMatrix c(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t k = 0; k < 2; ++k) c(i, k) = f(2 * i + k, col);
    Split s{};
    s.concurrence = 2.0 * std::abs(c(0, 0) * c(1, 1) - c(0, 1) * c(1, 0));
    const auto left = hermitian_eigen(c * c.adjoint());
    const auto right = hermitian_eigen(c.adjoint() * c);
    s.a = {left.vectors(0, 1), left.vectors(1, 1)};
    s.b = {right.vectors(0, 1), right.vectors(1, 1)};
    return s;
  };
  const Split u = split(0);
  const Split w = split(2);
  const double overlap_a = std::abs(std::conj(u.a[0]) * w.a[0] + std::conj(u.a[1]) * w.a[1]);
  const double overlap_b = std::abs(std::conj(u.b[0]) * w.b[0] + std::conj(u.b[1]) * w.b[1]);
  return std::max({u.concurrence, w.concurrence, overlap_a, overlap_b});
}

}  // namespace qtele
