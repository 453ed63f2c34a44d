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


// CSV datasets for the fidelity and replica-entanglement curves. Grid points
// are evaluated concurrently; rows are emitted in (level, grid) order, so the
// bytes never depend on the worker count.

#pragma once

#include <string>
#include <vector>

#include "qteleport/format.hpp"
#include "qteleport/noise_analytics.hpp"
#include "qteleport/parallel.hpp"

namespace qtele {

inline const std::vector<double>& default_fidelity_levels() {
  static const std::vector<double> levels{0.9, 0.7, 0.3, 0.0};
  return levels;
}

inline const std::vector<double>& default_entanglement_levels() {
  static const std::vector<double> levels{0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
  return levels;
}

struct FidelitySweepOptions {
  std::vector<double> levels = default_fidelity_levels();  // eps_c
  int grid = 200;                                          // eps_phi points on [0, 1]
  unsigned workers = 1;
};

enum class EntanglementAxis {
  Input,    // sweep eps_phi at fixed eps_c levels
  Channel,  // sweep eps_c at fixed eps_phi levels
};

struct EntanglementSweepOptions {
  EntanglementAxis axis = EntanglementAxis::Input;
  std::vector<double> levels = default_entanglement_levels();
  int grid = 200;
  unsigned workers = 1;
};

struct FidelityRecord {
  double eps_c = 0.0;
  double eps_phi = 0.0;
  double F_plus = 0.0;
  double F_minus = 0.0;
};

struct EntanglementRecord {
  double eps_c = 0.0;
  double eps_phi = 0.0;
  double eps_t = 0.0;
};

namespace detail {

inline void check_sweep(const std::vector<double>& levels, int grid) {
  require(!levels.empty(), "sweep: no levels given");
  for (double l : levels) require(l >= 0.0 && l <= 1.0, "sweep: level outside [0, 1]: " + format_number(l));
  require(grid >= 2, "sweep: grid must have at least 2 points");
}

inline double grid_point(int k, int n) { return static_cast<double>(k) / (n - 1); }

}  // namespace detail

inline std::vector<FidelityRecord> sweep_fidelity(const FidelitySweepOptions& opt) {
  detail::check_sweep(opt.levels, opt.grid);
  const auto n = static_cast<std::size_t>(opt.grid);
  return parallel_map<FidelityRecord>(opt.levels.size() * n, opt.workers, [&](std::size_t idx) {
    const double eps_c = opt.levels[idx / n];
    const double eps_phi = detail::grid_point(static_cast<int>(idx % n), opt.grid);
    const auto br = fidelity_branches(eps_c, eps_phi);
    return FidelityRecord{eps_c, eps_phi, br.plus, br.minus};
  });
}

inline std::vector<EntanglementRecord> sweep_entanglement(const EntanglementSweepOptions& opt) {
  detail::check_sweep(opt.levels, opt.grid);
  const auto n = static_cast<std::size_t>(opt.grid);
  return parallel_map<EntanglementRecord>(opt.levels.size() * n, opt.workers, [&](std::size_t idx) {
    const double level = opt.levels[idx / n];
    const double x = detail::grid_point(static_cast<int>(idx % n), opt.grid);
    const double eps_c = opt.axis == EntanglementAxis::Input ? level : x;
    const double eps_phi = opt.axis == EntanglementAxis::Input ? x : level;
    return EntanglementRecord{eps_c, eps_phi, replica_negativity(eps_c, eps_phi)};
  });
}

inline std::string to_csv(const std::vector<FidelityRecord>& rows) {
  std::string s = "eps_c,eps_phi,F_plus,F_minus\n";
  for (const auto& r : rows)
    s += format_number(r.eps_c) + "," + format_number(r.eps_phi) + "," + format_number(r.F_plus) + "," +
         format_number(r.F_minus) + "\n";
  return s;
}

inline std::string to_csv(const std::vector<EntanglementRecord>& rows) {
  std::string s = "eps_c,eps_phi,eps_t\n";
  for (const auto& r : rows)
    s += format_number(r.eps_c) + "," + format_number(r.eps_phi) + "," + format_number(r.eps_t) + "\n";
  return s;
}

}  // namespace qtele
