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

#include <cstddef>

namespace qtele::tol {

/// Default entrywise tolerance for matrix/vector comparisons.
inline constexpr double kEntrywise = 1e-12;
/// Tolerance for spectral quantities (eigenvalues, singular values).
inline constexpr double kSpectral = 1e-10;
/// Hermiticity tolerance accepted by the eigensolver.
inline constexpr double kHermitianInput = 1e-10;
/// Normalization tolerance for states and probability vectors.
inline constexpr double kNorm = 1e-12;
/// Smallest admissible eigenvalue of a density matrix.
inline constexpr double kMinEigenvalue = -1e-10;
/// Unitarity tolerance for gates supplied from outside (files, solver output).
inline constexpr double kUnitary = 1e-10;

/// Jacobi: off-diagonal Frobenius norm at convergence and sweep cap.
inline constexpr double kJacobiOffDiagonal = 1e-12;
inline constexpr int kJacobiMaxSweeps = 100;

/// Forced branches below this probability cannot be renormalized.
inline constexpr double kBranchUnderflow = 1e-14;

/// Largest register the dense engine accepts.
inline constexpr std::size_t kMaxQubits = 8;

}  // namespace qtele::tol
