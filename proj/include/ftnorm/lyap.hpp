#pragma once

#include "ftnorm/types.hpp"

namespace ftn {

// Largest eigenvalue modulus of a real square matrix.
double spectral_radius(const RealMatrix& a);

// Stability margin: solve_dlyap rejects spectral radii >= 1 - kSchurMargin.
inline constexpr double kSchurMargin = 1e-10;

// Solve the discrete Lyapunov (Stein) equation A^T P A - P + Q = 0 for
// Schur-stable A and symmetric Q. Direct Schur back-substitution; the result
// is symmetrized exactly and its residual verified against
// 1e-11 * (||Q|| + ||P||).
RealMatrix solve_dlyap(const RealMatrix& a, const RealMatrix& q);

}  // namespace ftn
