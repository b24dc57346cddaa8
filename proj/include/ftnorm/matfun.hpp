#pragma once

#include <Eigen/Dense>
#include <functional>

#include "ftnorm/types.hpp"

// ============================================================================
// Dense matrix-function kernels
// ============================================================================
// Matrix exponential, principal logarithm, and the psi1 phi-function, plus
// eigenvalue extraction and a diagonalizable spectral evaluator used by the
// test suites as an independent cross-check.
//
// All functions are pure and thread-safe; inputs are never modified.

namespace ftn {

// Matrix exponential via Pade approximation with scaling and squaring.
// For nilpotent inputs the approximant reproduces the (finite) series.
ComplexMatrix expm(const ComplexMatrix& m);

// Tolerance band around the closed negative real axis inside which
// logm_principal refuses to evaluate rather than perturb the input.
inline constexpr double kLogBranchTolerance = 1e-12;

// Principal matrix logarithm: the unique logarithm whose eigenvalues have
// imaginary parts in (-pi, pi). Inverse scaling and squaring on the complex
// Schur form. Throws PreconditionError when an eigenvalue sits within
// kLogBranchTolerance of the closed negative real axis (the offending
// eigenvalue and its distance are reported).
ComplexMatrix logm_principal(const ComplexMatrix& m);

// psi1(M) = sum_{k>=0} M^k/(k+1)!, equal to (e^M - I)M^{-1} for invertible M.
// Evaluated as the top-right block of exp([[M, I], [0, 0]]) so the series
// never suffers subtractive cancellation.
ComplexMatrix psi1(const ComplexMatrix& m);

// Eigenvalues with multiplicity, in solver order.
Eigen::VectorXcd eigenvalues(const ComplexMatrix& m);

inline constexpr double kDefaultSpectralConditionBound = 1e8;

// f(M) = V diag(f(lambda_i)) V^{-1} for diagonalizable M. Test oracle only;
// rejects eigenvector matrices whose condition exceeds the bound.
ComplexMatrix spectral_apply(const std::function<Complex(Complex)>& f,
                             const ComplexMatrix& m,
                             double max_condition = kDefaultSpectralConditionBound);

// Distance from z to the closed negative real axis (the log branch cut).
double negative_axis_distance(Complex z);

}  // namespace ftn
