#pragma once

#include <functional>

#include "ftnorm/pencil.hpp"
#include "ftnorm/sysnorm.hpp"
#include "ftnorm/types.hpp"

// ============================================================================
// Quadrature oracle
// ============================================================================
// Independent ground truth for the closed forms: adaptive Gauss-Kronrod
// integration of matrix-valued integrands. Resolvents are evaluated by LU
// solves at each node, never through the matrix-function kernels under test.
// Evaluation and reduction order are fixed, so results are reproducible.

namespace ftn {

struct QuadratureConfig {
  double rel_tol = 1e-11;
  double abs_tol = 1e-13;
  int max_subdivisions = 100000;
  double min_interval = 1e-13;
};

struct QuadratureResult {
  ComplexMatrix value;
  double error_estimate;  // entrywise (max-abs) bound accumulated per interval
  bool converged;
  int subdivisions;
};

// Adaptive 15-point Gauss-Kronrod integration of f over [a, b]. Returns the
// best estimate with converged = false when the subdivision budget or the
// minimum interval width is hit before reaching tolerance.
QuadratureResult quad_matrix(const std::function<ComplexMatrix(double)>& f, double a,
                             double b, const QuadratureConfig& cfg = {});

// (zE - A)^{-1} by LU solve.
ComplexMatrix descriptor_resolvent(const DescriptorPair& p, Complex z);

// G(z) = D + C (zI - A)^{-1} B by LU solve.
ComplexMatrix transfer_at(const StateSpace& sys, Complex z);

// (1/2pi) * integral of tr[G(e^{j theta})^* G(e^{j theta})] over the band.
// Throws NumericalError if quadrature fails to converge.
double oracle_truncated_norm(const StateSpace& sys, const Band& band,
                             const QuadratureConfig& cfg = {});

}  // namespace ftn
