#pragma once

#include <vector>

#include "ftnorm/types.hpp"

// ============================================================================
// Matrix-pencil analysis
// ============================================================================
// Regularity and shift selection for the pencil (E, A) appearing in
// (zE - A)^{-1}, generalized eigenvalues with explicit infinite-eigenvalue
// markers, and the unit-circle arc-exclusion checks that gate the closed-form
// band integrals.

namespace ftn {

// The pencil of the resolvent (zE - A)^{-1}. Eigenvalues satisfy
// det(A - lambda E) = 0.
struct DescriptorPair {
  RealMatrix e;
  RealMatrix a;

  DescriptorPair(RealMatrix e_in, RealMatrix a_in);
  Eigen::Index size() const { return a.rows(); }
};

// Angular band [theta1, theta2] within [-pi, pi].
struct Band {
  double theta1;
  double theta2;

  Band(double lo, double hi);
  double width() const { return theta2 - theta1; }
  bool empty() const { return theta1 == theta2; }
};

// Regularizing pair (alpha, beta) with W = alpha*E + beta*A invertible.
struct ShiftSelection {
  Complex alpha;
  Complex beta;
  ComplexMatrix w;
  double w_condition;
};

struct GeneralizedEigenvalue {
  Complex value;      // meaningful only when !is_infinite
  bool is_infinite;   // zero E-component; kept as a flag, never a huge float
};

// Principal argument of e^{j*phi}: phi reduced to (-pi, pi].
double wrap(double phi);

inline constexpr double kDefaultShiftConditionBound = 1e13;

// Pick (alpha, beta) with W = alpha*E + beta*A invertible. Preference order:
// (1,0) if E is acceptably conditioned, then (0,1) if A is, then alpha = 1
// with beta swept over a fixed grid of unit-modulus values (best-conditioned
// candidate wins). Throws PreconditionError("singular pencil") when every
// candidate fails the condition bound.
ShiftSelection select_shift(const DescriptorPair& p,
                            double max_condition = kDefaultShiftConditionBound);

// All n generalized eigenvalues of (E, A); requires a regular pencil.
std::vector<GeneralizedEigenvalue> generalized_eigenvalues(const DescriptorPair& p);

// Sentinel returned when no eigenvalue is near enough to constrain the band.
inline constexpr double kClearanceUnbounded = 1e300;

// Bands whose clearance falls below this are treated as having a pole on the
// integration path.
inline constexpr double kDefaultClearanceThreshold = 1e-9;

// Distance from z to the closed arc {e^{j*phi} : phi in [theta1, theta2]}.
double arc_distance(Complex z, const Band& band);

// Minimum distance from the pencil's near-unit-circle eigenvalues (those
// within 0.5 of the circle) to the band's arc; kClearanceUnbounded when no
// eigenvalue is that close to the circle.
double arc_clearance(const DescriptorPair& p, const Band& band);

}  // namespace ftn
