#pragma once

#include "ftnorm/pencil.hpp"
#include "ftnorm/types.hpp"

// ============================================================================
// Closed-form frequency-band integrals of descriptor resolvents
// ============================================================================
// Computes int (e^{j*theta} E - A)^{-1} d(theta) over an angular band, and the
// continuous-time analogue int (j*omega E - A)^{-1} d(omega), through
// exponential / log / psi1 kernel evaluations that stay finite even when E or
// A is singular (the pencil only needs to be regular and free of eigenvalues
// on the integration path).
//
// Scalar reference functions (scalar_fd / scalar_fi) mirror the matrix
// evaluations eigenvalue-by-eigenvalue and back the spectral-oracle tests.

namespace ftn {

// Real frequency interval [omega1, omega2] in rad/s.
struct ContinuousBand {
  double omega1;
  double omega2;

  ContinuousBand(double lo, double hi);
  bool empty() const { return omega1 == omega2; }
};

// Intermediates of the discrete-band evaluation, exposed for tests and
// diagnostics. gamma1/gamma2 are Gamma(theta_i) = (E+A)tan(theta_i/2)-j(E-A);
// y = -eta*I + log(gamma2 * gamma1^{-1}) with eta = log((t2-j)/(t1-j));
// exp_y is e^y formed directly from the gamma ratio; psi1_y is psi1(y)
// (applied by linear solve, never inverted explicitly).
struct IntegralWorkspace {
  double t1;
  double t2;
  Complex eta;
  ComplexMatrix gamma1;
  ComplexMatrix gamma2;
  ComplexMatrix y;
  ComplexMatrix exp_y;
  ComplexMatrix psi1_y;
};

// Gamma(theta) = (E + A) tan(theta/2) - j (E - A).
ComplexMatrix gamma_matrix(const DescriptorPair& p, double theta);

// Builds the workspace for a band with both endpoints in (-pi, pi).
IntegralWorkspace build_discrete_workspace(const DescriptorPair& p, const Band& band);

// int_{theta1}^{theta2} (e^{j theta} E - A)^{-1} d(theta) for
// theta1, theta2 in (-pi, pi). Bands touching +-pi must go through
// integrate_resolvent_discrete_to_pi / integrate_resolvent_discrete_any.
ComplexMatrix integrate_resolvent_discrete(const DescriptorPair& p, const Band& band);

// int_{theta1}^{pi} (e^{j theta} E - A)^{-1} d(theta), theta1 in (-pi, pi].
// Requires -1 (the arc endpoint e^{j pi}) to be off the spectrum.
ComplexMatrix integrate_resolvent_discrete_to_pi(const DescriptorPair& p, double theta1);

// Dispatch layer covering any band within [-pi, pi]: interior bands go to
// integrate_resolvent_discrete, bands ending at pi to the pi-endpoint form,
// bands starting at -pi through the real-pencil conjugation identity
// conj(int_{-b}^{-a}) = int_{a}^{b}, and the full circle splits at 0.
ComplexMatrix integrate_resolvent_discrete_any(const DescriptorPair& p, const Band& band);

// C * integrate_resolvent_discrete_any(p, band) * B with shape checks.
ComplexMatrix integrate_transfer_discrete(const RealMatrix& c, const DescriptorPair& p,
                                          const RealMatrix& b, const Band& band);

// Distance from the pencil's finite eigenvalues to the imaginary segment
// {j*omega : omega in [omega1, omega2]}; kClearanceUnbounded when the pencil
// has no finite eigenvalues.
double imaginary_segment_clearance(const DescriptorPair& p, const ContinuousBand& band);

// int_{omega1}^{omega2} (j omega E - A)^{-1} d(omega). Requires no
// generalized eigenvalue j*lambda with lambda in [omega1, omega2].
ComplexMatrix integrate_resolvent_continuous(const DescriptorPair& p,
                                             const ContinuousBand& band);

// Scalar antiderivative kernel behind the discrete band integral, normalized
// to vanish at theta = theta1. Defined off the set
// {z : alpha*z/(1 - beta*z) = e^{j phi}, wrap(phi) in [theta1, theta]};
// the z = 0 singularity is removable and evaluated by its branch value.
// Requires alpha != 0.
Complex scalar_fd(Complex z, double theta, double theta1, Complex alpha, Complex beta);

// Scalar kernel for the invertible-A route, evaluated at eigenvalues of
// E*A^{-1}. Defined off {e^{-j phi} : wrap(phi) in [theta1, theta]}.
Complex scalar_fi(Complex z, double theta, double theta1);

}  // namespace ftn
