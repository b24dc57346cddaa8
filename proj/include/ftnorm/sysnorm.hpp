#pragma once

#include <string>
#include <vector>

#include "ftnorm/pencil.hpp"
#include "ftnorm/types.hpp"

// ============================================================================
// Frequency-truncated squared L2 norms of discrete-time systems
// ============================================================================
// Stable-path closed form (Lyapunov solution plus a log correction), the
// general-case augmented-pencil form valid for poles anywhere off the
// integration arc, the full-band Lyapunov identity, a feedthrough extension,
// and the decimation reconstruction error J.

namespace ftn {

// Real state-space realization G(z) = D + C (zI - A)^{-1} B.
struct StateSpace {
  RealMatrix a;
  RealMatrix b;
  RealMatrix c;
  RealMatrix d;  // pass a 0x0 matrix to mean "no feedthrough"

  StateSpace(RealMatrix a_in, RealMatrix b_in, RealMatrix c_in, RealMatrix d_in = RealMatrix());
  Eigen::Index state_dim() const { return a.rows(); }
  Eigen::Index input_dim() const { return b.cols(); }
  Eigen::Index output_dim() const { return c.rows(); }
  bool strictly_proper() const;
};

// Doubled pencil whose resolvent carries G~(z) G(z):
//   a_h = [[A, 0], [C^T C, I]], e_h = [[I, 0], [0, A^T]],
//   b_h = [B; 0],  c_h = [0, -B^T]  (so c_h * b_h = 0).
struct AugmentedSystem {
  RealMatrix a_h;
  RealMatrix e_h;
  RealMatrix b_h;
  RealMatrix c_h;
};

enum class NormMethod { kStable, kGeneral, kFullBand };

enum class MethodChoice { kAuto, kStable, kGeneral };

const char* to_string(NormMethod m);

struct NormResult {
  double value;          // squared norm, clamped to 0 above -1e-12
  Band band;
  NormMethod method;
  double arc_clearance;  // distance from poles to the integration arc
  std::vector<std::string> diagnostics;
};

// ||G||^2 over the full band via tr(B^T P B), P the Lyapunov solution.
// Requires Schur A and D = 0.
NormResult full_band_norm(const StateSpace& sys);

// Truncated squared norm for Schur A and D = 0, any band in [-pi, pi].
NormResult truncated_norm_stable(const StateSpace& sys, const Band& band);

// Assemble the doubled pencil; requires D = 0.
AugmentedSystem build_augmented(const StateSpace& sys);

// Truncated squared norm with poles allowed anywhere off the closed arcs
// [theta1, theta2] and [-theta2, -theta1]. Bands touching +-pi are evaluated
// as a short limit toward the endpoint (noted in diagnostics).
NormResult truncated_norm_general(const StateSpace& sys, const Band& band);

// Dispatch: stable path when the spectral radius is below 1 - 1e-8,
// otherwise the general path. Requires D = 0.
NormResult truncated_norm(const StateSpace& sys, const Band& band,
                          MethodChoice choice = MethodChoice::kAuto);

// Truncated squared norm including the feedthrough D, decomposed as the
// strictly-proper norm plus (theta2-theta1) tr(D^T D)/(2 pi) plus the cross
// term through the band resolvent integral.
NormResult truncated_norm_with_feedthrough(const StateSpace& sys, const Band& band,
                                           MethodChoice choice = MethodChoice::kAuto);

// Mean-square reconstruction error of the optimal M-fold decimation scheme:
// full-band norm minus the band norm over [-pi/M, pi/M]. Requires Schur A.
double multirate_error(const StateSpace& sys, int decimation);

}  // namespace ftn
