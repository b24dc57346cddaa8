#include "ftnorm/sysnorm.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

#include "ftnorm/descint.hpp"
#include "ftnorm/errors.hpp"
#include "ftnorm/lyap.hpp"
#include "ftnorm/matfun.hpp"

namespace ftn {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
constexpr double kNegativeClamp = -1e-12;

// Dispatch threshold: the stable path needs a comfortable margin to the unit
// circle, otherwise the Lyapunov solve dominates the error budget.
constexpr double kAutoStableMargin = 1e-8;

// Offset used when a general-path band touches +-pi, where tan(theta/2)
// blows up; the true endpoint value is recovered by linear extrapolation.
constexpr double kPiEndpointDelta = 1e-9;

double clamp_value(double value, std::vector<std::string>& diagnostics) {
  if (value < 0.0) {
    if (value < kNegativeClamp) {
      std::ostringstream os;
      os << "squared norm evaluated to " << value << ", below the -1e-12 clamp";
      throw NumericalError(os.str());
    }
    std::ostringstream os;
    os << "negative rounding residue " << value << " clamped to 0";
    diagnostics.push_back(os.str());
    return 0.0;
  }
  return value;
}

void require_strictly_proper(const StateSpace& sys, const char* what) {
  if (!sys.strictly_proper()) {
    throw PreconditionError(std::string(what) +
                            ": feedthrough D must be zero (use "
                            "truncated_norm_with_feedthrough)");
  }
}

double require_schur(const StateSpace& sys, const char* what) {
  const double rho = spectral_radius(sys.a);
  if (rho >= 1.0 - kSchurMargin) {
    std::ostringstream os;
    os << what << ": A is not Schur stable (spectral radius " << rho << ")";
    throw PreconditionError(os.str());
  }
  return rho;
}

// Distance from the eigenvalues of A (those within 0.5 of the unit circle)
// to the band's arc and its mirror image [-theta2, -theta1].
double eigenvalue_arc_clearance(const RealMatrix& a, const Band& band, bool include_mirror) {
  Eigen::EigenSolver<RealMatrix> solver(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("arc clearance: eigensolver failed to converge");
  }
  const Band mirrored(-band.theta2, -band.theta1);
  double clearance = kClearanceUnbounded;
  bool any_proximal = false;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    const Complex lambda = solver.eigenvalues()(i);
    if (std::abs(std::abs(lambda) - 1.0) > 0.5) {
      continue;
    }
    any_proximal = true;
    double dist = arc_distance(lambda, band);
    if (include_mirror) {
      dist = std::min(dist, arc_distance(lambda, mirrored));
    }
    clearance = std::min(clearance, dist);
  }
  return any_proximal ? clearance : kClearanceUnbounded;
}

// Antiderivative of the stable-case integrand trace:
//   F(theta) = tr(B^T P B) theta + 2 Im tr(B^T P log(I - e^{-j theta} A) B).
double stable_antiderivative(const StateSpace& sys, const RealMatrix& p, double theta) {
  const ComplexMatrix arg =
      ComplexMatrix::Identity(sys.state_dim(), sys.state_dim()) -
      unit_phasor(-theta) * to_complex(sys.a);
  const ComplexMatrix log_term = logm_principal(arg);
  const Complex tr =
      (to_complex(sys.b.transpose() * p) * log_term * to_complex(sys.b)).trace();
  return (sys.b.transpose() * p * sys.b).trace() * theta + 2.0 * tr.imag();
}

// General-path core on a band strictly inside (-pi, pi). Returns the raw
// (unclamped) value and the imaginary residue of the trace.
struct GeneralCore {
  double value;
  double residue;
};

GeneralCore general_core(const AugmentedSystem& aug, const Band& band) {
  if (band.empty()) {
    return {0.0, 0.0};
  }
  const DescriptorPair doubled(aug.e_h, aug.a_h);
  const ComplexMatrix g1 = gamma_matrix(doubled, band.theta1);
  const ComplexMatrix g2 = gamma_matrix(doubled, band.theta2);
  const ComplexMatrix x = logm_principal(g1.partialPivLu().solve(g2));
  const Complex tr = (to_complex(aug.c_h) * x * to_complex(aug.b_h)).trace() / kImag;
  return {tr.real() / kTwoPi, std::abs(tr.imag()) / kTwoPi};
}

}  // namespace

StateSpace::StateSpace(RealMatrix a_in, RealMatrix b_in, RealMatrix c_in, RealMatrix d_in)
    : a(std::move(a_in)), b(std::move(b_in)), c(std::move(c_in)), d(std::move(d_in)) {
  require_square(a, "StateSpace");
  require_finite(a, "StateSpace");
  require_finite(b, "StateSpace");
  require_finite(c, "StateSpace");
  const Eigen::Index n = a.rows();
  if (b.rows() != n || b.cols() < 1) {
    throw InvalidInputError("StateSpace: B must be n x m with m >= 1");
  }
  if (c.cols() != n || c.rows() < 1) {
    throw InvalidInputError("StateSpace: C must be p x n with p >= 1");
  }
  if (d.size() == 0) {
    d = RealMatrix::Zero(c.rows(), b.cols());
  } else {
    require_finite(d, "StateSpace");
    if (d.rows() != c.rows() || d.cols() != b.cols()) {
      throw InvalidInputError("StateSpace: D must be p x m");
    }
  }
}

bool StateSpace::strictly_proper() const { return d.isZero(0.0); }

const char* to_string(NormMethod m) {
  switch (m) {
    case NormMethod::kStable: return "stable";
    case NormMethod::kGeneral: return "general";
    case NormMethod::kFullBand: return "full_band";
  }
  return "unknown";
}

NormResult full_band_norm(const StateSpace& sys) {
  require_strictly_proper(sys, "full_band_norm");
  require_schur(sys, "full_band_norm");
  const RealMatrix p = solve_dlyap(sys.a, sys.c.transpose() * sys.c);
  NormResult result{0.0, Band(-M_PI, M_PI), NormMethod::kFullBand,
                    eigenvalue_arc_clearance(sys.a, Band(-M_PI, M_PI), false), {}};
  result.value = clamp_value((sys.b.transpose() * p * sys.b).trace(), result.diagnostics);
  return result;
}

NormResult truncated_norm_stable(const StateSpace& sys, const Band& band) {
  require_strictly_proper(sys, "truncated_norm_stable");
  require_schur(sys, "truncated_norm_stable");
  NormResult result{0.0, band, NormMethod::kStable,
                    eigenvalue_arc_clearance(sys.a, band, false), {}};
  if (band.empty()) {
    return result;
  }
  const RealMatrix p = solve_dlyap(sys.a, sys.c.transpose() * sys.c);
  const double raw = (stable_antiderivative(sys, p, band.theta2) -
                      stable_antiderivative(sys, p, band.theta1)) /
                     kTwoPi;
  result.value = clamp_value(raw, result.diagnostics);
  return result;
}

AugmentedSystem build_augmented(const StateSpace& sys) {
  require_strictly_proper(sys, "build_augmented");
  const Eigen::Index n = sys.state_dim();
  const Eigen::Index m = sys.input_dim();
  AugmentedSystem aug;
  aug.a_h = RealMatrix::Zero(2 * n, 2 * n);
  aug.a_h.topLeftCorner(n, n) = sys.a;
  aug.a_h.bottomLeftCorner(n, n) = sys.c.transpose() * sys.c;
  aug.a_h.bottomRightCorner(n, n) = RealMatrix::Identity(n, n);
  aug.e_h = RealMatrix::Zero(2 * n, 2 * n);
  aug.e_h.topLeftCorner(n, n) = RealMatrix::Identity(n, n);
  aug.e_h.bottomRightCorner(n, n) = sys.a.transpose();
  aug.b_h = RealMatrix::Zero(2 * n, m);
  aug.b_h.topRows(n) = sys.b;
  aug.c_h = RealMatrix::Zero(m, 2 * n);
  aug.c_h.rightCols(n) = -sys.b.transpose();
  return aug;
}

NormResult truncated_norm_general(const StateSpace& sys, const Band& band) {
  require_strictly_proper(sys, "truncated_norm_general");
  const double clearance = eigenvalue_arc_clearance(sys.a, band, true);
  NormResult result{0.0, band, NormMethod::kGeneral, clearance, {}};
  if (band.empty()) {
    return result;
  }
  if (clearance < kDefaultClearanceThreshold) {
    std::ostringstream os;
    os << "truncated_norm_general: eigenvalue of A on the band or mirrored band (clearance "
       << clearance << ")";
    throw PreconditionError(os.str());
  }

  const AugmentedSystem aug = build_augmented(sys);
  const bool lo_at_pi = band.theta1 == -M_PI;
  const bool hi_at_pi = band.theta2 == M_PI;
  double raw;
  if (lo_at_pi || hi_at_pi) {
    // Gamma_d is undefined at tan(pi/2): evaluate just inside the endpoint at
    // two offsets and extrapolate linearly to the limit.
    const auto clipped = [&](double delta) {
      const double lo = lo_at_pi ? -M_PI + delta : band.theta1;
      const double hi = hi_at_pi ? M_PI - delta : band.theta2;
      return general_core(aug, Band(lo, hi)).value;
    };
    const double v1 = clipped(kPiEndpointDelta);
    const double v2 = clipped(2.0 * kPiEndpointDelta);
    raw = 2.0 * v1 - v2;
    std::ostringstream os;
    os << "pi endpoint evaluated as a limit (offset " << kPiEndpointDelta
       << ", extrapolation step " << std::abs(v1 - v2) << ")";
    result.diagnostics.push_back(os.str());
  } else {
    const GeneralCore core = general_core(aug, band);
    raw = core.value;
    const double residue_scale = std::max(1.0, std::abs(core.value));
    if (core.residue > 1e-8 * residue_scale) {
      std::ostringstream os;
      os << "warning: imaginary trace residue " << core.residue
         << " suggests poor arc clearance or conditioning";
      result.diagnostics.push_back(os.str());
    } else if (core.residue > 1e-10 * residue_scale) {
      std::ostringstream os;
      os << "imaginary trace residue " << core.residue << " discarded";
      result.diagnostics.push_back(os.str());
    }
  }
  result.value = clamp_value(raw, result.diagnostics);
  return result;
}

NormResult truncated_norm(const StateSpace& sys, const Band& band, MethodChoice choice) {
  switch (choice) {
    case MethodChoice::kStable:
      return truncated_norm_stable(sys, band);
    case MethodChoice::kGeneral:
      return truncated_norm_general(sys, band);
    case MethodChoice::kAuto:
      break;
  }
  if (spectral_radius(sys.a) < 1.0 - kAutoStableMargin) {
    return truncated_norm_stable(sys, band);
  }
  return truncated_norm_general(sys, band);
}

NormResult truncated_norm_with_feedthrough(const StateSpace& sys, const Band& band,
                                           MethodChoice choice) {
  if (sys.strictly_proper()) {
    return truncated_norm(sys, band, choice);
  }
  const StateSpace proper(sys.a, sys.b, sys.c);
  NormResult core = truncated_norm(proper, band, choice);

  const Eigen::Index n = sys.state_dim();
  const DescriptorPair identity_pencil(RealMatrix::Identity(n, n), sys.a);
  const ComplexMatrix k = integrate_resolvent_discrete_any(identity_pencil, band);
  const Complex cross =
      (to_complex(sys.d.transpose() * sys.c) * k * to_complex(sys.b)).trace();
  const double d_terms =
      (band.width() * (sys.d.transpose() * sys.d).trace() + 2.0 * cross.real()) / kTwoPi;

  core.value = clamp_value(core.value + d_terms, core.diagnostics);
  return core;
}

double multirate_error(const StateSpace& sys, int decimation) {
  if (decimation < 1) {
    throw InvalidInputError("multirate_error: decimation factor must be >= 1");
  }
  require_strictly_proper(sys, "multirate_error");
  require_schur(sys, "multirate_error");
  const double full = full_band_norm(sys).value;
  const double band_norm =
      truncated_norm_stable(sys, Band(-M_PI / decimation, M_PI / decimation)).value;
  return full - band_norm;
}

}  // namespace ftn
