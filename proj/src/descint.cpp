#include "ftnorm/descint.hpp"

#include <Eigen/LU>
#include <cmath>
#include <sstream>

#include "ftnorm/errors.hpp"
#include "ftnorm/matfun.hpp"

namespace ftn {

namespace {

// X = B * A^{-1} as a transposed linear solve.
ComplexMatrix right_divide(const ComplexMatrix& b, const ComplexMatrix& a) {
  return a.transpose().partialPivLu().solve(b.transpose()).transpose();
}

void require_clearance(double clearance, const char* what) {
  if (clearance < kDefaultClearanceThreshold) {
    std::ostringstream os;
    os << what << ": pencil eigenvalue on the integration path (clearance " << clearance << ")";
    throw PreconditionError(os.str());
  }
}

void require_interior(double theta, const char* what) {
  if (!(theta > -M_PI && theta < M_PI)) {
    std::ostringstream os;
    os << what << ": band endpoint " << theta
       << " must lie strictly inside (-pi, pi); route pi endpoints through "
          "integrate_resolvent_discrete_any";
    throw InvalidInputError(os.str());
  }
}

}  // namespace

ContinuousBand::ContinuousBand(double lo, double hi) : omega1(lo), omega2(hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) {
    std::ostringstream os;
    os << "ContinuousBand: require finite omega1 <= omega2, got [" << lo << ", " << hi << "]";
    throw InvalidInputError(os.str());
  }
}

ComplexMatrix gamma_matrix(const DescriptorPair& p, double theta) {
  const double t = std::tan(0.5 * theta);
  return to_complex(p.e + p.a) * t - kImag * to_complex(p.e - p.a);
}

IntegralWorkspace build_discrete_workspace(const DescriptorPair& p, const Band& band) {
  IntegralWorkspace ws;
  ws.t1 = std::tan(0.5 * band.theta1);
  ws.t2 = std::tan(0.5 * band.theta2);
  ws.eta = std::log((ws.t2 - kImag) / (ws.t1 - kImag));
  ws.gamma1 = gamma_matrix(p, band.theta1);
  ws.gamma2 = gamma_matrix(p, band.theta2);

  // ratio = Gamma(theta2) Gamma(theta1)^{-1}; its log exists whenever the arc
  // is free of pencil eigenvalues.
  const ComplexMatrix ratio = right_divide(ws.gamma2, ws.gamma1);
  ws.y = logm_principal(ratio);
  ws.y.diagonal().array() -= ws.eta;
  ws.exp_y = std::exp(-ws.eta) * ratio;
  ws.psi1_y = psi1(ws.y);
  return ws;
}

ComplexMatrix integrate_resolvent_discrete(const DescriptorPair& p, const Band& band) {
  const Eigen::Index n = p.size();
  if (band.empty()) {
    return ComplexMatrix::Zero(n, n);
  }
  require_interior(band.theta1, "integrate_resolvent_discrete");
  require_interior(band.theta2, "integrate_resolvent_discrete");

  const ShiftSelection shift = select_shift(p);
  require_clearance(arc_clearance(p, band), "integrate_resolvent_discrete");

  const IntegralWorkspace ws = build_discrete_workspace(p, band);

  if (shift.alpha == Complex(0.0)) {
    // A invertible: the band integral reduces to (1/j) A^{-1} Y.
    return to_complex(p.a).partialPivLu().solve(ws.y) / kImag;
  }

  const ComplexMatrix ident = ComplexMatrix::Identity(n, n);
  const ComplexMatrix m =
      unit_phasor(-band.theta2) * ident - unit_phasor(-band.theta1) * ws.exp_y;
  const ComplexMatrix lm = ws.psi1_y.partialPivLu().solve(m);
  const ComplexMatrix inner = -shift.alpha * lm + shift.beta * ws.y;
  return shift.w.partialPivLu().solve(inner) / kImag;
}

ComplexMatrix integrate_resolvent_discrete_to_pi(const DescriptorPair& p, double theta1) {
  const Eigen::Index n = p.size();
  if (theta1 == M_PI) {
    return ComplexMatrix::Zero(n, n);
  }
  if (!(theta1 > -M_PI && theta1 <= M_PI)) {
    throw InvalidInputError("integrate_resolvent_discrete_to_pi: theta1 must lie in (-pi, pi]");
  }

  const ShiftSelection shift = select_shift(p);
  const Band band(theta1, M_PI);
  require_clearance(arc_clearance(p, band), "integrate_resolvent_discrete_to_pi");

  // The arc reaches e^{j pi} = -1, so E + A must be invertible; clearance has
  // already excluded eigenvalues near -1, this is a hard backstop.
  const ComplexMatrix phi_ratio =
      right_divide(to_complex(p.e - p.a), to_complex(p.e + p.a));  // (E-A)(E+A)^{-1}
  if (!all_finite(phi_ratio)) {
    throw PreconditionError(
        "integrate_resolvent_discrete_to_pi: -1 is an eigenvalue of the pencil (E + A singular)");
  }

  const double t1 = std::tan(0.5 * theta1);
  const Complex eta_f = std::log(t1 - kImag);
  const ComplexMatrix ident = ComplexMatrix::Identity(n, n);
  const ComplexMatrix core = t1 * ident - kImag * phi_ratio;

  ComplexMatrix y = logm_principal(core);
  y.diagonal().array() -= eta_f;
  const ComplexMatrix exp_y = std::exp(-eta_f) * core;
  const ComplexMatrix psi1_y = psi1(y);

  const ComplexMatrix rhs = exp_y * (shift.alpha - shift.beta) +
                            (unit_phasor(-theta1) * shift.alpha + shift.beta) * ident;
  const ComplexMatrix lf_rhs = psi1_y.partialPivLu().solve(rhs);
  return shift.w.partialPivLu().solve(lf_rhs) / kImag;
}

ComplexMatrix integrate_resolvent_discrete_any(const DescriptorPair& p, const Band& band) {
  const Eigen::Index n = p.size();
  if (band.empty()) {
    return ComplexMatrix::Zero(n, n);
  }
  const bool starts_at_minus_pi = band.theta1 == -M_PI;
  const bool ends_at_pi = band.theta2 == M_PI;
  if (!starts_at_minus_pi && !ends_at_pi) {
    return integrate_resolvent_discrete(p, band);
  }
  if (!starts_at_minus_pi) {
    return integrate_resolvent_discrete_to_pi(p, band.theta1);
  }
  if (ends_at_pi) {
    // Full circle: split at zero and use conj(int_{-pi}^{0}) = int_{0}^{pi}
    // for real pencils.
    const ComplexMatrix upper = integrate_resolvent_discrete_to_pi(p, 0.0);
    return upper + upper.conjugate();
  }
  // [-pi, theta2] = conj(int over [-theta2, pi]).
  return integrate_resolvent_discrete_to_pi(p, -band.theta2).conjugate();
}

ComplexMatrix integrate_transfer_discrete(const RealMatrix& c, const DescriptorPair& p,
                                          const RealMatrix& b, const Band& band) {
  require_finite(c, "integrate_transfer_discrete");
  require_finite(b, "integrate_transfer_discrete");
  if (c.cols() != p.size() || b.rows() != p.size()) {
    std::ostringstream os;
    os << "integrate_transfer_discrete: C (" << c.rows() << "x" << c.cols() << ") and B ("
       << b.rows() << "x" << b.cols() << ") do not border an " << p.size() << "-state pencil";
    throw InvalidInputError(os.str());
  }
  return to_complex(c) * integrate_resolvent_discrete_any(p, band) * to_complex(b);
}

double imaginary_segment_clearance(const DescriptorPair& p, const ContinuousBand& band) {
  const auto eigs = generalized_eigenvalues(p);
  double clearance = kClearanceUnbounded;
  bool any_finite = false;
  for (const auto& eig : eigs) {
    if (eig.is_infinite) {
      continue;
    }
    any_finite = true;
    const double y = eig.value.imag();
    double dist;
    if (y >= band.omega1 && y <= band.omega2) {
      dist = std::abs(eig.value.real());
    } else {
      dist = std::min(std::abs(eig.value - kImag * band.omega1),
                      std::abs(eig.value - kImag * band.omega2));
    }
    clearance = std::min(clearance, dist);
  }
  return any_finite ? clearance : kClearanceUnbounded;
}

ComplexMatrix integrate_resolvent_continuous(const DescriptorPair& p,
                                             const ContinuousBand& band) {
  const Eigen::Index n = p.size();
  if (band.empty()) {
    return ComplexMatrix::Zero(n, n);
  }
  const ShiftSelection shift = select_shift(p);
  require_clearance(imaginary_segment_clearance(p, band), "integrate_resolvent_continuous");

  const ComplexMatrix omega1_mat = band.omega1 * to_complex(p.e) + kImag * to_complex(p.a);
  const ComplexMatrix omega2_mat = band.omega2 * to_complex(p.e) + kImag * to_complex(p.a);
  const ComplexMatrix ratio = right_divide(omega2_mat, omega1_mat);
  const ComplexMatrix y = logm_principal(ratio);

  const ComplexMatrix ident = ComplexMatrix::Identity(n, n);
  const ComplexMatrix rhs = band.omega2 * ident - band.omega1 * ratio;  // e^Y = ratio
  const ComplexMatrix l_rhs = psi1(y).partialPivLu().solve(rhs);
  const ComplexMatrix inner = shift.beta * l_rhs + kImag * shift.alpha * y;
  return -shift.w.partialPivLu().solve(inner);
}

Complex scalar_fd(Complex z, double theta, double theta1, Complex alpha, Complex beta) {
  if (alpha == Complex(0.0)) {
    throw InvalidInputError("scalar_fd: alpha must be nonzero (use scalar_fi for alpha = 0)");
  }
  require_interior(theta, "scalar_fd");
  require_interior(theta1, "scalar_fd");
  const Band band(std::min(theta1, theta), std::max(theta1, theta));

  // Excluded set: alpha z / (1 - beta z) on the band's arc.
  const Complex denom = 1.0 - beta * z;
  if (denom != Complex(0.0)) {
    const Complex w = alpha * z / denom;
    if (arc_distance(w, band) < kDefaultClearanceThreshold) {
      std::ostringstream os;
      os << "scalar_fd: z maps onto the integration arc (alpha z / (1 - beta z) = " << w.real()
         << (w.imag() < 0 ? " - " : " + ") << std::abs(w.imag()) << "j)";
      throw PreconditionError(os.str());
    }
  }

  if (z == Complex(0.0)) {
    return alpha / kImag * (std::exp(-kImag * theta1) - std::exp(-kImag * theta));
  }
  const double t = std::tan(0.5 * theta);
  const double t1 = std::tan(0.5 * theta1);
  const Complex eta = std::log((t - kImag) / (t1 - kImag));
  const auto omega = [&](double tv) {
    return tv * (1.0 - beta * z + alpha * z) - kImag * (1.0 - beta * z - alpha * z);
  };
  return (-eta + std::log(omega(t) / omega(t1))) / (kImag * z);
}

Complex scalar_fi(Complex z, double theta, double theta1) {
  require_interior(theta, "scalar_fi");
  require_interior(theta1, "scalar_fi");
  const Band band(std::min(theta1, theta), std::max(theta1, theta));

  // Excluded set {e^{-j phi}} is the conjugate of the band's arc.
  if (arc_distance(std::conj(z), band) < kDefaultClearanceThreshold) {
    throw PreconditionError("scalar_fi: z lies on the mirrored integration arc");
  }

  if (theta == theta1) {
    return Complex(0.0);
  }
  const double t = std::tan(0.5 * theta);
  const double t1 = std::tan(0.5 * theta1);
  const Complex eta = std::log((t - kImag) / (t1 - kImag));
  const Complex num = t * (z + 1.0) - kImag * (z - 1.0);
  const Complex den = t1 * (z + 1.0) - kImag * (z - 1.0);
  return (-eta + std::log(num / den)) / kImag;
}

}  // namespace ftn
