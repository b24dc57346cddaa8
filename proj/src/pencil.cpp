#include "ftnorm/pencil.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <sstream>

#include "ftnorm/errors.hpp"

namespace ftn {

namespace {

// Condition number from singular values; infinity when numerically singular.
double condition_of(const ComplexMatrix& w) {
  Eigen::JacobiSVD<ComplexMatrix> svd(w);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(svd.singularValues().size() - 1);
  if (smin <= 0.0 || smax <= 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return smax / smin;
}

}  // namespace

DescriptorPair::DescriptorPair(RealMatrix e_in, RealMatrix a_in)
    : e(std::move(e_in)), a(std::move(a_in)) {
  require_square(e, "DescriptorPair");
  require_square(a, "DescriptorPair");
  require_finite(e, "DescriptorPair");
  require_finite(a, "DescriptorPair");
  if (e.rows() != a.rows()) {
    throw InvalidInputError("DescriptorPair: E and A dimensions differ");
  }
}

Band::Band(double lo, double hi) : theta1(lo), theta2(hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw InvalidInputError("Band: endpoints must be finite");
  }
  if (lo < -M_PI || hi > M_PI || lo > hi) {
    std::ostringstream os;
    os << "Band: require -pi <= theta1 <= theta2 <= pi, got [" << lo << ", " << hi << "]";
    throw InvalidInputError(os.str());
  }
}

double wrap(double phi) {
  if (!std::isfinite(phi)) {
    throw InvalidInputError("wrap: angle must be finite");
  }
  double r = std::fmod(phi + M_PI, 2.0 * M_PI);
  if (r <= 0.0) {
    r += 2.0 * M_PI;
  }
  return r - M_PI;
}

ShiftSelection select_shift(const DescriptorPair& p, double max_condition) {
  const auto make = [&p](Complex alpha, Complex beta) {
    ComplexMatrix w = alpha * to_complex(p.e) + beta * to_complex(p.a);
    return w;
  };

  // Preferred shifts first: W = E, then W = A.
  {
    ComplexMatrix w = make(1.0, 0.0);
    const double cond = condition_of(w);
    if (cond <= max_condition) {
      return ShiftSelection{1.0, 0.0, std::move(w), cond};
    }
  }
  {
    ComplexMatrix w = make(0.0, 1.0);
    const double cond = condition_of(w);
    if (cond <= max_condition) {
      return ShiftSelection{0.0, 1.0, std::move(w), cond};
    }
  }

  // Fixed grid of unit-modulus beta values; keep the best-conditioned W.
  ShiftSelection best{1.0, 0.0, ComplexMatrix(), std::numeric_limits<double>::infinity()};
  for (int k = 0; k < 16; ++k) {
    const Complex beta = std::polar(1.0, M_PI * k / 8.0);
    ComplexMatrix w = make(1.0, beta);
    const double cond = condition_of(w);
    if (cond < best.w_condition) {
      best = ShiftSelection{1.0, beta, std::move(w), cond};
    }
  }
  if (best.w_condition <= max_condition) {
    return best;
  }
  throw PreconditionError("singular pencil: alpha*E + beta*A is singular for all tried shifts");
}

std::vector<GeneralizedEigenvalue> generalized_eigenvalues(const DescriptorPair& p) {
  // Reduce through the regularizing shift: with W = alpha E + beta A
  // invertible, the pencil spectrum is the image of the spectrum of
  // Q = A W^{-1} under q -> alpha q / (1 - beta q); the pole of that map is
  // an infinite eigenvalue. For alpha = 0 use Z = E A^{-1} and z -> 1/z.
  const ShiftSelection shift = select_shift(p);

  constexpr double kMagnitudeCap = 1e14;
  std::vector<GeneralizedEigenvalue> result;
  result.reserve(static_cast<size_t>(p.size()));

  Eigen::ComplexEigenSolver<ComplexMatrix> solver;
  if (shift.alpha != Complex(0.0)) {
    const ComplexMatrix q = shift.w.transpose()
                                .partialPivLu()
                                .solve(to_complex(p.a).transpose())
                                .transpose();
    solver.compute(q, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
      throw NumericalError("generalized_eigenvalues: eigensolver failed to converge");
    }
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      const Complex qi = solver.eigenvalues()(i);
      const Complex denom = 1.0 - shift.beta * qi;
      const double denom_floor =
          100.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(shift.beta * qi));
      if (std::abs(denom) <= denom_floor) {
        result.push_back({Complex(0.0, 0.0), true});
        continue;
      }
      const Complex lambda = shift.alpha * qi / denom;
      if (std::abs(lambda) > kMagnitudeCap) {
        result.push_back({Complex(0.0, 0.0), true});
      } else {
        result.push_back({lambda, false});
      }
    }
  } else {
    // W = beta A, so A is invertible here.
    const ComplexMatrix z = to_complex(p.a)
                                .transpose()
                                .partialPivLu()
                                .solve(to_complex(p.e).transpose())
                                .transpose();
    solver.compute(z, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
      throw NumericalError("generalized_eigenvalues: eigensolver failed to converge");
    }
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      const Complex zi = solver.eigenvalues()(i);
      if (std::abs(zi) <= 1.0 / kMagnitudeCap) {
        result.push_back({Complex(0.0, 0.0), true});
      } else {
        result.push_back({1.0 / zi, false});
      }
    }
  }
  return result;
}

double arc_distance(Complex z, const Band& band) {
  const double angle = std::arg(z);
  const bool on_sector = (angle >= band.theta1 && angle <= band.theta2) ||
                         (angle - 2.0 * M_PI >= band.theta1 && angle - 2.0 * M_PI <= band.theta2) ||
                         (angle + 2.0 * M_PI >= band.theta1 && angle + 2.0 * M_PI <= band.theta2);
  if (on_sector) {
    return std::abs(std::abs(z) - 1.0);
  }
  const double d1 = std::abs(z - std::polar(1.0, band.theta1));
  const double d2 = std::abs(z - std::polar(1.0, band.theta2));
  return std::min(d1, d2);
}

double arc_clearance(const DescriptorPair& p, const Band& band) {
  const auto eigs = generalized_eigenvalues(p);
  double clearance = kClearanceUnbounded;
  bool any_proximal = false;
  for (const auto& eig : eigs) {
    if (eig.is_infinite) {
      continue;
    }
    if (std::abs(std::abs(eig.value) - 1.0) > 0.5) {
      continue;  // too far from the unit circle to matter
    }
    any_proximal = true;
    clearance = std::min(clearance, arc_distance(eig.value, band));
  }
  return any_proximal ? clearance : kClearanceUnbounded;
}

}  // namespace ftn
