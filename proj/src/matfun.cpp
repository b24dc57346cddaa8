#include "ftnorm/matfun.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <cmath>
#include <sstream>

#include "ftnorm/errors.hpp"

namespace ftn {

namespace {

double one_norm(const ComplexMatrix& m) {
  return m.cwiseAbs().colwise().sum().maxCoeff();
}

ComplexMatrix identity_like(const ComplexMatrix& m) {
  return ComplexMatrix::Identity(m.rows(), m.cols());
}

// Diagonal Pade approximant of e^A of degree `deg` (3, 5, 7 or 9); `b` holds
// the numerator coefficients in ascending power order.
ComplexMatrix pade_small(const ComplexMatrix& a, int deg, const double* b) {
  const ComplexMatrix ident = identity_like(a);
  const ComplexMatrix a2 = a * a;
  ComplexMatrix u = b[1] * ident;
  ComplexMatrix v = b[0] * ident;
  ComplexMatrix power = ident;  // a^(2k)
  for (int k = 1; 2 * k + 1 <= deg; ++k) {
    power = power * a2;
    u += b[2 * k + 1] * power;
    v += b[2 * k] * power;
  }
  u = a * u;
  return (v - u).partialPivLu().solve(v + u);
}

ComplexMatrix pade13(const ComplexMatrix& a) {
  static const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                             1187353796428800.0,  129060195264000.0,   10559470521600.0,
                             670442572800.0,      33522128640.0,       1323241920.0,
                             40840800.0,          960960.0,            16380.0,
                             182.0,               1.0};
  const ComplexMatrix ident = identity_like(a);
  const ComplexMatrix a2 = a * a;
  const ComplexMatrix a4 = a2 * a2;
  const ComplexMatrix a6 = a4 * a2;
  ComplexMatrix u = a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
                         b[3] * a2 + b[1] * ident);
  ComplexMatrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 +
                    b[2] * a2 + b[0] * ident;
  return (v - u).partialPivLu().solve(v + u);
}

// Principal square root of an upper-triangular matrix by the standard
// superdiagonal recurrence. Diagonal entries must be off the closed negative
// real axis, which the caller has already checked.
ComplexMatrix sqrtm_triangular(const ComplexMatrix& t) {
  const Eigen::Index n = t.rows();
  ComplexMatrix r = ComplexMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    r(j, j) = std::sqrt(t(j, j));
    for (Eigen::Index i = j - 1; i >= 0; --i) {
      Complex s = t(i, j);
      for (Eigen::Index k = i + 1; k < j; ++k) {
        s -= r(i, k) * r(k, j);
      }
      r(i, j) = s / (r(i, i) + r(j, j));
    }
  }
  return r;
}

// Degree-8 diagonal Pade approximant of log(I + X) in partial-fraction form,
// nodes and weights of 8-point Gauss-Legendre quadrature mapped to [0, 1].
ComplexMatrix log_pade8(const ComplexMatrix& x) {
  static const double nodes[] = {0.0198550717512319, 0.1016667612931866, 0.2372337950418355,
                                 0.4082826787521751, 0.5917173212478249, 0.7627662049581645,
                                 0.8983332387068134, 0.9801449282487681};
  static const double weights[] = {0.0506142681451881, 0.1111905172266872, 0.1568533229389436,
                                   0.1813418916891810, 0.1813418916891810, 0.1568533229389436,
                                   0.1111905172266872, 0.0506142681451881};
  const ComplexMatrix ident = identity_like(x);
  ComplexMatrix result = ComplexMatrix::Zero(x.rows(), x.cols());
  for (int i = 0; i < 8; ++i) {
    result += weights[i] * (ident + nodes[i] * x).partialPivLu().solve(x);
  }
  return result;
}

std::string format_complex(Complex z) {
  std::ostringstream os;
  os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "j";
  return os.str();
}

}  // namespace

double negative_axis_distance(Complex z) {
  if (z.real() <= 0.0) {
    return std::abs(z.imag());
  }
  return std::abs(z);
}

ComplexMatrix expm(const ComplexMatrix& m) {
  require_square(m, "expm");
  require_finite(m, "expm");

  // Pade degree thresholds on the scaled 1-norm (backward-error bounds for
  // double precision).
  static const double theta3 = 1.495585217958292e-2;
  static const double theta5 = 2.539398330063230e-1;
  static const double theta7 = 9.504178996162932e-1;
  static const double theta9 = 2.097847961257068e0;
  static const double theta13 = 5.371920351148152e0;

  static const double b3[] = {120.0, 60.0, 12.0, 1.0};
  static const double b5[] = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
  static const double b7[] = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                              25200.0,    1512.0,    56.0,      1.0};
  static const double b9[] = {17643225600.0, 8821612800.0, 2075673600.0, 302702400.0,
                              30270240.0,    2162160.0,    110880.0,     3960.0,
                              90.0,          1.0};

  const double norm = one_norm(m);
  if (norm <= theta3) return pade_small(m, 3, b3);
  if (norm <= theta5) return pade_small(m, 5, b5);
  if (norm <= theta7) return pade_small(m, 7, b7);
  if (norm <= theta9) return pade_small(m, 9, b9);

  int squarings = 0;
  if (norm > theta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / theta13)));
  }
  ComplexMatrix scaled = m * std::pow(2.0, -squarings);
  ComplexMatrix result = pade13(scaled);
  for (int i = 0; i < squarings; ++i) {
    result = result * result;
  }
  return result;
}

ComplexMatrix logm_principal(const ComplexMatrix& m) {
  require_square(m, "logm_principal");
  require_finite(m, "logm_principal");
  const Eigen::Index n = m.rows();

  Eigen::ComplexSchur<ComplexMatrix> schur(m);
  if (schur.info() != Eigen::Success) {
    throw NumericalError("logm_principal: Schur decomposition failed to converge");
  }
  ComplexMatrix t = schur.matrixT();
  const ComplexMatrix& q = schur.matrixU();

  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex lambda = t(i, i);
    if (std::abs(lambda) <= kLogBranchTolerance) {
      throw PreconditionError("logm_principal: matrix is singular (eigenvalue " +
                              format_complex(lambda) + ")");
    }
    const double dist = negative_axis_distance(lambda);
    if (dist < kLogBranchTolerance) {
      std::ostringstream os;
      os << "logm_principal: eigenvalue " << format_complex(lambda)
         << " lies on the closed negative real axis (distance " << dist << ")";
      throw PreconditionError(os.str());
    }
  }

  // Inverse scaling: repeated principal square roots of the triangular factor
  // until I + X is within the Pade radius.
  const ComplexMatrix ident = ComplexMatrix::Identity(n, n);
  int sqrts = 0;
  while (one_norm(t - ident) > 0.3) {
    if (sqrts >= 64) {
      throw NumericalError("logm_principal: square-root scaling did not contract");
    }
    t = sqrtm_triangular(t);
    ++sqrts;
  }

  ComplexMatrix logt = log_pade8(t - ident) * std::pow(2.0, sqrts);
  return q * logt * q.adjoint();
}

ComplexMatrix psi1(const ComplexMatrix& m) {
  require_square(m, "psi1");
  require_finite(m, "psi1");
  const Eigen::Index n = m.rows();
  ComplexMatrix aug = ComplexMatrix::Zero(2 * n, 2 * n);
  aug.topLeftCorner(n, n) = m;
  aug.topRightCorner(n, n) = ComplexMatrix::Identity(n, n);
  return expm(aug).topRightCorner(n, n);
}

Eigen::VectorXcd eigenvalues(const ComplexMatrix& m) {
  require_square(m, "eigenvalues");
  require_finite(m, "eigenvalues");
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigenvalues: eigensolver failed to converge");
  }
  return solver.eigenvalues();
}

ComplexMatrix spectral_apply(const std::function<Complex(Complex)>& f, const ComplexMatrix& m,
                             double max_condition) {
  require_square(m, "spectral_apply");
  require_finite(m, "spectral_apply");
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("spectral_apply: eigensolver failed to converge");
  }
  const ComplexMatrix v = solver.eigenvectors();

  Eigen::JacobiSVD<ComplexMatrix> svd(v);
  const double smin = svd.singularValues().tail<1>()(0);
  const double smax = svd.singularValues()(0);
  const double cond = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
  if (!(cond <= max_condition)) {
    std::ostringstream os;
    os << "spectral_apply: eigenvector condition " << cond << " exceeds bound " << max_condition
       << " (matrix too close to defective)";
    throw PreconditionError(os.str());
  }

  Eigen::VectorXcd fvals(m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    fvals(i) = f(solver.eigenvalues()(i));
  }
  const ComplexMatrix scaled = v * fvals.asDiagonal();
  // scaled * V^{-1} as a transposed linear solve.
  return v.transpose().partialPivLu().solve(scaled.transpose()).transpose();
}

}  // namespace ftn
