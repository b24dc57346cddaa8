#include "ftnorm/lyap.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

#include "ftnorm/errors.hpp"

namespace ftn {

double spectral_radius(const RealMatrix& a) {
  require_square(a, "spectral_radius");
  require_finite(a, "spectral_radius");
  Eigen::EigenSolver<RealMatrix> solver(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("spectral_radius: eigensolver failed to converge");
  }
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

RealMatrix solve_dlyap(const RealMatrix& a, const RealMatrix& q) {
  require_square(a, "solve_dlyap");
  require_square(q, "solve_dlyap");
  require_finite(a, "solve_dlyap");
  require_finite(q, "solve_dlyap");
  const Eigen::Index n = a.rows();
  if (q.rows() != n) {
    throw InvalidInputError("solve_dlyap: A and Q dimensions differ");
  }
  const double q_scale = std::max(1.0, q.norm());
  if ((q - q.transpose()).norm() > 1e-12 * q_scale) {
    throw PreconditionError("solve_dlyap: Q is not symmetric");
  }
  const double rho = spectral_radius(a);
  if (rho >= 1.0 - kSchurMargin) {
    std::ostringstream os;
    os << "solve_dlyap: A is not Schur stable (spectral radius " << rho << ", margin "
       << 1.0 - rho << ")";
    throw PreconditionError(os.str());
  }

  // Reduce with a complex Schur form A = U T U^*; the transformed equation
  // T^* X T - X + U^* Q U = 0 solves column by column through triangular
  // substitutions.
  Eigen::ComplexSchur<ComplexMatrix> schur(to_complex(a));
  if (schur.info() != Eigen::Success) {
    throw NumericalError("solve_dlyap: Schur decomposition failed to converge");
  }
  const ComplexMatrix& t = schur.matrixT();
  const ComplexMatrix& u = schur.matrixU();
  const ComplexMatrix s = t.adjoint();  // lower triangular
  const ComplexMatrix qt = u.adjoint() * to_complex(q) * u;

  ComplexMatrix x = ComplexMatrix::Zero(n, n);
  ComplexMatrix sx = ComplexMatrix::Zero(n, n);  // columns S * x_k
  const ComplexMatrix ident = ComplexMatrix::Identity(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::VectorXcd rhs = -qt.col(j);
    for (Eigen::Index k = 0; k < j; ++k) {
      rhs -= t(k, j) * sx.col(k);
    }
    const ComplexMatrix lhs = t(j, j) * s - ident;
    x.col(j) = lhs.triangularView<Eigen::Lower>().solve(rhs);
    sx.col(j) = s * x.col(j);
  }

  const ComplexMatrix p_complex = u * x * u.adjoint();
  RealMatrix p = p_complex.real();
  p = ((p + p.transpose()) / 2.0).eval();

  const double residual = (a.transpose() * p * a - p + q).norm();
  if (residual > 1e-11 * (q.norm() + p.norm())) {
    std::ostringstream os;
    os << "solve_dlyap: residual " << residual << " exceeds tolerance";
    throw NumericalError(os.str());
  }
  return p;
}

}  // namespace ftn
