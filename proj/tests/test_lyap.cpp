#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "ftnorm/errors.hpp"
#include "ftnorm/lyap.hpp"
#include "test_support.hpp"

using namespace ftn;
using test::Rng;

TEST_CASE("solve_dlyap scalar closed forms") {
  RealMatrix a(1, 1), q(1, 1);
  a << 0.0;
  q << 1.0;
  CHECK(solve_dlyap(a, q)(0, 0) == doctest::Approx(1.0).epsilon(1e-14));

  a << 0.5;
  CHECK(solve_dlyap(a, q)(0, 0) == doctest::Approx(4.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("solve_dlyap matches the Smith fixed-point oracle") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const RealMatrix a = test::random_schur_matrix(rng, 4, test::uniform(rng, 0.2, 0.9));
    const RealMatrix c = test::random_matrix(rng, 2, 4);
    const RealMatrix q = c.transpose() * c;
    const RealMatrix p = solve_dlyap(a, q);
    const RealMatrix p_oracle = test::smith_dlyap(a, q);
    CHECK((p - p_oracle).norm() <= 1e-10 * std::max(1.0, p_oracle.norm()));
  }
}

TEST_CASE("solve_dlyap rejects unstable A and reports the spectral radius") {
  RealMatrix a(1, 1), q(1, 1);
  a << 1.0;
  q << 1.0;
  CHECK_THROWS_WITH_AS(solve_dlyap(a, q), doctest::Contains("spectral radius"),
                       PreconditionError);
  a << 1.0 - 1e-12;  // inside the rejection margin
  CHECK_THROWS_AS(solve_dlyap(a, q), PreconditionError);
}

TEST_CASE("solve_dlyap rejects asymmetric Q") {
  RealMatrix a(2, 2);
  a << 0.1, 0.0, 0.0, 0.2;
  RealMatrix q(2, 2);
  q << 1.0, 0.5, 0.4, 1.0;
  CHECK_THROWS_AS(solve_dlyap(a, q), PreconditionError);
}

TEST_CASE("solve_dlyap permutation-similarity surrogate for uniqueness") {
  Rng rng(17);
  const Eigen::Index n = 5;
  const RealMatrix a = test::random_schur_matrix(rng, n, 0.8);
  const RealMatrix c = test::random_matrix(rng, 3, n);
  const RealMatrix q = c.transpose() * c;
  const RealMatrix p = solve_dlyap(a, q);

  RealMatrix perm = RealMatrix::Zero(n, n);
  const int order[5] = {3, 0, 4, 1, 2};
  for (Eigen::Index i = 0; i < n; ++i) {
    perm(i, order[i]) = 1.0;
  }
  const RealMatrix p_permuted = solve_dlyap(perm * a * perm.transpose(),
                                            perm * q * perm.transpose());
  const RealMatrix restored = perm.transpose() * p_permuted * perm;
  CHECK((restored - p).norm() <= 1e-13 * std::max(1.0, p.norm()));
}

TEST_CASE("solve_dlyap monotone in Q and positively homogeneous") {
  Rng rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::Index n = 4;
    const RealMatrix a = test::random_schur_matrix(rng, n, 0.7);
    const RealMatrix c1 = test::random_matrix(rng, 2, n);
    const RealMatrix c2 = test::random_matrix(rng, 2, n);
    const RealMatrix q1 = c1.transpose() * c1;
    const RealMatrix q2 = q1 + c2.transpose() * c2;  // q1 <= q2 in the PSD order

    const RealMatrix p1 = solve_dlyap(a, q1);
    const RealMatrix p2 = solve_dlyap(a, q2);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> gap((p2 - p1).eval());
    CHECK(gap.eigenvalues().minCoeff() >= -1e-10 * std::max(1.0, p2.norm()));

    const double scale = 3.75;
    const RealMatrix p_scaled = solve_dlyap(a, (scale * q1).eval());
    CHECK((p_scaled - scale * p1).norm() <= 1e-13 * std::max(1.0, p_scaled.norm()));
  }
}

TEST_CASE("solve_dlyap result is exactly symmetric and PSD for PSD Q") {
  Rng rng(31);
  const RealMatrix a = test::random_schur_matrix(rng, 6, 0.85);
  const RealMatrix c = test::random_matrix(rng, 2, 6);
  const RealMatrix p = solve_dlyap(a, c.transpose() * c);
  CHECK((p - p.transpose()).norm() == 0.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es{Eigen::MatrixXd(p)};
  CHECK(es.eigenvalues().minCoeff() >= -1e-12 * std::max(1.0, p.norm()));
}
