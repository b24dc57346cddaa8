#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ftnorm/errors.hpp"
#include "ftnorm/matfun.hpp"
#include "ftnorm/pencil.hpp"
#include "test_support.hpp"

using namespace ftn;
using test::Rng;

TEST_CASE("wrap maps onto (-pi, pi]") {
  CHECK(wrap(M_PI) == doctest::Approx(M_PI));
  CHECK(wrap(3.0 * M_PI / 2.0) == doctest::Approx(-M_PI / 2.0));
  CHECK(wrap(-3.0 * M_PI) == doctest::Approx(M_PI));
  CHECK(wrap(0.1) == doctest::Approx(0.1));
  CHECK(wrap(-M_PI) == doctest::Approx(M_PI));
}

TEST_CASE("select_shift preference order") {
  Rng rng(3);
  const RealMatrix any = test::random_matrix(rng, 2, 2);

  SUBCASE("E invertible picks (1, 0)") {
    DescriptorPair p(RealMatrix::Identity(2, 2), any);
    const ShiftSelection s = select_shift(p);
    CHECK(s.alpha == Complex(1.0));
    CHECK(s.beta == Complex(0.0));
    CHECK((s.w - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);
    CHECK(s.w_condition == doctest::Approx(1.0));
  }

  SUBCASE("singular E, singular A, regular pencil lands on the beta grid") {
    RealMatrix e = RealMatrix::Zero(2, 2);
    e(0, 0) = 1.0;
    RealMatrix a = RealMatrix::Zero(2, 2);
    a(1, 1) = 1.0;
    DescriptorPair p(e, a);
    const ShiftSelection s = select_shift(p);
    CHECK(s.alpha == Complex(1.0));
    CHECK(s.beta == Complex(1.0));  // first grid candidate already optimal
    CHECK((s.w - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);
  }

  SUBCASE("singular A with invertible disabled picks (0, 1) when A works") {
    RealMatrix e = RealMatrix::Zero(2, 2);  // E = 0 forces the A shift
    DescriptorPair p(e, RealMatrix::Identity(2, 2));
    const ShiftSelection s = select_shift(p);
    CHECK(s.alpha == Complex(0.0));
    CHECK(s.beta == Complex(1.0));
  }

  SUBCASE("truly singular pencil is rejected") {
    RealMatrix d = RealMatrix::Zero(2, 2);
    d(0, 0) = 1.0;
    DescriptorPair p(d, d);  // alpha E + beta A always singular
    CHECK_THROWS_WITH_AS(select_shift(p), doctest::Contains("singular pencil"),
                         PreconditionError);
  }
}

TEST_CASE("select_shift invariants: exact construction, finite condition") {
  Rng rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    DescriptorPair p(test::random_matrix(rng, 3, 3), test::random_matrix(rng, 3, 3));
    const ShiftSelection s = select_shift(p);
    const ComplexMatrix rebuilt = s.alpha * to_complex(p.e) + s.beta * to_complex(p.a);
    CHECK((s.w - rebuilt).cwiseAbs().maxCoeff() == 0.0);
    CHECK(std::isfinite(s.w_condition));
  }
}

TEST_CASE("generalized_eigenvalues on frozen examples") {
  SUBCASE("standard eigenproblem when E = I") {
    RealMatrix a = RealMatrix::Zero(2, 2);
    a(0, 0) = 0.5;
    a(1, 1) = 2.0;
    const auto eigs = generalized_eigenvalues(DescriptorPair(RealMatrix::Identity(2, 2), a));
    REQUIRE(eigs.size() == 2);
    std::vector<double> values;
    for (const auto& e : eigs) {
      REQUIRE(!e.is_infinite);
      values.push_back(e.value.real());
    }
    std::sort(values.begin(), values.end());
    CHECK(values[0] == doctest::Approx(0.5));
    CHECK(values[1] == doctest::Approx(2.0));
  }

  SUBCASE("zero E-component reported as infinite") {
    RealMatrix e = RealMatrix::Zero(2, 2);
    e(0, 0) = 1.0;
    RealMatrix a = RealMatrix::Zero(2, 2);
    a(1, 1) = 1.0;
    const auto eigs = generalized_eigenvalues(DescriptorPair(e, a));
    REQUIRE(eigs.size() == 2);
    int infinite = 0;
    for (const auto& eig : eigs) {
      if (eig.is_infinite) {
        ++infinite;
      } else {
        CHECK(std::abs(eig.value) < 1e-12);
      }
    }
    CHECK(infinite == 1);
  }

  SUBCASE("E = 0 gives only infinite eigenvalues") {
    const auto eigs =
        generalized_eigenvalues(DescriptorPair(RealMatrix::Zero(2, 2), RealMatrix::Identity(2, 2)));
    for (const auto& eig : eigs) {
      CHECK(eig.is_infinite);
    }
  }
}

TEST_CASE("generalized_eigenvalues of (I, A) match eigenvalues(A)") {
  Rng rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const RealMatrix a = test::random_matrix(rng, 4, 4);
    auto gen = generalized_eigenvalues(DescriptorPair(RealMatrix::Identity(4, 4), a));
    Eigen::VectorXcd direct = eigenvalues(to_complex(a));
    REQUIRE(gen.size() == 4);
    // match each generalized eigenvalue to the closest direct one
    for (const auto& eig : gen) {
      REQUIRE(!eig.is_infinite);
      double best = 1e300;
      for (Eigen::Index i = 0; i < 4; ++i) {
        best = std::min(best, std::abs(eig.value - direct(i)));
      }
      CHECK(best <= 1e-10 * std::max(1.0, a.norm()));
    }
  }
}

TEST_CASE("finite spectrum of a real pencil is conjugation-closed") {
  Rng rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    DescriptorPair p(test::random_matrix(rng, 5, 5), test::random_matrix(rng, 5, 5));
    const auto eigs = generalized_eigenvalues(p);
    for (const auto& eig : eigs) {
      if (eig.is_infinite || std::abs(eig.value.imag()) < 1e-12) {
        continue;
      }
      double best = 1e300;
      for (const auto& other : eigs) {
        if (!other.is_infinite) {
          best = std::min(best, std::abs(other.value - std::conj(eig.value)));
        }
      }
      CHECK(best <= 1e-10 * std::max(1.0, std::abs(eig.value)));
    }
  }
}

TEST_CASE("arc_clearance on frozen examples") {
  const double c = std::cos(M_PI / 4), s = std::sin(M_PI / 4);
  RealMatrix rot(2, 2);
  rot << c, -s, s, c;  // eigenvalues e^{+-j pi/4}
  const DescriptorPair rotation(RealMatrix::Identity(2, 2), rot);

  SUBCASE("eigenvalue angle inside the band gives zero clearance") {
    CHECK(arc_clearance(rotation, Band(0.0, M_PI / 2)) == doctest::Approx(0.0).epsilon(1e-12));
  }

  SUBCASE("interior pole measures distance to the circle") {
    RealMatrix half(1, 1);
    half << 0.5;
    DescriptorPair p(RealMatrix::Identity(1, 1), half);
    CHECK(arc_clearance(p, Band(-M_PI, M_PI)) == doctest::Approx(0.5));
  }

  SUBCASE("angle outside the band measures distance to the nearest endpoint") {
    const Band band(M_PI / 2 + 0.1, M_PI);
    const double expected =
        std::abs(std::polar(1.0, M_PI / 4) - std::polar(1.0, M_PI / 2 + 0.1));
    CHECK(arc_clearance(rotation, band) == doctest::Approx(expected).epsilon(1e-12));
  }

  SUBCASE("far-from-circle spectrum returns the unbounded sentinel") {
    RealMatrix tiny(1, 1);
    tiny << 0.1;
    DescriptorPair p(RealMatrix::Identity(1, 1), tiny);
    CHECK(arc_clearance(p, Band(-1.0, 1.0)) == kClearanceUnbounded);
  }
}

TEST_CASE("arc_clearance is monotone under band growth") {
  Rng rng(53);
  for (int trial = 0; trial < 15; ++trial) {
    DescriptorPair p(RealMatrix::Identity(3, 3),
                     test::matrix_with_eigenvalues(
                         rng, {Complex(0.9, 0.3), Complex(test::uniform(rng, -0.9, 0.9), 0.0)},
                         3));
    const double lo = test::uniform(rng, -2.0, 0.0);
    const double hi = test::uniform(rng, 0.0, 2.0);
    const double grow = test::uniform(rng, 0.0, 1.0);
    const double small_band = arc_clearance(p, Band(lo, hi));
    const double big_band = arc_clearance(p, Band(lo - grow, hi + grow));
    CHECK(big_band <= small_band + 1e-12);
  }
}
