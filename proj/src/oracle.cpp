#include "ftnorm/oracle.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

#include "ftnorm/errors.hpp"

namespace ftn {

namespace {

// 15-point Kronrod nodes on [0, 1]-half (positive abscissae) with the
// embedded 7-point Gauss rule. Standard values.
constexpr double kKronrodNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kKronrodWeights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
// Gauss weights aligned with kKronrodNodes[1], [3], [5], [7].
constexpr double kGaussWeights[4] = {0.129484966168870, 0.279705391489277,
                                     0.381830050505119, 0.417959183673469};

struct Interval {
  double a;
  double b;
  ComplexMatrix value;
  double error;
};

struct WorstFirst {
  bool operator()(const Interval& lhs, const Interval& rhs) const {
    if (lhs.error != rhs.error) {
      return lhs.error < rhs.error;
    }
    return lhs.a > rhs.a;  // deterministic tie-break
  }
};

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

Interval evaluate_gk15(const std::function<ComplexMatrix(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  ComplexMatrix fc = f(center);
  ComplexMatrix kronrod = kKronrodWeights[7] * fc;
  ComplexMatrix gauss = kGaussWeights[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double offset = half * kKronrodNodes[i];
    const ComplexMatrix pair = f(center - offset) + f(center + offset);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) {
      gauss += kGaussWeights[i / 2] * pair;
    }
  }
  kronrod *= half;
  gauss *= half;
  const double error = max_abs(kronrod - gauss);
  return Interval{a, b, std::move(kronrod), error};
}

}  // namespace

QuadratureResult quad_matrix(const std::function<ComplexMatrix(double)>& f, double a, double b,
                             const QuadratureConfig& cfg) {
  if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0) || cfg.max_subdivisions <= 0 ||
      !(cfg.min_interval > 0.0)) {
    throw InvalidInputError("quad_matrix: quadrature tolerances must be positive");
  }
  if (cfg.rel_tol < 10.0 * std::numeric_limits<double>::epsilon()) {
    throw InvalidInputError("quad_matrix: rel_tol below 10*machine epsilon is unreachable");
  }
  if (!std::isfinite(a) || !std::isfinite(b) || a > b) {
    throw InvalidInputError("quad_matrix: require finite a <= b");
  }

  if (a == b) {
    ComplexMatrix probe = f(a);
    return QuadratureResult{ComplexMatrix::Zero(probe.rows(), probe.cols()), 0.0, true, 0};
  }

  std::priority_queue<Interval, std::vector<Interval>, WorstFirst> active;
  active.push(evaluate_gk15(f, a, b));
  ComplexMatrix total = active.top().value;
  double total_error = active.top().error;
  std::vector<Interval> finished;  // too narrow to split further

  int subdivisions = 0;
  bool budget_ok = true;
  while (total_error > std::max(cfg.abs_tol, cfg.rel_tol * max_abs(total))) {
    if (active.empty()) {
      break;  // every region is at minimum width; error is what it is
    }
    if (subdivisions >= cfg.max_subdivisions) {
      budget_ok = false;
      break;
    }
    Interval worst = active.top();
    active.pop();
    if (0.5 * (worst.b - worst.a) < cfg.min_interval) {
      finished.push_back(std::move(worst));
      continue;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    Interval left = evaluate_gk15(f, worst.a, mid);
    Interval right = evaluate_gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    active.push(std::move(left));
    active.push(std::move(right));
    ++subdivisions;
  }

  // Fixed-order reduction: re-sum all intervals by left endpoint so the
  // result does not depend on the refinement schedule.
  std::vector<Interval> all;
  all.reserve(finished.size() + active.size());
  for (auto& interval : finished) {
    all.push_back(std::move(interval));
  }
  while (!active.empty()) {
    all.push_back(active.top());
    active.pop();
  }
  std::sort(all.begin(), all.end(),
            [](const Interval& lhs, const Interval& rhs) { return lhs.a < rhs.a; });
  ComplexMatrix value = ComplexMatrix::Zero(all.front().value.rows(), all.front().value.cols());
  double error = 0.0;
  for (const auto& interval : all) {
    value += interval.value;
    error += interval.error;
  }
  const bool converged =
      budget_ok && error <= std::max(cfg.abs_tol, cfg.rel_tol * max_abs(value));
  return QuadratureResult{std::move(value), error, converged, subdivisions};
}

ComplexMatrix descriptor_resolvent(const DescriptorPair& p, Complex z) {
  const ComplexMatrix shifted = z * to_complex(p.e) - to_complex(p.a);
  const Eigen::Index n = p.size();
  Eigen::PartialPivLU<ComplexMatrix> lu(shifted);
  ComplexMatrix result = lu.solve(ComplexMatrix::Identity(n, n));
  if (!all_finite(result)) {
    std::ostringstream os;
    os << "descriptor_resolvent: zE - A is singular at z = " << z.real() << " + " << z.imag()
       << "j";
    throw PreconditionError(os.str());
  }
  return result;
}

ComplexMatrix transfer_at(const StateSpace& sys, Complex z) {
  const Eigen::Index n = sys.state_dim();
  const ComplexMatrix shifted =
      z * ComplexMatrix::Identity(n, n) - to_complex(sys.a);
  const ComplexMatrix solved = shifted.partialPivLu().solve(to_complex(sys.b));
  if (!all_finite(solved)) {
    std::ostringstream os;
    os << "transfer_at: zI - A is singular at z = " << z.real() << " + " << z.imag() << "j";
    throw PreconditionError(os.str());
  }
  return to_complex(sys.d) + to_complex(sys.c) * solved;
}

double oracle_truncated_norm(const StateSpace& sys, const Band& band,
                             const QuadratureConfig& cfg) {
  const auto integrand = [&sys](double theta) {
    const ComplexMatrix g = transfer_at(sys, std::polar(1.0, theta));
    ComplexMatrix out(1, 1);
    out(0, 0) = (g.adjoint() * g).trace();
    return out;
  };
  const QuadratureResult quad = quad_matrix(integrand, band.theta1, band.theta2, cfg);
  if (!quad.converged) {
    std::ostringstream os;
    os << "oracle_truncated_norm: quadrature did not converge (error estimate "
       << quad.error_estimate << " after " << quad.subdivisions << " subdivisions)";
    throw NumericalError(os.str());
  }
  return quad.value(0, 0).real() / (2.0 * M_PI);
}

}  // namespace ftn
