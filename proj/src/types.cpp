#include "ftnorm/types.hpp"

#include <cmath>
#include <string>

#include "ftnorm/errors.hpp"

namespace ftn {

Complex unit_phasor(double angle) {
  if (angle == M_PI || angle == -M_PI) {
    return Complex(-1.0, 0.0);
  }
  return std::polar(1.0, angle);
}

bool all_finite(const RealMatrix& m) { return m.allFinite(); }

bool all_finite(const ComplexMatrix& m) {
  return m.real().allFinite() && m.imag().allFinite();
}

ComplexMatrix to_complex(const RealMatrix& m) { return m.cast<Complex>(); }

namespace {

template <typename Matrix>
void require_finite_impl(const Matrix& m, const char* context) {
  if (!all_finite(m)) {
    throw InvalidInputError(std::string(context) + ": matrix has non-finite entries");
  }
}

template <typename Matrix>
void require_square_impl(const Matrix& m, const char* context) {
  if (m.rows() == 0 || m.cols() == 0) {
    throw InvalidInputError(std::string(context) + ": matrix is empty");
  }
  if (m.rows() != m.cols()) {
    throw InvalidInputError(std::string(context) + ": matrix is not square (" +
                            std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ")");
  }
}

}  // namespace

void require_finite(const RealMatrix& m, const char* context) { require_finite_impl(m, context); }
void require_finite(const ComplexMatrix& m, const char* context) { require_finite_impl(m, context); }
void require_square(const RealMatrix& m, const char* context) { require_square_impl(m, context); }
void require_square(const ComplexMatrix& m, const char* context) { require_square_impl(m, context); }

}  // namespace ftn
