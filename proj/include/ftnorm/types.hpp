#pragma once

#include <Eigen/Dense>
#include <complex>

// Shared matrix currency. Dense double-precision matrices in row-major
// layout; complex intermediates use the same layout.

namespace ftn {

using Complex = std::complex<double>;

using RealMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr Complex kImag{0.0, 1.0};

// e^{j*angle}, snapped to exactly -1 at angle = +-pi so that full-band
// endpoint evaluations cancel instead of leaving a ~1e-16 phase residue.
Complex unit_phasor(double angle);

bool all_finite(const RealMatrix& m);
bool all_finite(const ComplexMatrix& m);

ComplexMatrix to_complex(const RealMatrix& m);

void require_finite(const RealMatrix& m, const char* context);
void require_finite(const ComplexMatrix& m, const char* context);
void require_square(const RealMatrix& m, const char* context);
void require_square(const ComplexMatrix& m, const char* context);

}  // namespace ftn
