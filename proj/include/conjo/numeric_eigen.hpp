#pragma once

// Dense nonsymmetric eigenvalues: balancing, Householder reduction to upper
// Hessenberg form and the Francis double-shift QR iteration.

#include <complex>
#include <vector>

#include "conjo/matrix.hpp"

namespace conjo {

struct QrOptions {
  int max_sweeps_per_eigenvalue = 60;  // exceptional shift every 10 sweeps
};

// Eigenvalues of a real square matrix, computed in Real arithmetic.
// Instantiated for double and long double. Throws InvariantViolation if the
// iteration does not converge.
template <class Real>
std::vector<std::complex<Real>> hqr_eigenvalues(Matrix<Real> a, const QrOptions& opts = {});

enum class NumericPrecision { Double, Extended };

std::vector<std::complex<double>> numeric_eigenvalues(const RealMatrix& m,
                                                      NumericPrecision precision = NumericPrecision::Extended,
                                                      const QrOptions& opts = {});

}  // namespace conjo
