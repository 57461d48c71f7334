#pragma once

#include <Eigen/Dense>
#include <complex>

#include "secopt/errors.hpp"
#include "secopt/tolerances.hpp"

namespace secopt {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Complex = std::complex<double>;

// Eigendecomposition of a Hermitian matrix. Eigenvalues ascending,
// eigenvector columns orthonormal with a fixed phase convention (first
// entry of significant modulus made real-positive) so repeated runs and
// test expectations are stable.
struct EvdResult {
    RealVector eigenvalues;
    ComplexMatrix eigenvectors;
};

// Throws ShapeMismatch/NumericalFailure when m is empty or non-finite.
void check_finite(const ComplexMatrix& m, const char* what);

bool is_hermitian(const ComplexMatrix& m, double rel_tol = tol::hermitian_rel);

EvdResult hermitian_evd(const ComplexMatrix& m);

// ln det(m) for Hermitian positive definite m. Natural log; callers convert
// to bits. Throws NotPositiveDefinite when an eigenvalue drops to the floor.
double logdet_hpd(const ComplexMatrix& m);

// Orthonormal basis of the orthogonal complement of b in C^n, as an
// n x (n-1) matrix. Throws ZeroVector for ||b|| below the floor.
ComplexMatrix complement_basis(const ComplexVector& b);

} // namespace secopt
