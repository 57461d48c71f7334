#include "secopt/numerics.hpp"

#include <cmath>
#include <string>

namespace secopt {

void check_finite(const ComplexMatrix& m, const char* what) {
    if (m.rows() < 1 || m.cols() < 1) {
        throw ShapeMismatch(std::string(what) + ": empty matrix");
    }
    if (!m.allFinite()) {
        throw NumericalFailure(std::string(what) + ": non-finite entries");
    }
}

bool is_hermitian(const ComplexMatrix& m, double rel_tol) {
    if (m.rows() != m.cols()) return false;
    double scale = m.norm();
    return (m - m.adjoint()).norm() <= rel_tol * scale;
}

namespace {

// Multiply each eigenvector column by a unit phase so its first entry of
// significant modulus is real-positive.
void normalize_phases(ComplexMatrix& v) {
    for (Eigen::Index c = 0; c < v.cols(); ++c) {
        Eigen::Index pivot = -1;
        for (Eigen::Index r = 0; r < v.rows(); ++r) {
            if (std::abs(v(r, c)) > 1e-9) { pivot = r; break; }
        }
        if (pivot < 0) continue;
        Complex z = v(pivot, c);
        v.col(c) *= std::conj(z) / std::abs(z);
    }
}

} // namespace

EvdResult hermitian_evd(const ComplexMatrix& m) {
    check_finite(m, "hermitian_evd");
    if (m.rows() != m.cols()) {
        throw ShapeMismatch("hermitian_evd: matrix not square");
    }
    if (!is_hermitian(m)) {
        throw NotHermitian("hermitian_evd: symmetry check failed");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
    if (solver.info() != Eigen::Success) {
        throw NumericalFailure("hermitian_evd: backend did not converge");
    }
    EvdResult out{solver.eigenvalues(), solver.eigenvectors()};
    normalize_phases(out.eigenvectors);
    return out;
}

double logdet_hpd(const ComplexMatrix& m) {
    EvdResult evd = hermitian_evd(m);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < evd.eigenvalues.size(); ++i) {
        double lam = evd.eigenvalues[i];
        if (lam <= tol::pd_floor) {
            throw NotPositiveDefinite("logdet_hpd: eigenvalue " + std::to_string(lam) +
                                      " at or below floor");
        }
        acc += std::log(lam);
    }
    return acc;
}

ComplexMatrix complement_basis(const ComplexVector& b) {
    const Eigen::Index n = b.size();
    if (n < 1) throw ShapeMismatch("complement_basis: empty vector");
    if (b.norm() <= 1e-12) throw ZeroVector("complement_basis: vector norm below floor");
    // Householder QR of the n x 1 matrix [b] gives a full unitary whose first
    // column spans b; the remaining columns are the complement.
    const ComplexMatrix b_col = b;
    Eigen::HouseholderQR<ComplexMatrix> qr(b_col);
    ComplexMatrix q = qr.householderQ();
    return q.rightCols(n - 1);
}

} // namespace secopt
