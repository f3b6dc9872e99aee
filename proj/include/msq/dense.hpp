#pragma once

// Dense complex linear algebra helpers shared by the whole library.
// Dimension never exceeds 64, so everything is plain dense Eigen.

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

namespace msq {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Kronecker product with the left factor as the most significant block,
// matching the qubit-0-most-significant convention used everywhere.
inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline double frobenius_norm(const Matrix& m) { return m.norm(); }

// Frobenius norm of ab - ba.
inline double commutator_norm(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("commutator_norm: dimension mismatch");
    return (a * b - b * a).norm();
}

// Eigenvalues of a Hermitian matrix in ascending order.
inline Eigen::VectorXd hermitian_eigenvalues(const Matrix& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("hermitian_eigenvalues: eigensolver failed");
    return solver.eigenvalues();
}

}  // namespace msq
