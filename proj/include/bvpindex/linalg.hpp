#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "bvpindex/errors.hpp"

namespace bvpindex::linalg {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// LU solve with an explicit singularity guard: a pivot below 1e-14*|A| throws.
Vector solve_linear(const Matrix& A, const Vector& b);

struct PencilEigen {
    Vector values;   // ascending
    Matrix vectors;  // columns, K-orthonormal: V^T K V = I
};

/// Generalized symmetric problem A v = lambda K v, K positive definite.
PencilEigen eigen_symmetric_pencil(const Matrix& A, const Matrix& K);

/// Eigenvalues of a general square matrix, conjugate pairs kept exactly paired,
/// sorted by (real, imag).
std::vector<std::complex<double>> eigen_general(const Matrix& M);

/// Orthonormal basis of the numerical null space: singular directions with
/// sigma <= tol * sigma_max.  Column signs are canonicalized (largest entry > 0).
Matrix kernel_basis(const Matrix& M, double tol);

/// Relative asymmetry |A - A^T| / |A| (Frobenius); 0 for the zero matrix.
double relative_asymmetry(const Matrix& A);

}  // namespace bvpindex::linalg
