#include "bvpindex/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace bvpindex::linalg {

Vector solve_linear(const Matrix& A, const Vector& b) {
    if (A.rows() != A.cols()) throw Error("solve_linear: matrix not square");
    if (A.rows() != b.size()) throw Error("solve_linear: size mismatch");
    if (A.rows() == 0) return Vector();
    Eigen::PartialPivLU<Matrix> lu(A);
    const Matrix& U = lu.matrixLU();
    const double scale = A.cwiseAbs().maxCoeff() * A.rows();
    double min_pivot = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < U.rows(); ++i)
        min_pivot = std::min(min_pivot, std::fabs(U(i, i)));
    if (min_pivot <= 1e-14 * scale)
        throw SingularMatrixError("solve_linear: matrix singular to tolerance (pivot " +
                                  std::to_string(min_pivot) + ")");
    return lu.solve(b);
}

PencilEigen eigen_symmetric_pencil(const Matrix& A, const Matrix& K) {
    if (A.rows() != A.cols() || K.rows() != K.cols() || A.rows() != K.rows())
        throw Error("eigen_symmetric_pencil: size mismatch");
    if (relative_asymmetry(A) > 1e-10)
        throw Error("eigen_symmetric_pencil: A not symmetric to tolerance");
    Eigen::LLT<Matrix> llt(K);
    if (llt.info() != Eigen::Success)
        throw NotPositiveDefiniteError("eigen_symmetric_pencil: K not positive definite");
    Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> es(A, K);
    if (es.info() != Eigen::Success)
        throw ConvergenceError("eigen_symmetric_pencil: eigensolver failed");
    return {es.eigenvalues(), es.eigenvectors()};
}

std::vector<std::complex<double>> eigen_general(const Matrix& M) {
    if (M.rows() != M.cols()) throw Error("eigen_general: matrix not square");
    Eigen::EigenSolver<Matrix> es(M, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw ConvergenceError("eigen_general: iteration failed to converge");
    std::vector<std::complex<double>> out(M.rows());
    for (Eigen::Index i = 0; i < M.rows(); ++i) out[i] = es.eigenvalues()(i);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

Matrix kernel_basis(const Matrix& M, double tol) {
    if (tol <= 0.0) throw Error("kernel_basis: tol must be positive");
    if (M.size() == 0) return Matrix(0, 0);
    Eigen::BDCSVD<Matrix> svd(M, Eigen::ComputeFullV);
    const auto& sigma = svd.singularValues();
    const double smax = sigma.size() ? sigma(0) : 0.0;
    const double thresh = tol * smax;
    int dim = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i)
        if (sigma(i) <= thresh) ++dim;
    // With fewer rows than columns the trailing V columns are unreachable by sigma.
    dim += static_cast<int>(M.cols() - sigma.size());
    Matrix basis = svd.matrixV().rightCols(dim);
    for (Eigen::Index j = 0; j < basis.cols(); ++j) {
        Eigen::Index imax;
        basis.col(j).cwiseAbs().maxCoeff(&imax);
        if (basis(imax, j) < 0) basis.col(j) = -basis.col(j);
    }
    return basis;
}

double relative_asymmetry(const Matrix& A) {
    const double na = A.norm();
    if (na == 0.0) return 0.0;
    return (A - A.transpose()).norm() / na;
}

}  // namespace bvpindex::linalg
