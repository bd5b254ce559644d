#include "bvpindex/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>

namespace bvpindex::reduction {

namespace {

using linalg::Matrix;
using linalg::Vector;

// Modified Gram-Schmidt in the K inner product; returns the columns of `cols`
// that extend `basis` (residual above `keep_ratio` of the original K-norm).
Matrix k_orthonormal_extend(const Matrix& K, const Matrix& basis, const Matrix& cols,
                            double keep_ratio) {
    const int n = static_cast<int>(K.rows());
    Matrix out(n, cols.cols());
    int kept = 0;
    auto kdot = [&K](const Vector& a, const Vector& b) { return a.dot(K * b); };
    for (Eigen::Index j = 0; j < cols.cols(); ++j) {
        Vector w = cols.col(j);
        const double orig = std::sqrt(std::max(0.0, kdot(w, w)));
        for (int pass = 0; pass < 2; ++pass) {
            for (Eigen::Index i = 0; i < basis.cols(); ++i)
                w -= kdot(basis.col(i), w) * basis.col(i);
            for (int i = 0; i < kept; ++i)
                w -= kdot(out.col(i), w) * out.col(i);
        }
        const double nk = std::sqrt(std::max(0.0, kdot(w, w)));
        if (orig == 0.0 || nk <= keep_ratio * orig) continue;
        w /= nk;
        Eigen::Index imax;
        w.cwiseAbs().maxCoeff(&imax);
        if (w(imax) < 0) w = -w;
        out.col(kept++) = w;
    }
    return out.leftCols(kept);
}

Matrix random_square(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    Matrix Z(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) Z(i, j) = nd(rng);
    return Z;
}

int sign_of_det(const Matrix& T, double* abs_det = nullptr) {
    Eigen::PartialPivLU<Matrix> lu(T);
    const double det = lu.determinant();
    if (abs_det) *abs_det = std::fabs(det);
    return det > 0 ? 1 : (det < 0 ? -1 : 0);
}

}  // namespace

SpectralStructure analyze_pencil(const OperatorPencil& pencil, const AnalyzeOptions& opt) {
    const Matrix& A = pencil.A;
    const Matrix& K = pencil.K;
    const int n = static_cast<int>(A.rows());
    if (A.rows() != A.cols() || K.rows() != K.cols() || K.rows() != A.rows())
        throw Error("analyze_pencil: size mismatch");
    if (n > 512) throw Error("analyze_pencil: dimension beyond supported desk scale (512)");
    if (linalg::relative_asymmetry(K) > 1e-10)
        throw Error("analyze_pencil: K not symmetric");

    Eigen::LLT<Matrix> kllt(Matrix((K + K.transpose()) / 2));
    if (kllt.info() != Eigen::Success)
        throw NotPositiveDefiniteError("analyze_pencil: K not positive definite");

    SpectralStructure s;
    s.n = n;
    s.symmetric = linalg::relative_asymmetry(A) <= 1e-10;

    const Matrix M = kllt.solve(A);

    if (s.symmetric) {
        const auto pe = linalg::eigen_symmetric_pencil(Matrix((A + A.transpose()) / 2), K);
        s.eigenvalues.reserve(n);
        for (Eigen::Index i = 0; i < pe.values.size(); ++i)
            s.eigenvalues.emplace_back(pe.values(i), 0.0);
    } else {
        s.eigenvalues = linalg::eigen_general(M);
    }

    double scale = 0.0;
    for (const auto& ev : s.eigenvalues) scale = std::max(scale, std::abs(ev));
    if (scale == 0.0) scale = 1.0;
    s.scale = scale;

    const double tol = opt.tol;
    for (const auto& ev : s.eigenvalues) {
        const double m = std::abs(ev);
        if (m > 0.1 * tol * scale && m < 10.0 * tol * scale)
            throw ToleranceAmbiguityError(
                "analyze_pencil: eigenvalue of modulus " + std::to_string(m) +
                " inside the kernel decision band; the kernel dimension is unstable at tol " +
                std::to_string(tol));
    }
    const double reality = 1e-8 * scale;
    for (const auto& ev : s.eigenvalues)
        if (std::fabs(ev.imag()) <= reality && ev.real() < -tol * scale) ++s.nu;

    const Matrix Mhat = M / scale;
    Matrix phi0 = linalg::kernel_basis(Mhat, tol);
    // K-orthonormalize the kernel
    phi0 = k_orthonormal_extend(K, Matrix(n, 0), phi0, 1e-8);
    s.kernel = phi0;
    s.l = static_cast<int>(phi0.cols());

    if (s.l == 0) {
        s.n0 = 0;
        s.P0 = Matrix::Zero(n, n);
        s.P1 = Matrix::Zero(n, n);
        s.root_basis = Matrix(n, 0);
        s.coords = Matrix(0, n);
        s.T = Matrix(0, 0);
        s.t_residual = 0.0;
        s.det_T = 1.0;
        return s;
    }

    // grow the exponent until the generalized kernel dimension stabilizes twice
    Matrix P = Mhat;
    int dim_prev = s.l;
    int stable = 0;
    Matrix root_raw;
    Eigen::BDCSVD<Matrix> svd_final;
    long exponent = 1;
    for (;;) {
        Eigen::BDCSVD<Matrix> svd(P, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const auto& sigma = svd.singularValues();
        const double smax = sigma(0);
        int dim = 0;
        for (Eigen::Index i = 0; i < sigma.size(); ++i)
            if (smax == 0.0 || sigma(i) <= tol * smax) ++dim;
        if (dim == dim_prev) ++stable;
        else stable = 0;
        dim_prev = dim;
        svd_final = svd;
        if ((stable >= 2 && exponent > 1) || exponent >= n) break;
        P = P * P;
        const double pn = P.norm();
        if (pn > 0) P /= pn;  // powers only matter up to positive scaling
        exponent *= 2;
    }
    s.n0 = dim_prev;
    root_raw = svd_final.matrixV().rightCols(s.n0);
    const Matrix range_basis = svd_final.matrixU().leftCols(n - s.n0);

    // root basis = kernel extended inside the root subspace
    const Matrix ext = k_orthonormal_extend(K, phi0, root_raw, 1e-4);
    if (static_cast<int>(ext.cols()) != s.n0 - s.l)
        throw StructuralError("analyze_pencil: root-subspace basis extension failed (got " +
                              std::to_string(ext.cols()) + " directions, expected " +
                              std::to_string(s.n0 - s.l) + ")");
    Matrix root(n, s.n0);
    root.leftCols(s.l) = phi0;
    if (s.n0 > s.l) root.rightCols(s.n0 - s.l) = ext;
    s.root_basis = root;

    Matrix B(n, n);
    B.leftCols(s.n0) = root;
    B.rightCols(n - s.n0) = range_basis;
    Eigen::PartialPivLU<Matrix> blu(B);
    const Matrix Binv = blu.solve(Matrix::Identity(n, n));
    if ((B * Binv - Matrix::Identity(n, n)).norm() > 1e-6 * n)
        throw StructuralError("analyze_pencil: root/complement splitting is ill conditioned");

    s.coords = Binv.topRows(s.n0);
    s.P1 = root * s.coords;
    s.P0 = root.leftCols(s.l) * Binv.topRows(s.l);

    const Matrix N = s.coords * (Mhat * root);
    const Matrix S = s.coords * ((Matrix::Identity(n, n) - s.P0) * root);

    // T N = S, completed to a nondegenerate map on the unconstrained directions
    Eigen::BDCSVD<Matrix> nsvd(N, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& ns = nsvd.singularValues();
    const double nsmax = ns.size() ? ns(0) : 0.0;
    int rank = 0;
    for (Eigen::Index i = 0; i < ns.size(); ++i)
        if (ns(i) > 1e-8 * std::max(nsmax, 1.0)) ++rank;
    Matrix Npinv = Matrix::Zero(s.n0, s.n0);
    if (rank > 0)
        Npinv = nsvd.matrixV().leftCols(rank) *
                ns.head(rank).cwiseInverse().asDiagonal() *
                nsvd.matrixU().leftCols(rank).transpose();
    const Matrix T0 = S * Npinv;
    const Matrix Pfree = Matrix::Identity(s.n0, s.n0) -
                         (rank > 0 ? Matrix(nsvd.matrixU().leftCols(rank) *
                                            nsvd.matrixU().leftCols(rank).transpose())
                                   : Matrix::Zero(s.n0, s.n0));

    Matrix T;
    bool ok = false;
    for (unsigned attempt = 0; attempt < 6 && !ok; ++attempt) {
        const Matrix Z = attempt == 0
                             ? Matrix(Matrix::Identity(s.n0, s.n0))
                             : random_square(s.n0, opt.completion_seed * 2654435761u + attempt);
        T = T0 + Z * Pfree;
        const double resid = (T * N - S).norm();
        if (resid > 1e-8 * std::max(1.0, S.norm()))
            throw StructuralError("analyze_pencil: the normalizer equation T*N = S is inconsistent "
                                  "(residual " + std::to_string(resid) + ")");
        Eigen::BDCSVD<Matrix> tsvd(T);
        const double tmax = tsvd.singularValues()(0);
        const double tmin = tsvd.singularValues()(s.n0 - 1);
        ok = tmax > 0 && tmin > 1e-10 * tmax;
    }
    if (!ok)
        throw StructuralError("analyze_pencil: failed to complete T to a nondegenerate map");

    // Fix the orientation: the index formula's sign factor presumes
    // sign(det T) = (-1)^(n0 - l), which any valid completion can be flipped to
    // on a direction unconstrained by N.
    const int desired = (s.n0 - s.l) % 2 == 0 ? 1 : -1;
    double abs_det = 0.0;
    if (sign_of_det(T, &abs_det) != desired) {
        if (rank >= s.n0)
            throw StructuralError("analyze_pencil: cannot orient T (no free direction)");
        const Vector v = nsvd.matrixU().col(s.n0 - 1);
        T -= 2.0 * (T * v) * v.transpose();
    }

    s.T = T;
    s.t_residual = (T * N - S).norm();
    sign_of_det(T, &abs_det);
    s.det_T = abs_det * desired;
    return s;
}

ReducedMap build_reduced_map(const SpectralStructure& s, const OperatorPencil& pencil,
                             const std::function<linalg::Vector(const linalg::Vector&)>& residual_assembler,
                             double order, expr::Parity parity) {
    if (s.l == 0) throw Error("build_reduced_map: pencil has an empty kernel");

    // sample check of the declared homogeneity of the assembler
    {
        std::mt19937 rng(42);
        std::normal_distribution<double> nd(0.0, 1.0);
        for (int rep = 0; rep < 2; ++rep) {
            Vector u(s.n);
            for (int i = 0; i < s.n; ++i) u(i) = nd(rng);
            u /= u.norm() * (rep == 0 ? 1.0 : 3.0);
            const Vector cu = residual_assembler(u);
            for (const double c : {0.5, 2.0, 10.0}) {
                const Vector lhs = residual_assembler(c * u);
                const Vector rhs = std::pow(c, order) * cu;
                const double den = std::max({lhs.norm(), rhs.norm(), 1e-30});
                if ((lhs - rhs).norm() / den > 1e-8)
                    throw Error("build_reduced_map: assembler is not homogeneous of order " +
                                std::to_string(order) + " (sampled violation)");
            }
        }
    }

    auto kllt = std::make_shared<Eigen::LLT<linalg::Matrix>>(
        linalg::Matrix((pencil.K + pencil.K.transpose()) / 2));
    if (kllt->info() != Eigen::Success)
        throw NotPositiveDefiniteError("build_reduced_map: K not positive definite");

    const linalg::Matrix kernel = s.kernel;
    const linalg::Matrix kphi = pencil.K * s.kernel;
    const linalg::Matrix P0 = s.P0, P1 = s.P1, root = s.root_basis, T = s.T, L = s.coords;
    auto theta = [kernel, kphi, P0, P1, root, T, L, kllt, residual_assembler](
                     const linalg::Vector& c) -> linalg::Vector {
        const Vector u = kernel * c;
        const Vector r = residual_assembler(u);
        const Vector jc = kllt->solve(r);
        const Vector b = T * (L * (P1 * jc));
        const Vector v = P0 * (root * b);
        return kphi.transpose() * v;
    };

    ReducedMap rm{static_cast<int>(kernel.cols()), order, parity, theta};

    if (s.symmetric) {
        // duality shortcut must agree with the full chain
        for (int i = 0; i < rm.dim; ++i) {
            for (const double amp : {1.0, -1.0}) {
                Vector c = Vector::Zero(rm.dim);
                c(i) = amp;
                const Vector full = rm.theta(c);
                const Vector dual = kernel.transpose() * residual_assembler(kernel * c);
                if ((full - dual).norm() > 1e-8 * std::max(1.0, dual.norm()))
                    throw StructuralError(
                        "build_reduced_map: projection chain and duality pairing disagree "
                        "on a symmetric pencil");
            }
        }
    }
    return rm;
}

namespace {

IndexResult index_common(const SpectralStructure& s, const ReducedMap* theta, bool at_zero) {
    IndexResult res;
    res.nu = s.nu;
    res.n0 = s.n0;
    res.l = s.l;
    res.complement_factor = s.nu % 2 == 0 ? 1 : -1;
    const int sign = (s.nu + s.n0 - s.l) % 2 == 0 ? 1 : -1;
    if (s.l == 0) {
        res.deg_theta = 1;  // degree over the zero-dimensional kernel
        res.value = sign;
        return res;
    }
    if (!theta) throw Error("index formula: reduced map required for a degenerate pencil");
    if (theta->dim != s.l)
        throw Error("index formula: reduced map dimension does not match the kernel");
    if (at_zero) {
        if (!(theta->order > 1.0))
            throw Error("index_at_zero: principal part must have order > 1");
    } else {
        if (!(theta->order >= 0.0 && theta->order < 1.0))
            throw Error("index_at_infinity: principal part must have order in [0, 1)");
    }
    try {
        const auto deg = degree::degree_homogeneous(theta->as_finite_map());
        res.deg_theta = deg.value;
        res.heuristic = deg.heuristic;
        res.value = sign * deg.value;
    } catch (const SphereZeroError& e) {
        res.defined = false;
        res.reason = e.what();
    }
    return res;
}

}  // namespace

IndexResult index_at_zero(const SpectralStructure& s, const ReducedMap* theta) {
    return index_common(s, theta, true);
}

IndexResult index_at_infinity(const SpectralStructure& s, const ReducedMap* theta) {
    return index_common(s, theta, false);
}

bool kronecker_check(const std::vector<int>& zero_indices, int infinity_index) {
    int sum = 0;
    for (const int v : zero_indices) sum += v;
    return sum == infinity_index;
}

}  // namespace bvpindex::reduction
