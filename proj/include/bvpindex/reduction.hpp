#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "bvpindex/degree.hpp"
#include "bvpindex/expr.hpp"
#include "bvpindex/linalg.hpp"

namespace bvpindex::reduction {

/// Linearization pencil: bilinear form A (v^T A u) and Gram matrix K of the
/// discrete inner product.  K^{-1} A is the operator whose spectrum drives the
/// index formulas.
struct OperatorPencil {
    linalg::Matrix A;
    linalg::Matrix K;
};

struct AnalyzeOptions {
    double tol = 1e-8;
    unsigned completion_seed = 0;  // seed for the nondegenerate completion of T
};

/// Spectral data of M = K^{-1}A around the eigenvalue 0, plus the negative
/// spectrum count entering the sign factor of the index formulas.
struct SpectralStructure {
    int n = 0;
    int nu = 0;   // algebraic multiplicity of real eigenvalues < 0
    int n0 = 0;   // dim of the root subspace at 0
    int l = 0;    // dim ker M = number of Jordan blocks at 0
    bool symmetric = false;
    double scale = 1.0;  // max |eigenvalue| of M
    std::vector<std::complex<double>> eigenvalues;  // sorted by (re, im)

    linalg::Matrix kernel;      // n x l, K-orthonormal
    linalg::Matrix root_basis;  // n x n0, first l columns = kernel
    linalg::Matrix P0, P1;      // projectors onto ker and root subspace
    linalg::Matrix coords;      // n0 x n: coordinates on the root subspace
    linalg::Matrix T;           // n0 x n0 normalizer, T*(M|X1)/scale = (P^0 P1)|X1
    double t_residual = 0.0;
    double det_T = 1.0;
};

SpectralStructure analyze_pencil(const OperatorPencil& pencil, const AnalyzeOptions& opt = {});

/// The finite-dimensional map on kernel coordinates whose degree enters the
/// index formulas.
struct ReducedMap {
    int dim = 0;
    double order = 0.0;
    expr::Parity parity = expr::Parity::none;
    std::function<linalg::Vector(const linalg::Vector&)> theta;

    degree::FiniteMap as_finite_map() const {
        return {dim, theta, order, parity == expr::Parity::odd};
    }
};

/// Builds c -> kernel coordinates of P0 T P1 K^{-1} C(sum c_i phi_i).
/// `residual_assembler` maps a full-space vector to the covector of the
/// homogeneous principal part; it is sample-checked for the declared order.
ReducedMap build_reduced_map(const SpectralStructure& s, const OperatorPencil& pencil,
                             const std::function<linalg::Vector(const linalg::Vector&)>& residual_assembler,
                             double order, expr::Parity parity);

struct IndexResult {
    bool defined = true;
    int value = 0;
    bool heuristic = false;
    std::string reason;  // set when !defined
    int nu = 0, n0 = 0, l = 0;
    std::optional<int> deg_theta;
    int complement_factor = 1;  // (-1)^nu, the sign of the linearization on the complement
};

/// Index formula at a zero: (-1)^(nu + n0 - l) * deg(theta) with theta of order
/// > 1; for an empty kernel the value is (-1)^nu.
IndexResult index_at_zero(const SpectralStructure& s, const ReducedMap* theta);

/// Same formula with an infinity-side reduced map of order in [0, 1).
IndexResult index_at_infinity(const SpectralStructure& s, const ReducedMap* theta);

/// Consistency of the summation property: sum of zero indices == index at infinity.
bool kronecker_check(const std::vector<int>& zero_indices, int infinity_index);

}  // namespace bvpindex::reduction
