#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bvpindex/expr.hpp"
#include "bvpindex/reduction.hpp"

namespace bvpindex::fem {

/// A declared homogeneous principal part (expression over {x,t} or {x,s}).
struct PrincipalPart {
    expr::Expression expression;
    expr::HomogeneityDecl decl;
};

/// Amplitude tuning request for the zero-side first-order coefficient
/// q'(x,0) = a * shape(x); `a` is searched in `range` until the pencil
/// becomes singular.
struct TuningSpec {
    expr::Expression shape;  // over {x}
    double range_lo = 0.0;
    double range_hi = 1.0;
};

/// Problem data for  -(f(x,u') + q(x,u))' + g(x,u) = 0  on (0,1), u(0)=u(1)=0,
/// together with the declared linearizations and principal parts.
struct ProblemSpec {
    expr::Expression p;                      // over {x}; gradient coefficient
    std::optional<expr::Expression> f;       // over {x,s}; defaults to p(x)*s
    std::optional<expr::Expression> q, g;    // over {x,t}

    std::optional<expr::Expression> fprime0;    // over {x}; defaults to p
    std::optional<expr::Expression> qprime0, gprime0;   // over {x}; default 0
    std::optional<expr::Expression> fprimeInf;  // over {x}; defaults to fprime0 (then p)
    std::optional<expr::Expression> qprimeInf, gprimeInf;

    std::optional<PrincipalPart> fk, qk, gk;  // infinity side, order in [0,1)
    std::optional<PrincipalPart> ql, gl;      // zero side, order > 1

    bool resonant_at_zero = false;
    bool resonant_at_infinity = false;
    std::optional<double> delta;              // coercive-path bound
    std::optional<TuningSpec> qprime0_tuning;
    int n_elements = 200;
};

/// Piecewise-linear Galerkin discretization of (0,1) with homogeneous
/// Dirichlet conditions and a fixed 4-point Gauss-Legendre rule per element.
class Discretization {
public:
    explicit Discretization(int n_elements);

    int n_elements() const { return n_; }
    int dim() const { return n_ - 1; }
    double h() const { return 1.0 / n_; }
    double node(int j) const { return double(j) / n_; }

    const linalg::Matrix& stiffness() const { return K_; }
    const linalg::Matrix& mass() const { return M_; }

    struct QuadPoint {
        double x, w;
    };
    /// 4 points per element, element e spans [e/N, (e+1)/N].
    const std::vector<QuadPoint>& quadrature(int element) const { return quad_[element]; }

    /// Value of the hat-interpolant with coefficients u at x (coefficients are
    /// interior nodal values).
    double interpolate(const linalg::Vector& u, double x) const;

    /// Nodal values -> coefficient vector (drops the boundary nodes).
    linalg::Vector coefficients_from_nodal(const std::vector<double>& nodal) const;

private:
    int n_;
    linalg::Matrix K_, M_;
    std::vector<std::vector<QuadPoint>> quad_;
};

/// Scalar weak-form terms: r(v) = ∫ grad_flux(x,u')·v' + flux(x,u)·v' + source(x,u)·v.
/// Null members are skipped.
struct WeakTerms {
    const expr::Expression* grad_flux = nullptr;  // over {x,s}
    const expr::Expression* flux = nullptr;       // over {x,t}
    const expr::Expression* source = nullptr;     // over {x,t}
};

linalg::Vector assemble_weak(const Discretization& disc, const WeakTerms& terms,
                             const linalg::Vector& u);

/// Residual of the full problem at coefficients u.
linalg::Vector assemble_residual(const Discretization& disc, const ProblemSpec& spec,
                                 const linalg::Vector& u);

/// Bilinear form  v^T A u = ∫ a u'v' + b u v' + c u v  paired with K = stiffness.
/// Throws EllipticityError when a(x) <= 0 at a quadrature point.
reduction::OperatorPencil assemble_linear_pencil(const Discretization& disc,
                                                 const expr::Expression* a,
                                                 const expr::Expression* b,
                                                 const expr::Expression* c);

struct AlignOptions {
    int target_index = -1;          // -1: eigenvalue nearest zero
    int declared_multiplicity = 1;
    double coefficient_scale = 0.0; // misdeclaration reference; 0 -> automatic
    double max_rel_distance = 0.05;
    double tol = 1e-8;
};

struct AlignResult {
    reduction::OperatorPencil pencil;  // shifted: (A - lambda*M, K)
    double shift = 0.0;                // the removed eigenvalue
    double rel_distance = 0.0;         // |shift| / reference scale
    int kernel_dim = 0;
};

/// Shifts the pencil by its (A, M)-eigenvalue nearest the declared resonant
/// value so the discrete kernel becomes exact.
AlignResult resonance_align(const reduction::OperatorPencil& pencil, const Discretization& disc,
                            const AlignOptions& opt = {});

/// Norm of the embedding of the solution space into L2: 1/sqrt(lambda_min) of
/// (stiffness, mass); tends to 1/pi on (0,1).
double embedding_constant(const Discretization& disc);

/// Sampled lower bound of (f(x,xi)-f(x,eta))(xi-eta)/(xi-eta)^2 over a
/// deterministic grid with xi,eta in [-10,10].
double monotonicity_probe(const ProblemSpec& spec, int sample_count = 2000);

/// True iff f(x,0), q(x,0) and g(x,0) vanish (<= 1e-12) at every quadrature point.
bool dirichlet_zero_check(const ProblemSpec& spec, const Discretization& disc);

/// Sampled falsification of the declared linearizations / principal parts:
/// remainder ratios must decrease along |t| in {1e2,1e3,1e4} (infinity side)
/// or {1e-2,1e-3,1e-4} (zero side).
struct DeclCheck {
    std::string name;
    bool passed = true;
    std::vector<double> ratios;
};
std::vector<DeclCheck> validate_asymptotic_declarations(const ProblemSpec& spec);

/// Searches the tuning range for an amplitude making the zero-side pencil
/// singular (sign change of the eigenvalue nearest zero, then bisection).
struct TuneResult {
    bool found = false;
    double amplitude = 0.0;
    AlignResult aligned;
};
TuneResult tune_zero_resonance(const ProblemSpec& spec, const Discretization& disc);

/// Zero-side / infinity-side pencils from the declared linearization coefficients.
reduction::OperatorPencil zero_side_pencil(const ProblemSpec& spec, const Discretization& disc,
                                           double tuning_amplitude = 0.0);
reduction::OperatorPencil infinity_side_pencil(const ProblemSpec& spec, const Discretization& disc);

}  // namespace bvpindex::fem
