#include "bvpindex/fem.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace bvpindex::fem {

namespace {

using linalg::Matrix;
using linalg::Vector;

// 4-point Gauss-Legendre on [-1,1]
constexpr double kGaussX[4] = {-0.8611363115940526, -0.3399810435848563,
                               0.3399810435848563, 0.8611363115940526};
constexpr double kGaussW[4] = {0.34785484513745385, 0.6521451548625461,
                               0.6521451548625461, 0.34785484513745385};

using Term = std::function<double(double, double)>;

Term expr_term(const expr::Expression* e) {
    if (!e) return nullptr;
    return [e](double x, double v) { return e->eval2(x, v); };
}

}  // namespace

Discretization::Discretization(int n_elements) : n_(n_elements) {
    if (n_ < 2) throw Error("Discretization: need at least 2 elements");
    const int dim = n_ - 1;
    const double h = 1.0 / n_;
    quad_.resize(n_);
    for (int e = 0; e < n_; ++e) {
        quad_[e].resize(4);
        const double x0 = double(e) / n_;
        for (int qi = 0; qi < 4; ++qi) {
            quad_[e][qi].x = x0 + 0.5 * h * (1.0 + kGaussX[qi]);
            quad_[e][qi].w = 0.5 * h * kGaussW[qi];
        }
    }
    K_ = Matrix::Zero(dim, dim);
    M_ = Matrix::Zero(dim, dim);
    for (int e = 0; e < n_; ++e) {
        const int left = e - 1;    // interior index of node e
        const int right = e;       // interior index of node e+1
        for (const auto& qp : quad_[e]) {
            const double xi = (qp.x - double(e) / n_) / h;  // local coordinate
            const double phiL = 1.0 - xi, phiR = xi;
            const double dphiL = -1.0 / h, dphiR = 1.0 / h;
            if (left >= 0) {
                K_(left, left) += qp.w * dphiL * dphiL;
                M_(left, left) += qp.w * phiL * phiL;
            }
            if (right < dim) {
                K_(right, right) += qp.w * dphiR * dphiR;
                M_(right, right) += qp.w * phiR * phiR;
            }
            if (left >= 0 && right < dim) {
                K_(left, right) += qp.w * dphiL * dphiR;
                K_(right, left) += qp.w * dphiR * dphiL;
                M_(left, right) += qp.w * phiL * phiR;
                M_(right, left) += qp.w * phiR * phiL;
            }
        }
    }
}

double Discretization::interpolate(const Vector& u, double x) const {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    int e = std::min(n_ - 1, static_cast<int>(x * n_));
    const double h = 1.0 / n_;
    const double xi = (x - e * h) / h;
    const double uL = e - 1 >= 0 ? u(e - 1) : 0.0;
    const double uR = e < n_ - 1 ? u(e) : 0.0;
    return uL * (1.0 - xi) + uR * xi;
}

Vector Discretization::coefficients_from_nodal(const std::vector<double>& nodal) const {
    if (static_cast<int>(nodal.size()) != n_ + 1)
        throw Error("coefficients_from_nodal: expected N+1 nodal values");
    Vector u(dim());
    for (int j = 1; j < n_; ++j) u(j - 1) = nodal[j];
    return u;
}

namespace {

Vector assemble_terms(const Discretization& disc, const Term& grad_flux, const Term& flux,
                      const Term& source, const Vector& u) {
    const int n = disc.n_elements();
    const int dim = disc.dim();
    if (u.size() != dim) throw Error("assemble: coefficient size mismatch");
    const double h = disc.h();
    Vector r = Vector::Zero(dim);
    for (int e = 0; e < n; ++e) {
        const int left = e - 1;
        const int right = e;
        const double uL = left >= 0 ? u(left) : 0.0;
        const double uR = right < dim ? u(right) : 0.0;
        const double du = (uR - uL) / h;
        for (const auto& qp : disc.quadrature(e)) {
            const double xi = (qp.x - double(e) / n) * n;
            const double uval = uL * (1.0 - xi) + uR * xi;
            double gf = 0.0, fl = 0.0, sv = 0.0;
            if (grad_flux) gf = grad_flux(qp.x, du);
            if (flux) fl = flux(qp.x, uval);
            if (source) sv = source(qp.x, uval);
            if (!std::isfinite(gf) || !std::isfinite(fl) || !std::isfinite(sv))
                throw Error("assemble: non-finite term value at quadrature point x = " +
                            std::to_string(qp.x));
            const double dflux = gf + fl;
            if (left >= 0) r(left) += qp.w * (dflux * (-1.0 / h) + sv * (1.0 - xi));
            if (right < dim) r(right) += qp.w * (dflux * (1.0 / h) + sv * xi);
        }
    }
    return r;
}

}  // namespace

Vector assemble_weak(const Discretization& disc, const WeakTerms& terms, const Vector& u) {
    return assemble_terms(disc, expr_term(terms.grad_flux), expr_term(terms.flux),
                          expr_term(terms.source), u);
}

Vector assemble_residual(const Discretization& disc, const ProblemSpec& spec, const Vector& u) {
    Term gf;
    if (spec.f) {
        const expr::Expression* f = &*spec.f;
        gf = [f](double x, double s) { return f->eval2(x, s); };
    } else {
        const expr::Expression* p = &spec.p;
        gf = [p](double x, double s) { return p->eval2(x, 0.0) * s; };
    }
    return assemble_terms(disc, gf,
                          spec.q ? expr_term(&*spec.q) : Term(),
                          spec.g ? expr_term(&*spec.g) : Term(), u);
}

namespace {

reduction::OperatorPencil assemble_pencil_terms(const Discretization& disc, const Term& a,
                                                const Term& b, const Term& c) {
    const int n = disc.n_elements();
    const int dim = disc.dim();
    const double h = disc.h();
    Matrix A = Matrix::Zero(dim, dim);
    for (int e = 0; e < n; ++e) {
        const int idx[2] = {e - 1, e};
        for (const auto& qp : disc.quadrature(e)) {
            const double xi = (qp.x - double(e) / n) * n;
            const double phi[2] = {1.0 - xi, xi};
            const double dphi[2] = {-1.0 / h, 1.0 / h};
            double av = 0.0, bv = 0.0, cv = 0.0;
            if (a) {
                av = a(qp.x, 0.0);
                if (!(av > 0.0))
                    throw EllipticityError("assemble_linear_pencil: gradient coefficient " +
                                           std::to_string(av) + " <= 0 at x = " +
                                           std::to_string(qp.x));
            }
            if (b) bv = b(qp.x, 0.0);
            if (c) cv = c(qp.x, 0.0);
            for (int i = 0; i < 2; ++i) {
                if (idx[i] < 0 || idx[i] >= dim) continue;
                for (int j = 0; j < 2; ++j) {
                    if (idx[j] < 0 || idx[j] >= dim) continue;
                    double val = 0.0;
                    if (a) val += av * dphi[j] * dphi[i];
                    if (b) val += bv * phi[j] * dphi[i];
                    if (c) val += cv * phi[j] * phi[i];
                    A(idx[i], idx[j]) += qp.w * val;
                }
            }
        }
    }
    return {A, disc.stiffness()};
}

}  // namespace

reduction::OperatorPencil assemble_linear_pencil(const Discretization& disc,
                                                 const expr::Expression* a,
                                                 const expr::Expression* b,
                                                 const expr::Expression* c) {
    if (!a) throw Error("assemble_linear_pencil: gradient coefficient required");
    return assemble_pencil_terms(disc, expr_term(a), expr_term(b), expr_term(c));
}

namespace {

struct NearestEigen {
    double value = 0.0;
    bool real_ok = true;
};

// Real (A, M)-eigenvalue nearest zero; target_index >= 0 selects by ascending
// real part instead.
NearestEigen pencil_eigen_near_zero(const Matrix& A, const Matrix& M, int target_index) {
    if (linalg::relative_asymmetry(A) <= 1e-10) {
        const auto pe = linalg::eigen_symmetric_pencil(Matrix((A + A.transpose()) / 2), M);
        if (target_index >= 0) {
            if (target_index >= pe.values.size())
                throw Error("resonance_align: target eigenvalue index out of range");
            return {pe.values(target_index), true};
        }
        Eigen::Index best = 0;
        pe.values.cwiseAbs().minCoeff(&best);
        return {pe.values(best), true};
    }
    Eigen::LLT<Matrix> mllt(Matrix((M + M.transpose()) / 2));
    if (mllt.info() != Eigen::Success)
        throw NotPositiveDefiniteError("resonance_align: mass matrix not positive definite");
    const auto evs = linalg::eigen_general(mllt.solve(A));
    double scale = 0.0;
    for (const auto& ev : evs) scale = std::max(scale, std::abs(ev));
    if (target_index >= 0) {
        const auto& ev = evs.at(target_index);  // already sorted by real part
        return {ev.real(), std::fabs(ev.imag()) <= 1e-8 * std::max(scale, 1.0)};
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < evs.size(); ++i)
        if (std::abs(evs[i]) < std::abs(evs[best])) best = i;
    return {evs[best].real(),
            std::fabs(evs[best].imag()) <= 1e-8 * std::max(scale, 1.0)};
}

// One eigenvalue of (A, M) polished by inverse iteration with Rayleigh quotients.
// The shift stays fixed for the first solves so the iterate locks onto the
// eigenvector nearest lambda0 before the quotient update takes over.
double refine_eigenvalue(const Matrix& A, const Matrix& M, double lambda0) {
    std::mt19937 rng(0x51AB1E);
    std::normal_distribution<double> nd(0.0, 1.0);
    Vector v(A.rows());
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = nd(rng);
    v.normalize();

    Eigen::PartialPivLU<Matrix> lu0(Matrix(A - lambda0 * M));
    for (int it = 0; it < 3; ++it) {
        Vector w = lu0.solve(M * v);
        const double wn = w.norm();
        if (!std::isfinite(wn) || wn == 0.0) return lambda0;
        v = w / wn;
    }

    double lambda = lambda0;
    for (int it = 0; it < 4; ++it) {
        const double den = v.dot(M * v);
        if (den == 0.0) break;
        const double next = v.dot(A * v) / den;
        if (!std::isfinite(next)) break;
        lambda = next;
        Eigen::PartialPivLU<Matrix> lu(Matrix(A - lambda * M));
        Vector w = lu.solve(M * v);
        const double wn = w.norm();
        if (!std::isfinite(wn) || wn == 0.0) break;
        v = w / wn;
    }
    // a refinement that wandered to a different eigenvalue is worse than none
    if (std::fabs(lambda - lambda0) > 0.01 * (1.0 + std::fabs(lambda0))) return lambda0;
    return lambda;
}

}  // namespace

AlignResult resonance_align(const reduction::OperatorPencil& pencil, const Discretization& disc,
                            const AlignOptions& opt) {
    const Matrix& A = pencil.A;
    const Matrix& M = disc.mass();

    Eigen::LLT<Matrix> kllt(Matrix((pencil.K + pencil.K.transpose()) / 2));
    if (kllt.info() != Eigen::Success)
        throw NotPositiveDefiniteError("resonance_align: K not positive definite");

    // already singular to tolerance: aligning again must change nothing
    {
        const int kdim = static_cast<int>(linalg::kernel_basis(kllt.solve(A), opt.tol).cols());
        if (kdim == opt.declared_multiplicity) {
            AlignResult out;
            out.pencil = pencil;
            out.shift = 0.0;
            out.rel_distance = 0.0;
            out.kernel_dim = kdim;
            return out;
        }
    }

    const auto near = pencil_eigen_near_zero(A, M, opt.target_index);
    if (!near.real_ok)
        throw MisdeclaredResonanceError("resonance_align: nearest pencil eigenvalue is complex");

    double ref = opt.coefficient_scale;
    if (ref <= 0.0) {
        const auto base = linalg::eigen_symmetric_pencil(disc.stiffness(), M);
        ref = base.values(0);  // ~ pi^2 on (0,1)
    }
    const double rel = std::fabs(near.value) / ref;
    if (rel > opt.max_rel_distance)
        throw MisdeclaredResonanceError(
            "resonance_align: nearest pencil eigenvalue is " +
            std::to_string(100.0 * rel) + "% away from the declared resonant value");

    const double lambda = refine_eigenvalue(A, M, near.value);
    AlignResult out;
    out.shift = lambda;
    out.rel_distance = rel;
    out.pencil = {Matrix(A - lambda * M), pencil.K};
    out.kernel_dim = static_cast<int>(linalg::kernel_basis(kllt.solve(out.pencil.A), opt.tol).cols());
    if (out.kernel_dim != opt.declared_multiplicity)
        throw MisdeclaredResonanceError("resonance_align: aligned kernel dimension " +
                                        std::to_string(out.kernel_dim) + " != declared " +
                                        std::to_string(opt.declared_multiplicity));
    return out;
}

double embedding_constant(const Discretization& disc) {
    const auto pe = linalg::eigen_symmetric_pencil(disc.stiffness(), disc.mass());
    return 1.0 / std::sqrt(pe.values(0));
}

double monotonicity_probe(const ProblemSpec& spec, int sample_count) {
    if (sample_count < 1000) sample_count = 1000;
    const int nx = 11;
    int levels = 8;
    while ((2 * levels + 1) * (2 * levels) * nx < sample_count) ++levels;

    std::vector<double> sgrid;
    sgrid.push_back(0.0);
    for (int j = 0; j < levels; ++j) {
        const double v = 10.0 * std::ldexp(1.0, -j);
        sgrid.push_back(v);
        sgrid.push_back(-v);
    }
    std::sort(sgrid.begin(), sgrid.end());

    auto fval = [&spec](double x, double s) {
        if (spec.f) return spec.f->eval2(x, s);
        return spec.p.eval2(x, 0.0) * s;
    };

    double m_hat = std::numeric_limits<double>::infinity();
    for (int ix = 0; ix < nx; ++ix) {
        const double x = double(ix) / (nx - 1);
        for (std::size_t i = 0; i < sgrid.size(); ++i)
            for (std::size_t j = 0; j < sgrid.size(); ++j) {
                if (i == j) continue;
                const double xi = sgrid[i], eta = sgrid[j];
                const double quot = (fval(x, xi) - fval(x, eta)) / (xi - eta);
                m_hat = std::min(m_hat, quot);
            }
    }
    return m_hat;
}

bool dirichlet_zero_check(const ProblemSpec& spec, const Discretization& disc) {
    for (int e = 0; e < disc.n_elements(); ++e)
        for (const auto& qp : disc.quadrature(e)) {
            const double f0 = spec.f ? spec.f->eval2(qp.x, 0.0) : 0.0;
            const double q0 = spec.q ? spec.q->eval2(qp.x, 0.0) : 0.0;
            const double g0 = spec.g ? spec.g->eval2(qp.x, 0.0) : 0.0;
            if (std::fabs(f0) > 1e-12 || std::fabs(q0) > 1e-12 || std::fabs(g0) > 1e-12)
                return false;
        }
    return true;
}

namespace {

DeclCheck remainder_check(const std::string& name, const expr::Expression& full,
                          const expr::Expression* prime, const PrincipalPart* part,
                          bool infinity_side) {
    DeclCheck chk;
    chk.name = name;
    const double order = part ? part->decl.order : 1.0;
    for (int j = 0; j < 3; ++j) {
        const double mag = infinity_side ? std::pow(10.0, 2 + j) : std::pow(10.0, -2 - j);
        double worst = 0.0;
        for (int ix = 0; ix <= 8; ++ix) {
            const double x = ix / 8.0;
            for (const double sign : {1.0, -1.0}) {
                const double t = sign * mag;
                double rem = full.eval2(x, t);
                if (prime) rem -= prime->eval2(x, 0.0) * t;
                if (part) rem -= part->expression.eval2(x, t);
                worst = std::max(worst, std::fabs(rem) / std::pow(mag, order));
            }
        }
        chk.ratios.push_back(worst);
    }
    const double r0 = chk.ratios[0], r1 = chk.ratios[1], r2 = chk.ratios[2];
    chk.passed = (r0 == 0.0 && r1 == 0.0 && r2 == 0.0) ||
                 (r2 <= r1 * (1 + 1e-9) && r1 <= r0 * (1 + 1e-9) && r2 < r0);
    return chk;
}

}  // namespace

std::vector<DeclCheck> validate_asymptotic_declarations(const ProblemSpec& spec) {
    std::vector<DeclCheck> out;
    if (spec.g && spec.gprimeInf)
        out.push_back(remainder_check("g_infinity", *spec.g, &*spec.gprimeInf,
                                      spec.gk ? &*spec.gk : nullptr, true));
    if (spec.q && spec.qprimeInf)
        out.push_back(remainder_check("q_infinity", *spec.q, &*spec.qprimeInf,
                                      spec.qk ? &*spec.qk : nullptr, true));
    if (spec.f && spec.fprimeInf)
        out.push_back(remainder_check("f_infinity", *spec.f, &*spec.fprimeInf,
                                      spec.fk ? &*spec.fk : nullptr, true));
    if (spec.g && spec.gprime0)
        out.push_back(remainder_check("g_zero", *spec.g, &*spec.gprime0,
                                      spec.gl ? &*spec.gl : nullptr, false));
    if (spec.q && spec.qprime0)
        out.push_back(remainder_check("q_zero", *spec.q, &*spec.qprime0,
                                      spec.ql ? &*spec.ql : nullptr, false));
    return out;
}

namespace {

const expr::Expression* zero_grad_coefficient(const ProblemSpec& spec) {
    return spec.fprime0 ? &*spec.fprime0 : &spec.p;
}

const expr::Expression* infinity_grad_coefficient(const ProblemSpec& spec) {
    if (spec.fprimeInf) return &*spec.fprimeInf;
    return zero_grad_coefficient(spec);
}

}  // namespace

reduction::OperatorPencil zero_side_pencil(const ProblemSpec& spec, const Discretization& disc,
                                           double tuning_amplitude) {
    const expr::Expression* a = zero_grad_coefficient(spec);
    Term bterm;
    if (spec.qprime0_tuning) {
        const expr::Expression* shape = &spec.qprime0_tuning->shape;
        bterm = [shape, tuning_amplitude](double x, double) {
            return tuning_amplitude * shape->eval2(x, 0.0);
        };
    } else if (spec.qprime0) {
        bterm = expr_term(&*spec.qprime0);
    }
    return assemble_pencil_terms(disc, expr_term(a), bterm,
                                 spec.gprime0 ? expr_term(&*spec.gprime0) : Term());
}

reduction::OperatorPencil infinity_side_pencil(const ProblemSpec& spec,
                                               const Discretization& disc) {
    return assemble_pencil_terms(disc, expr_term(infinity_grad_coefficient(spec)),
                                 spec.qprimeInf ? expr_term(&*spec.qprimeInf) : Term(),
                                 spec.gprimeInf ? expr_term(&*spec.gprimeInf) : Term());
}

TuneResult tune_zero_resonance(const ProblemSpec& spec, const Discretization& disc) {
    if (!spec.qprime0_tuning) throw Error("tune_zero_resonance: no tuning request in the spec");
    const auto& tune = *spec.qprime0_tuning;
    const Matrix& M = disc.mass();

    auto nearest = [&](double a) -> NearestEigen {
        const auto pencil = zero_side_pencil(spec, disc, a);
        return pencil_eigen_near_zero(pencil.A, M, -1);
    };

    const int scan = 33;
    TuneResult out;
    double prev_a = tune.range_lo;
    NearestEigen prev = nearest(prev_a);
    for (int i = 1; i < scan; ++i) {
        const double a = tune.range_lo + (tune.range_hi - tune.range_lo) * i / (scan - 1);
        const NearestEigen cur = nearest(a);
        if (prev.real_ok && cur.real_ok && prev.value * cur.value <= 0.0 &&
            (prev.value != 0.0 || cur.value != 0.0)) {
            double lo = prev_a, hi = a, flo = prev.value;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                const NearestEigen nm = nearest(mid);
                if (!nm.real_ok) break;
                if (std::fabs(nm.value) < 1e-12) {
                    lo = hi = mid;
                    break;
                }
                if (flo * nm.value <= 0.0) hi = mid;
                else {
                    lo = mid;
                    flo = nm.value;
                }
            }
            out.found = true;
            out.amplitude = 0.5 * (lo + hi);
            AlignOptions aopt;
            aopt.max_rel_distance = 1.0;  // bisection already localized the eigenvalue
            out.aligned = resonance_align(zero_side_pencil(spec, disc, out.amplitude), disc, aopt);
            return out;
        }
        prev_a = a;
        prev = cur;
    }
    return out;
}

}  // namespace bvpindex::fem
