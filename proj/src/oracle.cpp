#include "bvpindex/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace bvpindex::oracle {

namespace {

using linalg::Matrix;
using linalg::Vector;

bool lex_less(const Vector& a, const Vector& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i)
        if (a(i) != b(i)) return a(i) < b(i);
    return false;
}

void canonicalize(SolutionSet& set) {
    std::sort(set.solutions.begin(), set.solutions.end(), [](const Solution& a, const Solution& b) {
        if (a.max_norm != b.max_norm) return a.max_norm < b.max_norm;
        return lex_less(a.u, b.u);
    });
    std::vector<Solution> kept;
    for (auto& s : set.solutions) {
        bool dup = false;
        for (const auto& k : kept)
            if ((k.u - s.u).lpNorm<Eigen::Infinity>() < set.distinctness_radius) {
                dup = true;
                break;
            }
        if (!dup) kept.push_back(std::move(s));
    }
    set.solutions = std::move(kept);
}

}  // namespace

int SolutionSet::nontrivial_count(double threshold) const {
    int c = 0;
    for (const auto& s : solutions)
        if (s.max_norm > threshold) ++c;
    return c;
}

bool classical_form(const fem::ProblemSpec& spec) {
    // constant p
    const double p0 = spec.p.eval2(0.0, 0.0);
    for (int i = 0; i <= 16; ++i) {
        const double x = i / 16.0;
        if (std::fabs(spec.p.eval2(x, 0.0) - p0) > 1e-12 * std::max(1.0, std::fabs(p0)))
            return false;
    }
    if (p0 <= 0.0) return false;
    // q absent (or identically zero on a sample grid)
    if (spec.q) {
        for (int i = 0; i <= 8; ++i)
            for (const double t : {-3.7, -1.0, 0.5, 2.0})
                if (std::fabs(spec.q->eval2(i / 8.0, t)) > 1e-13) return false;
    }
    // f, when given, must match p*s
    if (spec.f) {
        for (int i = 0; i <= 8; ++i)
            for (const double s : {-5.0, -0.3, 0.7, 4.0}) {
                const double x = i / 8.0;
                const double want = p0 * s;
                if (std::fabs(spec.f->eval2(x, s) - want) > 1e-12 * (1.0 + std::fabs(want)))
                    return false;
            }
    }
    return true;
}

ShootResult shoot(const fem::ProblemSpec& spec, const fem::Discretization& disc, double slope,
                  int steps) {
    if (!classical_form(spec))
        throw Error("shoot: spec not in classical form (constant p, q = 0, f = p*s)");
    const double p0 = spec.p.eval2(0.0, 0.0);
    const expr::Expression* g = spec.g ? &*spec.g : nullptr;
    auto accel = [g, p0](double x, double u) { return g ? g->eval2(x, u) / p0 : 0.0; };

    const int n_nodes = disc.n_elements() + 1;
    ShootResult out;
    out.nodal.assign(n_nodes, 0.0);

    const double dx = 1.0 / steps;
    double u = 0.0, v = slope;
    std::vector<double> traj(steps + 1);
    traj[0] = 0.0;
    for (int k = 0; k < steps; ++k) {
        const double x = k * dx;
        const double k1u = v, k1v = accel(x, u);
        const double k2u = v + 0.5 * dx * k1v, k2v = accel(x + 0.5 * dx, u + 0.5 * dx * k1u);
        const double k3u = v + 0.5 * dx * k2v, k3v = accel(x + 0.5 * dx, u + 0.5 * dx * k2u);
        const double k4u = v + dx * k3v, k4v = accel(x + dx, u + dx * k3u);
        u += dx / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u);
        v += dx / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
        if (!std::isfinite(u) || !std::isfinite(v) || std::fabs(u) > 1e12) {
            out.diverged = true;
            out.terminal = u;
            return out;
        }
        traj[k + 1] = u;
    }
    out.terminal = u;
    for (int j = 0; j < n_nodes; ++j) {
        const double x = disc.node(j);
        const double pos = x * steps;
        const int k = std::min(steps - 1, static_cast<int>(pos));
        const double frac = pos - k;
        out.nodal[j] = traj[k] * (1.0 - frac) + traj[k + 1] * frac;
    }
    out.nodal[0] = 0.0;
    out.nodal[n_nodes - 1] = traj[steps];
    return out;
}

SolutionSet find_solutions_shooting(const fem::ProblemSpec& spec, const fem::Discretization& disc,
                                    double s_lo, double s_hi, int grid) {
    SolutionSet set;
    set.method = "shooting";
    if (grid < 3) grid = 3;
    set.starts = grid;

    std::vector<double> phi(grid);
    std::vector<bool> ok(grid);
    std::vector<double> svals(grid);
    for (int i = 0; i < grid; ++i) {
        svals[i] = s_lo + (s_hi - s_lo) * i / (grid - 1);
        const auto r = shoot(spec, disc, svals[i]);
        ok[i] = !r.diverged;
        phi[i] = r.terminal;
    }

    std::vector<double> roots;
    for (int i = 0; i < grid; ++i)
        if (ok[i] && phi[i] == 0.0) roots.push_back(svals[i]);
    for (int i = 0; i + 1 < grid; ++i) {
        if (!ok[i] || !ok[i + 1]) continue;
        if (phi[i] == 0.0 || phi[i + 1] == 0.0) continue;
        if (phi[i] * phi[i + 1] > 0.0) continue;
        double lo = svals[i], hi = svals[i + 1], flo = phi[i];
        double root = 0.5 * (lo + hi);
        bool found = false;
        for (int it = 0; it < 200; ++it) {
            root = 0.5 * (lo + hi);
            const auto r = shoot(spec, disc, root);
            if (r.diverged) break;
            if (std::fabs(r.terminal) <= 1e-10) {
                found = true;
                break;
            }
            if (flo * r.terminal < 0.0) hi = root;
            else {
                lo = root;
                flo = r.terminal;
            }
        }
        if (found) roots.push_back(root);
    }

    for (const double s : roots) {
        const auto r = shoot(spec, disc, s);
        if (r.diverged || std::fabs(r.terminal) > 1e-10) continue;
        Solution sol;
        sol.u = disc.coefficients_from_nodal(r.nodal);
        sol.residual_norm = std::fabs(r.terminal);
        sol.max_norm = sol.u.size() ? sol.u.cwiseAbs().maxCoeff() : 0.0;
        set.solutions.push_back(std::move(sol));
    }
    set.converged = static_cast<int>(set.solutions.size());
    canonicalize(set);
    return set;
}

// Central finite-difference Jacobian of the assembled residual.  The stencil of
// a hat function touches only its neighbours, so perturbing every third node at
// once reproduces the column-wise differences exactly.
Matrix residual_jacobian(const fem::ProblemSpec& spec, const fem::Discretization& disc,
                         const Vector& u) {
    const int dim = static_cast<int>(u.size());
    const double h = 1e-6 * (1.0 + u.lpNorm<Eigen::Infinity>());
    Matrix J = Matrix::Zero(dim, dim);
    for (int color = 0; color < 3; ++color) {
        Vector up = u, um = u;
        for (int j = color; j < dim; j += 3) {
            up(j) += h;
            um(j) -= h;
        }
        const Vector rp = fem::assemble_residual(disc, spec, up);
        const Vector rm = fem::assemble_residual(disc, spec, um);
        for (int j = color; j < dim; j += 3)
            for (int i = std::max(0, j - 1); i <= std::min(dim - 1, j + 1); ++i)
                J(i, j) = (rp(i) - rm(i)) / (2 * h);
    }
    return J;
}

std::optional<Solution> newton_from(const fem::ProblemSpec& spec, const fem::Discretization& disc,
                                    Vector u) {
    try {
        Vector r = fem::assemble_residual(disc, spec, u);
        double rn = r.norm();
        int stalls = 0;
        for (int it = 0; it < 100; ++it) {
            const double tol = 1e-10 * (1.0 + u.norm());
            if (rn <= tol) {
                Solution sol;
                sol.u = u;
                sol.residual_norm = rn;
                sol.max_norm = u.size() ? u.cwiseAbs().maxCoeff() : 0.0;
                return sol;
            }
            const Matrix J = residual_jacobian(spec, disc, u);
            const Vector p = Eigen::PartialPivLU<Matrix>(J).solve(-r);
            if (!p.allFinite()) return std::nullopt;
            double lambda = 1.0;
            bool stepped = false;
            for (int half = 0; half < 30; ++half) {
                const Vector cand = u + lambda * p;
                const Vector rc = fem::assemble_residual(disc, spec, cand);
                const double cn = rc.norm();
                if (cn < (1.0 - 1e-4 * lambda) * rn) {
                    u = cand;
                    r = rc;
                    rn = cn;
                    stepped = true;
                    break;
                }
                lambda *= 0.5;
            }
            if (!stepped && ++stalls >= 2) return std::nullopt;
            if (stepped) stalls = 0;
        }
        const double tol = 1e-10 * (1.0 + u.norm());
        if (rn <= tol) {
            Solution sol;
            sol.u = u;
            sol.residual_norm = rn;
            sol.max_norm = u.size() ? u.cwiseAbs().maxCoeff() : 0.0;
            return sol;
        }
        return std::nullopt;
    } catch (const Error&) {
        return std::nullopt;  // domain error along the path; abandon this start
    }
}

SolutionSet find_solutions_newton(const fem::ProblemSpec& spec, const fem::Discretization& disc,
                                  int random_starts, unsigned seed) {
    SolutionSet set;
    set.method = "newton";
    const int dim = disc.dim();

    std::vector<Vector> starts;
    starts.push_back(Vector::Zero(dim));

    const auto modes = linalg::eigen_symmetric_pencil(disc.stiffness(), disc.mass());
    const int n_modes = std::min(3, dim);
    for (int m = 0; m < n_modes; ++m) {
        Vector v = modes.vectors.col(m);
        const double vmax = v.cwiseAbs().maxCoeff();
        if (vmax == 0.0) continue;
        v /= vmax;
        for (const double amp : {0.1, 1.0, 10.0}) {
            starts.push_back(amp * v);
            starts.push_back(-amp * v);
        }
    }

    std::mt19937 rng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    std::uniform_real_distribution<double> ud(std::log(0.05), std::log(5.0));
    const int mix = std::min(6, dim);
    for (int k = 0; k < random_starts; ++k) {
        Vector v = Vector::Zero(dim);
        for (int m = 0; m < mix; ++m) v += nd(rng) * modes.vectors.col(m);
        const double vmax = v.cwiseAbs().maxCoeff();
        const double amp = std::exp(ud(rng));
        if (vmax > 0) starts.push_back((amp / vmax) * v);
    }

    set.starts = static_cast<int>(starts.size());
    for (const auto& s0 : starts) {
        const auto sol = newton_from(spec, disc, s0);
        if (!sol) continue;
        ++set.converged;
        set.solutions.push_back(*sol);
    }
    canonicalize(set);
    return set;
}

}  // namespace bvpindex::oracle
