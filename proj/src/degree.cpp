#include "bvpindex/degree.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace bvpindex::degree {

namespace {

using linalg::Matrix;
using linalg::Vector;

constexpr double kPi = std::numbers::pi;

double sgn(double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); }

Vector eval_circle(const FiniteMap& f, double r, double theta) {
    Vector u(2);
    u << r * std::cos(theta), r * std::sin(theta);
    return f.eval(u);
}

// Signed angle from a to b in (-pi, pi].
double turn(const Vector& a, const Vector& b) {
    const double cross = a(0) * b(1) - a(1) * b(0);
    const double dot = a(0) * b(0) + a(1) * b(1);
    return std::atan2(cross, dot);
}

Matrix central_jacobian(const FiniteMap& f, const Vector& x, double h) {
    const int d = f.dim;
    Matrix J(d, d);
    Vector xp = x, xm = x;
    for (int j = 0; j < d; ++j) {
        xp(j) = x(j) + h;
        xm(j) = x(j) - h;
        J.col(j) = (f.eval(xp) - f.eval(xm)) / (2 * h);
        xp(j) = x(j);
        xm(j) = x(j);
    }
    return J;
}

struct NewtonOutcome {
    bool converged = false;
    Vector x;
};

NewtonOutcome damped_newton(const FiniteMap& f, Vector x, double res_tol,
                            const RegularOptions& opt) {
    double rn = f.eval(x).norm();
    for (int it = 0; it < opt.max_iterations; ++it) {
        if (rn <= res_tol) return {true, x};
        const Vector r = f.eval(x);
        const double h = opt.jacobian_step * (1.0 + x.norm());
        const Matrix J = central_jacobian(f, x, h);
        Eigen::PartialPivLU<Matrix> lu(J);
        const Vector p = lu.solve(-r);
        if (!p.allFinite()) return {false, x};
        double lambda = 1.0;
        bool stepped = false;
        for (int half = 0; half < 30; ++half) {
            const Vector cand = x + lambda * p;
            const double cn = f.eval(cand).norm();
            if (cn < (1.0 - 1e-4 * lambda) * rn || cn <= res_tol) {
                x = cand;
                rn = cn;
                stepped = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!stepped) return {rn <= res_tol, x};
    }
    return {rn <= res_tol, x};
}

// Deterministic unit directions covering the sphere for dimension d.
std::vector<Vector> sphere_samples(int d) {
    std::vector<Vector> out;
    if (d == 1) {
        Vector p(1), m(1);
        p << 1.0;
        m << -1.0;
        out = {p, m};
    } else if (d == 2) {
        for (int k = 0; k < 360; ++k) {
            const double th = 2 * kPi * k / 360.0;
            Vector u(2);
            u << std::cos(th), std::sin(th);
            out.push_back(u);
        }
    } else {
        // low-discrepancy directions via a seeded normal cloud (deterministic)
        std::mt19937 rng(0xC0FFEE);
        std::normal_distribution<double> nd(0.0, 1.0);
        const int n = std::max(400, 120 * d);
        for (int k = 0; k < n; ++k) {
            Vector u(d);
            for (int i = 0; i < d; ++i) u(i) = nd(rng);
            const double nn = u.norm();
            if (nn < 1e-12) continue;
            out.push_back(u / nn);
        }
    }
    return out;
}

}  // namespace

int degree_1d(const FiniteMap& f, double radius) {
    if (f.dim != 1) throw Error("degree_1d: map dimension must be 1");
    Vector up(1), um(1);
    up << radius;
    um << -radius;
    const double fp = f.eval(up)(0);
    const double fm = f.eval(um)(0);
    if (std::fabs(fp) < 1e-12 || std::fabs(fm) < 1e-12)
        throw BoundaryZeroError("degree_1d: |F| < 1e-12 at an interval endpoint");
    return static_cast<int>((sgn(fp) - sgn(fm)) / 2.0);
}

int degree_2d_winding(const FiniteMap& f, double radius, const WindingOptions& opt) {
    if (f.dim != 2) throw Error("degree_2d_winding: map dimension must be 2");
    struct Seg {
        double a, b;
        Vector fa, fb;
    };
    std::vector<Seg> stack;
    long segments = opt.initial_segments;
    std::vector<Vector> init(opt.initial_segments + 1);
    for (int i = 0; i <= opt.initial_segments; ++i) {
        const double th = 2 * kPi * i / opt.initial_segments;
        init[i] = i == opt.initial_segments ? init[0] : eval_circle(f, radius, th);
        if (init[i].norm() < opt.min_norm)
            throw RefinementLimitError("degree_2d_winding: boundary value within " +
                                       std::to_string(opt.min_norm) + " of zero");
    }
    for (int i = 0; i < opt.initial_segments; ++i)
        stack.push_back({2 * kPi * i / opt.initial_segments,
                         2 * kPi * (i + 1) / opt.initial_segments, init[i], init[i + 1]});

    double total = 0.0;
    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        const double d_ab = turn(s.fa, s.fb);
        const double mid = 0.5 * (s.a + s.b);
        const Vector fm = eval_circle(f, radius, mid);
        if (fm.norm() < opt.min_norm)
            throw RefinementLimitError("degree_2d_winding: boundary value within " +
                                       std::to_string(opt.min_norm) + " of zero");
        const double d_am = turn(s.fa, fm);
        const double d_mb = turn(fm, s.fb);
        const bool small = std::fabs(d_ab) < kPi / 2;
        const bool consistent = std::fabs(d_am + d_mb - d_ab) < 1e-9;
        if (small && consistent && std::fabs(d_am) < kPi / 2 && std::fabs(d_mb) < kPi / 2) {
            total += d_am + d_mb;
            continue;
        }
        segments += 2;
        if (segments > opt.max_segments)
            throw RefinementLimitError(
                "degree_2d_winding: refinement limit reached (map too close to zero on the circle)");
        stack.push_back({s.a, mid, s.fa, fm});
        stack.push_back({mid, s.b, fm, s.fb});
    }
    const double w = total / (2 * kPi);
    const long rounded = std::lround(w);
    if (std::fabs(w - double(rounded)) > 1e-6)
        throw RefinementLimitError("degree_2d_winding: winding sum not integral");
    return static_cast<int>(rounded);
}

namespace {

DegreeResult regular_sum(const FiniteMap& f, double radius, const Vector& target,
                         const RegularOptions& opt) {
    const int d = f.dim;
    // residual scale from axis boundary samples
    double fscale = 0.0;
    for (int i = 0; i < d; ++i) {
        Vector u = Vector::Zero(d);
        u(i) = radius;
        fscale = std::max(fscale, (f.eval(u) - target).norm());
        u(i) = -radius;
        fscale = std::max(fscale, (f.eval(u) - target).norm());
    }
    const double res_tol = 1e-12 * std::max(1.0, fscale);

    FiniteMap shifted{d,
                      [&f, target](const Vector& u) -> Vector { return f.eval(u) - target; },
                      std::nullopt, false};

    // uniform start grid in the cube, kept inside the ball
    int grid = opt.grid;
    while (std::pow(double(grid), d) > 20000.0 && grid > 2) --grid;
    std::vector<Vector> starts;
    std::vector<int> idx(d, 0);
    for (;;) {
        Vector u(d);
        for (int i = 0; i < d; ++i)
            u(i) = grid == 1 ? 0.0 : -radius + 2.0 * radius * idx[i] / (grid - 1);
        if (u.norm() <= 0.95 * radius) starts.push_back(u);
        int k = 0;
        while (k < d && ++idx[k] == grid) idx[k++] = 0;
        if (k == d) break;
    }
    starts.push_back(Vector::Zero(d));

    std::vector<Vector> roots;
    for (const auto& s : starts) {
        const auto res = damped_newton(shifted, s, res_tol, opt);
        if (!res.converged) continue;
        if (res.x.norm() >= radius) continue;
        bool dup = false;
        for (const auto& r : roots)
            if ((r - res.x).norm() < opt.dedup_scale * radius) {
                dup = true;
                break;
            }
        if (!dup) roots.push_back(res.x);
    }
    std::sort(roots.begin(), roots.end(), [](const Vector& a, const Vector& b) {
        for (Eigen::Index i = 0; i < a.size(); ++i)
            if (a(i) != b(i)) return a(i) < b(i);
        return false;
    });

    int deg = 0;
    for (const auto& r : roots) {
        const double h = opt.jacobian_step * (1.0 + r.norm());
        const Matrix J = central_jacobian(shifted, r, h);
        Eigen::BDCSVD<Matrix> svd(J);
        const double smax = svd.singularValues()(0);
        const double smin = svd.singularValues()(d - 1);
        if (smax == 0.0 || smin < 1e-10 * smax)
            throw DegenerateZeroError("degree_nd_regular: near-singular Jacobian at a root");
        deg += Eigen::PartialPivLU<Matrix>(J).determinant() > 0 ? 1 : -1;
    }
    return {deg, d > 2};
}

}  // namespace

DegreeResult degree_nd_regular(const FiniteMap& f, double radius, const RegularOptions& opt) {
    DegreeResult res;
    try {
        res = regular_sum(f, radius, Vector::Zero(f.dim), opt);
    } catch (const DegenerateZeroError&) {
        // A root with a singular Jacobian: count preimages of a small regular
        // value instead (admissible while |y| stays below the boundary minimum).
        double mu = std::numeric_limits<double>::infinity();
        for (const auto& dir : sphere_samples(f.dim))
            mu = std::min(mu, f.eval(radius * dir).norm());
        if (mu < 1e-10)
            throw DegenerateZeroError(
                "degree_nd_regular: degenerate root and no margin on the boundary");
        std::mt19937 rng(opt.seed ^ 0x9E3779B9u);
        std::normal_distribution<double> nd(0.0, 1.0);
        bool done = false;
        for (int attempt = 0; attempt < 3 && !done; ++attempt) {
            Vector y(f.dim);
            for (int i = 0; i < f.dim; ++i) y(i) = nd(rng);
            y *= (0.05 * mu) / y.norm();
            try {
                res = regular_sum(f, radius, y, opt);
                done = true;
            } catch (const DegenerateZeroError&) {
                continue;
            }
        }
        if (!done)
            throw DegenerateZeroError("degree_nd_regular: no regular target value found");
    }
    if (f.dim == 1) {
        const int exact = degree_1d(f, radius);
        if (exact != res.value)
            throw Error("degree_nd_regular: multi-start result disagrees with the 1-d sign formula");
        return {exact, false};
    }
    if (f.dim == 2) {
        const int exact = degree_2d_winding(f, radius);
        if (exact != res.value)
            throw Error("degree_nd_regular: multi-start result disagrees with the winding engine");
        return {exact, false};
    }
    return res;
}

double min_norm_on_sphere(const FiniteMap& f) {
    double mn = std::numeric_limits<double>::infinity();
    for (const auto& u : sphere_samples(f.dim)) mn = std::min(mn, f.eval(u).norm());
    return mn;
}

DegreeResult degree_homogeneous(const FiniteMap& f) {
    if (!f.homogeneous_order)
        throw Error("degree_homogeneous: homogeneous_order not set");
    const double rho = *f.homogeneous_order;
    const double mu = min_norm_on_sphere(f);
    if (mu < 1e-10)
        throw SphereZeroError("degree_homogeneous: map vanishes on the unit sphere (min sampled |F| = " +
                              std::to_string(mu) + ")");
    if (f.dim == 1) return {degree_1d(f, 1.0), false};
    if (f.dim == 2) return {degree_2d_winding(f, 1.0), false};

    // Order-1 homogenization keeps the boundary values and isolates the roots of
    // F - y away from the origin, where the multi-start engine can count them.
    const int d = f.dim;
    FiniteMap g{d,
                [&f, rho](const Vector& u) -> Vector {
                    const double n = u.norm();
                    if (n == 0.0) return Vector::Zero(u.size());
                    return std::pow(n, 1.0 - rho) * f.eval(u);
                },
                1.0, f.odd};
    std::mt19937 rng(0xD16E57);
    std::normal_distribution<double> nd(0.0, 1.0);
    RegularOptions opt;
    for (int attempt = 0; attempt < 3; ++attempt) {
        Vector y(d);
        for (int i = 0; i < d; ++i) y(i) = nd(rng);
        y *= (0.05 * mu) / y.norm();
        try {
            DegreeResult res = regular_sum(g, 1.0, y, opt);
            res.heuristic = true;
            return res;
        } catch (const DegenerateZeroError&) {
            continue;  // y not a regular value; perturb again
        }
    }
    throw DegenerateZeroError("degree_homogeneous: no regular target value found");
}

}  // namespace bvpindex::degree
