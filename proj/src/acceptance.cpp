#include "bvpindex/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "bvpindex/config.hpp"
#include "bvpindex/degree.hpp"
#include "bvpindex/oracle.hpp"
#include "bvpindex/report.hpp"
#include "bvpindex/verdicts.hpp"

namespace bvpindex::acceptance {

namespace {

using linalg::Matrix;
using linalg::Vector;
constexpr double kPi = std::numbers::pi;

struct Checker {
    std::ostringstream detail;
    bool ok = true;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << "FAIL: " << what << "; ";
        }
    }
    void note(const std::string& what) { detail << what << "; "; }
};

double now_seconds(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

degree::FiniteMap map_identity(int d) {
    return {d, [](const Vector& u) { return u; }, 1.0, true};
}

degree::FiniteMap map_neg_identity(int d) {
    return {d, [](const Vector& u) { return Vector(-u); }, 1.0, true};
}

degree::FiniteMap map_complex_power(int k) {
    return {2,
            [k](const Vector& u) {
                std::complex<double> z(u(0), u(1)), w(1.0, 0.0);
                for (int i = 0; i < k; ++i) w *= z;
                Vector out(2);
                out << w.real(), w.imag();
                return out;
            },
            double(k), k % 2 == 1};
}

// Composite Simpson on [0,1].
double simpson(const std::function<double(double)>& f, int intervals) {
    if (intervals % 2) ++intervals;
    const double h = 1.0 / intervals;
    double sum = f(0.0) + f(1.0);
    for (int i = 1; i < intervals; ++i) sum += f(i * h) * (i % 2 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

// Simpson applied per element, so piecewise-smooth interpolant integrands keep
// full accuracy.
double simpson_per_element(const std::function<double(double)>& f, int elements,
                           int sub_per_element = 64) {
    double total = 0.0;
    const double h = 1.0 / elements;
    for (int e = 0; e < elements; ++e) {
        const double a = e * h;
        double sum = f(a) + f(a + h);
        for (int i = 1; i < sub_per_element; ++i)
            sum += f(a + i * h / sub_per_element) * (i % 2 ? 4.0 : 2.0);
        total += sum * (h / sub_per_element) / 3.0;
    }
    return total;
}

// ---------------------------------------------------------------- criterion 1

CriterionResult degree_axioms() {
    const auto t0 = std::chrono::steady_clock::now();
    Checker c;

    c.require(degree::degree_1d(map_identity(1), 1.0) == 1, "identity degree (d=1)");
    c.require(degree::degree_2d_winding(map_identity(2), 1.0) == 1, "identity degree (d=2)");
    c.require(degree::degree_nd_regular(map_identity(3), 1.0).value == 1, "identity degree (d=3)");

    c.require(degree::degree_1d(map_neg_identity(1), 1.0) == -1, "antipodal degree (d=1)");
    c.require(degree::degree_2d_winding(map_neg_identity(2), 1.0) == 1, "antipodal degree (d=2)");
    c.require(degree::degree_nd_regular(map_neg_identity(3), 1.0).value == -1,
              "antipodal degree (d=3)");

    c.require(degree::degree_2d_winding(map_complex_power(2), 1.0) == 2, "complex square -> 2");
    c.require(degree::degree_2d_winding(map_complex_power(3), 1.0) == 3, "complex cube -> 3");

    // odd planar polynomial maps: computed degree must be odd
    std::mt19937 rng(0xB0B5);
    std::uniform_real_distribution<double> ud(-2.0, 2.0);
    int built = 0;
    while (built < 20) {
        Matrix A(2, 2);
        A << ud(rng), ud(rng), ud(rng), ud(rng);
        const double c30 = ud(rng), c12 = ud(rng), c03 = ud(rng), c21 = ud(rng);
        degree::FiniteMap f{2,
                            [A, c30, c12, c03, c21](const Vector& u) {
                                Vector out(2);
                                out(0) = A(0, 0) * u(0) + A(0, 1) * u(1) + c30 * u(0) * u(0) * u(0) +
                                         c12 * u(0) * u(1) * u(1);
                                out(1) = A(1, 0) * u(0) + A(1, 1) * u(1) + c03 * u(1) * u(1) * u(1) +
                                         c21 * u(0) * u(0) * u(1);
                                return out;
                            },
                            std::nullopt, true};
        double mn = std::numeric_limits<double>::infinity();
        for (int k = 0; k < 720; ++k) {
            Vector u(2);
            u << std::cos(kPi * k / 360.0), std::sin(kPi * k / 360.0);
            mn = std::min(mn, f.eval(u).norm());
        }
        if (mn < 1e-4) continue;  // boundary too close to a zero; draw again
        ++built;
        const int deg = degree::degree_2d_winding(f, 1.0);
        c.require(std::abs(deg) % 2 == 1, "odd map degree parity (got " + std::to_string(deg) + ")");
    }

    // linear maps: degree = sign of the determinant
    for (int k = 0; k < 50;) {
        Matrix A(2, 2);
        A << ud(rng), ud(rng), ud(rng), ud(rng);
        const double det = A.determinant();
        if (std::fabs(det) < 0.05) continue;
        ++k;
        degree::FiniteMap f{2, [A](const Vector& u) { return Vector(A * u); }, 1.0, true};
        c.require(degree::degree_2d_winding(f, 1.0) == (det > 0 ? 1 : -1),
                  "linear degree = sign det");
    }

    const double secs = now_seconds(t0);
    c.require(secs < 10.0, "runtime below 10 s");
    return {"degree-axioms", "degree engine axioms (normality, antipodal, powers, parity, linear)",
            c.ok, c.detail.str(), secs};
}

// ---------------------------------------------------------------- criterion 2

struct FiniteCase {
    Matrix A;
    std::function<Vector(const Vector&)> C;
    double order;
    expr::Parity parity;
    int expected;
};

int direct_winding_degree(const Matrix& A, const std::function<Vector(const Vector&)>& C,
                          double radius) {
    degree::FiniteMap full{2,
                           [&A, &C](const Vector& u) { return Vector(A * u + C(u)); },
                           std::nullopt, false};
    return degree::degree_2d_winding(full, radius);
}

CriterionResult index_cross_validation() {
    const auto t0 = std::chrono::steady_clock::now();
    Checker c;

    auto cube1 = [](const Vector& u) {
        Vector r = Vector::Zero(2);
        r(0) = u(0) * u(0) * u(0);
        return r;
    };
    auto cube1n = [](const Vector& u) {
        Vector r = Vector::Zero(2);
        r(0) = -u(0) * u(0) * u(0);
        return r;
    };
    auto cube2 = [](const Vector& u) {
        Vector r = Vector::Zero(2);
        r(1) = u(0) * u(0) * u(0);
        return r;
    };

    Matrix D01(2, 2), J(2, 2), Dm11(2, 2);
    D01 << 0, 0, 0, 1;
    J << 0, 1, 0, 0;
    Dm11 << -1, 0, 0, 1;
    const Matrix I2 = Matrix::Identity(2, 2);

    const std::vector<FiniteCase> cases = {
        {D01, cube1, 3.0, expr::Parity::odd, 1},
        {D01, cube1n, 3.0, expr::Parity::odd, -1},
        {J, cube2, 3.0, expr::Parity::odd, -1},
    };

    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto& fc = cases[i];
        const reduction::OperatorPencil pencil{fc.A, I2};
        const auto s = reduction::analyze_pencil(pencil);
        const auto theta = reduction::build_reduced_map(s, pencil, fc.C, fc.order, fc.parity);
        const auto idx = reduction::index_at_zero(s, &theta);
        const int direct = direct_winding_degree(fc.A, fc.C, 0.1);
        c.require(idx.defined, "case " + std::to_string(i) + " index defined");
        c.require(idx.value == direct,
                  "case " + std::to_string(i) + " index (" + std::to_string(idx.value) +
                      ") == direct degree (" + std::to_string(direct) + ")");
        c.require(idx.value == fc.expected, "case " + std::to_string(i) + " expected value");
    }

    // nondegenerate case: empty kernel, pure sign formula
    {
        const reduction::OperatorPencil pencil{Dm11, I2};
        const auto s = reduction::analyze_pencil(pencil);
        const auto idx = reduction::index_at_zero(s, nullptr);
        const int direct = direct_winding_degree(Dm11, [](const Vector& u) {
            return Vector(Vector::Zero(u.size()));
        }, 0.1);
        c.require(idx.value == -1 && direct == -1, "nondegenerate case gives -1 on both routes");
    }

    // two different completions of T on the nilpotent-block case: same index
    {
        const reduction::OperatorPencil pencil{J, I2};
        reduction::AnalyzeOptions o1, o2;
        o1.completion_seed = 0;
        o2.completion_seed = 7;
        const auto s1 = reduction::analyze_pencil(pencil, o1);
        const auto s2 = reduction::analyze_pencil(pencil, o2);
        c.require((s1.T - s2.T).norm() > 1e-8, "completions actually differ");
        const auto th1 = reduction::build_reduced_map(s1, pencil, cube2, 3.0, expr::Parity::odd);
        const auto th2 = reduction::build_reduced_map(s2, pencil, cube2, 3.0, expr::Parity::odd);
        const auto i1 = reduction::index_at_zero(s1, &th1);
        const auto i2 = reduction::index_at_zero(s2, &th2);
        c.require(i1.value == i2.value && i1.value == -1,
                  "completion independence of the index (-1)");
    }

    return {"index-cross-validation",
            "index formula vs direct degree on the finite-dimensional catalog", c.ok,
            c.detail.str(), now_seconds(t0)};
}

// ---------------------------------------------------------------- criterion 3

CriterionResult t_equation_residual() {
    const auto t0 = std::chrono::steady_clock::now();
    Checker c;

    std::vector<reduction::OperatorPencil> catalog;
    Matrix D01(2, 2), J(2, 2), Dm11(2, 2), D3(3, 3);
    D01 << 0, 0, 0, 1;
    J << 0, 1, 0, 0;
    Dm11 << -1, 0, 0, 1;
    D3 = Matrix::Zero(3, 3);
    D3.diagonal() << -1, -1, 2;
    const Matrix I2 = Matrix::Identity(2, 2), I3 = Matrix::Identity(3, 3);
    catalog.push_back({D01, I2});
    catalog.push_back({J, I2});
    catalog.push_back({Dm11, I2});
    catalog.push_back({D3, I3});

    const fem::Discretization disc(100);
    const auto gm = expr::Expression::parse("-pi^2", {"x"});
    const auto gm2 = expr::Expression::parse("-4*pi^2", {"x"});
    const auto one = expr::Expression::parse("1", {"x"});
    for (const auto* g : {&gm, &gm2}) {
        auto pencil = fem::assemble_linear_pencil(disc, &one, nullptr, g);
        const auto aligned = fem::resonance_align(pencil, disc);
        catalog.push_back(aligned.pencil);
    }

    for (std::size_t i = 0; i < catalog.size(); ++i) {
        const auto s = reduction::analyze_pencil(catalog[i]);
        c.require(s.t_residual <= 1e-8,
                  "pencil " + std::to_string(i) + " T residual " + std::to_string(s.t_residual));
        c.require(s.det_T != 0.0, "pencil " + std::to_string(i) + " det T nonzero");
    }
    return {"t-equation-residual", "normalizer equation residual and nondegeneracy", c.ok,
            c.detail.str(), now_seconds(t0)};
}

// ---------------------------------------------------------------- criterion 4

CriterionResult discrete_spectrum(const Options& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    Checker c;
    const double tol = opt.corrupt_tolerance ? 1e-12 : 1e-3;

    const fem::Discretization disc(200);
    const auto pe = linalg::eigen_symmetric_pencil(disc.stiffness(), disc.mass());
    for (int k = 1; k <= 5; ++k) {
        const double exact = (k * kPi) * (k * kPi);
        const double rel = std::fabs(pe.values(k - 1) / exact - 1.0);
        c.require(rel < tol, "eigenvalue " + std::to_string(k) + " relative error " +
                                 std::to_string(rel));
    }
    const double kemb = fem::embedding_constant(disc);
    const double rel = std::fabs(kemb - 1.0 / kPi) / (1.0 / kPi);
    c.require(rel < tol, "embedding constant relative error " + std::to_string(rel));

    const double secs = now_seconds(t0);
    c.require(secs < 5.0, "runtime below 5 s");
    return {"discrete-spectrum", "discrete eigenvalues and embedding constant at N=200", c.ok,
            c.detail.str(), secs};
}

// ---------------------------------------------------------------- criterion 5

const char* kResonantConfig = R"json({
  "problem": {
    "p": "1",
    "g": "-pi^2*t + sign(t)*abs(t)^0.5 + 0.1*sin(2*pi*x)",
    "gprimeInf": "-pi^2",
    "gk": {"expr": "sign(t)*abs(t)^0.5", "order": 0.5, "parity": "odd"},
    "resonant_at_infinity": true
  },
  "mesh": {"n_elements": 200},
  "analysis": {"theorems": ["solv_resonant"]}
})json";

CriterionResult resonant_solvability() {
    const auto t0 = std::chrono::steady_clock::now();
    Checker c;

    std::string conclusions[2];
    for (int pass = 0; pass < 2; ++pass) {
        auto cfg = config::parse_config_text(kResonantConfig);
        cfg.problem.n_elements = pass == 0 ? 100 : 200;
        const fem::Discretization disc(cfg.problem.n_elements);
        const auto v = verdicts::solv_resonant(cfg.problem, disc);
        conclusions[pass] = verdicts::to_string(v.conclusion);
        c.require(v.guard_passed, "verdict ran (N=" + std::to_string(cfg.problem.n_elements) + ")");
        if (pass == 1) {
            c.require(v.index_infinity && v.index_infinity->defined &&
                          v.index_infinity->value == 1,
                      "asymptotic index 1");
            c.require(v.conclusion == verdicts::Conclusion::solvable, "conclusion solvable");
            const auto sols = oracle::find_solutions_newton(cfg.problem, disc);
            bool found = false;
            for (const auto& s : sols.solutions)
                if (s.residual_norm <= 1e-8) found = true;
            c.require(found, "newton oracle finds a solution with residual <= 1e-8");
        }
    }
    c.require(conclusions[0] == conclusions[1], "conclusion mesh-stable (N=100 vs N=200)");
    return {"resonant-solvability", "resonant solvability with odd sublinear principal part", c.ok,
            c.detail.str(), now_seconds(t0)};
}

// ---------------------------------------------------------------- criterion 6

const char* kCoerciveConfig = R"json({
  "problem": {
    "p": "1",
    "f": "s + sin(2*pi*x)",
    "g": "t^3 - 3*t",
    "delta": 3
  },
  "mesh": {"n_elements": 200},
  "analysis": {"theorems": ["solv_coercive"]}
})json";

CriterionResult coercive_solvability() {
    const auto t0 = std::chrono::steady_clock::now();
    Checker c;
    auto cfg = config::parse_config_text(kCoerciveConfig);
    const fem::Discretization disc(cfg.problem.n_elements);
    const auto v = verdicts::solv_coercive(cfg.problem, disc);
    c.require(v.guard_passed, "verdict ran");
    c.require(v.conclusion == verdicts::Conclusion::solvable, "conclusion solvable");
    c.require(v.index_infinity && v.index_infinity->value == 1, "asymptotic index 1 reported");

    const auto sols = oracle::find_solutions_newton(cfg.problem, disc);
    bool found = false;
    for (const auto& s : sols.solutions)
        if (s.residual_norm <= 1e-8) found = true;
    c.require(found, "newton oracle finds a solution with residual <= 1e-8");
    return {"coercive-solvability", "coercive solvability with one-sided superlinear growth", c.ok,
            c.detail.str(), now_seconds(t0)};
}

// ---------------------------------------------------------------- criterion 7

const char* kParityConfig = R"json({
  "problem": {
    "p": "1",
    "g": "-5*t - 10*t^3/(1+t^2)",
    "gprime0": "-5",
    "gprimeInf": "-15"
  },
  "mesh": {"n_elements": 200},
  "analysis": {"theorems": ["nontrivial_parity"]}
})json";

CriterionResult parity_criterion() {
    const auto t0 = std::chrono::steady_clock::now();
    Checker c;
    auto cfg = config::parse_config_text(kParityConfig);
    const fem::Discretization disc(cfg.problem.n_elements);
    const auto v = verdicts::nontrivial_parity(cfg.problem, disc);
    c.require(v.guard_passed, "verdict ran");
    c.require(v.zero_pencil.nu == 0, "nu(0) = 0");
    c.require(v.infinity_pencil.nu == 1, "nu(inf) = 1");
    c.require(v.conclusion == verdicts::Conclusion::nontrivial_solution_exists,
              "conclusion nontrivial");

    const auto shots = oracle::find_solutions_shooting(cfg.problem, disc, -20.0, 20.0);
    int nontrivial = 0;
    for (const auto& s : shots.solutions) {
        if (s.max_norm > 1e-2) {
            ++nontrivial;
            c.require(s.residual_norm <= 1e-10, "shooting terminal residual <= 1e-10");
        }
    }
    c.require(nontrivial >= 2, "at least 2 nontrivial shooting solutions (got " +
                                   std::to_string(nontrivial) + ")");

    const auto newts = oracle::find_solutions_newton(cfg.problem, disc);
    auto matched = [](const oracle::SolutionSet& a, const oracle::SolutionSet& b) {
        for (const auto& sa : a.solutions) {
            bool hit = false;
            for (const auto& sb : b.solutions)
                if ((sa.u - sb.u).lpNorm<Eigen::Infinity>() <= 1e-3) hit = true;
            if (!hit) return false;
        }
        return true;
    };
    c.require(matched(shots, newts) && matched(newts, shots),
              "shooting and newton solution sets agree to 1e-3 max-norm");
    return {"parity-criterion", "different negative-multiplicity parities give a nontrivial solution",
            c.ok, c.detail.str(), now_seconds(t0)};
}

// ---------------------------------------------------------------- criterion 8

const char* kDoubleDegenerateConfig = R"json({
  "problem": {
    "p": "1",
    "g": "-pi^2*t + t^3/(1+t^4) + abs(t)^0.5*t^4/(1+t^4)",
    "gprime0": "-pi^2",
    "gprimeInf": "-pi^2",
    "gl": {"expr": "t^3", "order": 3, "parity": "odd"},
    "gk": {"expr": "abs(t)^0.5", "order": 0.5, "parity": "even"},
    "resonant_at_zero": true,
    "resonant_at_infinity": true
  },
  "mesh": {"n_elements": 200},
  "analysis": {"theorems": ["nontrivial_double_degenerate"]}
})json";

CriterionResult double_degenerate() {
    const auto t0 = std::chrono::steady_clock::now();
    Checker c;

    const double sin4 = simpson([](double x) { return std::pow(std::sin(kPi * x), 4); }, 4096);
    c.require(std::fabs(sin4 - 3.0 / 8.0) <= 1e-6, "quadrature check of the quartic mode integral");

    auto cfg = config::parse_config_text(kDoubleDegenerateConfig);
    const fem::Discretization disc(cfg.problem.n_elements);

    // reduced map against an independent per-element quadrature oracle
    {
        const auto aligned = fem::resonance_align(fem::zero_side_pencil(cfg.problem, disc), disc);
        const auto s = reduction::analyze_pencil(aligned.pencil);
        c.require(s.l == 1, "zero-side kernel dimension 1");
        const auto& gl = cfg.problem.gl->expression;
        auto assembler = [&disc, &gl](const Vector& u) {
            return fem::assemble_weak(disc, {nullptr, nullptr, &gl}, u);
        };
        const auto theta = reduction::build_reduced_map(s, aligned.pencil, assembler, 3.0,
                                                        expr::Parity::odd);
        Vector one(1);
        one << 1.0;
        const double th = theta.theta(one)(0);
        const Vector phi = s.kernel.col(0);
        const double oracle_val = simpson_per_element(
            [&disc, &phi](double x) {
                const double v = disc.interpolate(phi, x);
                return v * v * v * v;
            },
            disc.n_elements());
        c.require(std::fabs(th - oracle_val) <= 1e-6 * std::max(1.0, std::fabs(oracle_val)),
                  "reduced map matches the quadrature oracle (" + std::to_string(th) + " vs " +
                      std::to_string(oracle_val) + ")");
    }

    const auto v = verdicts::nontrivial_double_degenerate(cfg.problem, disc);
    c.require(v.guard_passed, "verdict ran");
    c.require(v.index_zero && v.index_zero->defined && std::abs(v.index_zero->value) == 1,
              "index at zero is +-1");
    c.require(v.index_infinity && v.index_infinity->defined && v.index_infinity->value == 0,
              "asymptotic index 0");
    c.require(v.conclusion == verdicts::Conclusion::nontrivial_solution_exists,
              "conclusion nontrivial");

    const auto sols = oracle::find_solutions_newton(cfg.problem, disc);
    c.require(sols.nontrivial_count() >= 1,
              "newton oracle (eigenvector-seeded) finds a nontrivial solution");
    return {"double-degenerate", "degenerate linearizations at zero and infinity with odd/even parts",
            c.ok, c.detail.str(), now_seconds(t0)};
}

// ---------------------------------------------------------------- criterion 9

CriterionResult kronecker_consistency() {
    const auto t0 = std::chrono::steady_clock::now();
    Checker c;

    auto index_at_root = [](const std::function<double(double)>& f, double root, double radius) {
        degree::FiniteMap local{1,
                                [&f, root](const Vector& u) {
                                    Vector r(1);
                                    r << f(root + u(0));
                                    return r;
                                },
                                std::nullopt, false};
        return degree::degree_1d(local, radius);
    };
    auto index_at_infinity = [](const std::function<double(double)>& f, double radius) {
        degree::FiniteMap m{1,
                            [&f](const Vector& u) {
                                Vector r(1);
                                r << f(u(0));
                                return r;
                            },
                            std::nullopt, false};
        return degree::degree_1d(m, radius);
    };

    {
        auto f = [](double t) { return t - t * t * t; };
        const std::vector<double> roots = {-1.0, 0.0, 1.0};
        std::vector<int> zs;
        for (const double r : roots) zs.push_back(index_at_root(f, r, 0.2));
        const int inf = index_at_infinity(f, 10.0);
        c.require(zs[0] == -1 && zs[1] == 1 && zs[2] == -1, "cubic root indices (-1, 1, -1)");
        c.require(inf == -1, "cubic asymptotic index -1");
        c.require(reduction::kronecker_check(zs, inf), "sum of zero indices == asymptotic index");
    }

    std::mt19937 rng(0xCAFE);
    std::uniform_real_distribution<double> rpos(-4.0, 4.0);
    std::uniform_real_distribution<double> rlead(0.5, 2.0);
    int built = 0;
    while (built < 5) {
        double r1 = rpos(rng), r2 = rpos(rng), r3 = rpos(rng);
        if (std::fabs(r1 - r2) < 0.5 || std::fabs(r1 - r3) < 0.5 || std::fabs(r2 - r3) < 0.5)
            continue;
        const double a = (built % 2 == 0 ? 1.0 : -1.0) * rlead(rng);
        ++built;
        auto f = [a, r1, r2, r3](double t) { return a * (t - r1) * (t - r2) * (t - r3); };
        std::vector<int> zs;
        for (const double r : {r1, r2, r3}) zs.push_back(index_at_root(f, r, 0.2));
        const double R = 5.0 + std::max({std::fabs(r1), std::fabs(r2), std::fabs(r3)});
        const int inf = index_at_infinity(f, R);
        c.require(reduction::kronecker_check(zs, inf),
                  "random cubic " + std::to_string(built) + " summation");
    }
    c.require(!reduction::kronecker_check({1}, 0), "mismatched inputs rejected");
    return {"kronecker-consistency", "sum of zero indices equals the asymptotic index", c.ok,
            c.detail.str(), now_seconds(t0)};
}

// --------------------------------------------------------------- criterion 10

const char* kDeterminismConfig = R"json({
  "problem": {
    "p": "1",
    "g": "-5*t - 10*t^3/(1+t^2)",
    "gprime0": "-5",
    "gprimeInf": "-15"
  },
  "mesh": {"n_elements": 100},
  "analysis": {
    "theorems": ["nontrivial_parity"],
    "verify_with_oracle": true,
    "oracle": {"method": "newton", "starts": 4, "seed": 777}
  }
})json";

CriterionResult determinism() {
    const auto t0 = std::chrono::steady_clock::now();
    Checker c;
    const auto cfg = config::parse_config_text(kDeterminismConfig);
    const auto r1 = report::analyze(cfg);
    const auto r2 = report::analyze(cfg);
    c.require(r1.report.machine_string() == r2.report.machine_string(),
              "machine report sections byte-identical across runs");
    return {"determinism", "fixed-seed analyze runs emit byte-identical machine sections", c.ok,
            c.detail.str(), now_seconds(t0)};
}

}  // namespace

const std::vector<std::pair<std::string, std::string>>& catalog() {
    static const std::vector<std::pair<std::string, std::string>> entries = {
        {"degree-axioms", "degree engine axioms"},
        {"index-cross-validation", "index formula vs direct degree"},
        {"t-equation-residual", "normalizer equation residual"},
        {"discrete-spectrum", "discrete eigenvalues and embedding constant"},
        {"resonant-solvability", "resonant solvability path"},
        {"coercive-solvability", "coercive solvability path"},
        {"parity-criterion", "negative-multiplicity parity path"},
        {"double-degenerate", "double-degenerate path"},
        {"kronecker-consistency", "zero/infinity index summation"},
        {"determinism", "byte-identical machine reports"},
    };
    return entries;
}

CriterionResult run_one(const std::string& id, const Options& opt) {
    if (id == "degree-axioms") return degree_axioms();
    if (id == "index-cross-validation") return index_cross_validation();
    if (id == "t-equation-residual") return t_equation_residual();
    if (id == "discrete-spectrum") return discrete_spectrum(opt);
    if (id == "resonant-solvability") return resonant_solvability();
    if (id == "coercive-solvability") return coercive_solvability();
    if (id == "parity-criterion") return parity_criterion();
    if (id == "double-degenerate") return double_degenerate();
    if (id == "kronecker-consistency") return kronecker_consistency();
    if (id == "determinism") return determinism();
    throw Error("unknown acceptance criterion '" + id + "'");
}

std::vector<CriterionResult> run_all(const Options& opt) {
    std::vector<CriterionResult> out;
    for (const auto& [id, _] : catalog()) out.push_back(run_one(id, opt));
    return out;
}

}  // namespace bvpindex::acceptance
