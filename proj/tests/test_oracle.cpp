#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bvpindex/oracle.hpp"

using namespace bvpindex;
using linalg::Vector;

namespace {
constexpr double kPi = std::numbers::pi;

fem::ProblemSpec classical_spec(const std::string& g_text, int n = 100) {
    fem::ProblemSpec spec;
    spec.p = expr::Expression::parse("1", {"x"});
    if (!g_text.empty()) spec.g = expr::Expression::parse(g_text, {"x", "t"});
    spec.n_elements = n;
    return spec;
}
}  // namespace

TEST_CASE("shooting integrator") {
    const fem::Discretization disc(100);

    SUBCASE("no forcing gives the straight line") {
        const auto spec = classical_spec("");
        const auto r = oracle::shoot(spec, disc, 1.0);
        CHECK_FALSE(r.diverged);
        CHECK(r.terminal == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("first eigenmode returns to zero") {
        const auto spec = classical_spec("-pi^2*t");
        const auto r = oracle::shoot(spec, disc, 1.0);
        CHECK(std::fabs(r.terminal) < 1e-6);
    }

    SUBCASE("linear growth reproduces sinh") {
        const auto spec = classical_spec("t");
        const auto r = oracle::shoot(spec, disc, 1.0);
        CHECK(std::fabs(r.terminal - std::sinh(1.0)) < 1e-6);
    }

    SUBCASE("fourth-order convergence") {
        const auto spec = classical_spec("t");
        const double exact = std::sinh(1.0);
        const double e50 = std::fabs(oracle::shoot(spec, disc, 1.0, 50).terminal - exact);
        const double e100 = std::fabs(oracle::shoot(spec, disc, 1.0, 100).terminal - exact);
        const double ratio = e50 / e100;
        CHECK(ratio > 12.0);
        CHECK(ratio < 20.0);
    }

    SUBCASE("classical-form guard") {
        auto spec = classical_spec("t");
        spec.q = expr::Expression::parse("t/(1+t^2)", {"x", "t"});
        CHECK_FALSE(oracle::classical_form(spec));
        CHECK_THROWS_AS(oracle::shoot(spec, disc, 1.0), Error);
    }
}

TEST_CASE("shooting scan") {
    const fem::Discretization disc(100);

    SUBCASE("odd superlinear restoring force has a symmetric pair") {
        const auto spec = classical_spec("-15*t + t^3");
        const auto set = oracle::find_solutions_shooting(spec, disc, -20.0, 20.0);
        CHECK(set.nontrivial_count() >= 2);
        bool has_trivial = false;
        for (const auto& s : set.solutions) {
            CHECK(s.residual_norm <= 1e-10);
            if (s.max_norm <= 1e-10) has_trivial = true;
        }
        CHECK(has_trivial);
        // oddness: the solution set is symmetric under negation
        for (const auto& s : set.solutions) {
            bool mirrored = false;
            for (const auto& m : set.solutions)
                if ((s.u + m.u).lpNorm<Eigen::Infinity>() < 1e-6) mirrored = true;
            CHECK(mirrored);
        }
    }

    SUBCASE("subcritical linear problem has only the trivial solution") {
        const auto spec = classical_spec("t");
        const auto set = oracle::find_solutions_shooting(spec, disc, -20.0, 20.0);
        REQUIRE(set.solutions.size() == 1);
        CHECK(set.solutions[0].max_norm <= 1e-10);
    }
}

TEST_CASE("newton solver") {
    SUBCASE("nonresonant linear problem collapses to zero") {
        const auto spec = classical_spec("-5*t", 64);
        const fem::Discretization disc(64);
        const auto set = oracle::find_solutions_newton(spec, disc, 4, 42);
        REQUIRE(set.solutions.size() == 1);
        CHECK(set.solutions[0].max_norm <= 1e-8);
        CHECK(set.converged > 0);
    }

    SUBCASE("forced problem yields a verified solution") {
        fem::ProblemSpec spec;
        spec.p = expr::Expression::parse("1", {"x"});
        spec.f = expr::Expression::parse("s + sin(2*pi*x)", {"x", "s"});
        spec.g = expr::Expression::parse("t^3 - 3*t", {"x", "t"});
        spec.n_elements = 64;
        const fem::Discretization disc(64);
        const auto set = oracle::find_solutions_newton(spec, disc, 4, 42);
        REQUIRE(!set.solutions.empty());
        const double knorm = disc.stiffness().lpNorm<Eigen::Infinity>();
        for (const auto& s : set.solutions) {
            CHECK(s.residual_norm <= 1e-8 * (1.0 + knorm * s.u.norm()));
            CHECK(s.max_norm > 1e-3);  // the forcing rules out u = 0
        }
    }

    SUBCASE("fixed seeds reproduce the solution set bitwise") {
        const auto spec = classical_spec("-15*t + t^3", 64);
        const fem::Discretization disc(64);
        const auto a = oracle::find_solutions_newton(spec, disc, 6, 2024);
        const auto b = oracle::find_solutions_newton(spec, disc, 6, 2024);
        REQUIRE(a.solutions.size() == b.solutions.size());
        for (std::size_t i = 0; i < a.solutions.size(); ++i)
            CHECK((a.solutions[i].u - b.solutions[i].u).norm() == 0.0);
    }
}

TEST_CASE("shooting and newton agree on a classical catalog problem") {
    const auto spec = classical_spec("-15*t + t^3", 100);
    const fem::Discretization disc(100);
    const auto shots = oracle::find_solutions_shooting(spec, disc, -20.0, 20.0);
    const auto newts = oracle::find_solutions_newton(spec, disc, 8, 9);
    REQUIRE(!shots.solutions.empty());
    for (const auto& s : shots.solutions) {
        double best = 1e100;
        for (const auto& n : newts.solutions)
            best = std::min(best, (s.u - n.u).lpNorm<Eigen::Infinity>());
        CHECK(best <= 1e-3);
    }
}
