#include <doctest.h>

#include "bvpindex/config.hpp"
#include "bvpindex/verdicts.hpp"

using namespace bvpindex;

namespace {

config::ConfigDocument cfg(const std::string& text) { return config::parse_config_text(text); }

const verdicts::HypothesisCheck* find_check(const verdicts::Verdict& v, const std::string& needle) {
    for (const auto& c : v.checklist)
        if (c.name.find(needle) != std::string::npos) return &c;
    return nullptr;
}

}  // namespace

TEST_CASE("resonant solvability path") {
    const char* base = R"json({
      "problem": {
        "p": "1",
        "g": "-pi^2*t + sign(t)*abs(t)^0.5 + 0.1*sin(2*pi*x)",
        "gprimeInf": "-pi^2",
        "gk": {"expr": "sign(t)*abs(t)^0.5", "order": 0.5, "parity": "odd"},
        "resonant_at_infinity": true
      },
      "mesh": {"n_elements": 100}
    })json";

    SUBCASE("catalog problem is solvable") {
        auto c = cfg(base);
        const fem::Discretization disc(100);
        const auto v = verdicts::solv_resonant(c.problem, disc);
        REQUIRE(v.guard_passed);
        CHECK(v.conclusion == verdicts::Conclusion::solvable);
        REQUIRE(v.index_infinity);
        CHECK(v.index_infinity->value == 1);
        CHECK(v.infinity_pencil.nu == 0);
        CHECK(v.infinity_pencil.l == 1);
        CHECK_FALSE(v.heuristic);
    }

    SUBCASE("flag unset refuses") {
        auto c = cfg(base);
        c.problem.resonant_at_infinity = false;
        const auto v = verdicts::solv_resonant(c.problem, fem::Discretization(64));
        CHECK_FALSE(v.guard_passed);
    }

    SUBCASE("nonresonant linearization refuses with a kernel message") {
        auto c = cfg(base);
        c.problem.gprimeInf = expr::Expression::parse("-5", {"x"});
        const auto v = verdicts::solv_resonant(c.problem, fem::Discretization(64));
        CHECK_FALSE(v.guard_passed);
        CHECK(v.refusal_reason.find("kernel") != std::string::npos);
    }

    SUBCASE("reduced map vanishing on the kernel sphere is inconclusive") {
        const char* orthogonal = R"json({
          "problem": {
            "p": "1",
            "g": "-pi^2*t + sign(t)*abs(t)^0.5*cos(pi*x)",
            "gprimeInf": "-pi^2",
            "gk": {"expr": "sign(t)*abs(t)^0.5*cos(pi*x)", "order": 0.5, "parity": "odd"},
            "resonant_at_infinity": true
          },
          "mesh": {"n_elements": 100}
        })json";
        auto c = cfg(orthogonal);
        const auto v = verdicts::solv_resonant(c.problem, fem::Discretization(100));
        REQUIRE(v.guard_passed);
        CHECK(v.conclusion == verdicts::Conclusion::inconclusive);
        const auto* chk = find_check(v, "nonvanishing");
        REQUIRE(chk);
        CHECK_FALSE(chk->passed);
    }
}

TEST_CASE("coercive solvability path") {
    const char* base = R"json({
      "problem": {"p": "1", "f": "s + sin(2*pi*x)", "g": "t^3 - 3*t", "delta": 3},
      "mesh": {"n_elements": 64}
    })json";

    SUBCASE("catalog problem is solvable with asymptotic index 1") {
        auto c = cfg(base);
        const auto v = verdicts::solv_coercive(c.problem, fem::Discretization(64));
        REQUIRE(v.guard_passed);
        CHECK(v.conclusion == verdicts::Conclusion::solvable);
        CHECK(v.index_infinity->value == 1);
    }

    SUBCASE("sign-bound violation is inconclusive with a witness") {
        auto c = cfg(base);
        c.problem.g = expr::Expression::parse("-15*t", {"x", "t"});
        c.problem.delta = 9.0;
        const auto v = verdicts::solv_coercive(c.problem, fem::Discretization(64));
        REQUIRE(v.guard_passed);
        CHECK(v.conclusion == verdicts::Conclusion::inconclusive);
        const auto* chk = find_check(v, "one-sided bound");
        REQUIRE(chk);
        CHECK_FALSE(chk->passed);
        CHECK(chk->evidence.find("violated at") != std::string::npos);
    }

    SUBCASE("delta above the embedding bound is inconclusive") {
        auto c = cfg(base);
        c.problem.g = expr::Expression::parse("t^3", {"x", "t"});
        c.problem.delta = 12.0;  // above pi^2
        const auto v = verdicts::solv_coercive(c.problem, fem::Discretization(64));
        CHECK(v.conclusion == verdicts::Conclusion::inconclusive);
        const auto* chk = find_check(v, "delta below");
        REQUIRE(chk);
        CHECK_FALSE(chk->passed);
    }

    SUBCASE("missing delta refuses") {
        auto c = cfg(base);
        c.problem.delta.reset();
        const auto v = verdicts::solv_coercive(c.problem, fem::Discretization(64));
        CHECK_FALSE(v.guard_passed);
    }
}

TEST_CASE("nontrivial solution via even resonant infinity side") {
    const char* base = R"json({
      "problem": {
        "p": "1",
        "g": "-pi^2*t + abs(t)^0.5*t^2/(1+t^2) + (pi^2 - 5)*t/(1+t^2)",
        "gprime0": "-5",
        "gprimeInf": "-pi^2",
        "gk": {"expr": "abs(t)^0.5", "order": 0.5, "parity": "even"},
        "resonant_at_infinity": true
      },
      "mesh": {"n_elements": 100}
    })json";

    SUBCASE("indices 1 vs 0 give a nontrivial solution") {
        auto c = cfg(base);
        const auto v = verdicts::nontrivial_resonant_inf(c.problem, fem::Discretization(100));
        REQUIRE(v.guard_passed);
        CHECK(v.conclusion == verdicts::Conclusion::nontrivial_solution_exists);
        CHECK(v.index_zero->value == 1);
        CHECK(v.index_infinity->value == 0);
    }

    SUBCASE("declared zero-side resonance is redirected") {
        auto c = cfg(base);
        c.problem.resonant_at_zero = true;
        const auto v = verdicts::nontrivial_resonant_inf(c.problem, fem::Discretization(64));
        CHECK_FALSE(v.guard_passed);
        CHECK(v.refusal_reason.find("double-degenerate") != std::string::npos);
    }

    SUBCASE("odd-declared parts are rejected by the guard") {
        auto c = cfg(base);
        c.problem.gk->decl.parity = expr::Parity::odd;
        const auto v = verdicts::nontrivial_resonant_inf(c.problem, fem::Discretization(64));
        CHECK_FALSE(v.guard_passed);
    }

    SUBCASE("nonzero boundary value refuses") {
        auto c = cfg(base);
        c.problem.g = expr::Expression::parse("x + t", {"x", "t"});
        const auto v = verdicts::nontrivial_resonant_inf(c.problem, fem::Discretization(64));
        CHECK_FALSE(v.guard_passed);
    }
}

TEST_CASE("double-degenerate path guards") {
    const char* base = R"json({
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
      "mesh": {"n_elements": 100}
    })json";

    SUBCASE("catalog problem concludes nontrivial") {
        auto c = cfg(base);
        const auto v =
            verdicts::nontrivial_double_degenerate(c.problem, fem::Discretization(100));
        REQUIRE(v.guard_passed);
        CHECK(v.conclusion == verdicts::Conclusion::nontrivial_solution_exists);
        CHECK(std::abs(v.index_zero->value) == 1);
        CHECK(v.index_infinity->value == 0);
    }

    SUBCASE("mirror pairing: even at zero, odd at infinity") {
        const char* mirror = R"json({
          "problem": {
            "p": "1",
            "g": "-pi^2*t + t^2/(1+abs(t)^3.5) + sign(t)*abs(t)^0.5*t^2/(1+t^2)",
            "gprime0": "-pi^2",
            "gprimeInf": "-pi^2",
            "gl": {"expr": "t^2", "order": 2, "parity": "even"},
            "gk": {"expr": "sign(t)*abs(t)^0.5", "order": 0.5, "parity": "odd"},
            "resonant_at_zero": true,
            "resonant_at_infinity": true
          },
          "mesh": {"n_elements": 100}
        })json";
        auto c = cfg(mirror);
        const auto v =
            verdicts::nontrivial_double_degenerate(c.problem, fem::Discretization(100));
        REQUIRE(v.guard_passed);
        CHECK(v.index_zero->value == 0);                 // even reduced map
        CHECK(std::abs(v.index_infinity->value) == 1);   // odd reduced map
        CHECK(v.conclusion == verdicts::Conclusion::nontrivial_solution_exists);
        // the even reduced map integrates the squared kernel against itself;
        // with the energy-normalized first mode (sqrt(2)/pi) sin(pi x) its value
        // approaches (sqrt(2)/pi)^3 * int sin^3 = (sqrt(2)/pi)^3 * 4/(3 pi)
        REQUIRE(v.theta_zero.samples_1d.size() == 2);
        const double beta = std::sqrt(2.0) / 3.14159265358979323846;
        const double expected = beta * beta * beta * 4.0 / (3.0 * 3.14159265358979323846);
        CHECK(v.theta_zero.samples_1d[0].second == doctest::Approx(expected).epsilon(1e-2));
        CHECK(v.theta_zero.samples_1d[1].second == doctest::Approx(expected).epsilon(1e-2));
    }

    SUBCASE("matching parities are rejected") {
        auto c = cfg(base);
        c.problem.gl->decl.parity = expr::Parity::even;
        c.problem.gl->expression = expr::Expression::parse("t^2", {"x", "t"});
        c.problem.gl->decl.order = 2.0;
        const auto v = verdicts::nontrivial_double_degenerate(c.problem, fem::Discretization(64));
        CHECK_FALSE(v.guard_passed);
        CHECK(v.refusal_reason.find("parity") != std::string::npos);
    }

    SUBCASE("missing flags are rejected") {
        auto c = cfg(base);
        c.problem.resonant_at_zero = false;
        const auto v = verdicts::nontrivial_double_degenerate(c.problem, fem::Discretization(64));
        CHECK_FALSE(v.guard_passed);
    }
}

TEST_CASE("coercive problem with a tuned degenerate zero side") {
    const char* base = R"json({
      "problem": {
        "p": "1",
        "g": "-3*t + t^2/(1+t^2)",
        "gprime0": "-3",
        "gl": {"expr": "t^2", "order": 2, "parity": "even"},
        "delta": 3.5,
        "resonant_at_zero": true,
        "qprime0_tuning": {"shape": "cos(2*pi*x)", "range": [0, 60]}
      },
      "mesh": {"n_elements": 64}
    })json";

    SUBCASE("tuned amplitude produces a kernel and the indices differ") {
        auto c = cfg(base);
        const auto v =
            verdicts::nontrivial_coercive_degenerate_zero(c.problem, fem::Discretization(64));
        REQUIRE(v.guard_passed);
        REQUIRE(v.tuned_amplitude);
        CHECK(*v.tuned_amplitude > 0.0);
        CHECK(v.zero_pencil.l == 1);
        CHECK_FALSE(v.zero_pencil.symmetric);
        CHECK(v.index_infinity->value == 1);
        REQUIRE(v.index_zero);
        CHECK(v.index_zero->defined);
        CHECK(v.index_zero->value == 0);  // even reduced map on a 1-d kernel
        CHECK(v.conclusion == verdicts::Conclusion::nontrivial_solution_exists);
    }

    SUBCASE("tuning range without a crossing is inconclusive") {
        auto c = cfg(base);
        c.problem.qprime0_tuning->range_hi = 5.0;
        const auto v =
            verdicts::nontrivial_coercive_degenerate_zero(c.problem, fem::Discretization(64));
        REQUIRE(v.guard_passed);
        CHECK(v.conclusion == verdicts::Conclusion::inconclusive);
        const auto* chk = find_check(v, "tuning range");
        REQUIRE(chk);
        CHECK_FALSE(chk->passed);
    }

    SUBCASE("missing zero-side resonance flag refuses") {
        auto c = cfg(base);
        c.problem.resonant_at_zero = false;
        const auto v =
            verdicts::nontrivial_coercive_degenerate_zero(c.problem, fem::Discretization(64));
        CHECK_FALSE(v.guard_passed);
    }

    SUBCASE("odd zero-side parts are rejected") {
        auto c = cfg(base);
        c.problem.gl->decl.parity = expr::Parity::odd;
        c.problem.gl->expression = expr::Expression::parse("t^3", {"x", "t"});
        c.problem.gl->decl.order = 3.0;
        const auto v =
            verdicts::nontrivial_coercive_degenerate_zero(c.problem, fem::Discretization(64));
        CHECK_FALSE(v.guard_passed);
    }
}

TEST_CASE("parity criterion") {
    const char* base = R"json({
      "problem": {
        "p": "1",
        "g": "-5*t - 10*t^3/(1+t^2)",
        "gprime0": "-5",
        "gprimeInf": "-15"
      },
      "mesh": {"n_elements": 100}
    })json";

    SUBCASE("nu 0 vs 1 concludes nontrivial") {
        auto c = cfg(base);
        const auto v = verdicts::nontrivial_parity(c.problem, fem::Discretization(100));
        REQUIRE(v.guard_passed);
        CHECK(v.zero_pencil.nu == 0);
        CHECK(v.infinity_pencil.nu == 1);
        CHECK(v.conclusion == verdicts::Conclusion::nontrivial_solution_exists);
        CHECK(v.index_zero->value == 1);
        CHECK(v.index_infinity->value == -1);
    }

    SUBCASE("nu 1 vs 2 also differs in parity") {
        const char* deeper = R"json({
          "problem": {
            "p": "1",
            "g": "-15*t - 30*t^3/(1+t^2)",
            "gprime0": "-15",
            "gprimeInf": "-45"
          },
          "mesh": {"n_elements": 100}
        })json";
        auto c = cfg(deeper);
        const auto v = verdicts::nontrivial_parity(c.problem, fem::Discretization(100));
        REQUIRE(v.guard_passed);
        CHECK(v.zero_pencil.nu == 1);
        CHECK(v.infinity_pencil.nu == 2);
        CHECK(v.conclusion == verdicts::Conclusion::nontrivial_solution_exists);
    }

    SUBCASE("equal counts are inconclusive") {
        const char* flat = R"json({
          "problem": {"p": "1", "g": "-5*t", "gprime0": "-5", "gprimeInf": "-5"},
          "mesh": {"n_elements": 100}
        })json";
        auto c = cfg(flat);
        const auto v = verdicts::nontrivial_parity(c.problem, fem::Discretization(100));
        REQUIRE(v.guard_passed);
        CHECK(v.conclusion == verdicts::Conclusion::inconclusive);
    }

    SUBCASE("nonzero boundary value refuses") {
        auto c = cfg(base);
        c.problem.g = expr::Expression::parse("-5*t + x", {"x", "t"});
        const auto v = verdicts::nontrivial_parity(c.problem, fem::Discretization(64));
        CHECK_FALSE(v.guard_passed);
    }
}

TEST_CASE("verdict invariants") {
    const char* base = R"json({
      "problem": {
        "p": "1",
        "g": "-5*t - 10*t^3/(1+t^2)",
        "gprime0": "-5",
        "gprimeInf": "-15"
      },
      "mesh": {"n_elements": 100}
    })json";
    auto c = cfg(base);

    SUBCASE("non-inconclusive verdicts have fully passed checklists") {
        for (const auto& v : verdicts::run_auto(c.problem, fem::Discretization(100))) {
            if (v.conclusion != verdicts::Conclusion::inconclusive) {
                CHECK(v.guard_passed);
                CHECK(v.all_passed());
            }
        }
    }

    SUBCASE("conclusions are mesh stable") {
        const auto v100 = verdicts::nontrivial_parity(c.problem, fem::Discretization(100));
        const auto v200 = verdicts::nontrivial_parity(c.problem, fem::Discretization(200));
        CHECK(verdicts::to_string(v100.conclusion) == verdicts::to_string(v200.conclusion));
    }

    SUBCASE("auto mode runs every procedure") {
        const auto vs = verdicts::run_auto(c.problem, fem::Discretization(64));
        CHECK(vs.size() == verdicts::verdict_ids().size());
        CHECK(vs[0].id == "nontrivial_parity");
        CHECK(vs[1].id == "solv_coercive");
    }
}
