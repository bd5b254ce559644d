#include <doctest.h>

#include <cmath>
#include <numbers>
#include <thread>

#include "bvpindex/expr.hpp"

using namespace bvpindex;
using expr::Expression;

namespace {
const std::vector<std::string> kXT = {"x", "t"};

double eval_t(const Expression& e, double t, double x = 0.0) { return e.eval2(x, t); }
}  // namespace

TEST_CASE("parse shapes and precedence") {
    const auto cube = Expression::parse("t^3", kXT);
    CHECK(cube.pretty() == "t^3");

    const auto e = Expression::parse("-pi^2*t + t^3/(1+t^2)", kXT);
    CHECK(eval_t(e, 1.0) == doctest::Approx(-std::numbers::pi * std::numbers::pi + 0.5));

    // ^ binds tighter than unary minus and is right associative
    CHECK(eval_t(Expression::parse("-2^2", kXT), 0.0) == -4.0);
    CHECK(eval_t(Expression::parse("2^3^2", kXT), 0.0) == 512.0);
    CHECK(eval_t(Expression::parse("6/3/2", kXT), 0.0) == 1.0);
    CHECK(eval_t(Expression::parse("1-2-3", kXT), 0.0) == -4.0);
    CHECK(eval_t(Expression::parse("2*(3+4)", kXT), 0.0) == 14.0);
    CHECK(eval_t(Expression::parse("min(3, t)", kXT), 7.0) == 3.0);
    CHECK(eval_t(Expression::parse("max(3, t)", kXT), 7.0) == 7.0);
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(Expression::parse("t + * 2", kXT), ParseError);
    try {
        Expression::parse("t + * 2", kXT);
    } catch (const ParseError& e) {
        CHECK(e.position() == 4);
    }
    CHECK_THROWS_AS(Expression::parse("", kXT), ParseError);
    CHECK_THROWS_AS(Expression::parse("y + 1", kXT), ParseError);       // unknown identifier
    CHECK_THROWS_AS(Expression::parse("foo(t)", kXT), ParseError);      // unknown function
    CHECK_THROWS_AS(Expression::parse("sin(t, t)", kXT), ParseError);   // wrong arity
    CHECK_THROWS_AS(Expression::parse("min(t)", kXT), ParseError);      // wrong arity
    CHECK_THROWS_AS(Expression::parse("(t + 1", kXT), ParseError);
}

TEST_CASE("evaluation semantics") {
    const auto e = Expression::parse("sign(t)*abs(t)^0.5", kXT);
    CHECK(eval_t(e, 4.0) == 2.0);
    CHECK(eval_t(e, 0.0) == 0.0);
    CHECK(eval_t(e, -4.0) == -2.0);

    CHECK(eval_t(Expression::parse("pi^2", kXT), 0.0) ==
          doctest::Approx(9.869604401089358).epsilon(1e-15));

    CHECK_THROWS_AS(eval_t(Expression::parse("sqrt(t)", kXT), -1.0), EvalError);
    CHECK_THROWS_AS(eval_t(Expression::parse("log(t)", kXT), -1.0), EvalError);
    CHECK_THROWS_AS(eval_t(Expression::parse("log(t)", kXT), 0.0), EvalError);
    CHECK_THROWS_AS(eval_t(Expression::parse("1/t", kXT), 0.0), EvalError);
    CHECK_THROWS_AS(eval_t(Expression::parse("t^0.5", kXT), -2.0), EvalError);
    CHECK(eval_t(Expression::parse("t^3", kXT), -2.0) == -8.0);  // integer exponent is fine

    // determinism: identical bindings give bit-identical values
    const auto f = Expression::parse("sin(t)*exp(x) + tanh(t*x) - atan(t)", kXT);
    const double a = f.eval2(0.31, -1.7);
    const double b = f.eval2(0.31, -1.7);
    CHECK(a == b);
}

TEST_CASE("pretty-print round trip is structurally identical") {
    const std::vector<std::string> catalog = {
        "t^3",
        "-pi^2*t + t^3/(1+t^2)",
        "sign(t)*abs(t)^0.5",
        "min(x, t) + max(t, 2)*e",
        "-(t + x)^2/(1 - t)",
        "sin(2*pi*x)*cos(t)^2",
        "t^-2^3",
        "1/(1/(1/(t+2)))",
    };
    for (const auto& text : catalog) {
        const auto e = Expression::parse(text, kXT);
        const auto round = Expression::parse(e.pretty(), kXT);
        CAPTURE(text);
        CAPTURE(e.pretty());
        CHECK(e.same_structure(round));
    }
}

TEST_CASE("homogeneity checks") {
    expr::HomogeneityDecl half_odd{0.5, expr::Parity::odd, "t"};
    const auto rep1 = expr::check_homogeneity(Expression::parse("sign(t)*abs(t)^0.5", kXT), half_odd);
    CHECK(rep1.passes());
    CHECK(rep1.max_homogeneity_violation <= 1e-12);

    expr::HomogeneityDecl two_even{2.0, expr::Parity::even, "t"};
    CHECK(expr::check_homogeneity(Expression::parse("t^2", kXT), two_even).passes());

    const auto rep3 = expr::check_homogeneity(Expression::parse("t^2 + t", kXT), two_even);
    CHECK_FALSE(rep3.passes());
    CHECK(rep3.max_homogeneity_violation > 1e-8);

    // a declaration with the wrong parity fails on the parity channel
    expr::HomogeneityDecl two_odd{2.0, expr::Parity::odd, "t"};
    const auto rep4 = expr::check_homogeneity(Expression::parse("t^2", kXT), two_odd);
    CHECK(rep4.max_parity_violation > 1e-8);
}

TEST_CASE("parsed expressions evaluate safely from many threads") {
    const auto e = Expression::parse("sin(t)*exp(x) + t^3/(1+t^2)", kXT);
    const double expected = e.eval2(0.4, 1.3);
    std::vector<std::thread> workers;
    std::vector<double> results(8, 0.0);
    for (int k = 0; k < 8; ++k)
        workers.emplace_back([&, k] {
            double acc = 0.0;
            for (int i = 0; i < 20000; ++i) acc = e.eval2(0.4, 1.3);
            results[k] = acc;
        });
    for (auto& w : workers) w.join();
    for (const double r : results) CHECK(r == expected);
}

TEST_CASE("odd declarations imply pointwise sign flips") {
    const std::vector<std::pair<std::string, double>> odd_catalog = {
        {"sign(t)*abs(t)^0.5", 0.5}, {"t^3", 3.0}, {"t", 1.0}, {"sign(t)*abs(t)^0.25*x", 0.25}};
    for (const auto& [text, order] : odd_catalog) {
        const auto e = Expression::parse(text, kXT);
        expr::HomogeneityDecl decl{order, expr::Parity::odd, "t"};
        REQUIRE(expr::check_homogeneity(e, decl).passes());
        for (int ix = 0; ix <= 8; ++ix) {
            const double x = ix / 8.0;
            for (int j = -3; j <= 3; ++j) {
                const double t = std::ldexp(1.0, j);
                CHECK(std::fabs(e.eval2(x, -t) + e.eval2(x, t)) <= 1e-12);
            }
        }
    }
}
