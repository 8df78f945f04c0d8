#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "curveflow/error.hpp"
#include "curveflow/expr.hpp"

using namespace curveflow;

TEST_CASE("expression values") {
    CHECK(Expression::parse("1 + 0.2*cos(2*theta)")({0.0}) == doctest::Approx(1.2).epsilon(1e-15));
    ExprVariables v;
    v.s = 2.0;
    CHECK(Expression::parse("s^(-2)")(v) == 0.25);
    CHECK(Expression::parse("2^3^2")({}) == 512.0);
    CHECK(Expression::parse("-2^2")({}) == -4.0);
    CHECK(Expression::parse("sqrt(4) + exp(0) + log(1) + pi")({}) == doctest::Approx(3.0 + std::numbers::pi));
    v.absx = 3.0;
    v.psi = 0.5;
    CHECK(Expression::parse("absx*sin(psi)")(v) == doctest::Approx(3.0 * std::sin(0.5)));
    CHECK(Expression::parse("cosh(theta) - sinh(theta) + tan(theta)")({1.0}) ==
          doctest::Approx(std::exp(-1.0) + std::tan(1.0)));
}

TEST_CASE("expression dependencies") {
    const auto e = Expression::parse("s*absx + theta");
    CHECK(e.depends_on_s());
    CHECK(e.depends_on_absx());
    CHECK_FALSE(e.depends_on_psi());
    CHECK(e.source() == "s*absx + theta");
}

TEST_CASE("syntax errors carry position and expectation") {
    try {
        Expression::parse("cos(");
        FAIL("no error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 4);
        CHECK(e.expected() == "expression");
    }
    CHECK_THROWS_AS(Expression::parse("1 +* 2"), ParseError);
    CHECK_THROWS_AS(Expression::parse("foo(theta)"), ParseError);
    CHECK_THROWS_AS(Expression::parse("q + 1"), ParseError);
    CHECK_THROWS_AS(Expression::parse("(1 + 2"), ParseError);
    CHECK_THROWS_AS(Expression::parse("1 2"), ParseError);
    CHECK_THROWS_AS(Expression::parse(""), ParseError);
}

TEST_CASE("division by zero at evaluation") {
    CHECK_THROWS_AS(Expression::parse("1/(theta - 1)")({1.0}), DomainError);
}

TEST_CASE("pretty printing round-trips") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.1, 2.0);
    for (const char* text : {"1 + 0.2*cos(2*theta)", "s^(1-3)*(2 + sin(theta)^2)", "-absx^2/(1+s)",
                             "exp(-theta^2) - log(2 + cos(psi))"}) {
        const auto e = Expression::parse(text);
        const auto back = Expression::parse(e.to_string());
        for (int i = 0; i < 100; ++i) {
            ExprVariables v{u(rng), u(rng), u(rng), u(rng)};
            CHECK(back(v) == e(v));
        }
    }
}
