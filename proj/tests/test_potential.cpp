#include <catch2/catch_amalgamated.hpp>

#include "odm/potential.hpp"

#include <cmath>
#include <random>

using namespace odm;

namespace {

PolynomialForm poly_of(const std::string& text) { return to_polynomial(parse_potential(text)); }

std::string random_poly_text(std::mt19937& rng, int max_degree) {
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::uniform_int_distribution<int> coeff(-9, 9);
    std::uniform_int_distribution<int> style(0, 2);
    int degree = deg(rng);
    std::string out;
    for (int k = degree; k >= 0; --k) {
        int c = coeff(rng);
        if (c == 0 && k != 0) continue;
        std::string term;
        int s = style(rng);
        if (s == 0) {
            term = std::to_string(std::abs(c));
        } else {
            term = std::to_string(std::abs(c)) + "." + std::to_string(style(rng)) +
                   std::to_string(style(rng));
        }
        if (k == 1) term += "*x";
        if (k > 1) term += "*x^" + std::to_string(k);
        if (out.empty()) {
            out = (c < 0 ? "-" : "") + term;
        } else {
            out += (c < 0 ? " - " : " + ") + term;
        }
    }
    return out.empty() ? "0" : out;
}

}  // namespace

TEST_CASE("parse grammar") {
    SECTION("0.5*x^2 is an exact half") {
        ExprAst ast = parse_potential("0.5*x^2");
        PolynomialForm p = to_polynomial(ast);
        REQUIRE(p.degree() == 2);
        CHECK(p.coefficient(2) == Rational(1, 2));
        CHECK(p.coefficient(0) == 0);
    }
    SECTION("x^4 - x^2") {
        PolynomialForm p = poly_of("x^4 - x^2");
        CHECK(p.coefficient(4) == 1);
        CHECK(p.coefficient(2) == -1);
        CHECK(p.degree() == 4);
    }
    SECTION("non-constant divisor is rejected at parse time") {
        CHECK_THROWS_AS(parse_potential("x/(x+1)"), SyntaxError);
    }
    SECTION("division by zero constant") {
        CHECK_THROWS_AS(parse_potential("x/0"), DivisionByZeroConstant);
        CHECK_THROWS_AS(parse_potential("x/(2-2)"), DivisionByZeroConstant);
    }
    SECTION("negative exponents are rejected") {
        CHECK_THROWS_AS(parse_potential("x^(-1)"), SyntaxError);
        CHECK_THROWS_AS(parse_potential("x^-1"), SyntaxError);
    }
    SECTION("syntax errors carry a byte offset") {
        try {
            parse_potential("1 + @");
            FAIL("expected SyntaxError");
        } catch (const SyntaxError& e) {
            CHECK(e.offset == 4);
        }
    }
    SECTION("whitespace insensitive") {
        CHECK(parse_potential(" 0.5 * x ^ 2 ") == parse_potential("0.5*x^2"));
    }
    SECTION("power binds tighter than unary minus") {
        CHECK(eval(parse_potential("-x^2"), 3.0) == -9.0);
        CHECK(eval(parse_potential("(-x)^2"), 3.0) == 9.0);
    }
    SECTION("constant division keeps exactness") {
        PolynomialForm p = poly_of("x^2/3");
        CHECK(p.coefficient(2) == Rational(1, 3));
    }
}

TEST_CASE("differentiate") {
    SECTION("0.5x^2 -> x") {
        ExprAst d = differentiate(parse_potential("0.5*x^2"));
        PolynomialForm p = to_polynomial(d);
        REQUIRE(p.degree() == 1);
        CHECK(p.coefficient(1) == 1);
    }
    SECTION("x^4 -> 4x^3") {
        PolynomialForm p = to_polynomial(differentiate(parse_potential("x^4")));
        REQUIRE(p.degree() == 3);
        CHECK(p.coefficient(3) == 4);
    }
    SECTION("constants -> 0") {
        CHECK(to_polynomial(differentiate(parse_potential("7.25"))).is_zero());
    }
}

TEST_CASE("to_polynomial") {
    SECTION("1 + 2*x + 3*x^2") {
        PolynomialForm p = poly_of("1 + 2*x + 3*x^2");
        CHECK(p.coefficients == std::vector<Rational>{1, 2, 3});
    }
    SECTION("x*(x-1) expands") {
        PolynomialForm p = poly_of("x*(x-1)");
        CHECK(p.coefficients == std::vector<Rational>{0, -1, 1});
    }
    SECTION("trailing zeros are stripped") {
        PolynomialForm p = poly_of("x^3 - x^3 + 2");
        CHECK(p.degree() == 0);
        CHECK(p.coefficient(0) == 2);
    }
}

TEST_CASE("eval_samples") {
    ExprAst half = parse_potential("0.5*x^2");
    std::vector<double> pts{0.0, 1.0, 2.0};
    CHECK(eval_samples(half, pts) == std::vector<double>{0.0, 0.5, 2.0});
    std::vector<double> one{-1.0};
    CHECK(eval_samples(parse_potential("x"), one) == std::vector<double>{-1.0});
    std::vector<double> unit{1.0};
    CHECK(eval_samples(parse_potential("x^4 - x^2"), unit) == std::vector<double>{0.0});
}

TEST_CASE("parse-render round trip") {
    std::mt19937 rng(1912);
    for (int trial = 0; trial < 60; ++trial) {
        std::string text = random_poly_text(rng, 6);
        ExprAst ast = parse_potential(text);
        ExprAst again = parse_potential(render(ast));
        CHECK(ast == again);
    }
    for (const char* text : {"0.5*x^2", "x^4 - x^2", "x*(x-1)/4", "-x^3 + 2.25*x"}) {
        ExprAst d = differentiate(parse_potential(text));
        CHECK(parse_potential(render(d)) == d);
    }
}

TEST_CASE("derivative matches central finite differences") {
    std::mt19937 rng(65537);
    std::uniform_real_distribution<double> point(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::string text = random_poly_text(rng, 6);
        ExprAst u = parse_potential(text);
        ExprAst du = differentiate(u);
        for (int k = 0; k < 50; ++k) {
            double x = point(rng);
            double h = 1e-5;
            double fd = (eval(u, x + h) - eval(u, x - h)) / (2.0 * h);
            double an = eval(du, x);
            CHECK(std::abs(fd - an) <= 1e-6 * std::max(1.0, std::abs(an)));
        }
    }
}

TEST_CASE("to_polynomial agrees with direct evaluation") {
    std::mt19937 rng(31337);
    std::uniform_real_distribution<double> point(-3.0, 3.0);
    for (int trial = 0; trial < 30; ++trial) {
        std::string text = random_poly_text(rng, 6);
        ExprAst u = parse_potential(text);
        PolynomialForm p = to_polynomial(u);
        for (int k = 0; k < 10; ++k) {
            double x = point(rng);
            double direct = eval(u, x);
            CHECK(std::abs(p.eval(x) - direct) <= 1e-12 * std::max(1.0, std::abs(direct)));
        }
    }
}
