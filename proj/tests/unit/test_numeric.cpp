#include <doctest.h>

#include <cmath>

#include "../support/oracles.hpp"
#include "rbox/numeric.hpp"

using namespace rbox;

TEST_CASE("binomial coefficients") {
    CHECK(binomial(4, 2) == 6);
    CHECK(binomial(5, 0) == 1);
    CHECK(binomial(3, 4) == 0);
    CHECK(binomial(100, 50) == BigInt("100891344545564193334812497256"));
    for (std::uint64_t n = 0; n <= 30; ++n)
        for (std::uint64_t k = 0; k <= n + 1; ++k) CHECK(binomial(n, k) == oracle::binom(n, k));
}

TEST_CASE("generalized binomial g") {
    CHECK(g(2, Rational(4)) == 6);
    CHECK(g(2, Rational(1)) == 0);
    CHECK(g(3, Rational(5, 2)) == Rational(5, 16));
    CHECK(g(3, 2.5) == doctest::Approx(0.3125).epsilon(1e-12));
    CHECK(g(1, Rational(-3)) == 0);
    CHECK(g(2, 1.0) == 0.0);
}

TEST_CASE("g matches the falling factorial oracle and integer binomials") {
    for (std::uint32_t s = 1; s <= 6; ++s) {
        for (int num = -20; num <= 120; num += 7) {
            Rational x(num, 7);
            CHECK(g(s, x) == oracle::falling(s, x));
        }
        for (std::uint64_t x = s; x <= 40; ++x) CHECK(g(s, Rational(x)) == binomial(x, s));
    }
}

TEST_CASE("g is zero up to s-1 and non-decreasing") {
    for (std::uint32_t s = 1; s <= 5; ++s) {
        Rational prev = -1;
        for (int i = -10; i <= 200; ++i) {
            Rational x(i, 10);
            Rational v = g(s, x);
            if (x <= Rational(s) - 1) CHECK(v == 0);
            CHECK(v >= prev);
            prev = v;
        }
    }
}

TEST_CASE("g in floating point tracks the exact value") {
    for (std::uint32_t s = 1; s <= 8; ++s)
        for (double x : {7.25, 19.5, 1000.125, 123456.5, 999999.75}) {
            double exact = to_double(g(s, from_double(x)));
            CHECK(std::abs(g(s, x) - exact) <= 1e-12 * std::abs(exact));
        }
}

TEST_CASE("log binomials") {
    CHECK(log_binomial(10, 3) == doctest::Approx(std::log(120.0)).epsilon(1e-13));
    CHECK(log_binomial(4, 0) == 0.0);
    for (std::uint64_t n : {2u, 7u, 50u, 100u})
        for (std::uint64_t k = 1; k <= n; k += 3) {
            double exact = std::log(to_double(binomial(n, k)));
            CHECK(log_binomial(n, k) == doctest::Approx(exact).epsilon(1e-11));
            CHECK(log_binomial_from_log(std::log(static_cast<double>(n)), k) == doctest::Approx(exact).epsilon(1e-9));
        }
    // far beyond double range
    double ln_n = 1000.0;
    CHECK(log_binomial_from_log(ln_n, 1) == doctest::Approx(1000.0).epsilon(1e-15));
    CHECK(log_binomial_from_log(ln_n, 3) == doctest::Approx(3000.0 - std::log(6.0)).epsilon(1e-15));
}

TEST_CASE("rational parsing") {
    CHECK(*parse_rational("1/27") == Rational(1, 27));
    CHECK(*parse_rational("0.125") == Rational(1, 8));
    CHECK(*parse_rational("-3") == -3);
    CHECK(*parse_rational("1e-3") == Rational(1, 1000));
    CHECK(*parse_rational("2.5E2") == 250);
    CHECK(*parse_rational(" .5 ") == Rational(1, 2));
    CHECK_FALSE(parse_rational("1/0"));
    CHECK_FALSE(parse_rational("abc"));
    CHECK_FALSE(parse_rational(""));
    CHECK_FALSE(parse_rational("1.2.3"));
    CHECK_FALSE(parse_rational("."));
}

TEST_CASE("Real keeps exact values") {
    auto a = Real::parse("1/27");
    REQUIRE(a);
    CHECK(a->exact == Rational(1, 27));
    CHECK(a->value == doctest::Approx(1.0 / 27));
    CHECK_FALSE(Real::parse("x"));
}

TEST_CASE("double to rational is exact") {
    for (double x : {0.1, -2.75, 1e-300, 3.0e200, 0.0}) CHECK(to_double(from_double(x)) == x);
    CHECK(from_double(0.5) == Rational(1, 2));
}

TEST_CASE("floor and ceil of rationals") {
    CHECK(floor(Rational(7, 2)) == 3);
    CHECK(ceil(Rational(7, 2)) == 4);
    CHECK(floor(Rational(-7, 2)) == -4);
    CHECK(ceil(Rational(-7, 2)) == -3);
    CHECK(floor(Rational(4)) == 4);
    CHECK(ceil(Rational(4)) == 4);
}

TEST_CASE("significant-digit rounding") {
    CHECK(round_significant(7.687248222691589) == 7.68724822269);
    CHECK(format_log(970.0) == "970");
    CHECK(format_log(1.0 / 3) == "0.333333333333");
}
