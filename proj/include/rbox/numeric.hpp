#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace rbox {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact binomial coefficient C(n, k); zero when k > n.
BigInt binomial(std::uint64_t n, std::uint64_t k);

/// Generalized binomial g_s(x): x(x-1)...(x-s+1)/s! for x > s-1, else 0.
Rational g(std::uint32_t s, const Rational& x);
double g(std::uint32_t s, double x);

/// ln C(n, k) for an integer n given exactly.
double log_binomial(std::uint64_t n, std::uint64_t k);

/// ln C(n, k) when only ln n is known. Accurate for n much larger than k and
/// for small exact n alike; the sum has k terms.
double log_binomial_from_log(double ln_n, std::uint64_t k);

double to_double(const Rational& q);
double to_double(const BigInt& z);

/// Exact rational conversion of a finite double (doubles are dyadic).
Rational from_double(double x);

/// Parses "p/q", an integer, or a finite decimal ("0.125", "1e-3") exactly.
/// Returns std::nullopt on malformed input.
std::optional<Rational> parse_rational(std::string_view text);

/// Decimal representation, 12 significant digits.
std::string format_log(double x);

double round_significant(double x, int digits = 12);

/// A real parameter that may also be known exactly (e.g. alpha = 1/27).
struct Real {
    double value = 0.0;
    std::optional<Rational> exact;

    Real() = default;
    Real(double v) : value(v) {}  // NOLINT(google-explicit-constructor)
    explicit Real(const Rational& q) : value(to_double(q)), exact(q) {}

    static std::optional<Real> parse(std::string_view text);
};

/// Ceil of a rational.
BigInt ceil(const Rational& q);
BigInt floor(const Rational& q);

}  // namespace rbox
