#include "rbox/numeric.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <regex>

namespace rbox {

BigInt binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    BigInt result = 1;
    for (std::uint64_t j = 0; j < k; ++j) {
        result *= n - j;
        result /= j + 1;
    }
    return result;
}

Rational g(std::uint32_t s, const Rational& x) {
    if (x <= Rational(s) - 1) return Rational(0);
    Rational result = 1;
    for (std::uint32_t j = 0; j < s; ++j) {
        result *= x - j;
        result /= j + 1;
    }
    return result;
}

double g(std::uint32_t s, double x) {
    if (x <= static_cast<double>(s) - 1.0) return 0.0;
    double result = 1.0;
    for (std::uint32_t j = 0; j < s; ++j) result *= (x - j) / (j + 1);
    return result;
}

double log_binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return -std::numeric_limits<double>::infinity();
    k = std::min(k, n - k);
    if (k > 100000) {
        return std::lgamma(static_cast<double>(n) + 1) - std::lgamma(static_cast<double>(k) + 1) -
               std::lgamma(static_cast<double>(n - k) + 1);
    }
    double acc = 0.0;
    for (std::uint64_t j = 0; j < k; ++j)
        acc += std::log(static_cast<double>(n - j)) - std::log(static_cast<double>(j + 1));
    return acc;
}

double log_binomial_from_log(double ln_n, std::uint64_t k) {
    if (k == 0) return 0.0;
    // Exact path whenever n is a representable integer.
    if (ln_n < 40.0) {
        double n = std::exp(ln_n);
        double rounded = std::round(n);
        if (std::abs(n - rounded) <= 1e-9 * n) return log_binomial(static_cast<std::uint64_t>(rounded), k);
        if (n < static_cast<double>(k) - 1.0) return -std::numeric_limits<double>::infinity();
    }
    double inv_n = std::exp(-ln_n);
    double acc = 0.0;
    for (std::uint64_t j = 0; j < k; ++j) acc += ln_n + std::log1p(-static_cast<double>(j) * inv_n);
    return acc - std::lgamma(static_cast<double>(k) + 1);
}

double to_double(const Rational& q) { return q.convert_to<double>(); }
double to_double(const BigInt& z) { return z.convert_to<double>(); }

Rational from_double(double x) {
    if (x == 0.0) return Rational(0);
    int exp = 0;
    double mant = std::frexp(x, &exp);
    // mant * 2^53 is an integer
    auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
    exp -= 53;
    Rational q{BigInt(scaled)};
    BigInt pow2 = BigInt(1) << std::abs(exp);
    return exp >= 0 ? q * Rational(pow2) : q / Rational(pow2);
}

namespace {

bool is_integer_literal(std::string_view s) {
    static const std::regex re(R"([+-]?\d+)");
    return std::regex_match(s.begin(), s.end(), re);
}

BigInt parse_integer(std::string_view s) {
    bool negative = !s.empty() && s.front() == '-';
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    while (s.size() > 1 && s.front() == '0') s.remove_prefix(1);
    BigInt v{std::string(s)};
    return negative ? BigInt(-v) : v;
}

BigInt pow10(unsigned e) {
    BigInt r = 1;
    for (unsigned i = 0; i < e; ++i) r *= 10;
    return r;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) return std::nullopt;

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num = text.substr(0, slash);
        auto den = text.substr(slash + 1);
        if (!is_integer_literal(num) || !is_integer_literal(den)) return std::nullopt;
        BigInt d = parse_integer(den);
        if (d == 0) return std::nullopt;
        return Rational(parse_integer(num), d);
    }

    static const std::regex re(R"(([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?)");
    std::match_results<std::string_view::const_iterator> m;
    if (!std::regex_match(text.begin(), text.end(), m, re)) return std::nullopt;
    std::string int_part = m[2].str();
    std::string frac_part = m[3].str();
    if (int_part.empty() && frac_part.empty()) return std::nullopt;
    long exp10 = 0;
    if (m[4].matched) {
        if (m[4].length() > 6) return std::nullopt;
        exp10 = std::stol(m[4].str());
    }
    std::string digits = int_part + frac_part;
    // a leading zero would select octal in the BigInt string constructor
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size()));
    exp10 -= static_cast<long>(frac_part.size());
    Rational q{BigInt(digits.empty() ? std::string("0") : digits)};
    if (exp10 > 0) q *= Rational(pow10(static_cast<unsigned>(exp10)));
    if (exp10 < 0) q /= Rational(pow10(static_cast<unsigned>(-exp10)));
    if (m[1].str() == "-") q = -q;
    return q;
}

std::string format_log(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

double round_significant(double x, int digits) {
    if (!std::isfinite(x) || x == 0.0) return x;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return std::strtod(buf, nullptr);
}

std::optional<Real> Real::parse(std::string_view text) {
    auto q = parse_rational(text);
    if (!q) return std::nullopt;
    return Real(*q);
}

BigInt floor(const Rational& q) {
    BigInt num = numerator(q);
    BigInt den = denominator(q);
    BigInt quot = num / den;
    if (num < 0 && quot * den != num) quot -= 1;
    return quot;
}

BigInt ceil(const Rational& q) { return -floor(-q); }

}  // namespace rbox
