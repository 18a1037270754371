#include "rbox/bounds.hpp"

#include <cmath>
#include <functional>
#include <sstream>

namespace rbox {

namespace {

const double kLn2 = std::log(2.0);

using ExactSign = std::function<std::optional<int>()>;

int sign_of(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

Rational exact_of(const Real& x) { return x.exact ? *x.exact : from_double(x.value); }

std::optional<Rational> exact_ln(const Scale& n) {
    if (n.ln_n_exact) return n.ln_n_exact;
    if (n.n) return std::nullopt;  // ln of an integer >= 2 is irrational
    return from_double(n.ln_n);
}

Rational rpow(const Rational& base, unsigned e) {
    Rational out = 1;
    for (unsigned i = 0; i < e; ++i) out *= base;
    return out;
}

bool relop_holds(Relop op, int sign) {
    switch (op) {
        case Relop::le: return sign <= 0;
        case Relop::lt: return sign < 0;
        case Relop::ge: return sign >= 0;
        case Relop::gt: return sign > 0;
    }
    return false;
}

/// Decides `lhs op rhs` from log values; inside the guard band the exact sign
/// of (lhs - rhs), when provided, settles it.
Comparison decide(std::string name, double lhs, double rhs, Relop op, const ExactSign& exact = {}) {
    Comparison c{std::move(name), lhs, rhs, op};
    int sign = 0;
    if (std::isinf(lhs) || std::isinf(rhs)) {
        sign = lhs > rhs ? 1 : (lhs < rhs ? -1 : 0);
    } else {
        double diff = lhs - rhs;
        double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
        if (std::abs(diff) > kGuardBand * scale) {
            sign = diff > 0 ? 1 : -1;
        } else {
            c.near_boundary = true;
            std::optional<int> e = exact ? exact() : std::nullopt;
            if (e) {
                sign = *e;
                c.exact = true;
            } else {
                sign = diff > 0 ? 1 : (diff < 0 ? -1 : 0);
            }
        }
    }
    c.holds = relop_holds(op, sign);
    return c;
}

double ln_real(double x) { return x > 0 ? std::log(x) : -std::numeric_limits<double>::infinity(); }

double log_big(const BigInt& z) {
    if (z <= 0) return -std::numeric_limits<double>::infinity();
    std::size_t bits = msb(z);
    if (bits < 1000) return std::log(to_double(z));
    std::size_t shift = bits - 60;
    return std::log(to_double(BigInt(z >> shift))) + static_cast<double>(shift) * kLn2;
}

void require_scale(const Scale& n) {
    if (!(n.ln_n > 0)) throw InvalidArgument("n must be >= 2 (ln n > 0)");
}

void require_alpha(const Real& alpha) {
    if (!(alpha.value > 0) || alpha.value > 1) throw InvalidArgument("alpha must satisfy 0 < alpha <= 1");
}

// (ln n)^{-1/(r-1)} <= alpha
Comparison window_lower_thm3(unsigned r, const Scale& n, const Real& alpha) {
    double lhs = -std::log(n.ln_n) / (r - 1);
    return decide("alpha_lower", lhs, ln_real(alpha.value), Relop::le, [&]() -> std::optional<int> {
        auto L = exact_ln(n);
        if (!L) return std::nullopt;
        return sign_of(Rational(1) - rpow(exact_of(alpha), r - 1) * *L);
    });
}

// alpha <= r^{-3}
Comparison window_upper_thm3(unsigned r, const Real& alpha) {
    return decide("alpha_upper", ln_real(alpha.value), -3.0 * std::log(static_cast<double>(r)), Relop::le,
                  [&]() -> std::optional<int> { return sign_of(exact_of(alpha) * r * r * r - 1); });
}

std::vector<Comparison> thm3_hypotheses(unsigned r, const Scale& n, const Real& alpha, const Shape& prefix) {
    std::vector<Comparison> h;
    h.push_back(window_lower_thm3(r, n, alpha));
    h.push_back(window_upper_thm3(r, alpha));
    const double lp = std::log(static_cast<double>(prefix.product()));
    h.push_back(decide("product_lower", 0.0, lp, Relop::le));
    double limit_log = (r - 1) * ln_real(alpha.value) + std::log(n.ln_n);
    h.push_back(decide("product_upper", lp, limit_log, Relop::le, [&]() -> std::optional<int> {
        auto L = exact_ln(n);
        if (!L) return std::nullopt;
        return sign_of(Rational(prefix.product()) - rpow(exact_of(alpha), r - 1) * *L);
    }));
    return h;
}

/// Sign of n^{p/q} - k, exactly, for modest exponents.
std::optional<int> power_vs(std::uint64_t n, const Rational& e, const BigInt& k) {
    BigInt p = numerator(e), q = denominator(e);
    if (p < 0 || q > 4096 || p > 4096) return std::nullopt;
    BigInt lhs = boost::multiprecision::pow(BigInt(n), p.convert_to<unsigned>());
    BigInt rhs = boost::multiprecision::pow(k, q.convert_to<unsigned>());
    return lhs > rhs ? 1 : (lhs < rhs ? -1 : 0);
}

/// ceil(n^{1-alpha^{r-2}}) when n is an integer and the result is small.
std::optional<BigInt> ceil_t(unsigned r, const Scale& n, const Real& alpha, double t_log, std::vector<std::string>& notes) {
    if (!n.n || t_log > 60.0) return std::nullopt;
    double x = std::exp(t_log);
    double k = std::round(x);
    if (std::abs(x - k) > kGuardBand * std::max(1.0, x)) return BigInt(static_cast<std::uint64_t>(std::ceil(x)));
    Rational e = 1 - rpow(exact_of(alpha), r - 2);
    if (auto s = power_vs(*n.n, e, BigInt(static_cast<std::uint64_t>(k)))) {
        auto kk = static_cast<std::uint64_t>(k);
        return BigInt(*s <= 0 ? kk : kk + 1);
    }
    notes.push_back("t within guard band of an integer; ceiling taken from the log-space value");
    return BigInt(static_cast<std::uint64_t>(std::ceil(x)));
}

void finish(BoundReport& rep) {
    if (!rep.hypotheses_ok()) rep.verdict = Verdict::hypotheses_violated;
    else if (rep.conclusion) rep.verdict = rep.conclusion->holds ? Verdict::holds : Verdict::fails;
    else rep.verdict = Verdict::holds;
}

BoundReport thm23(const char* name, unsigned r, const Scale& n, const Real& alpha, const Shape& prefix,
                  std::optional<std::uint64_t> measured_t) {
    if (r < 3) throw InvalidArgument(std::string(name) + " requires r >= 3");
    require_scale(n);
    require_alpha(alpha);
    if (prefix.arity() != r - 1)
        throw ArityMismatch(std::string(name) + ": shape needs r-1 = " + std::to_string(r - 1) + " entries");
    BoundReport rep;
    rep.bound = name;
    rep.r = r;
    rep.scale = n;
    rep.alpha = alpha;
    rep.shape = prefix.sizes();
    rep.hypotheses = thm3_hypotheses(r, n, alpha, prefix);
    const double a_pow = std::pow(alpha.value, static_cast<double>(r - 2));
    rep.rhs_log = (1.0 - a_pow) * n.ln_n;
    const double limit = std::pow(alpha.value, static_cast<double>(r - 1)) * n.ln_n;
    std::ostringstream note;
    note.precision(12);
    note << "product limit alpha^{r-1} ln n = " << limit << " (floor variant " << std::floor(limit + kGuardBand)
         << "; the unfloored form is enforced)";
    rep.notes.push_back(note.str());
    if (measured_t) {
        rep.lhs_log = ln_real(static_cast<double>(*measured_t));
        rep.conclusion = decide("t_exceeds", rep.lhs_log, rep.rhs_log, Relop::gt, [&]() -> std::optional<int> {
            if (!n.n) return std::nullopt;
            auto s = power_vs(*n.n, 1 - rpow(exact_of(alpha), r - 2), BigInt(*measured_t));
            if (!s) return std::nullopt;
            return -*s;
        });
    }
    finish(rep);
    return rep;
}

}  // namespace

Scale Scale::from_n(std::uint64_t n) {
    if (n < 2) throw InvalidArgument("n must be >= 2");
    Scale s;
    s.n = n;
    s.ln_n = std::log(static_cast<double>(n));
    return s;
}

Scale Scale::from_ln(const Real& ln_n) {
    if (!(ln_n.value > 0)) throw InvalidArgument("ln n must be > 0");
    Scale s;
    s.ln_n = ln_n.value;
    s.ln_n_exact = ln_n.exact;
    if (!s.ln_n_exact) s.ln_n_exact = from_double(ln_n.value);
    return s;
}

const char* to_string(Relop op) noexcept {
    switch (op) {
        case Relop::le: return "<=";
        case Relop::lt: return "<";
        case Relop::ge: return ">=";
        case Relop::gt: return ">";
    }
    return "?";
}

const char* to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::holds: return "holds";
        case Verdict::fails: return "fails";
        case Verdict::hypotheses_violated: return "hypotheses_violated";
    }
    return "?";
}

bool BoundReport::hypotheses_ok() const {
    for (const auto& h : hypotheses)
        if (!h.holds) return false;
    return true;
}

const Comparison* BoundReport::hypothesis(std::string_view name) const {
    for (const auto& h : hypotheses)
        if (h.name == name) return &h;
    return nullptr;
}

Thm1Params thm1_params(unsigned r, const Scale& n, const Real& alpha) {
    if (r < 3) throw InvalidArgument("thm1 requires r >= 3; use r2_remark_params for r = 2");
    require_scale(n);
    require_alpha(alpha);
    Thm1Params out;
    auto& rep = out.report;
    rep.bound = "thm1";
    rep.r = r;
    rep.scale = n;
    rep.alpha = alpha;
    rep.hypotheses.push_back(window_lower_thm3(r, n, alpha));
    rep.hypotheses.push_back(window_upper_thm3(r, alpha));

    // s = floor(alpha (ln n)^{1/(r-1)})
    double v = alpha.value * std::pow(n.ln_n, 1.0 / (r - 1));
    double k = std::round(v);
    if (std::abs(v - k) > kGuardBand * std::max(1.0, v)) {
        out.s = static_cast<std::uint64_t>(std::floor(v));
    } else if (auto L = exact_ln(n)) {
        // alpha^{r-1} ln n >= k^{r-1}  <=>  v >= k
        Rational lhs = rpow(exact_of(alpha), r - 1) * *L;
        Rational rhs = rpow(Rational(static_cast<std::uint64_t>(k)), r - 1);
        out.s = static_cast<std::uint64_t>(k) - (lhs >= rhs ? 0 : 1);
    } else {
        out.s = static_cast<std::uint64_t>(std::floor(v));
        rep.notes.push_back("s within guard band of an integer; floor taken from the log-space value");
    }

    out.t_log = (1.0 - std::pow(alpha.value, static_cast<double>(r - 2))) * n.ln_n;
    out.t = ceil_t(r, n, alpha, out.t_log, rep.notes);
    rep.shape.assign(r - 1, static_cast<std::uint32_t>(out.s));
    rep.rhs_log = out.t_log;
    finish(rep);
    return out;
}

BoundReport thm2_check(unsigned r, const Scale& n, const Real& alpha, const Shape& prefix_shape,
                       std::optional<std::uint64_t> measured_t) {
    return thm23("thm2", r, n, alpha, prefix_shape, measured_t);
}

BoundReport thm3_check(unsigned r, const Scale& n, const Real& alpha, const Shape& prefix_shape,
                       std::optional<std::uint64_t> measured_t) {
    return thm23("thm3", r, n, alpha, prefix_shape, measured_t);
}

Rational thm4_rhs_exact(unsigned r, std::uint64_t n, const Rational& alpha, const Shape& shape) {
    Rational base = alpha / Rational(BigInt(1) << r);
    const std::uint64_t e = static_cast<std::uint64_t>(r) * shape.product();
    Rational out = 1;
    for (std::uint64_t i = 0; i < e; ++i) out *= base;
    for (auto s : shape.sizes()) out *= Rational(binomial(n, s));
    return out;
}

BoundReport thm4_bound(unsigned r, const Scale& n, const Real& alpha, const Shape& shape,
                       const std::optional<BigInt>& exact_count) {
    if (r < 2) throw InvalidArgument("thm4 requires r >= 2");
    require_scale(n);
    require_alpha(alpha);
    if (shape.arity() != r) throw ArityMismatch("thm4: shape needs r = " + std::to_string(r) + " entries");
    BoundReport rep;
    rep.bound = "thm4";
    rep.r = r;
    rep.scale = n;
    rep.alpha = alpha;
    rep.shape = shape.sizes();
    const double la = ln_real(alpha.value);
    rep.hypotheses.push_back(
        decide("alpha_lower", r * kLn2 - std::pow(n.ln_n, 1.0 / r) / r, la, Relop::le));
    rep.hypotheses.push_back(decide("alpha_upper", la, 0.0, Relop::le,
                                    [&]() -> std::optional<int> { return sign_of(exact_of(alpha) - 1); }));
    const double P = static_cast<double>(shape.product());
    rep.hypotheses.push_back(decide("product_lower", 0.0, std::log(P), Relop::le));
    rep.hypotheses.push_back(decide("product_upper", std::log(P), std::log(n.ln_n), Relop::le,
                                    [&]() -> std::optional<int> {
                                        auto L = exact_ln(n);
                                        if (!L) return std::nullopt;
                                        return sign_of(Rational(shape.product()) - *L);
                                    }));

    double rhs = r * P * (la - r * kLn2);
    for (auto s : shape.sizes()) rhs += n.n ? log_binomial(*n.n, s) : log_binomial_from_log(n.ln_n, s);
    rep.rhs_log = rhs;
    if (exact_count) {
        rep.lhs_log = log_big(*exact_count);
        rep.conclusion = decide("count_at_least_bound", rep.lhs_log, rep.rhs_log, Relop::ge, [&]() -> std::optional<int> {
            if (!n.n || *n.n > 10'000'000 || r * P > 4096) return std::nullopt;
            return sign_of(Rational(*exact_count) - thm4_rhs_exact(r, *n.n, exact_of(alpha), shape));
        });
    }
    finish(rep);
    return rep;
}

ClaimCheck claim1_check(unsigned r, const Scale& n, const Real& alpha, const Shape& shape) {
    if (r < 2) throw InvalidArgument("claim1 requires r >= 2");
    if (shape.arity() != r) throw ArityMismatch("claim1: shape needs r = " + std::to_string(r) + " entries");
    const double la = ln_real(alpha.value);
    const double L = n.ln_n;
    ClaimCheck c;
    c.window = (r * kLn2 - std::pow(L, 1.0 / r) / r <= la) && alpha.value <= 1.0;
    c.product = static_cast<double>(shape.product()) <= L;
    c.hypothesis = c.window && c.product;
    const double q = static_cast<double>(shape.prefix().product());
    c.lhs_log = la - kLn2 + (r - 1) * q * (la - r * kLn2) + L;
    c.rhs_log = std::log(2.0 * shape.back());
    c.conclusion = c.lhs_log >= c.rhs_log;
    return c;
}

ClaimCheck claim2_check(unsigned r, const Scale& n, const Real& alpha) {
    if (r < 3) throw InvalidArgument("claim2 requires r >= 3");
    ClaimCheck c;
    c.window = window_lower_thm3(r, n, alpha).holds && window_upper_thm3(r, alpha).holds;
    c.hypothesis = c.window;
    c.lhs_log = (r - 1) * kLn2 - std::pow(n.ln_n, 1.0 / (r - 1)) / (r - 1);
    c.rhs_log = ln_real(alpha.value) - kLn2;
    c.conclusion = c.lhs_log <= c.rhs_log && c.rhs_log <= 0.0;
    return c;
}

ClaimCheck thm3_chain_check(unsigned r, const Scale& n, const Real& alpha, const Shape& prefix_shape) {
    if (r < 3) throw InvalidArgument("thm3 chain requires r >= 3");
    if (prefix_shape.arity() != r - 1) throw ArityMismatch("thm3 chain: shape needs r-1 entries");
    ClaimCheck c;
    auto h = thm3_hypotheses(r, n, alpha, prefix_shape);
    c.window = h[0].holds && h[1].holds;
    c.product = h[2].holds && h[3].holds;
    c.hypothesis = c.window && c.product;
    const double la = ln_real(alpha.value);
    const double q = static_cast<double>(prefix_shape.product());
    c.lhs_log = la - kLn2 + (r - 1) * q * (la - r * kLn2) + n.ln_n;
    c.rhs_log = (1.0 - std::pow(alpha.value, static_cast<double>(r - 2))) * n.ln_n;
    c.conclusion = c.lhs_log > c.rhs_log;
    return c;
}

R2Params r2_remark_params(const Scale& n, const Real& alpha) {
    require_scale(n);
    require_alpha(alpha);
    R2Params out;
    auto& rep = out.report;
    rep.bound = "r2";
    rep.r = 2;
    rep.scale = n;
    rep.alpha = alpha;
    const double la = ln_real(alpha.value);
    rep.hypotheses.push_back(decide("alpha_lower", -0.5 * std::log(n.ln_n), la, Relop::le, [&]() -> std::optional<int> {
        auto L = exact_ln(n);
        if (!L) return std::nullopt;
        return sign_of(Rational(1) - exact_of(alpha) * exact_of(alpha) * *L);
    }));
    rep.hypotheses.push_back(decide("alpha_upper", la, -kLn2, Relop::lt, [&]() -> std::optional<int> {
        return sign_of(exact_of(alpha) * 2 - 1);
    }));

    double v = alpha.value * alpha.value * n.ln_n;
    double k = std::round(v);
    if (std::abs(v - k) > kGuardBand * std::max(1.0, v)) {
        out.s = static_cast<std::uint64_t>(std::floor(v));
    } else if (auto L = exact_ln(n)) {
        out.s = floor(exact_of(alpha) * exact_of(alpha) * *L).convert_to<std::uint64_t>();
    } else {
        out.s = static_cast<std::uint64_t>(std::floor(v));
        rep.notes.push_back("s within guard band of an integer; floor taken from the log-space value");
    }
    out.t_log = (1.0 - alpha.value) * n.ln_n;
    rep.shape = {static_cast<std::uint32_t>(out.s)};
    rep.rhs_log = out.t_log;
    finish(rep);
    return out;
}

std::optional<FrontierTarget> parse_frontier_target(std::string_view s) {
    if (s == "thm4") return FrontierTarget::thm4;
    if (s == "thm3") return FrontierTarget::thm3;
    if (s == "thm1") return FrontierTarget::thm1;
    return std::nullopt;
}

const char* to_string(FrontierTarget t) noexcept {
    switch (t) {
        case FrontierTarget::thm4: return "thm4";
        case FrontierTarget::thm3: return "thm3";
        case FrontierTarget::thm1: return "thm1";
    }
    return "?";
}

bool frontier_predicate(unsigned r, FrontierTarget target, double ln_n) {
    if (!(ln_n > 0)) return false;
    if (target == FrontierTarget::thm4) return r * kLn2 - std::pow(ln_n, 1.0 / r) / r <= 0.0;
    // (ln n)^{-1/(r-1)} <= r^{-3}
    return -std::log(ln_n) / (r - 1) <= -3.0 * std::log(static_cast<double>(r));
}

Frontier feasibility_frontier(unsigned r, FrontierTarget target) {
    if (target == FrontierTarget::thm4 ? r < 2 : r < 3)
        throw InvalidArgument(std::string("frontier for ") + to_string(target) + " needs larger r");
    Frontier f;
    f.target = target;
    f.r = r;
    f.ln_n_closed_form = target == FrontierTarget::thm4 ? std::pow(r * r * kLn2, static_cast<double>(r))
                                                        : std::pow(static_cast<double>(r), 3.0 * (r - 1));

    double lo = 0.0, hi = 1.0;
    while (!frontier_predicate(r, target, hi)) {
        lo = hi;
        hi *= 2.0;
    }
    for (int it = 0; it < 2000 && hi - lo > 1e-15 * hi; ++it) {
        double mid = lo + (hi - lo) / 2;
        if (mid <= lo || mid >= hi) break;
        (frontier_predicate(r, target, mid) ? hi : lo) = mid;
    }
    f.ln_n_min = hi;

    if (f.ln_n_min < 43.0) {
        auto pred = [&](std::uint64_t n) { return frontier_predicate(r, target, std::log(static_cast<double>(n))); };
        std::uint64_t a = 1;  // predicate false
        auto b = static_cast<std::uint64_t>(std::ceil(std::exp(f.ln_n_min))) + 1;
        while (!pred(b)) b *= 2;
        while (b - a > 1) {
            std::uint64_t mid = a + (b - a) / 2;
            (pred(mid) ? b : a) = mid;
        }
        f.n_min = b;
    }
    return f;
}

}  // namespace rbox
