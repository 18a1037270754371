#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rbox/numeric.hpp"
#include "rbox/relation.hpp"

namespace rbox {

/// The common axis size n, known exactly or only through ln n.
struct Scale {
    double ln_n = 0.0;
    std::optional<Rational> ln_n_exact;  // ln n given as an exact rational
    std::optional<std::uint64_t> n;      // n given as an integer

    static Scale from_n(std::uint64_t n);
    static Scale from_ln(const Real& ln_n);
};

enum class Relop { le, lt, ge, gt };
const char* to_string(Relop op) noexcept;

/// One inequality `lhs op rhs`, stored as natural logs of both sides.
struct Comparison {
    std::string name;
    double lhs_log = 0.0;
    double rhs_log = 0.0;
    Relop op = Relop::le;
    bool holds = false;
    bool exact = false;          // decided by exact arithmetic
    bool near_boundary = false;  // inside the 1e-12 guard band
};

enum class Verdict { holds, fails, hypotheses_violated };
const char* to_string(Verdict v) noexcept;

struct BoundReport {
    std::string bound;
    unsigned r = 0;
    Scale scale;
    Real alpha;
    bool alpha_inferred = false;
    std::vector<std::uint32_t> shape;
    std::vector<Comparison> hypotheses;
    std::optional<Comparison> conclusion;  // present when both sides were evaluated
    double lhs_log = std::numeric_limits<double>::quiet_NaN();
    double rhs_log = std::numeric_limits<double>::quiet_NaN();
    Verdict verdict = Verdict::hypotheses_violated;
    std::vector<std::string> notes;

    bool hypotheses_ok() const;
    const Comparison* hypothesis(std::string_view name) const;
};

inline constexpr double kGuardBand = 1e-12;

struct Thm1Params {
    std::uint64_t s = 0;
    std::optional<BigInt> t;  // only when n is an integer and t fits comfortably
    double t_log = 0.0;       // (1 - alpha^{r-2}) ln n
    BoundReport report;
};

/// s = floor(alpha (ln n)^{1/(r-1)}), t = ceil(n^{1 - alpha^{r-2}}) and the
/// window (ln n)^{-1/(r-1)} <= alpha <= r^{-3}. Requires r >= 3.
Thm1Params thm1_params(unsigned r, const Scale& n, const Real& alpha);

/// Window and 1 <= s_1...s_{r-1} <= alpha^{r-1} ln n; rhs_log = (1 - alpha^{r-2}) ln n.
/// With measured_t the conclusion t > n^{1-alpha^{r-2}} is evaluated.
BoundReport thm2_check(unsigned r, const Scale& n, const Real& alpha, const Shape& prefix_shape,
                       std::optional<std::uint64_t> measured_t = std::nullopt);

/// Same arithmetic as thm2_check for the relation setting |M| >= alpha n^r.
BoundReport thm3_check(unsigned r, const Scale& n, const Real& alpha, const Shape& prefix_shape,
                       std::optional<std::uint64_t> measured_t = std::nullopt);

/// |B_M(s)| >= (alpha/2^r)^{r s_1...s_r} C(n,s_1)...C(n,s_r) under
/// 2^r exp(-(ln n)^{1/r}/r) <= alpha <= 1 and 1 <= s_1...s_r <= ln n.
/// The comparison with exact_count is reported in `conclusion` whether or
/// not the hypotheses hold; the verdict only asserts it when they do.
BoundReport thm4_bound(unsigned r, const Scale& n, const Real& alpha, const Shape& shape,
                       const std::optional<BigInt>& exact_count = std::nullopt);

/// Exact right-hand side of the thm4 bound, for small arguments.
Rational thm4_rhs_exact(unsigned r, std::uint64_t n, const Rational& alpha, const Shape& shape);

struct ClaimCheck {
    bool window = false;   // alpha window of the claim
    bool product = true;   // shape product within ln n (claim 1 only)
    bool hypothesis = false;
    bool conclusion = false;
    double lhs_log = 0.0;
    double rhs_log = 0.0;
};

/// Hypothesis: 2^r exp(-(ln n)^{1/r}/r) <= alpha <= 1 (and s_1...s_r <= ln n).
/// Conclusion: (alpha/2)(alpha/2^r)^{(r-1)s_1...s_{r-1}} n >= 2 s_r.
ClaimCheck claim1_check(unsigned r, const Scale& n, const Real& alpha, const Shape& shape);

/// Hypothesis: (ln n)^{-1/(r-1)} <= alpha <= r^{-3}.
/// Conclusion: 2^{r-1} exp(-(ln n)^{1/(r-1)}/(r-1)) <= alpha/2 <= 1. Requires r >= 3.
ClaimCheck claim2_check(unsigned r, const Scale& n, const Real& alpha);

/// Intermediate step of the extraction argument:
/// (alpha/2)(alpha/2^r)^{(r-1)s_1...s_{r-1}} n > n^{1-alpha^{r-2}}.
ClaimCheck thm3_chain_check(unsigned r, const Scale& n, const Real& alpha, const Shape& prefix_shape);

struct R2Params {
    std::uint64_t s = 0;  // floor(alpha^2 ln n)
    double t_log = 0.0;   // (1 - alpha) ln n
    BoundReport report;
};

/// Bipartite analogue: (ln n)^{-1/2} <= alpha < 1/2 gives K_2(s, t) with
/// s = floor(alpha^2 ln n) and t > n^{1-alpha}.
R2Params r2_remark_params(const Scale& n, const Real& alpha);

enum class FrontierTarget { thm4, thm3, thm1 };
std::optional<FrontierTarget> parse_frontier_target(std::string_view s);
const char* to_string(FrontierTarget t) noexcept;

struct Frontier {
    FrontierTarget target = FrontierTarget::thm4;
    unsigned r = 0;
    double ln_n_min = 0.0;               // bisection on ln n
    double ln_n_closed_form = 0.0;       // (r^2 ln 2)^r or r^{3(r-1)}
    std::optional<std::uint64_t> n_min;  // smallest integer n, when representable
};

/// Smallest n for which the hypotheses of the target admit some alpha, at the
/// most favorable alpha (1 for thm4, r^{-3} for thm1/thm3).
Frontier feasibility_frontier(unsigned r, FrontierTarget target);

/// Whether the target's alpha window is nonempty at this ln n.
bool frontier_predicate(unsigned r, FrontierTarget target, double ln_n);

}  // namespace rbox
