#include "rbox/invariants.hpp"

#include <numeric>

#include "rbox/counting.hpp"
#include "rbox/extraction.hpp"
#include "rbox/peeling.hpp"
#include "rbox/rng.hpp"

namespace rbox {

const char* to_string(CheckStatus s) noexcept {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::skipped: return "skipped";
    }
    return "?";
}

namespace {

InvariantResult verdict(std::string name, bool ok, std::string detail) {
    return {std::move(name), ok ? CheckStatus::pass : CheckStatus::fail, std::move(detail)};
}

std::string str(const Rational& q) {
    return denominator(q) == 1 ? numerator(q).str() : numerator(q).str() + "/" + denominator(q).str();
}

}  // namespace

InvariantResult check_oracle_equivalence(const Relation& m, const Shape& shape, std::uint64_t budget) {
    const char* name = "oracle_equivalence";
    try {
        auto fast = count_boxes(m, shape);
        auto slow = naive_count_boxes(m, shape, budget);
        return verdict(name, fast.count == slow.count,
                       "recursive " + fast.count.str() + ", naive " + slow.count.str());
    } catch (const BudgetExceeded& e) {
        return {name, CheckStatus::skipped, e.what()};
    }
}

InvariantResult check_fiber_partition(const Relation& m) {
    std::size_t total = 0;
    for (Index v = 0; v < m.axis_sizes().back(); ++v) total += fiber(m, v).size();
    return verdict("fiber_partition", total == m.size(),
                   "sum of fiber sizes " + std::to_string(total) + ", |M| " + std::to_string(m.size()));
}

InvariantResult check_double_counting(const Relation& m, const Shape& prefix_shape) {
    BigInt by_rectangles = 0;
    for_each_rectangle(project_last(m), prefix_shape, [&](const Rectangle& r) {
        by_rectangles += common_neighborhood(m, r).size();
        return true;
    });
    BigInt by_vertices = support_sum(m, prefix_shape);
    return verdict("double_counting", by_rectangles == by_vertices,
                   "sum_R d(R) = " + by_rectangles.str() + ", sum_v D(v) = " + by_vertices.str());
}

InvariantResult check_jensen_chain(const Relation& m, const Shape& shape) {
    const Shape prefix = shape.prefix();
    BigInt count = count_boxes(m, shape).count;
    BigInt n_rect = candidate_rectangles(m, prefix);
    BigInt s = support_sum(m, prefix);
    Rational bound = n_rect == 0 ? Rational(0) : Rational(n_rect) * g(shape.back(), Rational(s, n_rect));
    return verdict("jensen_chain", Rational(count) >= bound,
                   "count " + count.str() + " >= N g(s_r, S/N) = " + str(bound) + " (N " + n_rect.str() + ", S " +
                       s.str() + ")");
}

InvariantResult check_bipartite_chain(const Relation& m, const Shape& shape) {
    if (m.arity() != 2) return {"bipartite_chain", CheckStatus::skipped, "needs r = 2"};
    const std::uint32_t n1 = m.axis_size(0), n2 = m.axis_size(1);
    BigInt count = count_boxes(m, shape).count;
    BigInt c1 = binomial(n1, shape[0]);
    Rational bound = 0;
    if (c1 != 0) {
        Rational inner = Rational(n2) * g(shape[0], Rational(BigInt(m.size()), BigInt(n2))) / Rational(c1);
        bound = Rational(c1) * g(shape[1], inner);
    }
    return verdict("bipartite_chain", Rational(count) >= bound, "count " + count.str() + " >= " + str(bound));
}

InvariantResult check_peel(const Relation& m, const Rational& theta, unsigned orders, std::uint64_t seed) {
    const char* name = "peeling";
    auto base = peel(m, theta);
    for (auto u : base.survivors)
        if (Rational(base.core.last_degree(u)) < theta)
            return verdict(name, false, "survivor " + std::to_string(u) + " has degree below theta");
    for (const auto& rem : base.removed)
        if (Rational(rem.degree) >= theta)
            return verdict(name, false, "vertex " + std::to_string(rem.vertex) + " removed at degree >= theta");
    const Rational lost(BigInt(m.size() - base.core.size()));
    if (!base.removed.empty() && !(lost < theta * Rational(BigInt(base.removed.size()))))
        return verdict(name, false, "|M| - |L| = " + str(lost) + " not below theta * removals");
    if (base.removed.empty() && lost != 0) return verdict(name, false, "tuples lost without removals");

    Rng rng(seed);
    std::vector<Index> order(m.axis_sizes().back());
    std::iota(order.begin(), order.end(), Index{0});
    for (unsigned k = 0; k < orders; ++k) {
        rng.shuffle(order);
        auto other = peel(m, theta, order);
        if (other.survivors != base.survivors || !(other.core == base.core))
            return verdict(name, false, "scan order " + std::to_string(k) + " reached a different core");
    }
    // vertices outside W have degree 0 in L and are dropped again without losing tuples
    auto again = peel(base.core, theta);
    if (!(again.core == base.core) || again.survivors != base.survivors)
        return verdict(name, false, "peeling the core changed it");
    return verdict(name, true,
                   "theta " + str(theta) + ", |W| " + std::to_string(base.survivors.size()) + ", |L| " +
                       std::to_string(base.core.size()) + ", " + std::to_string(orders) + " scan orders agree");
}

InvariantResult check_averaging_floor(const Relation& m, const Shape& prefix_shape, bool peel_first,
                                      const std::optional<Rational>& alpha, std::uint64_t budget) {
    std::string name = peel_first ? "averaging_floor_peeled" : "averaging_floor";
    ExtractOptions opts;
    opts.peel = peel_first;
    opts.alpha = alpha;
    opts.budget = budget;
    try {
        auto rep = verify_guarantee(m, prefix_shape, opts);
        const auto& ex = rep.extraction;
        return verdict(name, rep.averaging_holds,
                       "t " + std::to_string(ex.t) + " >= ceil(S_L/N) = " + rep.averaging_ceiling.str());
    } catch (const EmptySearchSpace& e) {
        // no rectangle with a common extension: then S_L must vanish
        if (peel_first && m.empty()) return {name, CheckStatus::skipped, "empty relation"};
        Relation core = m;
        if (peel_first) core = peel(m, default_theta(m, alpha).theta).core;
        BigInt s = support_sum(core, prefix_shape);
        return verdict(name, s == 0, std::string("no box found; S_L = ") + s.str());
    } catch (const BudgetExceeded& e) {
        return {name, CheckStatus::skipped, e.what()};
    } catch (const InvalidArgument& e) {
        return {name, CheckStatus::skipped, e.what()};
    }
}

std::vector<InvariantResult> run_invariants(const Relation& m, const VerifyOptions& o) {
    std::vector<InvariantResult> out;
    const Shape prefix = o.shape.prefix();
    out.push_back(check_oracle_equivalence(m, o.shape, o.budget));
    out.push_back(check_fiber_partition(m));
    out.push_back(check_double_counting(m, prefix));
    out.push_back(check_jensen_chain(m, o.shape));
    if (m.arity() == 2) out.push_back(check_bipartite_chain(m, o.shape));
    out.push_back(check_averaging_floor(m, prefix, false, o.alpha, o.budget));
    out.push_back(check_averaging_floor(m, prefix, true, o.alpha, o.budget));
    if (m.empty() && !o.alpha) {
        out.push_back({"peeling", CheckStatus::skipped, "empty relation and no alpha"});
    } else {
        out.push_back(check_peel(m, default_theta(m, o.alpha).theta, o.orders, o.seed));
    }
    return out;
}

}  // namespace rbox
