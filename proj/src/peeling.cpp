#include "rbox/peeling.hpp"

#include <algorithm>
#include <numeric>

namespace rbox {

PeelResult peel(const Relation& m, const Rational& theta) {
    std::vector<Index> order(m.axis_sizes().back());
    std::iota(order.begin(), order.end(), Index{0});
    return peel(m, theta, order);
}

PeelResult peel(const Relation& m, const Rational& theta, std::span<const Index> scan_order) {
    if (m.arity() < 2) throw InvalidArgument("peel requires arity >= 2");
    if (theta < 0) throw InvalidArgument("peel threshold must be >= 0");
    const std::uint32_t n_last = m.axis_sizes().back();
    if (scan_order.size() != n_last) throw InvalidArgument("scan order must list every last-axis vertex once");
    std::vector<char> seen(n_last, 0);
    for (auto v : scan_order) {
        if (v >= n_last || seen[v]) throw InvalidArgument("scan order must be a permutation of the last axis");
        seen[v] = 1;
    }

    // Removing u deletes exactly the tuples ending in u, so only d(u) itself
    // changes; the pass loop still runs to a confirmed fixpoint.
    std::vector<std::uint64_t> degree(n_last);
    for (Index v = 0; v < n_last; ++v) degree[v] = m.last_degree(v);
    std::vector<char> alive(n_last, 1);

    PeelResult result;
    result.theta = theta;
    bool changed = true;
    while (changed) {
        changed = false;
        ++result.passes;
        for (auto u : scan_order) {
            if (!alive[u] || Rational(degree[u]) >= theta) continue;
            alive[u] = 0;
            result.removed.push_back({u, degree[u]});
            degree[u] = 0;
            changed = true;
        }
    }

    for (Index v = 0; v < n_last; ++v)
        if (alive[v]) result.survivors.push_back(v);

    const std::size_t r = m.arity();
    std::vector<Index> flat;
    flat.reserve(m.flat().size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        auto t = m.tuple(i);
        if (alive[t[r - 1]]) flat.insert(flat.end(), t.begin(), t.end());
    }
    result.core = Relation(m.axis_sizes(), std::move(flat));
    return result;
}

Threshold default_theta(const Relation& m, const std::optional<Rational>& alpha) {
    Threshold out;
    out.n = m.min_axis_size();
    if (alpha) {
        out.alpha = *alpha;
    } else {
        if (m.empty()) throw InvalidArgument("cannot infer alpha from an empty relation; supply alpha");
        BigInt cap = 1;
        for (auto n : m.axis_sizes()) cap *= n;
        out.alpha = Rational(BigInt(m.size()), cap);
        out.alpha_inferred = true;
    }
    BigInt pow = 1;
    for (std::size_t i = 0; i + 1 < m.arity(); ++i) pow *= out.n;
    out.theta = out.alpha / 2 * Rational(pow);
    return out;
}

}  // namespace rbox
