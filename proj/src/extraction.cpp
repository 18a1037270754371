#include "rbox/extraction.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "rbox/counting.hpp"
#include "rbox/peeling.hpp"
#include "rbox/rng.hpp"
#include "search.hpp"

namespace rbox {

const char* to_string(Strategy s) noexcept {
    switch (s) {
        case Strategy::exhaustive: return "exhaustive";
        case Strategy::greedy: return "greedy";
        case Strategy::sampled: return "sampled";
    }
    return "?";
}

std::optional<Strategy> parse_strategy(std::string_view s) {
    if (s == "exhaustive") return Strategy::exhaustive;
    if (s == "greedy") return Strategy::greedy;
    if (s == "sampled") return Strategy::sampled;
    return std::nullopt;
}

namespace {

struct Best {
    Rectangle rect;
    std::uint64_t d = 0;
    std::uint64_t examined = 0;

    // larger d wins, ties to the lexicographically least rectangle
    void offer(const Rectangle& r, std::uint64_t value) {
        if (value > d || (value == d && value > 0 && r < rect)) {
            rect = r;
            d = value;
        }
    }
};

std::vector<std::size_t> prefix_suffix_products(const Shape& prefix) {
    std::vector<std::size_t> need(prefix.arity(), 1);
    std::size_t p = 1;
    for (std::size_t i = prefix.arity(); i-- > 0;) {
        need[i] = p;
        p *= prefix[i];
    }
    return need;
}

Best search_exhaustive(const Relation& core, const Shape& prefix, unsigned jobs) {
    const auto tuples = detail::from_relation(core);
    const auto suffix = prefix_suffix_products(prefix);
    const auto& sizes = prefix.sizes();

    auto work = [&](Best& best, detail::RectangleWalker::TakeFirst take) {
        // A completion of the running set can reach d only if the set holds
        // at least (remaining rectangle size) * d tuples; only d > best counts.
        detail::RectangleWalker walker(
            sizes, [&](std::size_t lvl) { return suffix[lvl] * (best.d + 1); },
            [&](const Box& parts, const detail::TupleSet& rest) {
                ++best.examined;
                // lexicographic visiting order: only strict improvements replace
                if (rest.size() > best.d) {
                    best.rect = parts;
                    best.d = rest.size();
                }
            },
            std::move(take));
        walker.run(tuples);
    };

    jobs = std::max(1u, jobs);
    std::vector<Best> partial(jobs);
    if (jobs == 1) {
        work(partial[0], {});
    } else {
        std::vector<std::jthread> threads;
        for (unsigned w = 0; w < jobs; ++w)
            threads.emplace_back([&, w] { work(partial[w], [=](std::size_t ord) { return ord % jobs == w; }); });
    }
    Best merged;
    for (const auto& p : partial) {
        merged.examined += p.examined;
        if (p.d > 0) merged.offer(p.rect, p.d);
    }
    return merged;
}

class GreedySearch {
public:
    GreedySearch(const Shape& prefix) : prefix_(prefix), suffix_(prefix_suffix_products(prefix)) {}

    Best run(const Relation& core) {
        parts_.parts.assign(prefix_.arity(), {});
        axis(detail::from_relation(core), 0);
        return best_;
    }

private:
    bool axis(const detail::TupleSet& rel, std::size_t lvl) {
        if (lvl == prefix_.arity()) {
            ++best_.examined;
            if (rel.size() == 0) return false;
            Rectangle r = parts_;
            for (auto& p : r.parts) std::sort(p.begin(), p.end());
            best_.rect = std::move(r);
            best_.d = rel.size();
            return true;
        }
        auto groups = detail::first_groups(rel);
        std::vector<detail::TupleSet> slices;
        slices.reserve(groups.size());
        for (const auto& g : groups) slices.push_back(detail::slice(rel, g));
        std::vector<char> used(groups.size(), 0);
        return pick(groups, slices, used, detail::TupleSet{}, lvl, 0);
    }

    // Adds one vertex at a time to part lvl, best score first, ties by index.
    bool pick(const std::vector<detail::Group>& groups, const std::vector<detail::TupleSet>& slices,
              std::vector<char>& used, const detail::TupleSet& running, std::size_t lvl, std::size_t depth) {
        if (depth == prefix_[lvl]) return axis(running, lvl + 1);
        struct Candidate {
            std::size_t size;
            std::size_t g;
            detail::TupleSet set;
        };
        std::vector<Candidate> cands;
        for (std::size_t g = 0; g < groups.size(); ++g) {
            if (used[g]) continue;
            detail::TupleSet next;
            if (depth == 0) next = slices[g];
            else detail::intersect_into(running, slices[g], next);
            if (next.size() < suffix_[lvl]) continue;
            cands.push_back({next.size(), g, std::move(next)});
        }
        if (cands.size() < prefix_[lvl] - depth) return false;
        std::stable_sort(cands.begin(), cands.end(), [](const auto& a, const auto& b) { return a.size > b.size; });
        for (auto& c : cands) {
            used[c.g] = 1;
            parts_.parts[lvl].push_back(groups[c.g].value);
            bool ok = pick(groups, slices, used, c.set, lvl, depth + 1);
            parts_.parts[lvl].pop_back();
            used[c.g] = 0;
            if (ok) return true;
        }
        return false;
    }

    const Shape& prefix_;
    std::vector<std::size_t> suffix_;
    Rectangle parts_;
    Best best_;
};

Best search_sampled(const Relation& core, const Shape& prefix, std::uint64_t draws, std::uint64_t seed) {
    const std::size_t k = prefix.arity();
    std::vector<std::vector<Index>> support(k);
    for (std::size_t i = 0; i < k; ++i) {
        std::set<Index> seen;
        for (std::size_t p = 0; p < core.size(); ++p) seen.insert(core.tuple(p)[i]);
        support[i].assign(seen.begin(), seen.end());
        if (support[i].size() < prefix[i])
            throw EmptySearchSpace("empty search space: axis " + std::to_string(i) + " has " +
                                   std::to_string(support[i].size()) + " usable vertices, shape (" +
                                   prefix.to_string() + ") needs " + std::to_string(prefix[i]));
    }
    Rng rng(seed);
    Best best;
    Rectangle r;
    r.parts.resize(k);
    for (std::uint64_t i = 0; i < draws; ++i) {
        for (std::size_t a = 0; a < k; ++a) r.parts[a] = rng.subset(support[a], prefix[a]);
        ++best.examined;
        best.offer(r, common_neighborhood(core, r).size());
    }
    return best;
}

void finish_result(const Relation& m, const Relation& core, const Shape& prefix, const Best& best,
                   ExtractionResult& out) {
    if (best.d == 0 && out.strategy == Strategy::sampled)
        throw EmptySearchSpace("empty search space: none of the " + std::to_string(best.examined) +
                               " sampled rectangles of shape (" + prefix.to_string() + ") has a common extension");
    if (best.d == 0)
        throw EmptySearchSpace("empty search space: no rectangle of shape (" + prefix.to_string() +
                               ") has a common extension in the " + (out.peeled ? "peeled core" : "relation"));
    out.box.parts = best.rect.parts;
    out.box.parts.push_back(common_neighborhood(core, best.rect));
    out.t = out.box.parts.back().size();
    out.rectangles_examined = best.examined;
    auto check = validate_box(m, out.box);
    if (!check.ok) throw std::logic_error("extracted box failed certificate check: " + out.box.to_string());
    out.certificate_checked = true;
}

}  // namespace

ExtractionResult extract_box(const Relation& m, const Shape& prefix_shape, const ExtractOptions& options) {
    if (m.arity() < 2) throw InvalidArgument("extraction requires arity >= 2");
    if (prefix_shape.arity() != m.arity() - 1)
        throw ArityMismatch("extraction shape (" + prefix_shape.to_string() + ") needs r-1 = " +
                            std::to_string(m.arity() - 1) + " entries");

    ExtractionResult out;
    out.strategy = options.strategy;
    out.peeled = options.peel;
    Relation core = m;
    if (options.peel) {
        if (options.theta) {
            out.theta = *options.theta;
            if (options.alpha) out.alpha = *options.alpha;
        } else {
            auto th = default_theta(m, options.alpha);
            out.theta = th.theta;
            out.alpha = th.alpha;
            out.alpha_inferred = th.alpha_inferred;
        }
        auto peeled = peel(m, out.theta);
        out.survivors = peeled.survivors.size();
        core = std::move(peeled.core);
    } else {
        out.theta = 0;
        if (options.alpha) out.alpha = *options.alpha;
        out.survivors = m.axis_sizes().back();
    }
    out.core_size = core.size();
    out.candidates = candidate_rectangles(core, prefix_shape);

    Best best;
    switch (options.strategy) {
        case Strategy::exhaustive:
            if (out.candidates > options.budget)
                throw BudgetExceeded("exhaustive search over " + out.candidates.str() +
                                     " candidate rectangles exceeds budget " + std::to_string(options.budget) +
                                     "; use --strategy greedy or sampled");
            best = search_exhaustive(core, prefix_shape, options.jobs);
            break;
        case Strategy::greedy:
            best = GreedySearch(prefix_shape).run(core);
            break;
        case Strategy::sampled:
            best = search_sampled(core, prefix_shape, options.budget, options.seed);
            break;
    }
    finish_result(m, core, prefix_shape, best, out);

    if (options.compute_floor) {
        out.support_sum = support_sum(core, prefix_shape);
        out.averaging_floor = out.candidates == 0 ? Rational(0) : Rational(out.support_sum, out.candidates);
    }
    return out;
}

ExtractionResult extract_multipartite(const Hypergraph& g, const Shape& prefix_shape, const ExtractOptions& options) {
    auto result = extract_box(hypergraph_to_relation(g), prefix_shape, options);
    const auto& parts = result.box.parts;
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = i + 1; j < parts.size(); ++j) {
            std::vector<Index> common;
            std::set_intersection(parts[i].begin(), parts[i].end(), parts[j].begin(), parts[j].end(),
                                  std::back_inserter(common));
            if (!common.empty())
                throw std::logic_error("multipartite parts " + std::to_string(i) + " and " + std::to_string(j) +
                                       " share vertex " + std::to_string(common.front()));
        }
    return result;
}

GuaranteeReport verify_guarantee(const Relation& m, const Shape& prefix_shape, const ExtractOptions& options) {
    ExtractOptions opts = options;
    opts.strategy = Strategy::exhaustive;
    opts.compute_floor = true;
    GuaranteeReport rep;
    rep.extraction = extract_box(m, prefix_shape, opts);
    const auto& ex = rep.extraction;
    rep.averaging_applies = ex.support_sum > 0;
    rep.averaging_ceiling = ceil(ex.averaging_floor);
    rep.averaging_holds = !rep.averaging_applies || BigInt(ex.t) >= rep.averaging_ceiling;

    const std::uint32_t n = m.min_axis_size();
    const unsigned r = static_cast<unsigned>(m.arity());
    Rational alpha = ex.alpha;
    if (alpha == 0) {
        BigInt cap = 1;
        for (auto a : m.axis_sizes()) cap *= a;
        alpha = Rational(BigInt(m.size()), cap);
    }
    if (r >= 3 && n >= 2 && alpha > 0 && alpha <= 1) {
        rep.conditional = thm3_check(r, Scale::from_n(n), Real(alpha), prefix_shape, ex.t);
        rep.conditional.alpha_inferred = ex.alpha_inferred || !options.alpha;
    } else {
        rep.conditional.bound = "thm3";
        rep.conditional.r = r;
        rep.conditional.shape = prefix_shape.sizes();
        rep.conditional.verdict = Verdict::hypotheses_violated;
        rep.conditional.notes.push_back("conditional bound needs r >= 3, n >= 2 and 0 < alpha <= 1");
    }
    rep.conditional.notes.push_back("n = min axis size = " + std::to_string(n));
    return rep;
}

}  // namespace rbox
