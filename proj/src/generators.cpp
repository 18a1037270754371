#include "rbox/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <unordered_set>

#include "rbox/numeric.hpp"
#include "rbox/rng.hpp"

namespace rbox {

namespace {

constexpr std::uint64_t kMaxEnumerated = 100'000'000;

bool is_hypergraph(GenKind k) { return k == GenKind::hypergraph_gnp || k == GenKind::hypergraph_exact; }

std::uint64_t capacity_of(const std::vector<std::uint32_t>& axes) {
    std::uint64_t p = 1;
    for (auto n : axes) {
        if (n != 0 && p > std::numeric_limits<std::uint64_t>::max() / n) return std::numeric_limits<std::uint64_t>::max();
        p *= n;
    }
    return p;
}

std::uint64_t hyper_capacity(const GenSpec& s) {
    BigInt c = binomial(s.axis_sizes[0], s.r);
    return c > std::numeric_limits<std::uint64_t>::max() ? std::numeric_limits<std::uint64_t>::max()
                                                         : c.convert_to<std::uint64_t>();
}

void decode(std::uint64_t index, const std::vector<std::uint32_t>& axes, Index* out) {
    for (std::size_t i = axes.size(); i-- > 0;) {
        out[i] = static_cast<Index>(index % axes[i]);
        index /= axes[i];
    }
}

/// Uniform m-subset of [0, total), sorted. Rejection when at most half full,
/// otherwise a partial shuffle of the whole index space.
std::vector<std::uint64_t> sample_indices(Rng& rng, std::uint64_t total, std::uint64_t m) {
    std::vector<std::uint64_t> out;
    if (m * 2 <= total) {
        std::unordered_set<std::uint64_t> seen;
        while (out.size() < m) {
            std::uint64_t x = rng.bounded(total);
            if (seen.insert(x).second) out.push_back(x);
        }
    } else {
        std::vector<std::uint64_t> all(total);
        std::iota(all.begin(), all.end(), std::uint64_t{0});
        for (std::uint64_t i = 0; i < m; ++i) std::swap(all[i], all[i + rng.bounded(total - i)]);
        all.resize(m);
        out = std::move(all);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool within_5sigma(std::uint64_t observed, std::uint64_t cap, double p, double& expected) {
    expected = p * static_cast<double>(cap);
    double sigma = std::sqrt(static_cast<double>(cap) * p * (1.0 - p));
    return std::abs(static_cast<double>(observed) - expected) <= 5.0 * sigma;
}

std::vector<Index> iota_axis(std::uint32_t n) {
    std::vector<Index> v(n);
    std::iota(v.begin(), v.end(), Index{0});
    return v;
}

GenOutput gen_relation(const GenSpec& spec) {
    GenOutput out;
    Rng rng(spec.seed);
    const auto& axes = spec.axis_sizes;
    const std::size_t r = axes.size();
    const std::uint64_t cap = capacity_of(axes);
    std::vector<Index> flat;

    const bool use_count = spec.kind == GenKind::exact_count || (spec.kind == GenKind::planted_box && spec.count);
    if (use_count) {
        auto idx = sample_indices(rng, cap, *spec.count);
        flat.resize(idx.size() * r);
        for (std::size_t i = 0; i < idx.size(); ++i) decode(idx[i], axes, flat.data() + i * r);
        out.expected_count = static_cast<double>(*spec.count);
    } else {
        const double p = spec.density.value_or(0.0);
        std::vector<Index> t(r);
        for (std::uint64_t i = 0; i < cap; ++i) {
            if (rng.uniform01() < p) {
                decode(i, axes, t.data());
                flat.insert(flat.end(), t.begin(), t.end());
            }
        }
        out.count_within_5sigma = within_5sigma(flat.size() / r, cap, p, out.expected_count);
    }

    if (spec.kind == GenKind::planted_box) {
        Box box;
        for (std::size_t i = 0; i < r; ++i) box.parts.push_back(rng.subset(iota_axis(axes[i]), (*spec.planted)[i]));
        std::vector<std::size_t> odo(r, 0);
        bool more = true;
        while (more) {
            for (std::size_t i = 0; i < r; ++i) flat.push_back(box.parts[i][odo[i]]);
            more = false;
            for (std::size_t i = r; i-- > 0;) {
                if (++odo[i] < box.parts[i].size()) {
                    more = true;
                    break;
                }
                odo[i] = 0;
            }
        }
        out.planted = std::move(box);
    }
    out.instance = Relation(axes, std::move(flat), Relation::Duplicates::merge);
    return out;
}

GenOutput gen_hypergraph(const GenSpec& spec) {
    GenOutput out;
    Rng rng(spec.seed);
    const std::uint32_t n = spec.axis_sizes[0];
    const unsigned r = spec.r;
    std::set<Tuple> edges;
    const auto vertices = iota_axis(n);

    if (spec.kind == GenKind::hypergraph_gnp) {
        const double p = spec.density.value_or(0.0);
        std::uint64_t total = 0;
        Tuple e(r);
        std::vector<std::uint32_t> idx(r);
        std::iota(idx.begin(), idx.end(), 0u);
        if (r <= n) {
            while (true) {
                ++total;
                if (rng.uniform01() < p) {
                    for (unsigned i = 0; i < r; ++i) e[i] = idx[i];
                    edges.insert(e);
                }
                std::size_t i = r;
                while (i > 0 && idx[i - 1] == n - r + i - 1) --i;
                if (i == 0) break;
                ++idx[i - 1];
                for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
            }
        }
        out.count_within_5sigma = within_5sigma(edges.size(), total, p, out.expected_count);
    } else {
        const std::uint64_t total = hyper_capacity(spec);
        const std::uint64_t m = *spec.count;
        if (m * 2 <= total) {
            while (edges.size() < m) edges.insert(rng.subset(vertices, r));
        } else {
            std::vector<Tuple> all;
            Tuple e(r);
            std::vector<std::uint32_t> idx(r);
            std::iota(idx.begin(), idx.end(), 0u);
            while (true) {
                for (unsigned i = 0; i < r; ++i) e[i] = idx[i];
                all.push_back(e);
                std::size_t i = r;
                while (i > 0 && idx[i - 1] == n - r + i - 1) --i;
                if (i == 0) break;
                ++idx[i - 1];
                for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
            }
            for (std::uint64_t i = 0; i < m; ++i) std::swap(all[i], all[i + rng.bounded(all.size() - i)]);
            edges.insert(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(m));
        }
        out.expected_count = static_cast<double>(m);
    }

    if (spec.planted) {
        const auto& shape = *spec.planted;
        std::uint32_t total = 0;
        for (auto s : shape.sizes()) total += s;
        std::vector<Index> chosen = vertices;
        rng.shuffle(chosen);
        Box box;
        std::size_t pos = 0;
        for (auto s : shape.sizes()) {
            std::vector<Index> part(chosen.begin() + pos, chosen.begin() + pos + s);
            std::sort(part.begin(), part.end());
            box.parts.push_back(std::move(part));
            pos += s;
        }
        std::vector<std::size_t> odo(r, 0);
        bool more = true;
        while (more) {
            Tuple e(r);
            for (unsigned i = 0; i < r; ++i) e[i] = box.parts[i][odo[i]];
            std::sort(e.begin(), e.end());
            edges.insert(e);
            more = false;
            for (std::size_t i = r; i-- > 0;) {
                if (++odo[i] < box.parts[i].size()) {
                    more = true;
                    break;
                }
                odo[i] = 0;
            }
        }
        out.planted = std::move(box);
    }
    out.instance = Hypergraph(r, n, std::vector<Tuple>(edges.begin(), edges.end()));
    return out;
}

}  // namespace

const char* to_string(GenKind k) noexcept {
    switch (k) {
        case GenKind::bernoulli: return "bernoulli";
        case GenKind::exact_count: return "exact_count";
        case GenKind::planted_box: return "planted_box";
        case GenKind::hypergraph_gnp: return "hypergraph_gnp";
        case GenKind::hypergraph_exact: return "hypergraph_exact";
    }
    return "?";
}

std::optional<GenKind> parse_gen_kind(std::string_view s) {
    for (auto k : {GenKind::bernoulli, GenKind::exact_count, GenKind::planted_box, GenKind::hypergraph_gnp,
                   GenKind::hypergraph_exact})
        if (s == to_string(k)) return k;
    return std::nullopt;
}

void validate(const GenSpec& spec) {
    if (spec.r < 1) throw InvalidArgument("r: must be >= 1");
    if (spec.axis_sizes.size() != spec.r)
        throw InvalidArgument("axis_sizes: expected " + std::to_string(spec.r) + " entries, got " +
                              std::to_string(spec.axis_sizes.size()));
    for (auto n : spec.axis_sizes)
        if (n == 0) throw InvalidArgument("axis_sizes: every axis must be >= 1");
    if (spec.density && !(*spec.density >= 0.0 && *spec.density <= 1.0))
        throw InvalidArgument("density: must lie in [0, 1]");

    if (is_hypergraph(spec.kind)) {
        if (!std::all_of(spec.axis_sizes.begin(), spec.axis_sizes.end(), [&](auto n) { return n == spec.axis_sizes[0]; }))
            throw InvalidArgument("axis_sizes: hypergraph kinds use a single n");
        const std::uint64_t total = hyper_capacity(spec);
        if (spec.kind == GenKind::hypergraph_gnp) {
            if (!spec.density) throw InvalidArgument("density: required for hypergraph_gnp");
            if (total > kMaxEnumerated) throw InvalidArgument("n: C(n, r) too large to enumerate");
        } else {
            if (!spec.count) throw InvalidArgument("count: required for hypergraph_exact");
            if (*spec.count > total)
                throw InvalidArgument("count: " + std::to_string(*spec.count) + " exceeds C(n, r) = " + std::to_string(total));
            if (*spec.count * 2 > total && total > kMaxEnumerated)
                throw InvalidArgument("count: dense sampling needs C(n, r) <= " + std::to_string(kMaxEnumerated));
        }
        if (spec.planted) {
            if (spec.planted->arity() != spec.r) throw InvalidArgument("planted: shape needs r entries");
            std::uint64_t sum = 0;
            for (auto s : spec.planted->sizes()) sum += s;
            if (sum > spec.axis_sizes[0]) throw InvalidArgument("planted: parts need more than n distinct vertices");
        }
        return;
    }

    const std::uint64_t cap = capacity_of(spec.axis_sizes);
    switch (spec.kind) {
        case GenKind::bernoulli:
            if (!spec.density) throw InvalidArgument("density: required for bernoulli");
            if (cap > kMaxEnumerated) throw InvalidArgument("axis_sizes: product space too large to enumerate");
            break;
        case GenKind::exact_count:
            if (!spec.count) throw InvalidArgument("count: required for exact_count");
            break;
        case GenKind::planted_box:
            if (!spec.planted) throw InvalidArgument("planted: required for planted_box");
            if (spec.planted->arity() != spec.r) throw InvalidArgument("planted: shape needs r entries");
            for (std::size_t i = 0; i < spec.r; ++i)
                if ((*spec.planted)[i] > spec.axis_sizes[i])
                    throw InvalidArgument("planted: part " + std::to_string(i) + " larger than its axis");
            if (!spec.count && cap > kMaxEnumerated)
                throw InvalidArgument("axis_sizes: product space too large to enumerate");
            break;
        default:
            break;
    }
    if (spec.count) {
        if (*spec.count > cap)
            throw InvalidArgument("count: " + std::to_string(*spec.count) + " exceeds the product space " + std::to_string(cap));
        if (*spec.count * 2 > cap && cap > kMaxEnumerated)
            throw InvalidArgument("count: dense sampling needs a product space <= " + std::to_string(kMaxEnumerated));
    }
}

GenOutput gen(const GenSpec& spec) {
    validate(spec);
    GenOutput out = is_hypergraph(spec.kind) ? gen_hypergraph(spec) : gen_relation(spec);
    out.seed = spec.seed;
    out.generator = to_string(spec.kind);
    return out;
}

}  // namespace rbox
