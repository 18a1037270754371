// Axis-by-axis rectangle search shared by counting and extraction.
#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "rbox/relation.hpp"

namespace rbox::detail {

/// Sorted, duplicate-free flat tuples of a fixed arity, without axis metadata.
struct TupleSet {
    std::size_t arity = 0;
    std::vector<Index> data;

    std::size_t size() const noexcept { return arity == 0 ? 0 : data.size() / arity; }
    const Index* row(std::size_t i) const noexcept { return data.data() + i * arity; }
};

inline TupleSet from_relation(const Relation& m) { return {m.arity(), m.flat()}; }

struct Group {
    Index value;
    std::size_t begin;  // tuple positions
    std::size_t end;
    std::size_t size() const noexcept { return end - begin; }
};

inline std::vector<Group> first_groups(const TupleSet& s) {
    std::vector<Group> out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        Index v = s.row(i)[0];
        if (out.empty() || out.back().value != v) out.push_back({v, i, i + 1});
        else out.back().end = i + 1;
    }
    return out;
}

/// Tuples of group g with the first coordinate dropped; still sorted.
inline TupleSet slice(const TupleSet& s, const Group& g) {
    TupleSet out{s.arity - 1, {}};
    out.data.reserve(g.size() * out.arity);
    for (std::size_t i = g.begin; i < g.end; ++i) out.data.insert(out.data.end(), s.row(i) + 1, s.row(i) + s.arity);
    return out;
}

inline void intersect_into(const TupleSet& a, const TupleSet& b, TupleSet& out) {
    out.arity = a.arity;
    out.data.clear();
    const std::size_t k = a.arity;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const Index* x = a.row(i);
        const Index* y = b.row(j);
        if (std::lexicographical_compare(x, x + k, y, y + k)) ++i;
        else if (std::lexicographical_compare(y, y + k, x, x + k)) ++j;
        else {
            out.data.insert(out.data.end(), x, x + k);
            ++i;
            ++j;
        }
    }
}

/// Chooses parts V_1, ..., V_k (k = shape.size()) of strictly increasing
/// indices, in lexicographic order of (V_1, ..., V_k). After each axis the
/// running common extension set (intersection of slices) must keep at least
/// need(level) tuples, otherwise the branch is abandoned. visit(parts, rest)
/// receives the completed parts and the (arity - k)-ary extension set.
///
/// take_first(ordinal) restricts which first-axis group may open V_1; used to
/// partition work across threads.
class RectangleWalker {
public:
    using Need = std::function<std::size_t(std::size_t level)>;
    using Visit = std::function<void(const Box& parts, const TupleSet& rest)>;
    using TakeFirst = std::function<bool(std::size_t ordinal)>;

    RectangleWalker(std::span<const std::uint32_t> shape, Need need, Visit visit, TakeFirst take_first = {})
        : shape_(shape), need_(std::move(need)), visit_(std::move(visit)), take_first_(std::move(take_first)) {
        parts_.parts.resize(shape.size());
    }

    void run(const TupleSet& rel) { level(rel, 0); }

private:
    void level(const TupleSet& rel, std::size_t lvl) {
        if (lvl == shape_.size()) {
            visit_(parts_, rel);
            return;
        }
        const std::size_t threshold = std::max<std::size_t>(need_(lvl), 1);
        std::vector<Group> groups;
        for (const auto& g : first_groups(rel))
            if (g.size() >= threshold) groups.push_back(g);
        if (groups.size() < shape_[lvl]) return;
        std::vector<TupleSet> slices;
        slices.reserve(groups.size());
        for (const auto& g : groups) slices.push_back(slice(rel, g));
        std::vector<TupleSet> running(shape_[lvl]);
        parts_.parts[lvl].clear();
        choose(groups, slices, running, lvl, 0, 0, threshold);
    }

    void choose(const std::vector<Group>& groups, const std::vector<TupleSet>& slices, std::vector<TupleSet>& running,
                std::size_t lvl, std::size_t start, std::size_t depth, std::size_t threshold) {
        const std::size_t s = shape_[lvl];
        auto& part = parts_.parts[lvl];
        if (depth == s) {
            level(running[s - 1], lvl + 1);
            return;
        }
        for (std::size_t g = start; g + (s - depth) <= groups.size(); ++g) {
            if (lvl == 0 && depth == 0 && take_first_ && !take_first_(g)) continue;
            if (depth == 0) running[0] = slices[g];
            else {
                intersect_into(running[depth - 1], slices[g], running[depth]);
                if (running[depth].size() < threshold) continue;
            }
            part.push_back(groups[g].value);
            choose(groups, slices, running, lvl, g + 1, depth + 1, threshold);
            part.pop_back();
        }
    }

    std::span<const std::uint32_t> shape_;
    Need need_;
    Visit visit_;
    TakeFirst take_first_;
    Box parts_;
};

/// Calls fn for every k-subset of values (sorted input), lexicographic order.
/// fn returns false to stop; the function returns false if stopped.
template <class Fn>
bool for_each_combination(std::span<const Index> values, std::size_t k, Fn&& fn) {
    const std::size_t n = values.size();
    if (k > n) return true;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    std::vector<Index> combo(k);
    while (true) {
        for (std::size_t i = 0; i < k; ++i) combo[i] = values[idx[i]];
        if (!fn(std::span<const Index>(combo))) return false;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return true;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace rbox::detail
