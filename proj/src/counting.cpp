#include "rbox/counting.hpp"

#include <thread>

#include "search.hpp"

namespace rbox {

const char* to_string(CountMethod m) noexcept { return m == CountMethod::recursive ? "recursive" : "naive"; }

namespace {

void require_arity(const Relation& m, const Shape& shape, std::size_t expected, const char* what) {
    if (shape.arity() != expected)
        throw ArityMismatch(std::string(what) + ": shape (" + shape.to_string() + ") has " +
                            std::to_string(shape.arity()) + " entries, expected " + std::to_string(expected) +
                            " for a relation of arity " + std::to_string(m.arity()));
}

// need[level]: tuples the running extension set must keep once parts
// 0..level are chosen, i.e. the product of the shape entries after level.
std::vector<std::size_t> suffix_products(const Shape& shape) {
    std::vector<std::size_t> need(shape.arity(), 1);
    std::uint64_t p = 1;
    for (std::size_t i = shape.arity(); i-- > 0;) {
        need[i] = static_cast<std::size_t>(std::min<std::uint64_t>(p, SIZE_MAX));
        p = p > UINT64_MAX / shape[i] ? UINT64_MAX : p * shape[i];
    }
    return need;
}

}  // namespace

void for_each_rectangle(const Relation& m, const Shape& shape, const std::function<bool(const Rectangle&)>& visit) {
    require_arity(m, shape, m.arity(), "enumerate_rectangles");
    const std::size_t r = m.arity();
    auto need = suffix_products(shape);
    const auto& sizes = shape.sizes();
    std::span<const std::uint32_t> prefix(sizes.data(), r - 1);

    bool stopped = false;
    Rectangle rect;
    rect.parts.resize(r);
    detail::RectangleWalker walker(
        prefix, [&](std::size_t lvl) { return stopped ? SIZE_MAX : need[lvl]; },
        [&](const Box& parts, const detail::TupleSet& rest) {
            if (stopped) return;
            for (std::size_t i = 0; i + 1 < r; ++i) rect.parts[i] = parts.parts[i];
            stopped = !detail::for_each_combination(std::span<const Index>(rest.data), shape.back(),
                                                    [&](std::span<const Index> last) {
                                                        rect.parts[r - 1].assign(last.begin(), last.end());
                                                        return visit(rect);
                                                    });
        });
    walker.run(detail::from_relation(m));
}

std::vector<Rectangle> enumerate_rectangles(const Relation& m, const Shape& shape) {
    std::vector<Rectangle> out;
    for_each_rectangle(m, shape, [&](const Rectangle& r) {
        out.push_back(r);
        return true;
    });
    return out;
}

CountResult count_boxes(const Relation& m, const Shape& shape, const CountOptions& options) {
    require_arity(m, shape, m.arity(), "count_boxes");
    const std::size_t r = m.arity();
    if (r == 1) return {binomial(m.size(), shape[0]), 0, CountMethod::recursive};

    auto need = suffix_products(shape);
    const auto& sizes = shape.sizes();
    std::span<const std::uint32_t> prefix(sizes.data(), r - 1);
    const std::uint32_t last = shape.back();
    const auto tuples = detail::from_relation(m);

    struct Partial {
        BigInt count = 0;
        std::uint64_t visited = 0;
    };
    auto work = [&](Partial& out, detail::RectangleWalker::TakeFirst take) {
        detail::RectangleWalker walker(
            prefix, [&](std::size_t lvl) { return need[lvl]; },
            [&](const Box&, const detail::TupleSet& rest) {
                ++out.visited;
                out.count += binomial(rest.size(), last);
            },
            std::move(take));
        walker.run(tuples);
    };

    const unsigned jobs = std::max(1u, options.jobs);
    std::vector<Partial> partials(jobs);
    if (jobs == 1) {
        work(partials[0], {});
    } else {
        std::vector<std::jthread> threads;
        for (unsigned w = 0; w < jobs; ++w)
            threads.emplace_back([&, w] { work(partials[w], [=](std::size_t ord) { return ord % jobs == w; }); });
    }
    CountResult result{0, 0, CountMethod::recursive};
    for (const auto& p : partials) {
        result.count += p.count;
        result.rectangles_visited += p.visited;
    }
    return result;
}


BigInt candidate_rectangles(const Relation& m, const Shape& prefix_shape) {
    require_arity(m, prefix_shape, m.arity() - 1, "candidate_rectangles");
    BigInt n = 1;
    for (std::size_t i = 0; i < prefix_shape.arity(); ++i) n *= binomial(m.axis_size(i), prefix_shape[i]);
    return n;
}

CountResult naive_count_boxes(const Relation& m, const Shape& shape, std::uint64_t budget) {
    require_arity(m, shape, m.arity(), "naive_count_boxes");
    const std::size_t r = m.arity();
    BigInt candidates = 1;
    for (std::size_t i = 0; i < r; ++i) candidates *= binomial(m.axis_size(i), shape[i]);
    if (candidates > budget)
        throw BudgetExceeded("naive oracle needs " + candidates.str() + " candidate boxes, budget is " +
                             std::to_string(budget));
    if (candidates == 0) return {0, 0, CountMethod::naive};

    // Dense membership table, independent of the sorted-search path.
    const std::uint64_t cap = m.capacity();
    const bool dense = cap <= (std::uint64_t{1} << 26);
    std::vector<std::uint8_t> member(dense ? cap : 0, 0);
    auto offset = [&](std::span<const Index> t) {
        std::uint64_t o = 0;
        for (std::size_t i = 0; i < r; ++i) o = o * m.axis_size(i) + t[i];
        return o;
    };
    if (dense)
        for (std::size_t i = 0; i < m.size(); ++i) member[offset(m.tuple(i))] = 1;
    auto has = [&](std::span<const Index> t) { return dense ? member[offset(t)] != 0 : m.contains(t); };

    std::vector<std::vector<std::vector<Index>>> combos(r);
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<Index> axis(m.axis_size(i));
        for (Index v = 0; v < axis.size(); ++v) axis[v] = v;
        detail::for_each_combination(std::span<const Index>(axis), shape[i], [&](std::span<const Index> c) {
            combos[i].emplace_back(c.begin(), c.end());
            return true;
        });
    }

    std::uint64_t count = 0;
    std::uint64_t visited = 0;
    std::vector<std::size_t> pick(r, 0);
    std::vector<std::size_t> odo(r, 0);
    Tuple t(r);
    auto product_inside = [&] {
        std::fill(odo.begin(), odo.end(), 0);
        while (true) {
            for (std::size_t i = 0; i < r; ++i) t[i] = combos[i][pick[i]][odo[i]];
            if (!has(t)) return false;
            std::size_t i = r;
            while (true) {
                if (i == 0) return true;
                --i;
                if (++odo[i] < shape[i]) break;
                odo[i] = 0;
            }
        }
    };
    while (true) {
        ++visited;
        if (product_inside()) ++count;
        std::size_t i = r;
        while (true) {
            if (i == 0) return {count, visited, CountMethod::naive};
            --i;
            if (++pick[i] < combos[i].size()) break;
            pick[i] = 0;
        }
    }
}

BigInt rect_support_count(const Relation& m, Index v, const Shape& shape) {
    if (m.arity() < 2) throw InvalidArgument("rect_support_count requires arity >= 2");
    require_arity(m, shape, m.arity() - 1, "rect_support_count");
    return count_boxes(fiber(m, v), shape).count;
}

BigInt support_sum(const Relation& m, const Shape& prefix_shape) {
    if (m.arity() < 2) throw InvalidArgument("support_sum requires arity >= 2");
    require_arity(m, prefix_shape, m.arity() - 1, "support_sum");
    BigInt total = 0;
    for (Index v = 0; v < m.axis_sizes().back(); ++v)
        if (m.last_degree(v) > 0) total += rect_support_count(m, v, prefix_shape);
    return total;
}

}  // namespace rbox
