#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "rbox/numeric.hpp"
#include "rbox/relation.hpp"

namespace rbox {

enum class CountMethod { recursive, naive };

const char* to_string(CountMethod m) noexcept;

/// |B_M(s_1, ..., s_r)| together with search statistics.
struct CountResult {
    BigInt count;
    std::uint64_t rectangles_visited = 0;
    CountMethod method = CountMethod::recursive;
};

struct CountOptions {
    unsigned jobs = 1;
};

inline constexpr std::uint64_t kDefaultNaiveBudget = 10'000'000;

/// Visits the boxes of `m` with the given shape (shape.arity() == m.arity())
/// in lexicographic order of parts. The visitor returns false to stop early.
/// A shape entry larger than its axis yields no boxes.
void for_each_rectangle(const Relation& m, const Shape& shape, const std::function<bool(const Rectangle&)>& visit);

/// Collected form of for_each_rectangle; pass M' to get B_{M'}(s_1..s_{r-1}).
std::vector<Rectangle> enumerate_rectangles(const Relation& m, const Shape& shape);

/// Exact |B_M(shape)|: sum over rectangles R of M' of C(d_M(R), s_r), with
/// C(|M|, s_1) at arity 1. Rectangles are built axis by axis and a partial
/// rectangle is abandoned once its common extension set cannot hold the
/// remaining shape.
CountResult count_boxes(const Relation& m, const Shape& shape, const CountOptions& options = {});

/// Independent oracle: tests every product of subsets. Refuses with
/// BudgetExceeded when prod_i C(n_i, s_i) > budget.
CountResult naive_count_boxes(const Relation& m, const Shape& shape, std::uint64_t budget = kDefaultNaiveBudget);

/// D_M(v) for a shape on the first r-1 axes; equals count_boxes(fiber(M, v), shape).
BigInt rect_support_count(const Relation& m, Index v, const Shape& shape);

/// S = sum over v of D_M(v).
BigInt support_sum(const Relation& m, const Shape& prefix_shape);

/// Number of candidate rectangles prod_{i<r} C(n_i, s_i) for a prefix shape.
BigInt candidate_rectangles(const Relation& m, const Shape& prefix_shape);

}  // namespace rbox
