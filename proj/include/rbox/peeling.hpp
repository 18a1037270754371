#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rbox/numeric.hpp"
#include "rbox/relation.hpp"

namespace rbox {

struct Removal {
    Index vertex;
    std::uint64_t degree;  // d_L(vertex) at the moment it was removed

    friend bool operator==(const Removal&, const Removal&) = default;
};

/// Outcome of last-axis peeling at a fixed threshold.
struct PeelResult {
    std::vector<Index> survivors;  // W, ascending
    Relation core;                 // L = M restricted to last coordinates in W
    std::vector<Removal> removed;  // in removal order
    Rational theta;
    std::uint32_t passes = 0;
};

/// Repeatedly removes last-axis vertices u with d_L(u) < theta, scanning in
/// increasing index order until a full pass removes nothing.
PeelResult peel(const Relation& m, const Rational& theta);

/// Same fixpoint with an explicit scan order (a permutation of the last axis).
PeelResult peel(const Relation& m, const Rational& theta, std::span<const Index> scan_order);

struct Threshold {
    Rational theta;
    Rational alpha;
    bool alpha_inferred = false;
    std::uint32_t n = 0;  // common axis size used, min over axes
};

/// theta = (alpha/2) n^{r-1} with n the smallest axis size. Without alpha the
/// density |M| / (n_1 ... n_r) is used; an empty relation then has no density
/// and is rejected.
Threshold default_theta(const Relation& m, const std::optional<Rational>& alpha = std::nullopt);

}  // namespace rbox
