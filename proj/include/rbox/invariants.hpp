#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rbox/numeric.hpp"
#include "rbox/relation.hpp"

namespace rbox {

enum class CheckStatus { pass, fail, skipped };
const char* to_string(CheckStatus s) noexcept;

struct InvariantResult {
    std::string name;
    CheckStatus status = CheckStatus::pass;
    std::string detail;
};

/// count_boxes == naive_count_boxes (skipped beyond the oracle budget).
InvariantResult check_oracle_equivalence(const Relation& m, const Shape& shape, std::uint64_t budget);

/// sum_v d_M(v) == |M|.
InvariantResult check_fiber_partition(const Relation& m);

/// sum over R in B_{M'}(prefix) of d_M(R) == sum_v D_M(v), by two routes.
InvariantResult check_double_counting(const Relation& m, const Shape& prefix_shape);

/// count_boxes(M, shape) >= N g(s_r, S/N), exact rationals.
InvariantResult check_jensen_chain(const Relation& m, const Shape& shape);

/// r = 2: |B_M(s1,s2)| >= C(n1,s1) g(s2, n2 g(s1, |M|/n2) / C(n1,s1)).
InvariantResult check_bipartite_chain(const Relation& m, const Shape& shape);

/// Peeling at theta: survivor degrees, mass bound, order invariance over
/// `orders` seeded random scan orders, idempotence.
InvariantResult check_peel(const Relation& m, const Rational& theta, unsigned orders, std::uint64_t seed);

/// Exhaustive extraction reaches t >= ceil(S_L / N) whenever S_L > 0.
InvariantResult check_averaging_floor(const Relation& m, const Shape& prefix_shape, bool peel,
                                      const std::optional<Rational>& alpha, std::uint64_t budget);

struct VerifyOptions {
    Shape shape;  // full r-entry shape
    std::optional<Rational> alpha;
    std::uint64_t budget = 10'000'000;
    unsigned orders = 100;
    std::uint64_t seed = 0;
};

std::vector<InvariantResult> run_invariants(const Relation& m, const VerifyOptions& options);

}  // namespace rbox
