#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "rbox/bounds.hpp"
#include "rbox/hypergraph.hpp"
#include "rbox/numeric.hpp"
#include "rbox/relation.hpp"

namespace rbox {

enum class Strategy { exhaustive, greedy, sampled };
const char* to_string(Strategy s) noexcept;
std::optional<Strategy> parse_strategy(std::string_view s);

struct ExtractOptions {
    std::optional<Rational> alpha;  // default: density of M
    std::optional<Rational> theta;  // overrides (alpha/2) n^{r-1}
    bool peel = true;               // false: search M itself (theta = 0)
    Strategy strategy = Strategy::exhaustive;
    /// exhaustive: cap on candidate rectangles; sampled: number of draws.
    std::uint64_t budget = 1'000'000;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    bool compute_floor = true;
};

struct ExtractionResult {
    Box box;  // r parts; the last is N_L(R) in full
    std::uint64_t t = 0;
    Strategy strategy = Strategy::exhaustive;
    bool certificate_checked = false;
    Rational averaging_floor;  // S_L / N, when computed
    BigInt support_sum;        // S_L
    BigInt candidates;         // N = prod_{i<r} C(n_i, s_i)

    bool peeled = false;
    Rational theta;
    Rational alpha;
    bool alpha_inferred = false;
    std::size_t core_size = 0;       // |L|
    std::size_t survivors = 0;       // |W|
    std::uint64_t rectangles_examined = 0;
};

/// Finds a box V_1 x ... x V_r inside M with |V_i| = s_i for i < r and the
/// last part as large as the strategy can make it. M is first peeled on its
/// last axis at theta; the rectangle search runs on the peeled core L and the
/// last part is N_L(R). Ties go to the lexicographically least rectangle.
ExtractionResult extract_box(const Relation& m, const Shape& prefix_shape, const ExtractOptions& options = {});

/// extract_box on the ordered-tuple relation of G; the parts are pairwise
/// disjoint and form the vertex classes of a complete r-partite subgraph.
ExtractionResult extract_multipartite(const Hypergraph& g, const Shape& prefix_shape,
                                      const ExtractOptions& options = {});

struct GuaranteeReport {
    ExtractionResult extraction;
    BigInt averaging_ceiling;       // ceil(S_L / N)
    bool averaging_applies = false; // S_L > 0
    bool averaging_holds = false;   // t >= ceil(S_L / N)
    BoundReport conditional;        // thm3 bound on the measured t
};

/// Exhaustive extraction, then the averaging floor t >= ceil(S_L/N) and the
/// conditional bound t > n^{1-alpha^{r-2}} with its hypothesis flags.
GuaranteeReport verify_guarantee(const Relation& m, const Shape& prefix_shape, const ExtractOptions& options = {});

}  // namespace rbox
