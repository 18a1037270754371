#include <doctest.h>

#include <numeric>
#include <random>

#include "../support/oracles.hpp"
#include "rbox/peeling.hpp"

using namespace rbox;

namespace {

Relation diagonal(std::uint32_t n) {
    std::vector<Tuple> t;
    for (Index i = 0; i < n; ++i) t.push_back({i, i});
    return Relation::from_tuples({n, n}, t);
}

}  // namespace

TEST_CASE("peeling examples") {
    auto d = diagonal(4);
    auto gone = peel(d, 2);
    CHECK(gone.survivors.empty());
    CHECK(gone.core.empty());
    CHECK(gone.removed.size() == 4);
    auto kept = peel(d, 1);
    CHECK(kept.survivors == std::vector<Index>{0, 1, 2, 3});
    CHECK(kept.core == d);
    CHECK(kept.removed.empty());
    auto full = Relation::full({5, 5, 5});
    auto th = default_theta(full, Rational(2));
    auto whole = peel(full, th.theta);
    CHECK(whole.removed.empty());
    CHECK(whole.core.size() == 125);
}

TEST_CASE("default threshold") {
    auto m = Relation::from_tuples({4, 4}, {{0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 0}, {1, 1}, {1, 2}, {1, 3}});
    auto th = default_theta(m);
    CHECK(th.theta == 1);
    CHECK(th.alpha == Rational(1, 2));
    CHECK(th.alpha_inferred);
    auto given = default_theta(Relation::full({5, 5, 5}), Rational(3, 5));
    CHECK(given.theta == Rational(15, 2));
    CHECK_FALSE(given.alpha_inferred);
    CHECK(given.n == 5);
    CHECK_THROWS_AS(default_theta(Relation({3, 3})), InvalidArgument);
    CHECK(default_theta(Relation({3, 3}), Rational(1, 2)).theta == Rational(3, 4));
    // unequal axes use the smallest
    CHECK(default_theta(Relation::full({3, 6}), Rational(1)).theta == Rational(3, 2));
}

TEST_CASE("removal trace records degree at removal") {
    // vertex 2 has degree 1, vertex 0 degree 3, vertex 1 degree 2
    auto m = Relation::from_tuples({3, 3}, {{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {2, 2}});
    auto res = peel(m, 2);
    REQUIRE(res.removed.size() == 1);
    CHECK(res.removed[0] == Removal{2, 1});
    CHECK(res.survivors == std::vector<Index>{0, 1});
    CHECK(res.core.size() == 5);
    CHECK(res.theta == 2);
}

TEST_CASE("peeling matches the round-based oracle and its invariants") {
    std::mt19937_64 rng(99);
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        std::vector<std::uint32_t> axes = seed % 2 ? std::vector<std::uint32_t>{4, 4, 6}
                                                   : std::vector<std::uint32_t>{5, 7};
        auto m = oracle::random_relation(axes, 0.2 + 0.01 * static_cast<double>(seed), seed);
        for (Rational theta : {Rational(0), Rational(1), Rational(5, 2), Rational(4), Rational(9)}) {
            auto res = peel(m, theta);
            CHECK(res.survivors == oracle::peel_core(m, theta));
            for (auto u : res.survivors) CHECK(Rational(res.core.last_degree(u)) >= theta);
            for (const auto& rem : res.removed) CHECK(Rational(rem.degree) < theta);
            const Rational lost(m.size() - res.core.size());
            if (!res.removed.empty()) CHECK(lost < theta * Rational(res.removed.size()));
            else CHECK(lost == 0);
            auto again = peel(res.core, theta);
            CHECK(again.core == res.core);
            CHECK(again.survivors == res.survivors);
            for (const auto& rem : again.removed) CHECK(rem.degree == 0);
            for (const auto& t : res.core.tuples())
                CHECK(std::binary_search(res.survivors.begin(), res.survivors.end(), t.back()));

            std::vector<Index> order(axes.back());
            std::iota(order.begin(), order.end(), 0u);
            for (int k = 0; k < 5; ++k) {
                std::shuffle(order.begin(), order.end(), rng);
                auto other = peel(m, theta, order);
                CHECK(other.survivors == res.survivors);
                CHECK(other.core == res.core);
            }
        }
    }
}

TEST_CASE("scan order must be a permutation") {
    auto m = Relation::full({3, 3});
    std::vector<Index> bad{0, 0, 1};
    CHECK_THROWS_AS(peel(m, 1, bad), InvalidArgument);
    std::vector<Index> short_order{0, 1};
    CHECK_THROWS_AS(peel(m, 1, short_order), InvalidArgument);
    CHECK_THROWS_AS(peel(m, -1), InvalidArgument);
}
