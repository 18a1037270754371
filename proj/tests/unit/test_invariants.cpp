#include <doctest.h>

#include "../support/oracles.hpp"
#include "rbox/invariants.hpp"

using namespace rbox;

TEST_CASE("invariant suite passes on random instances") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        auto m = oracle::random_relation({4, 4, 4}, 0.6, seed);
        VerifyOptions o;
        o.shape = Shape({2, 1, 2});
        o.seed = seed;
        o.orders = 10;
        for (const auto& c : run_invariants(m, o)) {
            INFO(c.name << ": " << c.detail);
            CHECK(c.status != CheckStatus::fail);
        }
    }
}

TEST_CASE("bipartite chain runs for r = 2") {
    auto m = oracle::random_relation({5, 5}, 0.7, 1);
    VerifyOptions o;
    o.shape = Shape({2, 2});
    auto checks = run_invariants(m, o);
    bool seen = false;
    for (const auto& c : checks)
        if (c.name == "bipartite_chain") {
            seen = true;
            CHECK(c.status == CheckStatus::pass);
        }
    CHECK(seen);
}

TEST_CASE("oracle check is skipped past its budget") {
    auto m = Relation::full({12, 12});
    auto c = check_oracle_equivalence(m, Shape({6, 6}), 100);
    CHECK(c.status == CheckStatus::skipped);
}

TEST_CASE("peeling check on an empty relation without alpha is skipped") {
    VerifyOptions o;
    o.shape = Shape({1, 1});
    auto checks = run_invariants(Relation({3, 3}), o);
    CHECK(checks.back().name == "peeling");
    CHECK(checks.back().status == CheckStatus::skipped);
}

TEST_CASE("status names") {
    CHECK(std::string(to_string(CheckStatus::pass)) == "pass");
    CHECK(std::string(to_string(CheckStatus::fail)) == "fail");
    CHECK(std::string(to_string(CheckStatus::skipped)) == "skipped");
}
