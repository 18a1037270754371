#include <doctest.h>

#include "../support/oracles.hpp"
#include "rbox/counting.hpp"
#include "rbox/relation.hpp"

using namespace rbox;

namespace {

Relation small() { return Relation::from_tuples({2, 2}, {{0, 0}, {0, 1}, {1, 0}}); }

Relation diagonal(std::uint32_t n) {
    std::vector<Tuple> t;
    for (Index i = 0; i < n; ++i) t.push_back({i, i});
    return Relation::from_tuples({n, n}, t);
}

}  // namespace

TEST_CASE("construction canonicalizes") {
    auto m = Relation::from_tuples({3, 3}, {{2, 1}, {0, 2}, {1, 1}});
    CHECK(m.tuples() == std::vector<Tuple>{{0, 2}, {1, 1}, {2, 1}});
    CHECK(m == Relation::from_tuples({3, 3}, {{1, 1}, {2, 1}, {0, 2}}));
    CHECK_THROWS_AS(Relation::from_tuples({3, 3}, {{0, 0}, {0, 0}}), InvalidArgument);
    auto merged = Relation::from_tuples({3, 3}, {{0, 0}, {0, 0}}, Relation::Duplicates::merge);
    CHECK(merged.size() == 1);
    CHECK_THROWS_AS(Relation::from_tuples({3, 3}, {{0, 3}}), OutOfBounds);
    CHECK_THROWS_AS(Relation::from_tuples({3, 3}, {{0, 1, 2}}), ArityMismatch);
    CHECK_THROWS_AS(Relation(std::vector<std::uint32_t>{3, 0}), InvalidArgument);
    CHECK(m.contains(std::vector<Index>{1, 1}));
    CHECK_FALSE(m.contains(std::vector<Index>{1, 2}));
}

TEST_CASE("shape rejects zero entries") {
    CHECK_THROWS_AS(Shape({1, 0}), InvalidArgument);
    CHECK(Shape({2, 3, 4}).product() == 24);
    CHECK(Shape({2, 3, 4}).prefix() == Shape({2, 3}));
}

TEST_CASE("project_last") {
    CHECK(project_last(small()).tuples() == std::vector<Tuple>{{0}, {1}});
    CHECK(project_last(Relation({2, 2})).empty());
    CHECK(project_last(Relation::full({3, 3, 3})) == Relation::full({3, 3}));
    CHECK_THROWS_WITH_AS(project_last(Relation::full({3})), "cannot project unary relation", InvalidArgument);
}

TEST_CASE("fiber") {
    auto m = small();
    CHECK(fiber(m, 0).tuples() == std::vector<Tuple>{{0}, {1}});
    CHECK(m.last_degree(0) == 2);
    CHECK(fiber(m, 1).tuples() == std::vector<Tuple>{{0}});
    CHECK(m.last_degree(1) == 1);
    auto full = Relation::full({4, 4});
    for (Index v = 0; v < 4; ++v) {
        CHECK(fiber(full, v).size() == 4);
        CHECK(full.last_degree(v) == 4);
    }
    CHECK_THROWS_AS(fiber(m, 2), OutOfBounds);
}

TEST_CASE("common neighborhood") {
    auto m = small();
    CHECK(common_neighborhood(m, Rectangle{{{0}}}) == std::vector<Index>{0, 1});
    CHECK(common_neighborhood(m, Rectangle{{{0, 1}}}) == std::vector<Index>{0});
    const std::uint32_t n = 4;
    std::vector<Tuple> cube;
    for (const auto& t : Relation::full({n, n, n}).tuples())
        if (t != Tuple{0, 0, 0}) cube.push_back(t);
    auto minus = Relation::from_tuples({n, n, n}, cube);
    CHECK(common_neighborhood(minus, Rectangle{{{0}, {0}}}) == std::vector<Index>{1, 2, 3});
    CHECK_THROWS_AS(common_neighborhood(m, Rectangle{{{0}, {0}}}), ArityMismatch);
}

TEST_CASE("common neighborhood agrees with the brute-force oracle") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto m = oracle::random_relation({4, 3, 5}, 0.6, seed);
        for (const auto& rect : enumerate_rectangles(project_last(m), Shape({2, 1})))
            CHECK(common_neighborhood(m, rect) == oracle::common_extensions(m, rect.parts));
        // singleton rectangles give the transposed fiber
        for (const auto& t : project_last(m).tuples()) {
            Rectangle r{{{t[0]}, {t[1]}}};
            std::vector<Index> expect;
            for (Index v = 0; v < 5; ++v)
                if (m.contains(std::vector<Index>{t[0], t[1], v})) expect.push_back(v);
            CHECK(common_neighborhood(m, r) == expect);
        }
    }
}

TEST_CASE("validate_box") {
    auto full = Relation::full({3, 3});
    CHECK(validate_box(full, Box{{{0, 2}, {1, 2}}}).ok);
    auto check = validate_box(diagonal(3), Box{{{0, 1}, {0}}});
    CHECK_FALSE(check.ok);
    CHECK(check.violator == Tuple{1, 0});
    CHECK(validate_box(small(), Box{{{1}, {0}}}).ok);
    CHECK_THROWS_AS(validate_box(full, Box{{{0}}}), ArityMismatch);
    CHECK_THROWS_AS(validate_box(full, Box{{{0}, {3}}}), OutOfBounds);
    CHECK_THROWS_AS(validate_box(full, Box{{{1, 0}, {1}}}), InvalidArgument);
    CHECK_THROWS_AS(validate_box(full, Box{{{}, {1}}}), InvalidArgument);
}

TEST_CASE("fiber partition") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto m = oracle::random_relation({3, 4, 5}, 0.4, seed);
        std::size_t total = 0;
        for (Index v = 0; v < 5; ++v) total += fiber(m, v).size();
        CHECK(total == m.size());
    }
}

TEST_CASE("prefix ranges") {
    auto m = Relation::full({2, 3, 2});
    auto [b, e] = m.prefix_range(std::vector<Index>{1, 2});
    CHECK(e - b == 2);
    auto [b2, e2] = m.prefix_range(std::vector<Index>{1});
    CHECK(e2 - b2 == 6);
}
