#include <doctest.h>

#include "../support/oracles.hpp"
#include "rbox/counting.hpp"
#include "rbox/extraction.hpp"
#include "rbox/generators.hpp"
#include "rbox/peeling.hpp"

using namespace rbox;

namespace {

Relation small() { return Relation::from_tuples({2, 2}, {{0, 0}, {0, 1}, {1, 0}}); }

ExtractOptions no_peel(Strategy s = Strategy::exhaustive) {
    ExtractOptions o;
    o.peel = false;
    o.strategy = s;
    return o;
}

Hypergraph complete(unsigned r, std::uint32_t n) {
    std::vector<Tuple> edges;
    for (const auto& t : Relation::full(std::vector<std::uint32_t>(r, n)).tuples())
        if (std::is_sorted(t.begin(), t.end()) && std::adjacent_find(t.begin(), t.end()) == t.end())
            edges.push_back(t);
    return Hypergraph(r, n, edges);
}

}  // namespace

TEST_CASE("extract_box on the three-tuple relation") {
    auto res = extract_box(small(), Shape({1}), no_peel());
    CHECK(res.box == Box{{{0}, {0, 1}}});
    CHECK(res.t == 2);
    CHECK(res.certificate_checked);
    CHECK_FALSE(res.peeled);
    CHECK(res.theta == 0);
    CHECK(res.support_sum == 3);
    CHECK(res.candidates == 2);
    CHECK(res.averaging_floor == Rational(3, 2));
    // an explicit zero threshold peels nothing
    ExtractOptions zero;
    zero.theta = Rational(0);
    auto same = extract_box(small(), Shape({1}), zero);
    CHECK(same.box == res.box);
    CHECK(same.peeled);
}

TEST_CASE("full cube gives t = n for every strategy") {
    auto cube = Relation::full({4, 4, 4});
    for (auto s : {Strategy::exhaustive, Strategy::greedy, Strategy::sampled})
        for (const auto& shape : oracle::shapes(2, 4, 16)) {
            auto res = extract_box(cube, Shape(shape), no_peel(s));
            CHECK(res.t == 4);
            CHECK(res.box.parts[0].size() == shape[0]);
            CHECK(res.box.parts[1].size() == shape[1]);
        }
    auto res = extract_box(cube, Shape({2, 3}));
    CHECK(res.t == 4);
    CHECK(res.box == Box{{{0, 1}, {0, 1, 2}, {0, 1, 2, 3}}});
}

TEST_CASE("planted box is found") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        GenSpec spec;
        spec.kind = GenKind::planted_box;
        spec.r = 3;
        spec.axis_sizes = {12, 12, 12};
        spec.density = 0.2;
        spec.planted = Shape({2, 2, 6});
        spec.seed = seed;
        auto out = gen(spec);
        auto res = extract_box(out.relation(), Shape({2, 2}), no_peel());
        CHECK(res.t >= 6);
        CHECK(validate_box(out.relation(), res.box).ok);
        auto peeled = extract_box(out.relation(), Shape({2, 2}));
        CHECK(peeled.certificate_checked);
    }
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(extract_box(small(), Shape({1, 1}), no_peel()), ArityMismatch);
    CHECK_THROWS_AS(extract_box(Relation::full({3}), Shape(std::vector<std::uint32_t>{}), no_peel()), InvalidArgument);
    try {
        extract_box(Relation({3, 3}), Shape({1}), no_peel());
        FAIL("expected empty search space");
    } catch (const EmptySearchSpace& e) {
        CHECK(std::string(e.what()).find("(1)") != std::string::npos);
    }
    CHECK_THROWS_AS(extract_box(small(), Shape({3}), no_peel()), EmptySearchSpace);
    ExtractOptions tight = no_peel();
    tight.budget = 10;
    try {
        extract_box(Relation::full({10, 10}), Shape({3}), tight);
        FAIL("expected a budget refusal");
    } catch (const BudgetExceeded& e) {
        CHECK(std::string(e.what()).find("greedy") != std::string::npos);
    }
}

TEST_CASE("exhaustive search is optimal and lexicographically least") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        std::vector<std::uint32_t> axes =
            seed % 2 ? std::vector<std::uint32_t>{5, 4, 6} : std::vector<std::uint32_t>{6, 7};
        auto m = oracle::random_relation(axes, 0.55, seed);
        for (const auto& s : oracle::shapes(axes.size() - 1, 3, 6)) {
            Shape shape(s);
            auto best = oracle::best_rectangle(m, s);
            if (best.t == 0) {
                CHECK_THROWS_AS(extract_box(m, shape, no_peel()), EmptySearchSpace);
                continue;
            }
            auto ex = extract_box(m, shape, no_peel());
            CHECK(ex.t == best.t);
            std::vector<std::vector<Index>> rect(ex.box.parts.begin(), ex.box.parts.end() - 1);
            CHECK(rect == best.rect);
            auto greedy = extract_box(m, shape, no_peel(Strategy::greedy));
            CHECK(greedy.t <= ex.t);
            CHECK(validate_box(m, greedy.box).ok);
            ExtractOptions so = no_peel(Strategy::sampled);
            so.budget = 30;
            so.seed = seed;
            try {
                auto sampled = extract_box(m, shape, so);
                CHECK(sampled.t <= ex.t);
                CHECK(validate_box(m, sampled.box).ok);
            } catch (const EmptySearchSpace& e) {
                // every draw missed; only possible for sampling
                CHECK(std::string(e.what()).find("sampled") != std::string::npos);
            }
            for (unsigned jobs : {2u, 5u}) {
                ExtractOptions jo = no_peel();
                jo.jobs = jobs;
                auto par = extract_box(m, shape, jo);
                CHECK(par.box == ex.box);
            }
        }
    }
}

TEST_CASE("extraction is deterministic for a seed") {
    auto m = oracle::random_relation({6, 6, 6}, 0.5, 4);
    ExtractOptions o = no_peel(Strategy::sampled);
    o.budget = 50;
    o.seed = 17;
    auto a = extract_box(m, Shape({2, 2}), o);
    auto b = extract_box(m, Shape({2, 2}), o);
    CHECK(a.box == b.box);
    CHECK(a.rectangles_examined == b.rectangles_examined);
}

TEST_CASE("averaging floor holds with and without peeling") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto m = oracle::random_relation({5, 5, 5}, 0.5, seed);
        for (const auto& s : oracle::shapes(2, 3, 4))
            for (bool peel_first : {false, true}) {
                ExtractOptions o;
                o.peel = peel_first;
                GuaranteeReport rep;
                try {
                    rep = verify_guarantee(m, Shape(s), o);
                } catch (const EmptySearchSpace&) {
                    Relation core = peel_first ? peel(m, default_theta(m).theta).core : m;
                    CHECK(support_sum(core, Shape(s)) == 0);
                    continue;
                }
                CHECK(rep.averaging_holds);
                if (rep.averaging_applies) CHECK(BigInt(rep.extraction.t) >= rep.averaging_ceiling);
                CHECK(rep.conditional.verdict == Verdict::hypotheses_violated);
            }
    }
}

TEST_CASE("verify_guarantee example") {
    auto rep = verify_guarantee(small(), Shape({1}), no_peel());
    CHECK(rep.extraction.t == 2);
    CHECK(rep.averaging_ceiling == 2);
    CHECK(rep.averaging_holds);
    CHECK(rep.conditional.verdict == Verdict::hypotheses_violated);
    auto cube = verify_guarantee(Relation::full({4, 4, 4}), Shape({1, 1}), no_peel());
    CHECK(cube.extraction.t == 4);
    CHECK(cube.averaging_ceiling == 4);
}

TEST_CASE("hypergraph to relation") {
    auto one = hypergraph_to_relation(Hypergraph(3, 3, {{0, 1, 2}}));
    CHECK(one.size() == 6);
    CHECK(one.axis_sizes() == std::vector<std::uint32_t>{3, 3, 3});
    CHECK(hypergraph_to_relation(Hypergraph(3, 4, {})).empty());
    auto four = hypergraph_to_relation(complete(3, 4));
    CHECK(four.size() == 24);
    for (const auto& t : four.tuples()) CHECK(std::set<Index>(t.begin(), t.end()).size() == 3);
    CHECK_THROWS_AS(Hypergraph(3, 4, {{0, 0, 1}}), InvalidArgument);
    CHECK_THROWS_AS(Hypergraph(3, 4, {{0, 1, 2}, {2, 1, 0}}), InvalidArgument);
    CHECK_THROWS_AS(Hypergraph(3, 4, {{0, 1, 4}}), OutOfBounds);
    CHECK_THROWS_AS(Hypergraph(3, 4, {{0, 1}}), ArityMismatch);
}

TEST_CASE("multipartite extraction") {
    auto res = extract_multipartite(complete(3, 5), Shape({1, 1}), no_peel());
    CHECK(res.t == 3);
    CHECK(res.box == Box{{{0}, {1}, {2, 3, 4}}});
    auto single = extract_multipartite(Hypergraph(3, 6, {{1, 3, 5}}), Shape({1, 1}), no_peel());
    CHECK(single.t == 1);
    std::set<Index> vs;
    for (const auto& p : single.box.parts) vs.insert(p.begin(), p.end());
    CHECK(vs == std::set<Index>{1, 3, 5});
    CHECK_THROWS_AS(extract_multipartite(Hypergraph(3, 6, {}), Shape({1, 1}), no_peel()), EmptySearchSpace);
}

TEST_CASE("multipartite parts are disjoint on random 3-graphs") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        GenSpec spec;
        spec.kind = GenKind::hypergraph_gnp;
        spec.r = 3;
        spec.axis_sizes = {8, 8, 8};
        spec.density = 0.4;
        spec.seed = seed;
        auto g = gen(spec).hypergraph();
        for (const auto& s : oracle::shapes(2, 2, 4)) {
            try {
                auto res = extract_multipartite(g, Shape(s), no_peel());
                std::set<Index> seen;
                std::size_t total = 0;
                for (const auto& p : res.box.parts) {
                    seen.insert(p.begin(), p.end());
                    total += p.size();
                }
                CHECK(seen.size() == total);
            } catch (const EmptySearchSpace&) {
            }
        }
    }
}
