#include <doctest.h>

#include "rbox/counting.hpp"
#include "rbox/generators.hpp"
#include "rbox/io.hpp"
#include "rbox/rng.hpp"

using namespace rbox;

namespace {

GenSpec spec_of(GenKind kind, std::vector<std::uint32_t> axes, std::uint64_t seed = 0) {
    GenSpec s;
    s.kind = kind;
    s.r = static_cast<unsigned>(axes.size());
    s.axis_sizes = std::move(axes);
    s.seed = seed;
    return s;
}

std::string bytes(const GenOutput& out) {
    return out.is_relation() ? format_rbox(out.relation()) : format_hg(out.hypergraph());
}

}  // namespace

TEST_CASE("rng stream is pinned") {
    // first outputs of the 64-bit Mersenne twister with the default seed
    Rng rng(5489);
    CHECK(rng.next() == 14514284786278117030ull);
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.bounded(7) == b.bounded(7));
    Rng c(1);
    for (int i = 0; i < 1000; ++i) {
        CHECK(c.bounded(10) < 10);
        double u = c.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    std::vector<Index> vals{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    auto sub = c.subset(vals, 4);
    CHECK(sub.size() == 4);
    CHECK(std::is_sorted(sub.begin(), sub.end()));
    CHECK(std::adjacent_find(sub.begin(), sub.end()) == sub.end());
}

TEST_CASE("exact_count examples") {
    auto full = spec_of(GenKind::exact_count, {4, 4});
    full.count = 16;
    CHECK(gen(full).relation() == Relation::full({4, 4}));
    auto none = spec_of(GenKind::exact_count, {4, 4});
    none.count = 0;
    CHECK(gen(none).relation().empty());
    for (std::uint64_t m : {1u, 5u, 8u, 9u, 15u}) {
        auto s = spec_of(GenKind::exact_count, {4, 4}, m);
        s.count = m;
        CHECK(gen(s).relation().size() == m);
    }
}

TEST_CASE("planted box is valid and counted") {
    auto s = spec_of(GenKind::planted_box, {5, 5, 5}, 3);
    s.planted = Shape({2, 2, 3});
    auto out = gen(s);
    REQUIRE(out.planted);
    CHECK(out.planted->shape() == Shape({2, 2, 3}));
    CHECK(validate_box(out.relation(), *out.planted).ok);
    CHECK(out.relation().size() == 12);
    CHECK(count_boxes(out.relation(), Shape({2, 2, 3})).count >= 1);
    CHECK(naive_count_boxes(out.relation(), Shape({2, 2, 3})).count >= 1);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto d = spec_of(GenKind::planted_box, {6, 5, 7}, seed);
        d.density = 0.3;
        d.planted = Shape({3, 1, 4});
        auto o = gen(d);
        CHECK(validate_box(o.relation(), *o.planted).ok);
        auto c = spec_of(GenKind::planted_box, {6, 5, 7}, seed);
        c.count = 40;
        c.planted = Shape({3, 1, 4});
        CHECK(validate_box(gen(c).relation(), *gen(c).planted).ok);
    }
}

TEST_CASE("generators are deterministic") {
    std::vector<GenSpec> specs;
    auto b = spec_of(GenKind::bernoulli, {6, 6, 6}, 9);
    b.density = 0.4;
    specs.push_back(b);
    auto e = spec_of(GenKind::exact_count, {50, 50, 50}, 9);
    e.count = 300;
    specs.push_back(e);
    auto d = spec_of(GenKind::exact_count, {5, 5, 5}, 9);
    d.count = 100;
    specs.push_back(d);
    auto h = spec_of(GenKind::hypergraph_gnp, {9, 9, 9}, 9);
    h.density = 0.3;
    specs.push_back(h);
    auto x = spec_of(GenKind::hypergraph_exact, {9, 9, 9}, 9);
    x.count = 50;
    specs.push_back(x);
    for (const auto& s : specs) {
        CHECK(bytes(gen(s)) == bytes(gen(s)));
        auto other = s;
        other.seed = s.seed + 1;
        CHECK(bytes(gen(s)) != bytes(gen(other)));
    }
}

TEST_CASE("bernoulli count stays near its mean") {
    std::size_t flagged = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto s = spec_of(GenKind::bernoulli, {10, 10, 10}, seed);
        s.density = 0.3;
        auto out = gen(s);
        CHECK(out.expected_count == doctest::Approx(300.0));
        if (!out.count_within_5sigma) ++flagged;
    }
    CHECK(flagged == 0);
    auto zero = spec_of(GenKind::bernoulli, {4, 4}, 1);
    zero.density = 0.0;
    CHECK(gen(zero).relation().empty());
    auto one = spec_of(GenKind::bernoulli, {4, 4}, 1);
    one.density = 1.0;
    CHECK(gen(one).relation() == Relation::full({4, 4}));
}

TEST_CASE("hypergraph generators") {
    auto x = spec_of(GenKind::hypergraph_exact, {7, 7, 7}, 2);
    x.count = 35;
    auto all = gen(x).hypergraph();
    CHECK(all.size() == 35);  // C(7,3)
    x.count = 20;
    CHECK(gen(x).hypergraph().size() == 20);
    auto p = spec_of(GenKind::hypergraph_gnp, {10, 10, 10}, 4);
    p.density = 0.0;
    p.planted = Shape({2, 2, 4});
    auto out = gen(p);
    CHECK(out.hypergraph().size() == 16);
    REQUIRE(out.planted);
    std::set<Index> vs;
    for (const auto& part : out.planted->parts) vs.insert(part.begin(), part.end());
    CHECK(vs.size() == 8);
}

TEST_CASE("invalid specs name the field") {
    auto check = [](const GenSpec& s, const char* field) {
        try {
            validate(s);
            FAIL("expected rejection");
        } catch (const InvalidArgument& e) {
            CHECK(std::string(e.what()).rfind(field, 0) == 0);
        }
    };
    auto b = spec_of(GenKind::bernoulli, {4, 4});
    check(b, "density");
    b.density = 1.5;
    check(b, "density");
    auto c = spec_of(GenKind::exact_count, {4, 4});
    c.count = 17;
    check(c, "count");
    auto z = spec_of(GenKind::exact_count, {4, 0});
    z.count = 1;
    check(z, "axis_sizes");
    auto p = spec_of(GenKind::planted_box, {4, 4});
    check(p, "planted");
    p.planted = Shape({5, 1});
    check(p, "planted");
    auto r = spec_of(GenKind::bernoulli, {4, 4});
    r.r = 3;
    r.density = 0.5;
    check(r, "axis_sizes");
    auto h = spec_of(GenKind::hypergraph_exact, {5, 5, 5});
    h.count = 11;
    check(h, "count");
    auto hp = spec_of(GenKind::hypergraph_gnp, {5, 5, 5});
    hp.density = 0.1;
    hp.planted = Shape({2, 2, 2});
    check(hp, "planted");
    auto uneven = spec_of(GenKind::hypergraph_gnp, {5, 6, 5});
    uneven.density = 0.1;
    check(uneven, "axis_sizes");
}

TEST_CASE("kind names round trip") {
    for (auto k : {GenKind::bernoulli, GenKind::exact_count, GenKind::planted_box, GenKind::hypergraph_gnp,
                   GenKind::hypergraph_exact})
        CHECK(parse_gen_kind(to_string(k)) == k);
    CHECK_FALSE(parse_gen_kind("nope"));
}
