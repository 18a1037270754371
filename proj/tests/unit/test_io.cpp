#include <doctest.h>

#include "../support/oracles.hpp"
#include "rbox/generators.hpp"
#include "rbox/io.hpp"

using namespace rbox;

namespace {

std::size_t error_line(const std::string& text) {
    try {
        parse_instance(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

}  // namespace

TEST_CASE("RBOX format is bit exact") {
    auto m = Relation::from_tuples({2, 3}, {{1, 2}, {0, 0}});
    CHECK(format_rbox(m) == "RBOX 1\n2 2 3 2\n0 0\n1 2\n");
    CHECK(parse_rbox(format_rbox(m)) == m);
    CHECK(format_rbox(Relation({3})) == "RBOX 1\n1 3 0\n");
}

TEST_CASE("HG format is bit exact") {
    Hypergraph g(3, 5, {{2, 3, 4}, {0, 1, 2}});
    CHECK(format_hg(g) == "HG 1\n3 5 2\n0 1 2\n2 3 4\n");
    CHECK(parse_hg(format_hg(g)) == g);
}

TEST_CASE("round trip of generated instances") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto m = oracle::random_relation({4, 5, 3}, 0.5, seed);
        auto text = format_rbox(m);
        auto back = parse_rbox(text);
        CHECK(back == m);
        CHECK(format_rbox(back) == text);
        CHECK(content_digest(format_rbox(back)) == content_digest(text));
        GenSpec s;
        s.kind = GenKind::hypergraph_gnp;
        s.r = 3;
        s.axis_sizes = {7, 7, 7};
        s.density = 0.3;
        s.seed = seed;
        auto g = gen(s).hypergraph();
        CHECK(parse_hg(format_hg(g)) == g);
    }
}

TEST_CASE("parse errors carry line numbers") {
    CHECK(error_line("RBOX 2\n1 3 0\n") == 1);
    CHECK(error_line("XYZ\n") == 1);
    CHECK(error_line("RBOX 1\n2 3 1\n0 0\n") == 2);
    CHECK(error_line("RBOX 1\n2 3 3 2\n0 0\n0 x\n") == 4);
    CHECK(error_line("RBOX 1\n2 3 3 2\n0 0\n0 3\n") == 4);
    CHECK(error_line("RBOX 1\n2 3 3 3\n0 0\n0 2\n0 1\n") == 5);
    CHECK(error_line("RBOX 1\n2 3 3 2\n0 1\n0 1\n") == 4);
    CHECK(error_line("RBOX 1\n2 3 3 2\n0 1\n0 1 2\n") == 4);
    CHECK(error_line("RBOX 1\n2 3 3 3\n0 1\n1 1\n") == 5);
    CHECK(error_line("RBOX 1\n2 3 3 1\n0 1\n1 1\n") == 4);
    CHECK(error_line("RBOX 1\r\n1 3 0\n") == 1);
    CHECK(error_line("RBOX 1\n2 3 0 0\n") == 2);
    CHECK(error_line("HG 1\n3 5 2\n0 1 2\n0 1 2\n") == 4);
    CHECK(error_line("HG 1\n3 5 1\n0 2 1\n") == 3);
    CHECK(error_line("HG 1\n3 5 1\n0 1 5\n") == 3);
    CHECK(error_line("HG 1\n3 5 1\n0 1\n") == 3);
    CHECK(error_line("HG 1\n3 0 0\n") == 2);
    try {
        parse_hg("HG 1\n2 5 3\n0 1\n1 2\n0 1\n");
        FAIL("duplicate edge accepted");
    } catch (const ParseError& e) {
        CHECK(e.line() == 5);
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("trailing blank lines are tolerated, missing final newline too") {
    CHECK(parse_rbox("RBOX 1\n1 3 1\n2\n\n").size() == 1);
    CHECK(parse_rbox("RBOX 1\n1 3 1\n2").size() == 1);
}

TEST_CASE("content digest") {
    CHECK(content_digest("abc") == "sha256:ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(content_digest("") == "sha256:e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}
