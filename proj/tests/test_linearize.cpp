#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "amrforge/linearize.hpp"
#include "amrforge/penman.hpp"
#include "testutil.hpp"

using namespace amrforge;

TEST_CASE("linearize token shape") {
    AmrGraph g = parse_penman("(s / stand-01 :ARG0 (g / giraffe :quant 2))");
    auto toks = linearize(g);
    std::vector<std::string> expect = {"(",  "<p0>", "stand-01", ":ARG0", "(",    "<p1>",
                                       "giraffe", ":quant", "2", ")", ")"};
    CHECK(toks == expect);
}

TEST_CASE("re-entrancy uses a bare pointer token") {
    AmrGraph g = parse_penman("(a / and :op1 (d / dog) :op2 d)");
    auto toks = linearize(g);
    // each variable is introduced exactly once (pointer followed by its
    // concept); the re-entrant edge repeats an already-known pointer bare
    auto is_pointer = [](const std::string& t) { return t.starts_with("<p") && t.back() == '>'; };
    int intro = 0, bare = 0;
    for (std::size_t i = 0; i < toks.size(); ++i) {
        if (!is_pointer(toks[i])) continue;
        if (i > 0 && toks[i - 1] == "(")
            ++intro;
        else
            ++bare;
    }
    CHECK(intro == 2);
    CHECK(bare == 1);
}

TEST_CASE("delinearize inverts linearize on random graphs") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 200; ++i) {
        AmrGraph g = testutil::random_graph(rng);
        auto res = delinearize(linearize(g));
        REQUIRE(res.ok());
        CHECK(res.repairs.empty());
        CHECK(same_canonical_triples(g, *res.graph));
    }
}

TEST_CASE("repair: closes unbalanced parentheses") {
    AmrGraph g = parse_penman("(s / stand-01 :ARG0 (g / giraffe))");
    auto toks = linearize(g);
    toks.pop_back();
    toks.pop_back();  // drop both closers
    auto res = delinearize(toks);
    REQUIRE(res.ok());
    CHECK_FALSE(res.repairs.empty());
    CHECK(same_canonical_triples(g, *res.graph));
}

TEST_CASE("repair: drops a dangling role") {
    std::vector<std::string> toks = {"(", "<p0>", "dog", ":mod", ")"};
    auto res = delinearize(toks);
    REQUIRE(res.ok());
    CHECK(res.repairs.size() == 1);
    CHECK(res.graph->edges().empty());
    CHECK(res.graph->attributes().empty());
}

TEST_CASE("repair: ignores trailing tokens") {
    std::vector<std::string> toks = {"(", "<p0>", "dog", ")", ":mod", "cat"};
    auto res = delinearize(toks);
    REQUIRE(res.ok());
    CHECK_FALSE(res.repairs.empty());
    CHECK(res.graph->concept_of(res.graph->root()) == "dog");
}

TEST_CASE("unrecoverable inputs fail with an error") {
    CHECK_FALSE(delinearize(std::vector<std::string>{}).ok());
    CHECK_FALSE(delinearize(std::vector<std::string>{"(", ")"}).ok());
    // unknown pointer referenced
    CHECK_FALSE(
        delinearize(std::vector<std::string>{"(", "<p0>", "dog", ":mod", "<p7>", ")"}).ok());
    // pointer re-introduced with a second concept
    CHECK_FALSE(delinearize(std::vector<std::string>{"(", "<p0>", "dog", ":mod", "(", "<p0>",
                                                     "cat", ")", ")"})
                    .ok());
    DelinearizeResult res = delinearize(std::vector<std::string>{"(", ")"});
    CHECK_FALSE(res.error.empty());
}

TEST_CASE("join/split round-trip is quote-aware") {
    std::vector<std::string> toks = {"(",      "<p0>", "dog",  ":wiki",
                                     "\"Dog (animal)\"", ":mod", "\"a b\"", ")"};
    std::string line = join_tokens(toks);
    CHECK(split_tokens(line) == toks);

    CHECK(split_tokens("  a   b  ") == std::vector<std::string>{"a", "b"});
    CHECK(split_tokens("") == std::vector<std::string>{});
}

TEST_CASE("linearized text survives a full text round-trip") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 100; ++i) {
        AmrGraph g = testutil::random_graph(rng);
        std::string line = join_tokens(linearize(g));
        auto res = delinearize(split_tokens(line));
        REQUIRE(res.ok());
        CHECK(same_canonical_triples(g, *res.graph));
    }
}
