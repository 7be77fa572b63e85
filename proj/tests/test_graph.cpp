#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>

#include "amrforge/graph.hpp"
#include "testutil.hpp"

using namespace amrforge;

TEST_CASE("role helpers") {
    CHECK(is_inverse_role(":ARG0-of"));
    CHECK(is_inverse_role(":mod-of"));
    CHECK_FALSE(is_inverse_role(":ARG0"));
    CHECK_FALSE(is_inverse_role(":consist-of"));
    CHECK_FALSE(is_inverse_role(":prep-out-of"));
    CHECK_FALSE(is_inverse_role(":prep-on-behalf-of"));
    CHECK(is_inverse_role(":consist-of-of"));

    CHECK(canonical_role(":ARG0-of") == ":ARG0");
    CHECK(canonical_role(":ARG0") == ":ARG0");
    CHECK(canonical_role(":consist-of") == ":consist-of");
    CHECK(canonical_role(":consist-of-of") == ":consist-of");
    CHECK(canonical_role(canonical_role(":ARG0-of")) == ":ARG0");

    CHECK(inverse_role(":ARG0") == ":ARG0-of");
    CHECK(inverse_role(":ARG0-of") == ":ARG0");
    CHECK(inverse_role(":consist-of") == ":consist-of-of");
}

TEST_CASE("predicate detection") {
    CHECK(is_predicate_concept("stand-01"));
    CHECK(is_predicate_concept("run-02"));
    CHECK(is_predicate_concept("look-out-06"));
    CHECK_FALSE(is_predicate_concept("giraffe"));
    CHECK_FALSE(is_predicate_concept("stand-1"));
    CHECK_FALSE(is_predicate_concept("stand-011"));
    CHECK_FALSE(is_predicate_concept("-01"));
    CHECK_FALSE(is_predicate_concept("Stand-01"));
}

TEST_CASE("graph validation") {
    std::map<std::string, std::string> concepts{{"a", "dog"}, {"b", "cat"}};

    CHECK_THROWS_AS(AmrGraph("x", concepts, {{"a", ":mod", "b"}}, {}), GraphError);
    CHECK_THROWS_AS(AmrGraph("a", concepts, {{"a", ":mod", "z"}}, {}), GraphError);
    CHECK_THROWS_AS(AmrGraph("a", concepts, {{"a", "mod", "b"}}, {}), GraphError);
    CHECK_THROWS_AS(AmrGraph("a", concepts, {}, {{"z", ":quant", "2"}}), GraphError);
    // b unreachable
    CHECK_THROWS_AS(AmrGraph("a", concepts, {}, {}), GraphError);
    CHECK_NOTHROW(AmrGraph("a", concepts, {{"a", ":mod", "b"}}, {}));
    // reachability is undirected: an inverse-stored edge still connects
    CHECK_NOTHROW(AmrGraph("a", concepts, {{"b", ":ARG0", "a"}}, {}));
}

TEST_CASE("triples canonicalize orientation and add TOP") {
    AmrGraph g("s", {{"s", "stand-01"}, {"g", "giraffe"}}, {{"g", ":ARG0-of", "s"}}, {});
    auto ts = triples(g);
    REQUIRE(ts.size() == 4);  // 2 instances + 1 relation + TOP
    bool found_relation = false, found_top = false;
    for (const Triple& t : ts) {
        if (t.kind == TripleKind::Relation) {
            CHECK(t.source == "s");
            CHECK(t.role == ":ARG0");
            CHECK(t.target == "g");
            found_relation = true;
        }
        if (t.kind == TripleKind::Top) {
            CHECK(t.source == "s");
            CHECK(t.target == "stand-01");
            found_top = true;
        }
    }
    CHECK(found_relation);
    CHECK(found_top);
}

TEST_CASE("canonicalize_edges flips inverse roles and is idempotent") {
    AmrGraph g("s", {{"s", "stand-01"}, {"g", "giraffe"}}, {{"g", ":ARG0-of", "s"}}, {});
    AmrGraph c = canonicalize_edges(g);
    REQUIRE(c.edges().size() == 1);
    CHECK(c.edges()[0] == Edge{"s", ":ARG0", "g"});
    CHECK(canonicalize_edges(c) == c);
    CHECK(testutil::triple_sets_equal(g, c));
}

TEST_CASE("prefix_variables renames consistently") {
    AmrGraph g("s", {{"s", "stand-01"}, {"g", "giraffe"}}, {{"s", ":ARG0", "g"}},
               {{"g", ":quant", "2"}});
    AmrGraph p = prefix_variables(g, "c0_");
    CHECK(p.root() == "c0_s");
    CHECK(p.concept_of("c0_g") == "giraffe");
    CHECK(p.edges()[0] == Edge{"c0_s", ":ARG0", "c0_g"});
    CHECK(p.attributes()[0] == Attribute{"c0_g", ":quant", "2"});
}

TEST_CASE("canonical_form is stable under variable renaming") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        AmrGraph g = testutil::random_graph(rng);
        AmrGraph renamed = prefix_variables(g, "zz");
        CHECK(same_canonical_triples(g, renamed));
        CHECK(same_canonical_triples(g, g));
    }
}

TEST_CASE("same_canonical_triples distinguishes different graphs") {
    AmrGraph a("s", {{"s", "stand-01"}, {"g", "giraffe"}}, {{"s", ":ARG0", "g"}}, {});
    AmrGraph b("s", {{"s", "stand-01"}, {"d", "dog"}}, {{"s", ":ARG0", "d"}}, {});
    CHECK_FALSE(same_canonical_triples(a, b));
}
