#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "amrforge/merge.hpp"
#include "amrforge/penman.hpp"

using namespace amrforge;

namespace {

CaptionAmrSet fixture_set() {
    std::ifstream in(std::string(AMRFORGE_DATA_DIR) + "/fixtures/appendix_c.penman");
    REQUIRE(in.good());
    CaptionAmrSet set;
    set.image_id = "436985";
    for (const PenmanBlock& block : read_penman_blocks(in))
        set.graphs.push_back(parse_penman(block.text));
    REQUIRE(set.graphs.size() == 5);
    return set;
}

Lexicon fixture_lexicon() {
    std::vector<std::string> warnings;
    Lexicon lex = Lexicon::load(std::string(AMRFORGE_DATA_DIR) + "/lexicon.tsv", &warnings);
    CHECK(warnings.empty());
    return lex;
}

}  // namespace

TEST_CASE("whitelist defaults") {
    RelationWhitelist wl = RelationWhitelist::defaults();
    CHECK(wl.roles().size() == 20);
    for (const char* role : {":ARG0", ":ARG4", ":op1", ":op4", ":mod", ":location", ":quant",
                             ":poss", ":part", ":manner", ":time", ":domain", ":instrument",
                             ":accompanier", ":purpose"})
        CHECK(wl.contains(role));
    CHECK_FALSE(wl.contains(":source"));
    CHECK_FALSE(wl.contains(":wiki"));
}

TEST_CASE("whitelist construction canonicalizes and dedups") {
    RelationWhitelist wl({":ARG0-of", ":ARG0", ":mod"});
    CHECK(wl.roles() == std::vector<std::string>{":ARG0", ":mod"});
    CHECK(wl.contains(":ARG0"));

    CHECK_THROWS(RelationWhitelist(std::vector<std::string>{}));
    CHECK_THROWS(RelationWhitelist({"ARG0"}));  // missing ':' prefix
}

TEST_CASE("whitelist load tolerates comments and count columns") {
    auto dir = std::filesystem::temp_directory_path() / "amrforge_wl_test";
    std::filesystem::create_directories(dir);
    auto path = dir / "wl.txt";
    {
        std::ofstream out(path);
        out << "# top roles\n:ARG0,97\n:mod 41\n:location\n\n:ARG0\n";
    }
    RelationWhitelist wl = RelationWhitelist::load(path);
    CHECK(wl.roles() == std::vector<std::string>{":ARG0", ":mod", ":location"});
    std::filesystem::remove_all(dir);
}

TEST_CASE("merge_nodes unions concepts with provenance and first-wins attributes") {
    CaptionAmrSet set;
    set.image_id = "img";
    set.graphs.push_back(parse_penman("(d / dog :quant 2)"));
    set.graphs.push_back(parse_penman("(d / dog :quant 3 :mod (b / brown))"));
    MergedGraph m = merge_nodes(set);
    CHECK(m.node_count() == 2);
    const MergedNode& dog = m.nodes().at("dog");
    REQUIRE(dog.provenance.size() == 2);
    CHECK(dog.provenance[0] == NodeProvenance{0, "d"});
    CHECK(dog.provenance[1] == NodeProvenance{1, "d"});
    REQUIRE(dog.attributes.size() == 1);
    CHECK(dog.attributes[0] == std::pair<std::string, std::string>{":quant", "2"});
}

TEST_CASE("merge_edges applies whitelist and unordered-pair dedup") {
    CaptionAmrSet set;
    set.image_id = "img";
    set.graphs.push_back(parse_penman("(s / stand-01 :ARG0 (d / dog) :source (h / house))"));
    set.graphs.push_back(parse_penman("(d / dog :ARG0-of (s / stand-01))"));
    MergedGraph m = merge_nodes(set);
    merge_edges(m, set, RelationWhitelist::defaults());
    CHECK(m.edge_count() == 1);  // :source rejected; second :ARG0 is the same pair
    const MergedEdge& e = m.edge_map().begin()->second;
    CHECK(e.source == "stand-01");
    CHECK(e.role == ":ARG0");
    CHECK(e.target == "dog");
    CHECK(e.caption == 0);
    CHECK(m.has_edge_between("dog", "stand-01"));
    CHECK(m.has_edge_between("stand-01", "dog"));
}

TEST_CASE("edge dedup rejects the opposite orientation too") {
    MergedGraph m;
    m.ensure_node("a");
    m.ensure_node("b");
    CHECK(m.try_add_edge("a", "b", ":mod", 0));
    CHECK_FALSE(m.try_add_edge("a", "b", ":quant", 1));
    CHECK_FALSE(m.try_add_edge("b", "a", ":mod", 1));
    CHECK(m.edge_count() == 1);
    CHECK_THROWS_AS(m.try_add_edge("a", "zzz", ":mod", 0), GraphError);
}

TEST_CASE("largest_component prefers nodes, then edges, then smallest concept") {
    MergedGraph m;
    for (const char* c : {"a1", "a2", "a3", "b1", "b2"}) m.ensure_node(c);
    m.try_add_edge("a1", "a2", ":mod", 0);
    m.try_add_edge("a2", "a3", ":mod", 0);
    m.try_add_edge("b1", "b2", ":mod", 0);
    MergedGraph big = largest_component(m);
    CHECK(big.node_count() == 3);
    CHECK(big.has_node("a1"));
    CHECK_FALSE(big.has_node("b1"));

    // node tie, edge count decides
    MergedGraph tie;
    for (const char* c : {"x1", "x2", "x3", "y1", "y2", "y3"}) tie.ensure_node(c);
    tie.try_add_edge("y1", "y2", ":mod", 0);
    tie.try_add_edge("y2", "y3", ":mod", 0);
    tie.try_add_edge("y1", "y3", ":quant", 0);
    tie.try_add_edge("x1", "x2", ":mod", 0);
    tie.try_add_edge("x2", "x3", ":mod", 0);
    MergedGraph byedges = largest_component(tie);
    CHECK(byedges.node_count() == 3);
    CHECK(byedges.has_node("y1"));

    // full tie, smallest concept decides
    MergedGraph full;
    for (const char* c : {"banana", "cherry", "apple", "mango"}) full.ensure_node(c);
    full.try_add_edge("banana", "cherry", ":mod", 0);
    full.try_add_edge("apple", "mango", ":mod", 0);
    MergedGraph smallest = largest_component(full);
    CHECK(smallest.has_node("apple"));
    CHECK_FALSE(smallest.has_node("banana"));

    CHECK_THROWS_AS(largest_component(MergedGraph{}), GraphError);
}

TEST_CASE("refine_nodes relabels one hop and merges collisions") {
    Lexicon lex;
    lex.set_hypernym("puppy", "dog");
    lex.set_hypernym("dog", "animal");
    lex.set_hypernym("stand-01", "be-01");  // predicates are never refined
    lex.validate();

    MergedGraph m;
    m.ensure_node("puppy");
    m.ensure_node("dog");
    m.ensure_node("stand-01");
    m.try_add_edge("stand-01", "puppy", ":ARG0", 0);
    m.try_add_edge("stand-01", "dog", ":ARG1", 1);
    m.try_add_edge("puppy", "dog", ":mod", 2);

    auto log = refine_nodes(m, lex);
    REQUIRE(log.size() == 2);  // one hop each, applied from the original labels
    CHECK(log[0] == Refinement{"dog", "animal"});
    CHECK(log[1] == Refinement{"puppy", "dog"});
    CHECK(m.has_node("dog"));     // the refined puppy
    CHECK(m.has_node("animal"));  // the refined dog
    CHECK_FALSE(m.has_node("puppy"));
    CHECK(m.node_count() == 3);
    CHECK(m.edge_count() == 3);
}

TEST_CASE("refine_nodes merges nodes that collide after relabeling") {
    Lexicon lex;
    lex.set_hypernym("rock", "stone");
    lex.set_hypernym("boulder", "stone");
    lex.validate();

    MergedGraph m;
    m.ensure_node("near");
    MergedNode& rock = m.ensure_node("rock");
    rock.provenance.push_back({0, "r"});
    rock.attributes.emplace_back(":quant", "1");
    MergedNode& boulder = m.ensure_node("boulder");
    boulder.provenance.push_back({4, "b"});
    boulder.attributes.emplace_back(":quant", "7");
    m.try_add_edge("near", "rock", ":op1", 0);
    m.try_add_edge("near", "boulder", ":op1", 4);

    auto log = refine_nodes(m, lex);
    CHECK(log == std::vector<Refinement>{{"boulder", "stone"}, {"rock", "stone"}});
    CHECK(m.node_count() == 2);
    CHECK(m.edge_count() == 1);  // the two near-stone edges collapse to one
    const MergedNode& stone = m.nodes().at("stone");
    CHECK(stone.provenance.size() == 2);
    // first-wins on the shared role; the union walks originals in sorted
    // order, so boulder's value lands first
    REQUIRE(stone.attributes.size() == 1);
    CHECK(stone.attributes[0].second == "7");
}

TEST_CASE("to_amr_graph picks root by out-degree, predicate, concept") {
    MergedGraph m;
    m.ensure_node("cat");
    m.ensure_node("dog");
    m.ensure_node("run-02");
    m.try_add_edge("cat", "dog", ":mod", 0);
    m.try_add_edge("run-02", "cat", ":ARG0", 0);
    AmrGraph g = to_amr_graph(m);
    CHECK(g.concept_of(g.root()) == "run-02");  // out-degree tie, predicate wins
    CHECK(g.variable_count() == 3);
}

TEST_CASE("to_amr_graph variable naming avoids collisions") {
    MergedGraph m;
    m.ensure_node("dog");
    m.ensure_node("deer");
    m.ensure_node("door");
    m.try_add_edge("dog", "deer", ":mod", 0);
    m.try_add_edge("dog", "door", ":poss", 0);
    AmrGraph g = to_amr_graph(m);
    std::vector<std::string> vars = g.variables();
    std::sort(vars.begin(), vars.end());
    CHECK(vars == std::vector<std::string>{"d", "d2", "d3"});
}

TEST_CASE("build_meta_amr on the worked example") {
    CaptionAmrSet set = fixture_set();
    Lexicon lex = fixture_lexicon();
    RelationWhitelist wl = RelationWhitelist::defaults();

    // intermediate shape: node union and whitelisted deduped edges
    CaptionAmrSet canon = set;
    for (AmrGraph& g : canon.graphs) g = canonicalize_edges(g);
    MergedGraph merged = merge_nodes(canon);
    CHECK(merged.node_count() == 15);
    merge_edges(merged, canon, wl);
    CHECK(merged.edge_count() == 16);
    CHECK_FALSE(merged.has_edge_between("pick-01", "tree"));  // :source not whitelisted

    MergedGraph component = largest_component(merged);
    CHECK(component.node_count() == 14);  // tree is isolated and drops out
    CHECK(component.edge_count() == 16);
    CHECK_FALSE(component.has_node("tree"));

    MetaAmr meta = build_meta_amr(set, wl, lex);
    CHECK(meta.refinement_log ==
          std::vector<Refinement>{{"boulder", "stone"}, {"rock", "stone"}});
    CHECK(meta.merged.node_count() == 13);
    CHECK(meta.merged.edge_count() == 15);
    CHECK(meta.merged.has_node("stone"));
    CHECK_FALSE(meta.merged.has_node("rock"));
    CHECK(meta.merged.has_edge_between("near", "stone"));
    CHECK(meta.merged.edge_map().at(MergedGraph::edge_key("near", "stone")).role == ":op1");

    const AmrGraph& g = meta.graph;
    CHECK(g.concept_of(g.root()) == "stand-01");
    CHECK(g.variable_count() == 13);
    CHECK(g.edges().size() == 15);
    CHECK(g.attributes().size() == 1);
}

TEST_CASE("meta-AMR carries the giraffe quantity attribute") {
    MetaAmr meta = build_meta_amr(fixture_set(), RelationWhitelist::defaults(), fixture_lexicon());
    const MergedNode& giraffe = meta.merged.nodes().at("giraffe");
    CHECK(giraffe.provenance.size() == 5);
    REQUIRE(giraffe.attributes.size() == 1);
    CHECK(giraffe.attributes[0] == std::pair<std::string, std::string>{":quant", "2"});

    bool found = false;
    for (const Attribute& a : meta.graph.attributes())
        if (meta.graph.concept_of(a.source) == "giraffe" && a.role == ":quant" && a.value == "2")
            found = true;
    CHECK(found);
}

TEST_CASE("build_meta_amr is deterministic") {
    CaptionAmrSet set = fixture_set();
    Lexicon lex = fixture_lexicon();
    MetaAmr a = build_meta_amr(set, RelationWhitelist::defaults(), lex);
    MetaAmr b = build_meta_amr(set, RelationWhitelist::defaults(), lex);
    CHECK(serialize_penman(a.graph) == serialize_penman(b.graph));
    CHECK(a.refinement_log == b.refinement_log);
}

TEST_CASE("build_meta_amr rejects an empty caption set") {
    CaptionAmrSet empty;
    empty.image_id = "none";
    CHECK_THROWS(build_meta_amr(empty, RelationWhitelist::defaults(), Lexicon{}));
}
