#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

#include "amrforge/graph.hpp"
#include "amrforge/lexicon.hpp"

namespace amrforge {

// The pre-defined relation set retained during the merge. Entries are
// stored canonical (inverse suffixes stripped) in file order, deduped.
class RelationWhitelist {
public:
    explicit RelationWhitelist(const std::vector<std::string>& roles);

    // One role per line, "#" comments. A trailing ",count" column (as
    // emitted by the stats histogram) is ignored, so a regenerated
    // top-N file feeds back directly.
    static RelationWhitelist load(const std::filesystem::path& path);

    // The default top-20 set: core ARGs, ops, and the high-frequency
    // non-core roles.
    static RelationWhitelist defaults();

    bool contains(const std::string& canonical) const { return set_.count(canonical) != 0; }
    const std::vector<std::string>& roles() const { return roles_; }

private:
    std::vector<std::string> roles_;
    std::unordered_set<std::string> set_;
};

// One image's ordered caption AMRs.
struct CaptionAmrSet {
    std::string image_id;
    std::vector<AmrGraph> graphs;
};

struct NodeProvenance {
    int caption = 0;  // index into CaptionAmrSet::graphs
    std::string variable;

    friend bool operator==(const NodeProvenance&, const NodeProvenance&) = default;
};

struct MergedNode {
    std::string concept_name;
    std::vector<NodeProvenance> provenance;
    std::vector<std::pair<std::string, std::string>> attributes;  // (role, value), first-wins per role

    bool has_attribute_role(const std::string& role) const;
};

struct MergedEdge {
    std::string source;  // concept keys
    std::string target;
    std::string role;    // canonical
    int caption = 0;     // provenance: caption that contributed the edge
};

// Accumulator of the merge: nodes keyed by concept, edges keyed by the
// unordered endpoint pair so that at most one edge (in one orientation)
// survives per pair.
class MergedGraph {
public:
    using EdgeKey = std::pair<std::string, std::string>;  // lexicographic minmax

    static EdgeKey edge_key(const std::string& a, const std::string& b);

    MergedNode& ensure_node(const std::string& concept_name);
    bool has_node(const std::string& concept_name) const { return nodes_.count(concept_name) != 0; }

    // Adds unless either orientation of the pair is already present
    // (first writer wins). Endpoints must exist.
    bool try_add_edge(const std::string& source, const std::string& target,
                      const std::string& role, int caption);
    bool has_edge_between(const std::string& a, const std::string& b) const;

    const std::map<std::string, MergedNode>& nodes() const { return nodes_; }
    const std::map<EdgeKey, MergedEdge>& edge_map() const { return edges_; }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

private:
    std::map<std::string, MergedNode> nodes_;
    std::map<EdgeKey, MergedEdge> edges_;
};

// Node union across caption graphs, keyed by concept label; records every
// contributing (caption, variable) and carries attributes along
// (first-wins per node and role). Graphs must be edge-canonicalized.
MergedGraph merge_nodes(const CaptionAmrSet& set);

// Whitelist-filtered edge union in caption order: an edge is added iff
// neither orientation of its concept pair is present and its canonical
// role is whitelisted.
void merge_edges(MergedGraph& acc, const CaptionAmrSet& set, const RelationWhitelist& whitelist);

// Weakly connected component with the most nodes; ties broken by more
// edges, then by smallest concept key. Throws GraphError on an empty graph.
MergedGraph largest_component(const MergedGraph& merged);

struct Refinement {
    std::string original;
    std::string hypernym;

    friend bool operator==(const Refinement&, const Refinement&) = default;
};

// Relabels every non-predicate node that has a lexicon hypernym (one hop).
// Nodes that collide after relabeling are merged: provenance and
// attributes unioned, edges re-added under the pair-dedup rule.
std::vector<Refinement> refine_nodes(MergedGraph& g, const Lexicon& lexicon);

// Conversion back to an AmrGraph: root is the node with the highest
// out-degree (ties: predicate first, then smallest concept); variables are
// assigned deterministically from concept initials.
AmrGraph to_amr_graph(const MergedGraph& g);

struct MetaAmr {
    AmrGraph graph;
    std::vector<Refinement> refinement_log;
    MergedGraph merged;  // provenance-carrying accumulator behind `graph`
};

// The full pipeline: canonicalize -> merge nodes -> merge edges ->
// largest component -> refine -> rooted AmrGraph. Deterministic for a
// fixed caption order.
MetaAmr build_meta_amr(const CaptionAmrSet& set, const RelationWhitelist& whitelist,
                       const Lexicon& lexicon);

}  // namespace amrforge
