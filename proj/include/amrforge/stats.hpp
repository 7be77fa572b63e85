#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "amrforge/graph.hpp"
#include "amrforge/lexicon.hpp"
#include "amrforge/merge.hpp"

namespace amrforge {

struct CategoryRow {
    std::string label;  // taxonomy label, or "uncategorized"
    CategoryGroup group = CategoryGroup::Entity;
    long types = 0;   // distinct concepts/roles
    long tokens = 0;  // instances
    double token_percent = 0.0;  // share of the group's tokens
};

// Corpus-wide category breakdown. Token buckets: a node goes to its
// lexicon category's group; an uncategorized node counts as an Entity
// unless its concept is a predicate (predicates express relations); every
// edge or attribute role counts on the Relation side, keyed by canonical
// role. Percentages are per group and include the uncategorized rows,
// so each group sums to 100.
struct CorpusStats {
    std::vector<CategoryRow> rows;  // taxonomy order, then per-group uncategorized
    long entity_tokens = 0;
    long relation_tokens = 0;
    std::size_t graph_count = 0;
    double mean_nodes = 0.0;
    double mean_edges = 0.0;
    std::size_t distinct_concepts = 0;
};

CorpusStats categorize_corpus(const std::vector<AmrGraph>& graphs, const Lexicon& lexicon);

// Canonical role frequencies over relation edges and attribute roles,
// sorted by count descending then role ascending. top_n <= 0 keeps all.
// Throws std::invalid_argument on an empty corpus.
std::vector<std::pair<std::string, long>> relation_histogram(const std::vector<AmrGraph>& graphs,
                                                             int top_n = 0);

// Size profile of one graph, the unit complexity_stats aggregates.
struct GraphShape {
    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::vector<std::string> concepts;
};

GraphShape shape_of(const AmrGraph& g);
GraphShape shape_of(const MergedGraph& g);

struct ComplexitySummary {
    std::size_t graphs = 0;
    double mean_nodes_before = 0.0;
    double mean_edges_before = 0.0;
    double mean_nodes_after = 0.0;
    double mean_edges_after = 0.0;
    std::size_t types_before = 0;
    std::size_t types_after = 0;
    double node_reduction = 0.0;  // 1 - after/before (0 when before is 0)
    double edge_reduction = 0.0;
    double type_reduction = 0.0;
};

// Aligned before/after corpora (same length, same order). Throws
// std::invalid_argument on misalignment.
ComplexitySummary complexity_stats(const std::vector<GraphShape>& before,
                                   const std::vector<GraphShape>& after);

// CSV emitters; plot-ready, one row per entry, headers included.
std::string category_csv(const CorpusStats& stats);
std::string histogram_csv(const std::vector<std::pair<std::string, long>>& histogram);

}  // namespace amrforge
