#include "amrforge/stats.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace amrforge {

namespace {

struct Bucket {
    std::set<std::string> types;
    long tokens = 0;
};

std::string format_percent(double value) {
    std::ostringstream out;
    out.precision(4);
    out << std::fixed << value;
    return out.str();
}

}  // namespace

CorpusStats categorize_corpus(const std::vector<AmrGraph>& graphs, const Lexicon& lexicon) {
    std::map<std::string, Bucket> entity_buckets, relation_buckets;
    Bucket entity_other, relation_other;
    std::set<std::string> all_concepts;
    std::size_t node_sum = 0, edge_sum = 0;

    for (const AmrGraph& g : graphs) {
        node_sum += g.variable_count();
        edge_sum += g.edges().size();
        for (const auto& [var, concept_name] : g.concepts()) {
            all_concepts.insert(concept_name);
            auto label = lexicon.category(concept_name);
            if (label) {
                bool entity = category_group(*label) == CategoryGroup::Entity;
                Bucket& bucket = entity ? entity_buckets[*label] : relation_buckets[*label];
                bucket.types.insert(concept_name);
                bucket.tokens++;
            } else if (is_predicate_concept(concept_name)) {
                relation_other.types.insert(concept_name);
                relation_other.tokens++;
            } else {
                entity_other.types.insert(concept_name);
                entity_other.tokens++;
            }
        }
        auto count_role = [&](const std::string& raw_role) {
            std::string role = canonical_role(raw_role);
            auto label = lexicon.category(role);
            if (label && category_group(*label) == CategoryGroup::Relation) {
                Bucket& bucket = relation_buckets[*label];
                bucket.types.insert(role);
                bucket.tokens++;
            } else {
                relation_other.types.insert(role);
                relation_other.tokens++;
            }
        };
        for (const Edge& e : g.edges()) count_role(e.role);
        for (const Attribute& a : g.attributes()) count_role(a.role);
    }

    CorpusStats stats;
    stats.graph_count = graphs.size();
    stats.distinct_concepts = all_concepts.size();
    if (!graphs.empty()) {
        stats.mean_nodes = static_cast<double>(node_sum) / static_cast<double>(graphs.size());
        stats.mean_edges = static_cast<double>(edge_sum) / static_cast<double>(graphs.size());
    }
    for (const auto& [label, bucket] : entity_buckets) stats.entity_tokens += bucket.tokens;
    stats.entity_tokens += entity_other.tokens;
    for (const auto& [label, bucket] : relation_buckets) stats.relation_tokens += bucket.tokens;
    stats.relation_tokens += relation_other.tokens;

    auto percent = [](long tokens, long total) {
        return total > 0 ? 100.0 * static_cast<double>(tokens) / static_cast<double>(total) : 0.0;
    };
    for (const CategoryInfo& info : category_taxonomy()) {
        bool entity = info.group == CategoryGroup::Entity;
        const auto& buckets = entity ? entity_buckets : relation_buckets;
        long total = entity ? stats.entity_tokens : stats.relation_tokens;
        CategoryRow row{info.label, info.group, 0, 0, 0.0};
        if (auto it = buckets.find(info.label); it != buckets.end()) {
            row.types = static_cast<long>(it->second.types.size());
            row.tokens = it->second.tokens;
            row.token_percent = percent(it->second.tokens, total);
        }
        stats.rows.push_back(std::move(row));
    }
    stats.rows.push_back({"uncategorized", CategoryGroup::Entity,
                          static_cast<long>(entity_other.types.size()), entity_other.tokens,
                          percent(entity_other.tokens, stats.entity_tokens)});
    stats.rows.push_back({"uncategorized", CategoryGroup::Relation,
                          static_cast<long>(relation_other.types.size()), relation_other.tokens,
                          percent(relation_other.tokens, stats.relation_tokens)});
    return stats;
}

std::vector<std::pair<std::string, long>> relation_histogram(const std::vector<AmrGraph>& graphs,
                                                             int top_n) {
    if (graphs.empty()) throw std::invalid_argument("relation histogram needs a nonempty corpus");
    std::map<std::string, long> counts;
    for (const AmrGraph& g : graphs) {
        for (const Edge& e : g.edges()) counts[canonical_role(e.role)]++;
        for (const Attribute& a : g.attributes()) counts[canonical_role(a.role)]++;
    }
    std::vector<std::pair<std::string, long>> histogram(counts.begin(), counts.end());
    std::sort(histogram.begin(), histogram.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (top_n > 0 && histogram.size() > static_cast<std::size_t>(top_n)) {
        histogram.resize(static_cast<std::size_t>(top_n));
    }
    return histogram;
}

GraphShape shape_of(const AmrGraph& g) {
    GraphShape shape;
    shape.nodes = g.variable_count();
    shape.edges = g.edges().size();
    shape.concepts.reserve(shape.nodes);
    for (const auto& [var, concept_name] : g.concepts()) shape.concepts.push_back(concept_name);
    return shape;
}

GraphShape shape_of(const MergedGraph& g) {
    GraphShape shape;
    shape.nodes = g.node_count();
    shape.edges = g.edge_count();
    shape.concepts.reserve(shape.nodes);
    for (const auto& [concept_name, node] : g.nodes()) shape.concepts.push_back(concept_name);
    return shape;
}

ComplexitySummary complexity_stats(const std::vector<GraphShape>& before,
                                   const std::vector<GraphShape>& after) {
    if (before.size() != after.size()) {
        throw std::invalid_argument("before/after corpora are not aligned");
    }
    ComplexitySummary summary;
    summary.graphs = before.size();
    if (before.empty()) return summary;

    std::size_t nb = 0, eb = 0, na = 0, ea = 0;
    std::set<std::string> types_before, types_after;
    for (const GraphShape& s : before) {
        nb += s.nodes;
        eb += s.edges;
        types_before.insert(s.concepts.begin(), s.concepts.end());
    }
    for (const GraphShape& s : after) {
        na += s.nodes;
        ea += s.edges;
        types_after.insert(s.concepts.begin(), s.concepts.end());
    }
    double n = static_cast<double>(before.size());
    summary.mean_nodes_before = static_cast<double>(nb) / n;
    summary.mean_edges_before = static_cast<double>(eb) / n;
    summary.mean_nodes_after = static_cast<double>(na) / n;
    summary.mean_edges_after = static_cast<double>(ea) / n;
    summary.types_before = types_before.size();
    summary.types_after = types_after.size();
    auto reduction = [](double before_v, double after_v) {
        return before_v > 0.0 ? 1.0 - after_v / before_v : 0.0;
    };
    summary.node_reduction = reduction(summary.mean_nodes_before, summary.mean_nodes_after);
    summary.edge_reduction = reduction(summary.mean_edges_before, summary.mean_edges_after);
    summary.type_reduction = reduction(static_cast<double>(summary.types_before),
                                       static_cast<double>(summary.types_after));
    return summary;
}

std::string category_csv(const CorpusStats& stats) {
    std::ostringstream out;
    out << "group,category,types,tokens,token_percent\n";
    for (const CategoryRow& row : stats.rows) {
        out << (row.group == CategoryGroup::Entity ? "Entities" : "Relations") << ",\""
            << row.label << "\"," << row.types << ',' << row.tokens << ','
            << format_percent(row.token_percent) << '\n';
    }
    return out.str();
}

std::string histogram_csv(const std::vector<std::pair<std::string, long>>& histogram) {
    std::ostringstream out;
    out << "role,count\n";
    for (const auto& [role, count] : histogram) out << role << ',' << count << '\n';
    return out.str();
}

}  // namespace amrforge
