#include "amrforge/merge.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace amrforge {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

RelationWhitelist::RelationWhitelist(const std::vector<std::string>& roles) {
    for (const auto& raw : roles) {
        std::string role = canonical_role(trim(raw));
        if (role.empty()) continue;
        if (role.front() != ':') {
            throw std::invalid_argument("whitelist role must start with ':': '" + role + "'");
        }
        if (set_.insert(role).second) roles_.push_back(role);
    }
    if (roles_.empty()) throw std::invalid_argument("whitelist must be nonempty");
}

RelationWhitelist RelationWhitelist::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open whitelist file: " + path.string());
    std::vector<std::string> roles;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        // Tolerate "role,count" rows so a histogram dump loads as-is.
        if (auto comma = line.find(','); comma != std::string::npos) line.erase(comma);
        if (auto ws = line.find_first_of(" \t"); ws != std::string::npos) line.erase(ws);
        line = trim(line);
        if (!line.empty()) roles.push_back(line);
    }
    return RelationWhitelist(roles);
}

RelationWhitelist RelationWhitelist::defaults() {
    return RelationWhitelist({
        ":ARG0", ":ARG1", ":ARG2", ":ARG3", ":ARG4",
        ":op1", ":op2", ":op3", ":op4",
        ":mod", ":location", ":quant", ":poss", ":part",
        ":manner", ":time", ":domain", ":instrument", ":accompanier", ":purpose",
    });
}

bool MergedNode::has_attribute_role(const std::string& role) const {
    for (const auto& [r, v] : attributes) {
        if (r == role) return true;
    }
    return false;
}

MergedGraph::EdgeKey MergedGraph::edge_key(const std::string& a, const std::string& b) {
    return a <= b ? EdgeKey{a, b} : EdgeKey{b, a};
}

MergedNode& MergedGraph::ensure_node(const std::string& concept_name) {
    auto [it, inserted] = nodes_.try_emplace(concept_name);
    if (inserted) it->second.concept_name = concept_name;
    return it->second;
}

bool MergedGraph::has_edge_between(const std::string& a, const std::string& b) const {
    return edges_.count(edge_key(a, b)) != 0;
}

bool MergedGraph::try_add_edge(const std::string& source, const std::string& target,
                               const std::string& role, int caption) {
    if (!has_node(source) || !has_node(target)) {
        throw GraphError("merged edge endpoint is not a node: " + source + " -> " + target);
    }
    auto [it, inserted] = edges_.try_emplace(edge_key(source, target));
    if (!inserted) return false;
    it->second = MergedEdge{source, target, role, caption};
    return true;
}

MergedGraph merge_nodes(const CaptionAmrSet& set) {
    MergedGraph merged;
    for (std::size_t i = 0; i < set.graphs.size(); ++i) {
        const AmrGraph& g = set.graphs[i];
        for (const auto& [var, concept_name] : g.concepts()) {
            MergedNode& node = merged.ensure_node(concept_name);
            node.provenance.push_back({static_cast<int>(i), var});
        }
        for (const Attribute& attr : g.attributes()) {
            MergedNode& node = merged.ensure_node(g.concept_of(attr.source));
            if (!node.has_attribute_role(attr.role)) {
                node.attributes.emplace_back(attr.role, attr.value);
            }
        }
    }
    return merged;
}

void merge_edges(MergedGraph& acc, const CaptionAmrSet& set, const RelationWhitelist& whitelist) {
    for (std::size_t i = 0; i < set.graphs.size(); ++i) {
        const AmrGraph& g = set.graphs[i];
        for (const Edge& e : g.edges()) {
            std::string role = canonical_role(e.role);
            if (!whitelist.contains(role)) continue;
            std::string src = g.concept_of(e.source);
            std::string tgt = g.concept_of(e.target);
            if (is_inverse_role(e.role)) std::swap(src, tgt);
            if (src == tgt) continue;  // concept collision collapsed both endpoints
            acc.try_add_edge(src, tgt, role, static_cast<int>(i));
        }
    }
}

MergedGraph largest_component(const MergedGraph& merged) {
    if (merged.nodes().empty()) throw GraphError("cannot take a component of an empty merge");

    std::map<std::string, std::vector<std::string>> adj;
    for (const auto& [key, edge] : merged.edge_map()) {
        adj[edge.source].push_back(edge.target);
        adj[edge.target].push_back(edge.source);
    }

    std::map<std::string, int> component;
    std::vector<std::vector<std::string>> members;
    for (const auto& [concept_name, node] : merged.nodes()) {
        if (component.count(concept_name)) continue;
        int id = static_cast<int>(members.size());
        members.emplace_back();
        std::deque<std::string> queue{concept_name};
        component[concept_name] = id;
        while (!queue.empty()) {
            std::string cur = queue.front();
            queue.pop_front();
            members[id].push_back(cur);
            auto it = adj.find(cur);
            if (it == adj.end()) continue;
            for (const std::string& next : it->second) {
                if (component.emplace(next, id).second) queue.push_back(next);
            }
        }
    }

    std::vector<std::size_t> edge_counts(members.size(), 0);
    for (const auto& [key, edge] : merged.edge_map()) {
        edge_counts[component.at(edge.source)]++;
    }

    int best = 0;
    for (int id = 1; id < static_cast<int>(members.size()); ++id) {
        if (members[id].size() != members[best].size()) {
            if (members[id].size() > members[best].size()) best = id;
            continue;
        }
        if (edge_counts[id] != edge_counts[best]) {
            if (edge_counts[id] > edge_counts[best]) best = id;
            continue;
        }
        // BFS seeds come from the sorted node map, so members[...][0] is
        // each component's smallest concept and `best` already wins ties.
    }

    MergedGraph out;
    for (const std::string& concept_name : members[best]) {
        out.ensure_node(concept_name) = merged.nodes().at(concept_name);
    }
    for (const auto& [key, edge] : merged.edge_map()) {
        if (component.at(edge.source) == best) {
            out.try_add_edge(edge.source, edge.target, edge.role, edge.caption);
        }
    }
    return out;
}

std::vector<Refinement> refine_nodes(MergedGraph& g, const Lexicon& lexicon) {
    std::vector<Refinement> log;
    std::map<std::string, std::string> relabel;
    for (const auto& [concept_name, node] : g.nodes()) {
        if (is_predicate_concept(concept_name)) continue;
        std::optional<std::string> hyper = lexicon.hypernym(concept_name);
        if (!hyper || *hyper == concept_name) continue;
        relabel[concept_name] = *hyper;
        log.push_back({concept_name, *hyper});
    }
    if (relabel.empty()) return log;

    MergedGraph refined;
    for (const auto& [concept_name, node] : g.nodes()) {
        auto it = relabel.find(concept_name);
        const std::string& label = it == relabel.end() ? concept_name : it->second;
        MergedNode& merged = refined.ensure_node(label);
        merged.provenance.insert(merged.provenance.end(), node.provenance.begin(),
                                 node.provenance.end());
        for (const auto& [role, value] : node.attributes) {
            if (!merged.has_attribute_role(role)) merged.attributes.emplace_back(role, value);
        }
    }
    for (const auto& [key, edge] : g.edge_map()) {
        auto src_it = relabel.find(edge.source);
        auto tgt_it = relabel.find(edge.target);
        const std::string& src = src_it == relabel.end() ? edge.source : src_it->second;
        const std::string& tgt = tgt_it == relabel.end() ? edge.target : tgt_it->second;
        if (src == tgt) continue;  // endpoints collapsed together
        refined.try_add_edge(src, tgt, edge.role, edge.caption);
    }
    g = std::move(refined);
    return log;
}

AmrGraph to_amr_graph(const MergedGraph& g) {
    if (g.nodes().empty()) throw GraphError("cannot build a graph from an empty merge");

    std::map<std::string, std::size_t> out_degree;
    for (const auto& [key, edge] : g.edge_map()) out_degree[edge.source]++;

    // Root: highest out-degree, ties prefer predicates, then the map
    // order (smallest concept) stands.
    std::string root_concept;
    std::size_t root_degree = 0;
    bool root_predicate = false;
    for (const auto& [concept_name, node] : g.nodes()) {
        std::size_t degree = 0;
        if (auto it = out_degree.find(concept_name); it != out_degree.end()) degree = it->second;
        bool predicate = is_predicate_concept(concept_name);
        if (root_concept.empty() || degree > root_degree ||
            (degree == root_degree && predicate && !root_predicate)) {
            root_concept = concept_name;
            root_degree = degree;
            root_predicate = predicate;
        }
    }

    std::map<std::string, std::string> var_of;
    std::unordered_set<std::string> used;
    for (const auto& [concept_name, node] : g.nodes()) {
        char initial = concept_name.empty() ? 'x' : concept_name.front();
        if (initial >= 'A' && initial <= 'Z') initial = static_cast<char>(initial - 'A' + 'a');
        if (initial < 'a' || initial > 'z') initial = 'x';
        std::string var(1, initial);
        for (int suffix = 2; !used.insert(var).second; ++suffix) {
            var = std::string(1, initial) + std::to_string(suffix);
        }
        var_of[concept_name] = var;
    }

    std::map<std::string, std::string> concepts;
    for (const auto& [concept_name, node] : g.nodes()) concepts[var_of.at(concept_name)] = concept_name;

    std::vector<Edge> edges;
    for (const auto& [key, edge] : g.edge_map()) {
        edges.push_back({var_of.at(edge.source), edge.role, var_of.at(edge.target)});
    }
    std::vector<Attribute> attributes;
    for (const auto& [concept_name, node] : g.nodes()) {
        for (const auto& [role, value] : node.attributes) {
            attributes.push_back({var_of.at(concept_name), role, value});
        }
    }

    return AmrGraph(var_of.at(root_concept), concepts, edges, attributes);
}

MetaAmr build_meta_amr(const CaptionAmrSet& set, const RelationWhitelist& whitelist,
                       const Lexicon& lexicon) {
    if (set.graphs.empty()) throw std::invalid_argument("caption set must be nonempty");

    CaptionAmrSet canon{set.image_id, {}};
    canon.graphs.reserve(set.graphs.size());
    for (const AmrGraph& g : set.graphs) canon.graphs.push_back(canonicalize_edges(g));

    MergedGraph merged = merge_nodes(canon);
    merge_edges(merged, canon, whitelist);
    MergedGraph component = largest_component(merged);
    std::vector<Refinement> log = refine_nodes(component, lexicon);
    AmrGraph graph = to_amr_graph(component);
    return MetaAmr{std::move(graph), std::move(log), std::move(component)};
}

}  // namespace amrforge
