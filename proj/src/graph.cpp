#include "amrforge/graph.hpp"

#include <algorithm>
#include <queue>
#include <unordered_map>
#include <unordered_set>

namespace amrforge {

namespace {

bool valid_role(std::string_view role) {
    return role.size() >= 2 && role.front() == ':';
}

}  // namespace

AmrGraph::AmrGraph(std::string root, std::map<std::string, std::string> concepts,
                   std::vector<Edge> edges, std::vector<Attribute> attributes)
    : root_(std::move(root)),
      concepts_(std::move(concepts)),
      edges_(std::move(edges)),
      attributes_(std::move(attributes)) {
    if (concepts_.empty()) throw GraphError("graph has no variables");
    for (const auto& [var, concept_name] : concepts_) {
        if (var.empty()) throw GraphError("empty variable name");
        if (concept_name.empty()) throw GraphError("variable '" + var + "' has an empty concept");
    }
    if (!concepts_.count(root_)) throw GraphError("root '" + root_ + "' is not a variable of the graph");
    for (const auto& e : edges_) {
        if (!concepts_.count(e.source)) throw GraphError("edge source '" + e.source + "' is not a variable");
        if (!concepts_.count(e.target)) throw GraphError("edge target '" + e.target + "' is not a variable");
        if (!valid_role(e.role)) throw GraphError("bad role label '" + e.role + "'");
    }
    for (const auto& a : attributes_) {
        if (!concepts_.count(a.source)) throw GraphError("attribute source '" + a.source + "' is not a variable");
        if (!valid_role(a.role)) throw GraphError("bad role label '" + a.role + "'");
    }

    // PENMAN well-formedness: connected when edges are read undirected.
    std::unordered_map<std::string, std::vector<const Edge*>> adj;
    for (const auto& e : edges_) {
        adj[e.source].push_back(&e);
        adj[e.target].push_back(&e);
    }
    std::unordered_set<std::string> seen{root_};
    std::queue<std::string> frontier;
    frontier.push(root_);
    while (!frontier.empty()) {
        std::string v = std::move(frontier.front());
        frontier.pop();
        for (const Edge* e : adj[v]) {
            for (const std::string& next : {e->source, e->target}) {
                if (seen.insert(next).second) frontier.push(next);
            }
        }
    }
    for (const auto& [var, concept_name] : concepts_) {
        if (!seen.count(var))
            throw GraphError("variable '" + var + "' is unreachable from the root");
    }
}

const std::string& AmrGraph::concept_of(const std::string& var) const {
    auto it = concepts_.find(var);
    if (it == concepts_.end()) throw GraphError("unknown variable '" + var + "'");
    return it->second;
}

std::vector<std::string> AmrGraph::variables() const {
    std::vector<std::string> out;
    out.reserve(concepts_.size());
    for (const auto& [var, concept_name] : concepts_) out.push_back(var);
    return out;
}

const std::vector<std::string>& inverse_role_exceptions() {
    static const std::vector<std::string> table{
        ":consist-of",
        ":prep-out-of",
        ":prep-on-behalf-of",
    };
    return table;
}

bool is_inverse_role(std::string_view role) {
    if (role.size() < 5 || !role.ends_with("-of")) return false;
    const auto& exceptions = inverse_role_exceptions();
    return std::find(exceptions.begin(), exceptions.end(), role) == exceptions.end();
}

std::string canonical_role(std::string_view role) {
    while (is_inverse_role(role)) role.remove_suffix(3);
    return std::string(role);
}

std::string inverse_role(std::string_view role) {
    if (is_inverse_role(role)) {
        role.remove_suffix(3);
        return std::string(role);
    }
    return std::string(role) + "-of";
}

bool is_predicate_concept(std::string_view concept_name) {
    // lemma-NN with a two-digit sense suffix, lowercase lemma.
    if (concept_name.size() < 4) return false;
    auto dash = concept_name.size() - 3;
    if (concept_name[dash] != '-') return false;
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    if (!digit(concept_name[dash + 1]) || !digit(concept_name[dash + 2])) return false;
    for (std::size_t i = 0; i < dash; ++i) {
        char c = concept_name[i];
        if (!((c >= 'a' && c <= 'z') || digit(c) || c == '-')) return false;
    }
    return true;
}

std::vector<Triple> triples(const AmrGraph& g) {
    std::vector<Triple> out;
    out.reserve(g.concepts().size() + g.edges().size() + g.attributes().size() + 1);
    for (const auto& [var, concept_name] : g.concepts())
        out.push_back({var, "instance", concept_name, TripleKind::Instance});
    for (const auto& e : g.edges()) {
        if (is_inverse_role(e.role))
            out.push_back({e.target, canonical_role(e.role), e.source, TripleKind::Relation});
        else
            out.push_back({e.source, e.role, e.target, TripleKind::Relation});
    }
    for (const auto& a : g.attributes())
        out.push_back({a.source, a.role, a.value, TripleKind::Attribute});
    out.push_back({g.root(), ":TOP", g.concept_of(g.root()), TripleKind::Top});
    return out;
}

AmrGraph canonicalize_edges(const AmrGraph& g) {
    std::vector<Edge> edges;
    edges.reserve(g.edges().size());
    for (const auto& e : g.edges()) {
        if (is_inverse_role(e.role))
            edges.push_back({e.target, canonical_role(e.role), e.source});
        else
            edges.push_back(e);
    }
    return AmrGraph(g.root(), g.concepts(), std::move(edges), g.attributes());
}

namespace {

AmrGraph rename_variables(const AmrGraph& g,
                          const std::unordered_map<std::string, std::string>& names) {
    std::map<std::string, std::string> concepts;
    for (const auto& [var, concept_name] : g.concepts()) concepts[names.at(var)] = concept_name;
    std::vector<Edge> edges;
    edges.reserve(g.edges().size());
    for (const auto& e : g.edges()) edges.push_back({names.at(e.source), e.role, names.at(e.target)});
    std::vector<Attribute> attrs;
    attrs.reserve(g.attributes().size());
    for (const auto& a : g.attributes()) attrs.push_back({names.at(a.source), a.role, a.value});
    return AmrGraph(names.at(g.root()), std::move(concepts), std::move(edges), std::move(attrs));
}

// First-visit order of the deterministic emit traversal: at each node walk
// the incident edges in list order, expanding the far endpoint of any edge
// not yet consumed. Mirrors the PENMAN serializer's spanning walk.
void visit_order(const AmrGraph& g, const std::string& var,
                 const std::unordered_map<std::string, std::vector<std::size_t>>& incident,
                 std::vector<bool>& consumed, std::unordered_set<std::string>& seen,
                 std::vector<std::string>& order) {
    seen.insert(var);
    order.push_back(var);
    auto it = incident.find(var);
    if (it == incident.end()) return;
    for (std::size_t idx : it->second) {
        if (consumed[idx]) continue;
        consumed[idx] = true;
        const Edge& e = g.edges()[idx];
        const std::string& far = (e.source == var) ? e.target : e.source;
        if (!seen.count(far)) visit_order(g, far, incident, consumed, seen, order);
    }
}

}  // namespace

AmrGraph canonical_form(const AmrGraph& g) {
    std::unordered_map<std::string, std::vector<std::size_t>> incident;
    for (std::size_t i = 0; i < g.edges().size(); ++i) {
        incident[g.edges()[i].source].push_back(i);
        if (g.edges()[i].target != g.edges()[i].source) incident[g.edges()[i].target].push_back(i);
    }
    std::vector<bool> consumed(g.edges().size(), false);
    std::unordered_set<std::string> seen;
    std::vector<std::string> order;
    visit_order(g, g.root(), incident, consumed, seen, order);

    std::unordered_map<std::string, std::string> names;
    for (std::size_t i = 0; i < order.size(); ++i) names[order[i]] = "v" + std::to_string(i);
    return rename_variables(g, names);
}

AmrGraph prefix_variables(const AmrGraph& g, const std::string& prefix) {
    std::unordered_map<std::string, std::string> names;
    for (const auto& [var, concept_name] : g.concepts()) names[var] = prefix + var;
    return rename_variables(g, names);
}

bool same_canonical_triples(const AmrGraph& a, const AmrGraph& b) {
    auto ta = triples(canonical_form(a));
    auto tb = triples(canonical_form(b));
    std::sort(ta.begin(), ta.end());
    std::sort(tb.begin(), tb.end());
    return ta == tb;
}

}  // namespace amrforge
