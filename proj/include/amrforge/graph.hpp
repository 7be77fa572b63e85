#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace amrforge {

struct Edge {
    std::string source;
    std::string role;
    std::string target;

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct Attribute {
    std::string source;
    std::string role;
    std::string value;  // constant literal: number, quoted string, or symbol

    friend bool operator==(const Attribute&, const Attribute&) = default;
};

struct GraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Rooted, labeled, directed multigraph. Immutable after construction;
// the constructor rejects graphs that violate PENMAN well-formedness
// (unknown endpoints, unreachable variables, bad role labels).
class AmrGraph {
public:
    AmrGraph(std::string root, std::map<std::string, std::string> concepts,
             std::vector<Edge> edges, std::vector<Attribute> attributes);

    const std::string& root() const { return root_; }
    const std::map<std::string, std::string>& concepts() const { return concepts_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Attribute>& attributes() const { return attributes_; }

    const std::string& concept_of(const std::string& var) const;
    bool has_variable(const std::string& var) const { return concepts_.count(var) != 0; }
    std::size_t variable_count() const { return concepts_.size(); }

    std::vector<std::string> variables() const;

    friend bool operator==(const AmrGraph&, const AmrGraph&) = default;

private:
    std::string root_;
    std::map<std::string, std::string> concepts_;
    std::vector<Edge> edges_;
    std::vector<Attribute> attributes_;
};

// Roles whose "-of" ending is lexical, not an inverse marker.
const std::vector<std::string>& inverse_role_exceptions();

// True for roles like ":ARG0-of" that mark a flipped edge.
bool is_inverse_role(std::string_view role);

// Strips one inverse suffix; involutive (already-canonical roles pass through).
std::string canonical_role(std::string_view role);

// Flips a role: appends "-of" to a canonical role, strips it from an inverse one.
std::string inverse_role(std::string_view role);

// PropBank-style predicate: lemma plus a two-digit sense suffix ("stand-01").
bool is_predicate_concept(std::string_view concept_name);

enum class TripleKind { Instance, Relation, Attribute, Top };

struct Triple {
    std::string source;
    std::string role;
    std::string target;
    TripleKind kind = TripleKind::Instance;

    friend bool operator==(const Triple&, const Triple&) = default;
    friend auto operator<=>(const Triple&, const Triple&) = default;
};

// The comparison universe for graph matching: instance triples
// (var, "instance", concept), relation triples in canonical orientation,
// attribute triples, plus one synthetic (root, ":TOP", root concept).
// Relation roles are canonicalized so that a graph written with ":ARG0-of"
// yields the same triples as its flipped equivalent.
std::vector<Triple> triples(const AmrGraph& g);

// Flips every edge carrying a true inverse role and strips the suffix.
// Idempotent; exception-table roles are left alone.
AmrGraph canonicalize_edges(const AmrGraph& g);

// Renames every variable with a fixed prefix (collision-proofing when
// several independently parsed graphs meet in one pipeline).
AmrGraph prefix_variables(const AmrGraph& g, const std::string& prefix);

// Renames variables to v0, v1, ... in deterministic traversal (emit) order.
// Two graphs produced by the same traversal are isomorphic iff their
// canonical forms have equal triple multisets.
AmrGraph canonical_form(const AmrGraph& g);

// Triple-multiset equality after canonical renaming. Exact for graphs that
// share a deterministic serialization history (round-trip checks); use
// smatch_oracle for arbitrary pairs.
bool same_canonical_triples(const AmrGraph& a, const AmrGraph& b);

}  // namespace amrforge
