#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "amrforge/graph.hpp"

namespace testutil {

using namespace amrforge;

inline const std::vector<std::string>& default_concepts() {
    static const std::vector<std::string> pool = {
        "giraffe", "dog",     "man",    "woman",   "field", "grass",  "tree",
        "rock",    "car",     "ball",   "tall",    "red",   "couple", "near",
        "stand-01", "walk-01", "eat-01", "hold-01", "see-01", "run-02",
    };
    return pool;
}

inline const std::vector<std::string>& default_roles() {
    static const std::vector<std::string> pool = {
        ":ARG0", ":ARG1", ":ARG2", ":mod", ":location", ":quant", ":op1", ":poss", ":manner",
    };
    return pool;
}

inline const std::vector<std::string>& default_values() {
    static const std::vector<std::string> pool = {
        "2", "3", "42", "-", "+", "\"red brick\"", "\"very tall\"",
    };
    return pool;
}

struct GenOptions {
    int min_nodes = 1;
    int max_nodes = 30;
    double reentrancy_rate = 0.25;
    double attribute_rate = 0.35;
    double inverse_rate = 0.2;  // store some edges in flipped orientation
    const std::vector<std::string>* concepts = nullptr;
    const std::vector<std::string>* roles = nullptr;
};

// Random connected multigraph: a spanning tree plus extra (re-entrant)
// edges, attributes, and a share of edges stored with inverse roles.
inline AmrGraph random_graph(std::mt19937_64& rng, const GenOptions& opt = {}) {
    const auto& concepts = opt.concepts != nullptr ? *opt.concepts : default_concepts();
    const auto& roles = opt.roles != nullptr ? *opt.roles : default_roles();
    auto pick = [&rng](const std::vector<std::string>& pool) {
        return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
    };
    auto chance = [&rng](double p) {
        return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
    };

    int n = std::uniform_int_distribution<int>(opt.min_nodes, opt.max_nodes)(rng);
    std::map<std::string, std::string> concept_of;
    std::vector<std::string> vars;
    for (int i = 0; i < n; ++i) {
        std::string var = "v" + std::to_string(i);
        vars.push_back(var);
        concept_of[var] = pick(concepts);
    }

    std::vector<Edge> edges;
    auto add_edge = [&](const std::string& src, const std::string& tgt) {
        std::string role = pick(roles);
        if (chance(opt.inverse_rate)) {
            edges.push_back({tgt, role + "-of", src});
        } else {
            edges.push_back({src, role, tgt});
        }
    };
    for (int i = 1; i < n; ++i) {
        int parent = std::uniform_int_distribution<int>(0, i - 1)(rng);
        add_edge(vars[parent], vars[i]);
    }
    for (int i = 0; i < n; ++i) {
        if (n >= 2 && chance(opt.reentrancy_rate)) {
            int a = std::uniform_int_distribution<int>(0, n - 1)(rng);
            int b = std::uniform_int_distribution<int>(0, n - 2)(rng);
            if (b >= a) ++b;
            add_edge(vars[a], vars[b]);
        }
    }

    std::vector<Attribute> attributes;
    for (int i = 0; i < n; ++i) {
        if (chance(opt.attribute_rate)) {
            attributes.push_back({vars[i], pick(roles), pick(default_values())});
        }
    }

    return AmrGraph(vars[0], std::move(concept_of), std::move(edges), std::move(attributes));
}

inline bool triple_sets_equal(const AmrGraph& a, const AmrGraph& b) {
    auto ta = triples(a);
    auto tb = triples(b);
    std::sort(ta.begin(), ta.end());
    std::sort(tb.begin(), tb.end());
    return ta == tb;
}

}  // namespace testutil
