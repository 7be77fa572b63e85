#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "amrforge/graph.hpp"
#include "amrforge/lexicon.hpp"

namespace amrforge {

// Partial injective map from variables of the first graph to variables
// of the second.
struct VariableMapping {
    std::map<std::string, std::string> map;
};

struct SmatchResult {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    int matched = 0;
    int pred_triples = 0;
    int gold_triples = 0;
    VariableMapping mapping;
};

// Greedy hill-climbing smatch. Start 0 is a deterministic greedy
// concept-match seed; starts 1..restarts-1 use independent RNG streams
// derived from `seed`, so a larger restart budget extends (never replays)
// a smaller one. Moves: reassign one variable, or swap the images of two;
// the best strictly improving move is taken until a local optimum.
SmatchResult smatch(const AmrGraph& a, const AmrGraph& b, int restarts = 4,
                    std::uint64_t seed = 0);

// Exhaustive search over injective mappings of the smaller variable set
// into the larger. Throws std::invalid_argument when min(|vars|) > 8 or
// the enumeration would exceed ~2e7 assignments.
SmatchResult smatch_oracle(const AmrGraph& a, const AmrGraph& b);

// k=1: concept label per node. k=2: (source concept, canonical role,
// target concept) per canonical edge. Other k: std::invalid_argument.
std::map<std::vector<std::string>, int> extract_ngrams(const AmrGraph& g, int k);

struct SembleuResult {
    double score = 0.0;
    std::vector<double> precisions;  // one clipped precision per order 1..max_k
    double brevity_penalty = 1.0;
    long pred_ngram_total = 0;  // summed over all orders
    long ref_ngram_total = 0;
    bool empty_prediction = false;
};

// Clipped n-gram precision per order, geometric mean with uniform
// weights, times brevity penalty exp(min(0, 1 - ref_total/pred_total))
// over the total n-gram counts. An order where the prediction has no
// n-grams scores 1 if the reference has none either, otherwise 0.
SembleuResult sembleu(const AmrGraph& pred, const AmrGraph& ref, int max_k = 2);

struct ReferenceMax {
    double score = 0.0;
    int argmax = -1;  // smallest index attaining the max
    std::vector<double> per_reference;
};

// Max of metric(pred, refs[i]) over a nonempty reference list.
ReferenceMax score_against_references(
    const AmrGraph& pred, const std::vector<AmrGraph>& refs,
    const std::function<double(const AmrGraph&, const AmrGraph&)>& metric);

struct CategoryPr {
    long tp = 0;
    long fp = 0;
    long fn = 0;
    double precision = 0.0;
    double recall = 0.0;
};

// Micro-averaged per-category node precision/recall: per-image TP/FP/FN
// over concept sets, restricted to concepts the lexicon categorizes,
// summed across images. Uncategorized concepts contribute nothing; only
// categories with at least one count appear in the result.
std::map<std::string, CategoryPr> node_pr_by_category(
    const std::vector<std::set<std::string>>& pred_nodes,
    const std::vector<std::set<std::string>>& gold_nodes, const Lexicon& lexicon);

}  // namespace amrforge
