#include "amrforge/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "amrforge/rng.hpp"

namespace amrforge {

namespace {

struct Interner {
    std::unordered_map<std::string, int> ids;

    int id(const std::string& s) {
        auto [it, inserted] = ids.emplace(s, static_cast<int>(ids.size()));
        return it->second;
    }
};

constexpr int kFieldBits = 21;
constexpr std::uint64_t kFieldMask = (1ull << kFieldBits) - 1;

std::uint64_t pack2(int a, int b) {
    return (static_cast<std::uint64_t>(a) << kFieldBits) | (static_cast<std::uint64_t>(b) & kFieldMask);
}

std::uint64_t pack3(int a, int b, int c) {
    return (pack2(a, b) << kFieldBits) | (static_cast<std::uint64_t>(c) & kFieldMask);
}

// One graph flattened to integer ids over shared interners.
struct Side {
    std::vector<std::string> vars;  // sorted
    std::unordered_map<std::string, int> index;
    std::vector<int> concept_id;

    struct Rel {
        int role, src, tgt;
    };
    std::vector<Rel> rels;

    struct Attr {
        int src, payload;  // payload interns (role, value) jointly
    };
    std::vector<Attr> attrs;

    int total = 0;
};

Side build_side(const AmrGraph& g, Interner& concepts, Interner& roles, Interner& payloads) {
    Side s;
    s.vars = g.variables();
    s.concept_id.assign(s.vars.size(), -1);
    for (std::size_t i = 0; i < s.vars.size(); ++i) s.index.emplace(s.vars[i], static_cast<int>(i));
    for (const Triple& t : triples(g)) {
        switch (t.kind) {
            case TripleKind::Instance:
                s.concept_id[s.index.at(t.source)] = concepts.id(t.target);
                break;
            case TripleKind::Relation:
                s.rels.push_back({roles.id(t.role), s.index.at(t.source), s.index.at(t.target)});
                break;
            case TripleKind::Attribute:
            case TripleKind::Top:
                s.attrs.push_back({s.index.at(t.source), payloads.id(t.role + '\x1f' + t.target)});
                break;
        }
    }
    s.total = static_cast<int>(s.vars.size() + s.rels.size() + s.attrs.size());
    return s;
}

struct Matcher {
    Side a, b;
    std::unordered_map<std::uint64_t, int> b_rel_count;
    std::unordered_map<std::uint64_t, int> b_attr_count;

    Matcher(const AmrGraph& ga, const AmrGraph& gb) {
        Interner concepts, roles, payloads;
        a = build_side(ga, concepts, roles, payloads);
        b = build_side(gb, concepts, roles, payloads);
        if (a.vars.size() >= (1u << kFieldBits) || b.vars.size() >= (1u << kFieldBits)) {
            throw std::invalid_argument("graph too large for matching");
        }
        for (const auto& r : b.rels) b_rel_count[pack3(r.role, r.src, r.tgt)]++;
        for (const auto& at : b.attrs) b_attr_count[pack2(at.payload, at.src)]++;
    }

    // Matched triple count under a (partial, injective) mapping given as
    // a-index -> b-index or -1. Multi-edges respect multiset counts.
    int matched(const std::vector<int>& map) const {
        int m = 0;
        for (std::size_t i = 0; i < a.concept_id.size(); ++i) {
            int j = map[i];
            if (j >= 0 && a.concept_id[i] == b.concept_id[j]) ++m;
        }
        auto rel = b_rel_count;
        for (const auto& r : a.rels) {
            int s = map[r.src], t = map[r.tgt];
            if (s < 0 || t < 0) continue;
            auto it = rel.find(pack3(r.role, s, t));
            if (it != rel.end() && it->second > 0) {
                --it->second;
                ++m;
            }
        }
        auto attr = b_attr_count;
        for (const auto& at : a.attrs) {
            int s = map[at.src];
            if (s < 0) continue;
            auto it = attr.find(pack2(at.payload, s));
            if (it != attr.end() && it->second > 0) {
                --it->second;
                ++m;
            }
        }
        return m;
    }
};

struct Climb {
    int matched = 0;
    std::vector<int> map;
};

Climb hill_climb(const Matcher& M, std::vector<int> map) {
    const int n = static_cast<int>(M.a.vars.size());
    const int m = static_cast<int>(M.b.vars.size());
    std::vector<char> used(m, 0);
    for (int j : map) {
        if (j >= 0) used[j] = 1;
    }
    int cur = M.matched(map);
    for (;;) {
        int best_gain = 0;
        bool is_swap = false;
        int bi = -1, bj = -1;
        for (int i = 0; i < n; ++i) {
            int old = map[i];
            for (int j = -1; j < m; ++j) {
                if (j == old || (j >= 0 && used[j])) continue;
                map[i] = j;
                int gain = M.matched(map) - cur;
                map[i] = old;
                if (gain > best_gain) {
                    best_gain = gain;
                    is_swap = false;
                    bi = i;
                    bj = j;
                }
            }
        }
        for (int i = 0; i < n; ++i) {
            for (int k = i + 1; k < n; ++k) {
                if (map[i] == map[k]) continue;  // both unmapped
                std::swap(map[i], map[k]);
                int gain = M.matched(map) - cur;
                std::swap(map[i], map[k]);
                if (gain > best_gain) {
                    best_gain = gain;
                    is_swap = true;
                    bi = i;
                    bj = k;
                }
            }
        }
        if (best_gain <= 0) break;
        if (is_swap) {
            std::swap(map[bi], map[bj]);
        } else {
            if (map[bi] >= 0) used[map[bi]] = 0;
            map[bi] = bj;
            if (bj >= 0) used[bj] = 1;
        }
        cur += best_gain;
    }
    return {cur, std::move(map)};
}

std::vector<int> smart_seed(const Matcher& M) {
    const int n = static_cast<int>(M.a.vars.size());
    const int m = static_cast<int>(M.b.vars.size());
    std::vector<int> map(n, -1);
    std::vector<char> used(m, 0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
            if (!used[j] && M.b.concept_id[j] == M.a.concept_id[i]) {
                map[i] = j;
                used[j] = 1;
                break;
            }
        }
    }
    return map;
}

std::vector<int> random_seed_map(const Matcher& M, std::uint64_t seed) {
    const int n = static_cast<int>(M.a.vars.size());
    const int m = static_cast<int>(M.b.vars.size());
    std::mt19937_64 rng(seed);
    std::vector<int> aorder(n), border(m);
    std::iota(aorder.begin(), aorder.end(), 0);
    std::iota(border.begin(), border.end(), 0);
    std::shuffle(aorder.begin(), aorder.end(), rng);
    std::shuffle(border.begin(), border.end(), rng);
    std::vector<int> map(n, -1);
    for (int i = 0; i < std::min(n, m); ++i) map[aorder[i]] = border[i];
    return map;
}

SmatchResult make_result(const Matcher& M, const Climb& best) {
    SmatchResult r;
    r.matched = best.matched;
    r.pred_triples = M.a.total;
    r.gold_triples = M.b.total;
    r.precision = M.a.total > 0 ? static_cast<double>(best.matched) / M.a.total : 0.0;
    r.recall = M.b.total > 0 ? static_cast<double>(best.matched) / M.b.total : 0.0;
    r.f1 = r.precision + r.recall > 0.0
               ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
               : 0.0;
    for (std::size_t i = 0; i < best.map.size(); ++i) {
        if (best.map[i] >= 0) r.mapping.map[M.a.vars[i]] = M.b.vars[best.map[i]];
    }
    return r;
}

// Exhaustive enumeration state: assigns small-side variables 0..n-1 in
// order, consuming large-side triple counts incrementally.
struct OracleSearch {
    const Side& small;
    const Side& large;
    std::unordered_map<std::uint64_t, int> rel_remaining;
    std::unordered_map<std::uint64_t, int> attr_remaining;
    std::vector<std::vector<Side::Rel>> rels_at;   // resolved when var i is assigned
    std::vector<std::vector<Side::Attr>> attrs_at;
    std::vector<int> map;
    std::vector<char> used;
    int best = -1;
    std::vector<int> best_map;

    OracleSearch(const Side& s, const Side& l) : small(s), large(l) {
        for (const auto& r : large.rels) rel_remaining[pack3(r.role, r.src, r.tgt)]++;
        for (const auto& at : large.attrs) attr_remaining[pack2(at.payload, at.src)]++;
        rels_at.resize(small.vars.size());
        attrs_at.resize(small.vars.size());
        for (const auto& r : small.rels) rels_at[std::max(r.src, r.tgt)].push_back(r);
        for (const auto& at : small.attrs) attrs_at[at.src].push_back(at);
        map.assign(small.vars.size(), -1);
        used.assign(large.vars.size(), 0);
    }

    void run() { descend(0, 0); }

    void descend(std::size_t i, int total) {
        if (i == map.size()) {
            if (total > best) {
                best = total;
                best_map = map;
            }
            return;
        }
        for (int j = 0; j < static_cast<int>(used.size()); ++j) {
            if (used[j]) continue;
            used[j] = 1;
            map[i] = j;
            int gain = 0;
            std::vector<std::uint64_t> consumed_rel, consumed_attr;
            if (small.concept_id[i] == large.concept_id[j]) ++gain;
            for (const auto& r : rels_at[i]) {
                auto key = pack3(r.role, map[r.src], map[r.tgt]);
                auto it = rel_remaining.find(key);
                if (it != rel_remaining.end() && it->second > 0) {
                    --it->second;
                    consumed_rel.push_back(key);
                    ++gain;
                }
            }
            for (const auto& at : attrs_at[i]) {
                auto key = pack2(at.payload, j);
                auto it = attr_remaining.find(key);
                if (it != attr_remaining.end() && it->second > 0) {
                    --it->second;
                    consumed_attr.push_back(key);
                    ++gain;
                }
            }
            descend(i + 1, total + gain);
            for (auto key : consumed_rel) ++rel_remaining[key];
            for (auto key : consumed_attr) ++attr_remaining[key];
            map[i] = -1;
            used[j] = 0;
        }
    }
};

double checked_fraction(long num, long denom) {
    return denom > 0 ? static_cast<double>(num) / static_cast<double>(denom) : 0.0;
}

}  // namespace

SmatchResult smatch(const AmrGraph& a, const AmrGraph& b, int restarts, std::uint64_t seed) {
    if (restarts < 1) throw std::invalid_argument("smatch needs at least one restart");
    Matcher M(a, b);
    Climb best = hill_climb(M, smart_seed(M));
    for (int r = 1; r < restarts; ++r) {
        Climb c = hill_climb(M, random_seed_map(M, derive_seed(seed, static_cast<std::uint64_t>(r - 1))));
        if (c.matched > best.matched) best = std::move(c);
    }
    return make_result(M, best);
}

SmatchResult smatch_oracle(const AmrGraph& a, const AmrGraph& b) {
    Matcher M(a, b);
    const std::size_t na = M.a.vars.size();
    const std::size_t nb = M.b.vars.size();
    const std::size_t small_n = std::min(na, nb);
    const std::size_t large_n = std::max(na, nb);
    if (small_n > 8) {
        throw std::invalid_argument("smatch_oracle: both graphs have more than 8 variables");
    }
    double work = 1.0;
    for (std::size_t i = 0; i < small_n; ++i) work *= static_cast<double>(large_n - i);
    if (work > 2e7) {
        throw std::invalid_argument("smatch_oracle: mapping space too large to enumerate");
    }

    const bool swapped = na > nb;
    OracleSearch search(swapped ? M.b : M.a, swapped ? M.a : M.b);
    search.run();

    Climb best;
    best.matched = std::max(search.best, 0);
    best.map.assign(na, -1);
    for (std::size_t i = 0; i < search.best_map.size(); ++i) {
        int j = search.best_map[i];
        if (j < 0) continue;
        if (swapped) {
            best.map[j] = static_cast<int>(i);
        } else {
            best.map[i] = j;
        }
    }
    return make_result(M, best);
}

std::map<std::vector<std::string>, int> extract_ngrams(const AmrGraph& g, int k) {
    if (k != 1 && k != 2) throw std::invalid_argument("n-gram order must be 1 or 2");
    std::map<std::vector<std::string>, int> out;
    if (k == 1) {
        for (const auto& [var, concept_name] : g.concepts()) out[{concept_name}]++;
        return out;
    }
    AmrGraph canon = canonicalize_edges(g);
    for (const Edge& e : canon.edges()) {
        out[{canon.concept_of(e.source), e.role, canon.concept_of(e.target)}]++;
    }
    return out;
}

SembleuResult sembleu(const AmrGraph& pred, const AmrGraph& ref, int max_k) {
    if (max_k != 1 && max_k != 2) throw std::invalid_argument("sembleu order must be 1 or 2");
    SembleuResult r;
    r.precisions.resize(static_cast<std::size_t>(max_k), 0.0);
    double log_sum = 0.0;
    bool zero_precision = false;
    for (int k = 1; k <= max_k; ++k) {
        auto pgrams = extract_ngrams(pred, k);
        auto rgrams = extract_ngrams(ref, k);
        long ptotal = 0, rtotal = 0, matched = 0;
        for (const auto& [gram, count] : pgrams) {
            ptotal += count;
            auto it = rgrams.find(gram);
            if (it != rgrams.end()) matched += std::min(count, it->second);
        }
        for (const auto& [gram, count] : rgrams) rtotal += count;
        r.pred_ngram_total += ptotal;
        r.ref_ngram_total += rtotal;
        double precision = ptotal > 0 ? static_cast<double>(matched) / static_cast<double>(ptotal)
                                      : (rtotal == 0 ? 1.0 : 0.0);
        r.precisions[static_cast<std::size_t>(k - 1)] = precision;
        if (precision > 0.0) {
            log_sum += std::log(precision);
        } else {
            zero_precision = true;
        }
    }
    if (r.pred_ngram_total == 0) {
        r.empty_prediction = true;
        r.brevity_penalty = 0.0;
        r.score = 0.0;
        return r;
    }
    r.brevity_penalty = std::exp(std::min(
        0.0, 1.0 - static_cast<double>(r.ref_ngram_total) / static_cast<double>(r.pred_ngram_total)));
    r.score = zero_precision ? 0.0 : r.brevity_penalty * std::exp(log_sum / max_k);
    return r;
}

ReferenceMax score_against_references(
    const AmrGraph& pred, const std::vector<AmrGraph>& refs,
    const std::function<double(const AmrGraph&, const AmrGraph&)>& metric) {
    if (refs.empty()) throw std::invalid_argument("reference list must be nonempty");
    ReferenceMax out;
    out.per_reference.reserve(refs.size());
    for (std::size_t i = 0; i < refs.size(); ++i) {
        double score = metric(pred, refs[i]);
        out.per_reference.push_back(score);
        if (out.argmax < 0 || score > out.score) {
            out.score = score;
            out.argmax = static_cast<int>(i);
        }
    }
    return out;
}

std::map<std::string, CategoryPr> node_pr_by_category(
    const std::vector<std::set<std::string>>& pred_nodes,
    const std::vector<std::set<std::string>>& gold_nodes, const Lexicon& lexicon) {
    if (pred_nodes.size() != gold_nodes.size()) {
        throw std::invalid_argument("prediction and gold image lists are not aligned");
    }
    std::map<std::string, CategoryPr> out;
    for (std::size_t i = 0; i < pred_nodes.size(); ++i) {
        const auto& pred = pred_nodes[i];
        const auto& gold = gold_nodes[i];
        for (const std::string& concept_name : pred) {
            std::optional<std::string> cat = lexicon.category(concept_name);
            if (!cat) continue;
            if (gold.count(concept_name)) {
                out[*cat].tp++;
            } else {
                out[*cat].fp++;
            }
        }
        for (const std::string& concept_name : gold) {
            if (pred.count(concept_name)) continue;
            std::optional<std::string> cat = lexicon.category(concept_name);
            if (!cat) continue;
            out[*cat].fn++;
        }
    }
    for (auto& [cat, pr] : out) {
        pr.precision = checked_fraction(pr.tp, pr.tp + pr.fp);
        pr.recall = checked_fraction(pr.tp, pr.tp + pr.fn);
    }
    return out;
}

}  // namespace amrforge
