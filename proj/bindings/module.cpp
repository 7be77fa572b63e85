#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "amrforge/graph.hpp"
#include "amrforge/lexicon.hpp"
#include "amrforge/linearize.hpp"
#include "amrforge/merge.hpp"
#include "amrforge/metrics.hpp"
#include "amrforge/penman.hpp"

namespace py = pybind11;
using namespace amrforge;

namespace {

py::dict smatch_dict(const SmatchResult& r) {
    py::dict out;
    out["precision"] = r.precision;
    out["recall"] = r.recall;
    out["f1"] = r.f1;
    out["matched"] = r.matched;
    out["pred_triples"] = r.pred_triples;
    out["gold_triples"] = r.gold_triples;
    out["mapping"] = r.mapping.map;
    return out;
}

py::dict sembleu_dict(const SembleuResult& r) {
    py::dict out;
    out["score"] = r.score;
    out["precisions"] = r.precisions;
    out["brevity_penalty"] = r.brevity_penalty;
    out["pred_ngram_total"] = r.pred_ngram_total;
    out["ref_ngram_total"] = r.ref_ngram_total;
    return out;
}

Lexicon lexicon_from_dicts(const std::map<std::string, std::string>& hypernyms,
                           const std::map<std::string, std::string>& categories) {
    Lexicon lex;
    for (const auto& [concept_name, hypernym] : hypernyms) lex.set_hypernym(concept_name, hypernym);
    for (const auto& [concept_name, label] : categories) lex.set_category(concept_name, label);
    lex.validate();
    return lex;
}

}  // namespace

PYBIND11_MODULE(_amrforge, m) {
    m.doc() = "AMR graphs: PENMAN parsing, linearization, meta-AMR merging, smatch/sembleu";

    py::class_<AmrGraph>(m, "AmrGraph")
        .def_property_readonly("root", [](const AmrGraph& g) { return g.root(); })
        .def_property_readonly("concepts", [](const AmrGraph& g) { return g.concepts(); })
        .def_property_readonly("edges",
                               [](const AmrGraph& g) {
                                   std::vector<std::tuple<std::string, std::string, std::string>> out;
                                   for (const Edge& e : g.edges()) out.emplace_back(e.source, e.role, e.target);
                                   return out;
                               })
        .def_property_readonly("attributes",
                               [](const AmrGraph& g) {
                                   std::vector<std::tuple<std::string, std::string, std::string>> out;
                                   for (const Attribute& a : g.attributes()) out.emplace_back(a.source, a.role, a.value);
                                   return out;
                               })
        .def("__len__", [](const AmrGraph& g) { return g.variable_count(); })
        .def("__repr__", [](const AmrGraph& g) { return serialize_penman(g); });

    m.def("parse", &parse_penman, py::arg("text"), "Parse one PENMAN graph");
    m.def("serialize", &serialize_penman, py::arg("graph"), "Serialize a graph to PENMAN");
    m.def("linearize", &linearize, py::arg("graph"), "Graph to token sequence");
    m.def(
        "delinearize",
        [](const std::vector<std::string>& tokens) {
            DelinearizeResult result = delinearize(tokens);
            if (!result.ok()) throw std::invalid_argument(result.error);
            return py::make_tuple(*result.graph, result.repairs);
        },
        py::arg("tokens"), "Token sequence back to a graph; returns (graph, repairs)");

    m.def(
        "smatch",
        [](const AmrGraph& a, const AmrGraph& b, int restarts, std::uint64_t seed) {
            return smatch_dict(smatch(a, b, restarts, seed));
        },
        py::arg("a"), py::arg("b"), py::arg("restarts") = 4, py::arg("seed") = 0);
    m.def("smatch_oracle", [](const AmrGraph& a, const AmrGraph& b) {
        return smatch_dict(smatch_oracle(a, b));
    });
    m.def(
        "sembleu",
        [](const AmrGraph& pred, const AmrGraph& ref, int max_k) {
            return sembleu_dict(sembleu(pred, ref, max_k));
        },
        py::arg("pred"), py::arg("ref"), py::arg("max_k") = 2);
    m.def(
        "extract_ngrams",
        [](const AmrGraph& g, int k) {
            py::dict out;
            for (const auto& [gram, count] : extract_ngrams(g, k)) {
                py::tuple key(gram.size());
                for (std::size_t i = 0; i < gram.size(); ++i) key[i] = gram[i];
                out[key] = count;
            }
            return out;
        },
        py::arg("graph"), py::arg("k"));

    m.def(
        "build_meta_amr",
        [](const std::vector<std::string>& amrs, const std::vector<std::string>& whitelist,
           const std::map<std::string, std::string>& hypernyms,
           const std::map<std::string, std::string>& categories) {
            CaptionAmrSet set{"py", {}};
            for (const std::string& text : amrs) set.graphs.push_back(parse_penman(text));
            RelationWhitelist wl =
                whitelist.empty() ? RelationWhitelist::defaults() : RelationWhitelist(whitelist);
            MetaAmr meta = build_meta_amr(set, wl, lexicon_from_dicts(hypernyms, categories));
            py::dict out;
            out["graph"] = meta.graph;
            out["meta_amr"] = serialize_penman(meta.graph);
            std::vector<std::pair<std::string, std::string>> log;
            for (const Refinement& r : meta.refinement_log) log.emplace_back(r.original, r.hypernym);
            out["refinement_log"] = log;
            return out;
        },
        py::arg("amrs"), py::arg("whitelist") = std::vector<std::string>{},
        py::arg("hypernyms") = std::map<std::string, std::string>{},
        py::arg("categories") = std::map<std::string, std::string>{},
        "Merge caption AMRs into one meta-AMR");
}
