#include "amrforge/cli.hpp"

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "CLI11.hpp"
#include "json.hpp"

#include "amrforge/corpus.hpp"
#include "amrforge/graph.hpp"
#include "amrforge/lexicon.hpp"
#include "amrforge/linearize.hpp"
#include "amrforge/merge.hpp"
#include "amrforge/metrics.hpp"
#include "amrforge/penman.hpp"
#include "amrforge/rng.hpp"
#include "amrforge/stats.hpp"

namespace amrforge {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr std::size_t kChunkSize = 256;

// Runs fn over items by index; fn must not throw. jobs <= 1 stays on the
// calling thread. Results land at their item's index, so output order is
// independent of scheduling.
template <typename T, typename R, typename Fn>
std::vector<R> parallel_map(const std::vector<T>& items, int jobs, Fn fn) {
    std::vector<R> results(items.size());
    if (jobs <= 1 || items.size() <= 1) {
        for (std::size_t i = 0; i < items.size(); ++i) results[i] = fn(items[i]);
        return results;
    }
    std::atomic<std::size_t> next{0};
    std::size_t workers = std::min(static_cast<std::size_t>(jobs), items.size());
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= items.size()) return;
                results[i] = fn(items[i]);
            }
        });
    }
    for (auto& t : pool) t.join();
    return results;
}

struct StreamItem {
    std::size_t index = 0;        // running record index (post filtering)
    std::size_t line_number = 0;  // 1-based source line
    CorpusRecord record;
};

// Record-at-a-time corpus reader with image_id uniqueness and optional
// split filtering. Malformed JSONL throws CorpusError.
class RecordReader {
public:
    RecordReader(std::istream& in, const std::unordered_set<std::string>* split)
        : in_(in), split_(split) {}

    bool next(StreamItem& item) {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_number_;
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            CorpusRecord record = record_from_jsonl(line, line_number_);
            if (!seen_.insert(record.image_id).second) {
                throw CorpusError("line " + std::to_string(line_number_) +
                                  ": duplicate image_id " + record.image_id);
            }
            if (split_ != nullptr && split_->count(record.image_id) == 0) continue;
            item = StreamItem{index_++, line_number_, std::move(record)};
            return true;
        }
        return false;
    }

private:
    std::istream& in_;
    const std::unordered_set<std::string>* split_;
    std::size_t line_number_ = 0;
    std::size_t index_ = 0;
    std::unordered_set<std::string> seen_;
};

struct OutputTarget {
    std::ostream* stream;
    std::unique_ptr<std::ofstream> owned;
};

// Empty path means the default stream (stdout).
OutputTarget open_output(const std::string& path, std::ostream& fallback) {
    if (path.empty()) return {&fallback, nullptr};
    auto file = std::make_unique<std::ofstream>(path);
    if (!*file) throw CorpusError("cannot open output file: " + path);
    return {file.get(), std::move(file)};
}

std::unique_ptr<std::unordered_set<std::string>> load_split(const std::string& path) {
    if (path.empty()) return nullptr;
    auto ids = read_split_list(path);
    return std::make_unique<std::unordered_set<std::string>>(ids.begin(), ids.end());
}

Lexicon load_lexicon_or_default(const std::string& path, std::ostream& err) {
    std::string chosen = path;
    if (chosen.empty()) {
        if (const char* env = std::getenv("AMRFORGE_LEXICON"); env != nullptr && *env != '\0') {
            chosen = env;
        }
    }
    if (chosen.empty()) return Lexicon{};
    std::vector<std::string> warnings;
    Lexicon lex = Lexicon::load(chosen, &warnings);
    for (const std::string& w : warnings) err << "lexicon: " << w << '\n';
    return lex;
}

RelationWhitelist load_whitelist_or_default(const std::string& path) {
    if (path.empty()) return RelationWhitelist::defaults();
    return RelationWhitelist::load(path);
}

// Graphs selected by --field, each tagged with its position inside the
// record (always 0 for the single-graph fields).
std::vector<std::pair<int, const std::string*>> field_graphs(const CorpusRecord& record,
                                                             const std::string& field) {
    std::vector<std::pair<int, const std::string*>> out;
    if (field == "amrs") {
        for (std::size_t i = 0; i < record.amrs.size(); ++i) {
            out.emplace_back(static_cast<int>(i), &record.amrs[i]);
        }
    } else if (field == "meta_amr") {
        if (!record.meta_amr.empty()) out.emplace_back(0, &record.meta_amr);
    } else if (field == "predicted_amr") {
        if (!record.predicted_amr.empty()) out.emplace_back(0, &record.predicted_amr);
    }
    return out;
}

const std::string* prediction_text(const CorpusRecord& record) {
    if (!record.predicted_amr.empty()) return &record.predicted_amr;
    if (!record.meta_amr.empty()) return &record.meta_amr;
    if (record.amrs.size() == 1) return &record.amrs.front();
    return nullptr;
}

// ---- validate ----------------------------------------------------------

int cmd_validate(const std::string& input, std::ostream& out, std::ostream& err) {
    std::ifstream in(input);
    if (!in) {
        err << "cannot open corpus file: " << input << '\n';
        return 1;
    }
    std::size_t records = 0, graphs = 0, errors = 0;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        CorpusRecord record;
        try {
            record = record_from_jsonl(line, line_number);
        } catch (const CorpusError& e) {
            err << e.what() << '\n';
            ++errors;
            continue;
        }
        ++records;
        if (!seen.insert(record.image_id).second) {
            err << record.image_id << ": duplicate image_id (line " << line_number << ")\n";
            ++errors;
        }
        auto check = [&](const std::string& text, const std::string& label) {
            try {
                parse_penman(text);
                ++graphs;
            } catch (const ParseError& e) {
                err << record.image_id << ": " << label << ": " << e.what() << '\n';
                ++errors;
            }
        };
        std::size_t present = record.amrs.size() + (record.predicted_amr.empty() ? 0 : 1) +
                              (record.meta_amr.empty() ? 0 : 1);
        if (present == 0) {
            err << record.image_id << ": record has no graphs\n";
            ++errors;
            continue;
        }
        for (std::size_t i = 0; i < record.amrs.size(); ++i) {
            check(record.amrs[i], "amrs[" + std::to_string(i) + "]");
        }
        if (!record.predicted_amr.empty()) check(record.predicted_amr, "predicted_amr");
        if (!record.meta_amr.empty()) check(record.meta_amr, "meta_amr");
    }
    if (records == 0) {
        out << "empty corpus\n";
        return 1;
    }
    if (errors > 0) {
        out << errors << " error(s) in " << records << " record(s)\n";
        return 1;
    }
    out << graphs << " graphs OK\n";
    return 0;
}

// ---- merge -------------------------------------------------------------

struct MergeOptions {
    std::string input, output, whitelist, lexicon, split;
    bool strict = false;
    int jobs = 1;
};

int cmd_merge(const MergeOptions& opt, std::ostream& out, std::ostream& err) {
    RelationWhitelist whitelist = load_whitelist_or_default(opt.whitelist);
    Lexicon lexicon = load_lexicon_or_default(opt.lexicon, err);
    auto split = load_split(opt.split);

    std::ifstream in(opt.input);
    if (!in) {
        err << "cannot open corpus file: " << opt.input << '\n';
        return 1;
    }
    OutputTarget target = open_output(opt.output, out);

    struct Result {
        std::string line;   // output record on success
        std::string error;  // diagnostic otherwise
        std::string image_id;
    };
    auto process = [&](const StreamItem& item) -> Result {
        Result res;
        res.image_id = item.record.image_id;
        try {
            if (item.record.amrs.empty()) throw CorpusError("record has no amrs");
            CaptionAmrSet set{item.record.image_id, {}};
            set.graphs.reserve(item.record.amrs.size());
            for (const std::string& text : item.record.amrs) set.graphs.push_back(parse_penman(text));
            MetaAmr meta = build_meta_amr(set, whitelist, lexicon);
            CorpusRecord output_record;
            output_record.image_id = item.record.image_id;
            output_record.meta_amr = serialize_penman(meta.graph);
            for (const Refinement& r : meta.refinement_log) {
                output_record.refinement_log.emplace_back(r.original, r.hypernym);
            }
            res.line = record_to_jsonl(output_record);
        } catch (const std::exception& e) {
            res.error = e.what();
        }
        return res;
    };

    RecordReader reader(in, split.get());
    std::size_t failures = 0;
    std::vector<StreamItem> chunk;
    StreamItem item;
    bool aborted = false;
    auto flush = [&]() -> bool {
        auto results = parallel_map<StreamItem, Result>(chunk, opt.jobs, process);
        for (const Result& res : results) {
            if (res.error.empty()) {
                *target.stream << res.line << '\n';
                continue;
            }
            err << res.image_id << ": " << res.error << '\n';
            ++failures;
            if (opt.strict) return false;
        }
        chunk.clear();
        return true;
    };
    while (!aborted && reader.next(item)) {
        chunk.push_back(std::move(item));
        if (chunk.size() >= kChunkSize) aborted = !flush();
    }
    if (!aborted && !flush()) aborted = true;
    if (aborted) {
        err << "aborting on first failure (--strict)\n";
        return 1;
    }
    return failures > 0 ? 1 : 0;
}

// ---- score -------------------------------------------------------------

struct ScoreOptions {
    std::string pred, refs, output, split;
    std::uint64_t seed = 0;
    int restarts = 4;
    int jobs = 1;
    bool strict = false;
};

int cmd_score(const ScoreOptions& opt, std::ostream& out, std::ostream& err) {
    std::unordered_map<std::string, std::vector<AmrGraph>> references;
    std::vector<std::string> ref_order;
    {
        std::ifstream ref_in(opt.refs);
        if (!ref_in) {
            err << "cannot open reference corpus: " << opt.refs << '\n';
            return 1;
        }
        for (const CorpusRecord& record : read_corpus(ref_in)) {
            if (record.amrs.empty()) {
                err << record.image_id << ": reference record has no amrs\n";
                return 1;
            }
            std::vector<AmrGraph> graphs;
            graphs.reserve(record.amrs.size());
            for (const std::string& text : record.amrs) graphs.push_back(parse_penman(text));
            ref_order.push_back(record.image_id);
            references.emplace(record.image_id, std::move(graphs));
        }
    }

    std::ifstream in(opt.pred);
    if (!in) {
        err << "cannot open prediction corpus: " << opt.pred << '\n';
        return 1;
    }
    auto split = load_split(opt.split);
    OutputTarget target = open_output(opt.output, out);

    struct Result {
        std::string line;
        std::string error;
        std::string image_id;
        double smatch_f1 = 0.0, sembleu1 = 0.0, sembleu2 = 0.0;
    };
    auto process = [&](const StreamItem& item) -> Result {
        Result res;
        res.image_id = item.record.image_id;
        try {
            const std::string* text = prediction_text(item.record);
            if (text == nullptr) {
                throw CorpusError("record has no usable prediction "
                                  "(predicted_amr, meta_amr, or a single amrs entry)");
            }
            AmrGraph pred = parse_penman(*text);
            auto ref_it = references.find(item.record.image_id);
            if (ref_it == references.end()) throw CorpusError("no reference for this image_id");
            const std::vector<AmrGraph>& refs = ref_it->second;

            std::uint64_t record_seed = derive_seed(opt.seed, item.index);
            ReferenceMax sm = score_against_references(pred, refs, [&](const AmrGraph& p, const AmrGraph& r) {
                return smatch(p, r, opt.restarts, record_seed).f1;
            });
            ReferenceMax s1 = score_against_references(pred, refs, [](const AmrGraph& p, const AmrGraph& r) {
                return sembleu(p, r, 1).score;
            });
            ReferenceMax s2 = score_against_references(pred, refs, [](const AmrGraph& p, const AmrGraph& r) {
                return sembleu(p, r, 2).score;
            });
            res.smatch_f1 = sm.score;
            res.sembleu1 = s1.score;
            res.sembleu2 = s2.score;
            json j{{"image_id", item.record.image_id},
                   {"smatch", sm.score},
                   {"sembleu1", s1.score},
                   {"sembleu2", s2.score},
                   {"argmax_ref", sm.argmax}};
            res.line = j.dump();
        } catch (const std::exception& e) {
            res.error = e.what();
        }
        return res;
    };

    RecordReader reader(in, split.get());
    std::size_t scored = 0, failures = 0;
    double sum_smatch = 0.0, sum_s1 = 0.0, sum_s2 = 0.0;
    std::unordered_set<std::string> scored_ids;
    std::vector<StreamItem> chunk;
    StreamItem item;
    bool aborted = false;
    auto flush = [&]() -> bool {
        auto results = parallel_map<StreamItem, Result>(chunk, opt.jobs, process);
        for (const Result& res : results) {
            if (!res.error.empty()) {
                err << res.image_id << ": " << res.error << '\n';
                ++failures;
                if (opt.strict) return false;
                continue;
            }
            *target.stream << res.line << '\n';
            ++scored;
            scored_ids.insert(res.image_id);
            sum_smatch += res.smatch_f1;
            sum_s1 += res.sembleu1;
            sum_s2 += res.sembleu2;
        }
        chunk.clear();
        return true;
    };
    while (!aborted && reader.next(item)) {
        chunk.push_back(std::move(item));
        if (chunk.size() >= kChunkSize) aborted = !flush();
    }
    if (!aborted && !flush()) aborted = true;
    if (aborted) {
        err << "aborting on first failure (--strict)\n";
        return 1;
    }

    for (const std::string& id : ref_order) {
        if (scored_ids.count(id) == 0) err << id << ": reference without a scored prediction\n";
    }

    json summary{{"images", scored},
                 {"failures", failures},
                 {"mean_smatch", scored > 0 ? sum_smatch / static_cast<double>(scored) : 0.0},
                 {"mean_sembleu1", scored > 0 ? sum_s1 / static_cast<double>(scored) : 0.0},
                 {"mean_sembleu2", scored > 0 ? sum_s2 / static_cast<double>(scored) : 0.0}};
    // Keep the record stream pure JSONL: the summary goes to stdout when
    // records went to a file, to stderr otherwise.
    if (target.owned != nullptr) {
        out << summary.dump() << '\n';
    } else {
        err << summary.dump() << '\n';
    }
    return failures > 0 ? 1 : 0;
}

// ---- stats -------------------------------------------------------------

struct StatsOptions {
    std::string input, lexicon, whitelist, out_dir = ".", field = "amrs", split;
    int top_n = 0;
    bool compare = false;
};

int cmd_stats(const StatsOptions& opt, std::ostream& out, std::ostream& err) {
    Lexicon lexicon = load_lexicon_or_default(opt.lexicon, err);
    auto split = load_split(opt.split);

    std::ifstream in(opt.input);
    if (!in) {
        err << "cannot open corpus file: " << opt.input << '\n';
        return 1;
    }

    std::vector<AmrGraph> graphs;
    std::vector<CaptionAmrSet> merge_inputs;
    std::size_t skipped = 0;
    RecordReader reader(in, split.get());
    StreamItem item;
    while (reader.next(item)) {
        auto selected = field_graphs(item.record, opt.field);
        if (selected.empty()) {
            err << item.record.image_id << ": no graphs in field " << opt.field << '\n';
            ++skipped;
            continue;
        }
        CaptionAmrSet set{item.record.image_id, {}};
        for (const auto& [k, text] : selected) {
            AmrGraph g = parse_penman(*text);
            if (opt.compare) set.graphs.push_back(g);
            graphs.push_back(std::move(g));
        }
        if (opt.compare) merge_inputs.push_back(std::move(set));
    }
    if (graphs.empty()) {
        err << "empty corpus\n";
        return 1;
    }

    fs::path dir(opt.out_dir);
    fs::create_directories(dir);
    auto write_file = [&](const fs::path& path, const std::string& content) {
        std::ofstream file(path);
        if (!file) throw CorpusError("cannot open output file: " + path.string());
        file << content;
    };

    json summary;
    CorpusStats stats = categorize_corpus(graphs, lexicon);
    write_file(dir / "category_stats.csv", category_csv(stats));
    summary["graphs"] = stats.graph_count;
    summary["mean_nodes"] = stats.mean_nodes;
    summary["mean_edges"] = stats.mean_edges;
    summary["distinct_concepts"] = stats.distinct_concepts;
    summary["skipped_records"] = skipped;

    auto histogram = relation_histogram(graphs, opt.top_n);
    write_file(dir / "relation_histogram.csv", histogram_csv(histogram));
    summary["distinct_roles"] = histogram.size();

    if (opt.top_n > 0) {
        std::ostringstream wl;
        wl << "# top-" << opt.top_n << " canonical roles by frequency\n";
        for (const auto& [role, count] : histogram) wl << role << '\n';
        write_file(dir / "whitelist.txt", wl.str());
    }

    if (opt.compare) {
        RelationWhitelist whitelist = load_whitelist_or_default(opt.whitelist);
        std::vector<GraphShape> before, after;
        before.reserve(merge_inputs.size());
        after.reserve(merge_inputs.size());
        for (const CaptionAmrSet& set : merge_inputs) {
            CaptionAmrSet canon{set.image_id, {}};
            for (const AmrGraph& g : set.graphs) canon.graphs.push_back(canonicalize_edges(g));
            MergedGraph merged = merge_nodes(canon);
            merge_edges(merged, canon, whitelist);
            MergedGraph component = largest_component(merged);
            before.push_back(shape_of(component));
            refine_nodes(component, lexicon);
            after.push_back(shape_of(component));
        }
        ComplexitySummary cs = complexity_stats(before, after);
        json complexity{{"graphs", cs.graphs},
                        {"mean_nodes_before", cs.mean_nodes_before},
                        {"mean_edges_before", cs.mean_edges_before},
                        {"mean_nodes_after", cs.mean_nodes_after},
                        {"mean_edges_after", cs.mean_edges_after},
                        {"types_before", cs.types_before},
                        {"types_after", cs.types_after},
                        {"node_reduction", cs.node_reduction},
                        {"edge_reduction", cs.edge_reduction},
                        {"type_reduction", cs.type_reduction}};
        write_file(dir / "complexity.json", complexity.dump(2) + "\n");
        summary["complexity"] = complexity;
    }

    out << summary.dump() << '\n';
    return 0;
}

// ---- export / import ---------------------------------------------------

struct ExportOptions {
    std::string input, output, format, field = "amrs", split;
};

int cmd_export(const ExportOptions& opt, std::ostream& out, std::ostream& err) {
    std::ifstream in(opt.input);
    if (!in) {
        err << "cannot open corpus file: " << opt.input << '\n';
        return 1;
    }
    auto split = load_split(opt.split);
    OutputTarget target = open_output(opt.output, out);

    std::size_t failures = 0;
    std::vector<PenmanBlock> blocks;
    RecordReader reader(in, split.get());
    StreamItem item;
    while (reader.next(item)) {
        for (const auto& [k, text] : field_graphs(item.record, opt.field)) {
            std::optional<AmrGraph> g;
            try {
                g = parse_penman(*text);
            } catch (const ParseError& e) {
                err << item.record.image_id << "[" << k << "]: " << e.what() << '\n';
                ++failures;
                continue;
            }
            if (opt.format == "penman") {
                PenmanBlock block;
                block.comments.push_back("# ::id " + item.record.image_id);
                block.comments.push_back("# ::idx " + std::to_string(k));
                block.text = serialize_penman(*g);
                blocks.push_back(std::move(block));
            } else {
                *target.stream << item.record.image_id << '\t' << k << '\t'
                               << join_tokens(linearize(*g)) << '\n';
            }
        }
    }
    if (opt.format == "penman") write_penman_blocks(*target.stream, blocks);
    return failures > 0 ? 1 : 0;
}

struct ImportOptions {
    std::string input, output, format, field = "amrs";
};

// Comment tag reader: returns the value after "::<tag> " in any comment.
std::string comment_tag(const std::vector<std::string>& comments, const std::string& tag) {
    std::string needle = "::" + tag + " ";
    for (const std::string& comment : comments) {
        if (auto pos = comment.find(needle); pos != std::string::npos) {
            std::string value = comment.substr(pos + needle.size());
            if (auto end = value.find_last_not_of(" \t\r"); end != std::string::npos) {
                return value.substr(0, end + 1);
            }
            return value;
        }
    }
    return "";
}

int cmd_import(const ImportOptions& opt, std::ostream& out, std::ostream& err) {
    std::ifstream in(opt.input);
    if (!in) {
        err << "cannot open input file: " << opt.input << '\n';
        return 1;
    }
    OutputTarget target = open_output(opt.output, out);

    // image_id -> (idx -> penman), ids kept in first-seen order
    std::vector<std::string> order;
    std::unordered_map<std::string, std::map<int, std::string>> grouped;
    std::size_t failures = 0;
    auto add_graph = [&](const std::string& id, int idx, const AmrGraph& g,
                         const std::string& label) {
        if (id.empty()) {
            err << label << ": missing image id\n";
            ++failures;
            return;
        }
        auto [it, inserted] = grouped.try_emplace(id);
        if (inserted) order.push_back(id);
        if (!it->second.emplace(idx, serialize_penman(g)).second) {
            err << label << ": duplicate graph index " << idx << " for " << id << '\n';
            ++failures;
        }
    };

    if (opt.format == "penman") {
        for (const PenmanBlock& block : read_penman_blocks(in)) {
            std::string id = comment_tag(block.comments, "id");
            std::string idx_text = comment_tag(block.comments, "idx");
            int idx = 0;
            if (!idx_text.empty()) {
                try {
                    idx = std::stoi(idx_text);
                } catch (const std::exception&) {
                    err << id << ": bad ::idx value '" << idx_text << "'\n";
                    ++failures;
                    continue;
                }
            }
            try {
                add_graph(id, idx, parse_penman(block.text), id.empty() ? "<block>" : id);
            } catch (const ParseError& e) {
                err << (id.empty() ? "<block>" : id) << ": " << e.what() << '\n';
                ++failures;
            }
        }
    } else {
        std::string line;
        std::size_t line_number = 0;
        while (std::getline(in, line)) {
            ++line_number;
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            std::string label = "line " + std::to_string(line_number);
            auto tab1 = line.find('\t');
            auto tab2 = tab1 == std::string::npos ? std::string::npos : line.find('\t', tab1 + 1);
            if (tab2 == std::string::npos) {
                err << label << ": expected <image_id>\\t<idx>\\t<tokens>\n";
                ++failures;
                continue;
            }
            std::string id = line.substr(0, tab1);
            int idx = 0;
            try {
                idx = std::stoi(line.substr(tab1 + 1, tab2 - tab1 - 1));
            } catch (const std::exception&) {
                err << label << ": bad graph index\n";
                ++failures;
                continue;
            }
            auto tokens = split_tokens(line.substr(tab2 + 1));
            DelinearizeResult result = delinearize(tokens);
            for (const std::string& repair : result.repairs) {
                err << id << "[" << idx << "]: repaired: " << repair << '\n';
            }
            if (!result.ok()) {
                err << id << "[" << idx << "]: " << result.error << '\n';
                ++failures;
                continue;
            }
            add_graph(id, idx, *result.graph, label);
        }
    }

    for (const std::string& id : order) {
        CorpusRecord record;
        record.image_id = id;
        auto& by_idx = grouped.at(id);
        if (opt.field == "amrs") {
            for (auto& [idx, text] : by_idx) record.amrs.push_back(std::move(text));
        } else {
            if (by_idx.size() != 1) {
                err << id << ": field " << opt.field << " takes exactly one graph, got "
                    << by_idx.size() << '\n';
                ++failures;
                continue;
            }
            if (opt.field == "meta_amr") {
                record.meta_amr = std::move(by_idx.begin()->second);
            } else {
                record.predicted_amr = std::move(by_idx.begin()->second);
            }
        }
        *target.stream << record_to_jsonl(record) << '\n';
    }
    return failures > 0 ? 1 : 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"AMR corpus tool: validate, merge, score, analyze, export"};
    app.name("amrforge");
    app.require_subcommand(1);

    std::string input, output, whitelist, lexicon, split, field = "amrs", format;
    std::string pred, refs, out_dir = ".";
    std::uint64_t seed = 0;
    int restarts = 4, jobs = 1, top_n = 0;
    bool strict = false, compare = false;

    auto* validate = app.add_subcommand("validate", "Parse every graph in a JSONL corpus");
    validate->add_option("input", input, "corpus JSONL file")->required();

    auto* merge = app.add_subcommand("merge", "Build one meta-AMR per record");
    merge->add_option("input", input, "corpus JSONL file")->required();
    merge->add_option("-o,--output", output, "output JSONL file (default: stdout)");
    merge->add_option("--whitelist", whitelist, "relation whitelist file");
    merge->add_option("--lexicon", lexicon, "hypernym/category lexicon TSV");
    merge->add_option("--split", split, "image id list; keep only listed records");
    merge->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    merge->add_flag("--strict", strict, "abort on the first failing record");

    auto* score = app.add_subcommand("score", "Score predictions against references");
    score->add_option("pred", pred, "prediction corpus JSONL")->required();
    score->add_option("refs", refs, "reference corpus JSONL")->required();
    score->add_option("-o,--output", output, "per-image JSONL (default: stdout)");
    score->add_option("--seed", seed, "master RNG seed");
    score->add_option("--restarts", restarts, "smatch restarts")->check(CLI::PositiveNumber);
    score->add_option("--split", split, "image id list; keep only listed records");
    score->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    score->add_flag("--strict", strict, "abort on the first failing record");

    auto* stats = app.add_subcommand("stats", "Category, relation, and complexity analytics");
    stats->add_option("input", input, "corpus JSONL file")->required();
    stats->add_option("-o,--out-dir", out_dir, "directory for CSV/JSON outputs (default: .)");
    stats->add_option("--lexicon", lexicon, "hypernym/category lexicon TSV");
    stats->add_option("--whitelist", whitelist, "whitelist used by --compare");
    stats->add_option("--top-n", top_n, "histogram cutoff; also writes whitelist.txt")
        ->check(CLI::NonNegativeNumber);
    stats->add_option("--field", field, "which graphs to analyze")
        ->check(CLI::IsMember({"amrs", "meta_amr", "predicted_amr"}));
    stats->add_option("--split", split, "image id list; keep only listed records");
    stats->add_flag("--compare", compare, "emit before/after merge complexity");

    auto* exp = app.add_subcommand("export", "Write graphs as PENMAN blocks or token lines");
    exp->add_option("input", input, "corpus JSONL file")->required();
    exp->add_option("-o,--output", output, "output text file (default: stdout)");
    exp->add_option("--format", format, "penman | linearized")
        ->required()
        ->check(CLI::IsMember({"penman", "linearized"}));
    exp->add_option("--field", field, "which graphs to export")
        ->check(CLI::IsMember({"amrs", "meta_amr", "predicted_amr"}));
    exp->add_option("--split", split, "image id list; keep only listed records");

    auto* imp = app.add_subcommand("import", "Rebuild a JSONL corpus from an export");
    imp->add_option("input", input, "exported text file")->required();
    imp->add_option("-o,--output", output, "output JSONL file (default: stdout)");
    imp->add_option("--format", format, "penman | linearized")
        ->required()
        ->check(CLI::IsMember({"penman", "linearized"}));
    imp->add_option("--field", field, "corpus field to fill")
        ->check(CLI::IsMember({"amrs", "meta_amr", "predicted_amr"}));

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("amrforge");
    for (const std::string& arg : args) argv.push_back(arg.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::Success& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        if (*validate) return cmd_validate(input, out, err);
        if (*merge) {
            return cmd_merge({input, output, whitelist, lexicon, split, strict, jobs}, out, err);
        }
        if (*score) {
            return cmd_score({pred, refs, output, split, seed, restarts, jobs, strict}, out, err);
        }
        if (*stats) {
            return cmd_stats({input, lexicon, whitelist, out_dir, field, split, top_n, compare},
                             out, err);
        }
        if (*exp) return cmd_export({input, output, format, field, split}, out, err);
        if (*imp) return cmd_import({input, output, format, field}, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;  // unreachable while require_subcommand(1) holds
}

}  // namespace amrforge
