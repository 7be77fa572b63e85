#include "amrforge/corpus.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "json.hpp"

namespace amrforge {

namespace {

using nlohmann::json;

std::string location(std::size_t line_number) {
    return "line " + std::to_string(line_number) + ": ";
}

std::vector<std::string> string_list(const json& j, const char* field, std::size_t line_number) {
    if (!j.is_array()) throw CorpusError(location(line_number) + std::string(field) + " must be an array");
    std::vector<std::string> out;
    out.reserve(j.size());
    for (const auto& item : j) {
        if (!item.is_string()) {
            throw CorpusError(location(line_number) + std::string(field) + " must contain strings");
        }
        out.push_back(item.get<std::string>());
    }
    return out;
}

}  // namespace

std::string record_to_jsonl(const CorpusRecord& record) {
    json j;
    j["image_id"] = record.image_id;
    if (!record.captions.empty()) j["captions"] = record.captions;
    if (!record.amrs.empty()) j["amrs"] = record.amrs;
    if (!record.predicted_amr.empty()) j["predicted_amr"] = record.predicted_amr;
    if (!record.meta_amr.empty()) j["meta_amr"] = record.meta_amr;
    if (!record.refinement_log.empty()) {
        json log = json::array();
        for (const auto& [from, to] : record.refinement_log) {
            log.push_back(json{{"from", from}, {"to", to}});
        }
        j["refinement_log"] = std::move(log);
    }
    return j.dump();
}

CorpusRecord record_from_jsonl(const std::string& line, std::size_t line_number) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::parse_error& e) {
        throw CorpusError(location(line_number) + e.what());
    }
    if (!j.is_object()) throw CorpusError(location(line_number) + "record must be a JSON object");

    CorpusRecord record;
    if (!j.contains("image_id") || !j["image_id"].is_string()) {
        throw CorpusError(location(line_number) + "missing string field image_id");
    }
    record.image_id = j["image_id"].get<std::string>();
    if (record.image_id.empty()) throw CorpusError(location(line_number) + "image_id is empty");

    if (j.contains("captions")) record.captions = string_list(j["captions"], "captions", line_number);
    if (j.contains("amrs")) record.amrs = string_list(j["amrs"], "amrs", line_number);
    if (j.contains("predicted_amr")) {
        if (!j["predicted_amr"].is_string()) {
            throw CorpusError(location(line_number) + "predicted_amr must be a string");
        }
        record.predicted_amr = j["predicted_amr"].get<std::string>();
    }
    if (j.contains("meta_amr")) {
        if (!j["meta_amr"].is_string()) {
            throw CorpusError(location(line_number) + "meta_amr must be a string");
        }
        record.meta_amr = j["meta_amr"].get<std::string>();
    }
    if (j.contains("refinement_log")) {
        const json& log = j["refinement_log"];
        if (!log.is_array()) throw CorpusError(location(line_number) + "refinement_log must be an array");
        for (const auto& item : log) {
            if (!item.is_object() || !item.contains("from") || !item.contains("to") ||
                !item["from"].is_string() || !item["to"].is_string()) {
                throw CorpusError(location(line_number) +
                                  "refinement_log entries must be {from, to} objects");
            }
            record.refinement_log.emplace_back(item["from"].get<std::string>(),
                                               item["to"].get<std::string>());
        }
    }
    return record;
}

void for_each_record(std::istream& in,
                     const std::function<void(CorpusRecord&&, std::size_t)>& fn) {
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        fn(record_from_jsonl(line, line_number), line_number);
    }
}

std::vector<CorpusRecord> read_corpus(std::istream& in) {
    std::vector<CorpusRecord> records;
    std::unordered_set<std::string> seen;
    for_each_record(in, [&](CorpusRecord&& record, std::size_t line_number) {
        if (!seen.insert(record.image_id).second) {
            throw CorpusError(location(line_number) + "duplicate image_id " + record.image_id);
        }
        records.push_back(std::move(record));
    });
    return records;
}

std::vector<CorpusRecord> read_corpus_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw CorpusError("cannot open corpus file: " + path.string());
    return read_corpus(in);
}

void write_corpus(std::ostream& out, const std::vector<CorpusRecord>& records) {
    for (const CorpusRecord& record : records) out << record_to_jsonl(record) << '\n';
}

void write_corpus_file(const std::filesystem::path& path,
                       const std::vector<CorpusRecord>& records) {
    std::ofstream out(path);
    if (!out) throw CorpusError("cannot open output file: " + path.string());
    write_corpus(out, records);
}

std::vector<std::string> read_split_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw CorpusError("cannot open split file: " + path.string());
    std::vector<std::string> ids;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::size_t begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        std::size_t end = line.find_last_not_of(" \t\r");
        ids.push_back(line.substr(begin, end - begin + 1));
    }
    return ids;
}

}  // namespace amrforge
