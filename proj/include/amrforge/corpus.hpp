#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace amrforge {

struct CorpusError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One image's row in a JSONL corpus. PENMAN is kept as text here; parsing
// happens at the point of use so a corpus with one broken graph can still
// be streamed and reported record by record.
struct CorpusRecord {
    std::string image_id;
    std::vector<std::string> captions;  // optional
    std::vector<std::string> amrs;      // caption-level PENMAN strings
    std::string predicted_amr;          // optional; empty means absent
    std::string meta_amr;               // optional; merge output
    std::vector<std::pair<std::string, std::string>> refinement_log;  // (from, to)

    friend bool operator==(const CorpusRecord&, const CorpusRecord&) = default;
};

std::string record_to_jsonl(const CorpusRecord& record);
CorpusRecord record_from_jsonl(const std::string& line, std::size_t line_number);

// Streams records in file order; `fn` receives the 1-based line number.
// Blank lines are skipped. Malformed JSON throws CorpusError.
void for_each_record(std::istream& in,
                     const std::function<void(CorpusRecord&&, std::size_t)>& fn);

// Whole-file convenience readers; enforce image_id uniqueness.
std::vector<CorpusRecord> read_corpus(std::istream& in);
std::vector<CorpusRecord> read_corpus_file(const std::filesystem::path& path);

void write_corpus(std::ostream& out, const std::vector<CorpusRecord>& records);
void write_corpus_file(const std::filesystem::path& path,
                       const std::vector<CorpusRecord>& records);

// Karpathy-style split list: one image id per line, "#" comments.
std::vector<std::string> read_split_list(const std::filesystem::path& path);

}  // namespace amrforge
