#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace amrforge {

enum class CategoryGroup { Entity, Relation };

struct CategoryInfo {
    std::string label;
    CategoryGroup group;
};

// The fixed category label set. Entities: Artifact .. Building; Relations:
// Geometric .. Misc. Lexicon entries must use one of these labels.
const std::vector<CategoryInfo>& category_taxonomy();
std::optional<CategoryGroup> category_group(std::string_view label);

struct LexiconError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat lexical lookup tables standing in for WordNet: one most-frequent
// hypernym per concept, plus entity/relation category assignments.
// Immutable once loaded; safe to share across workers.
class Lexicon {
public:
    Lexicon() = default;

    // TSV lines: `concept<TAB>hypernym` or `concept<TAB>CAT:<label>`;
    // "#" comments and blank lines skipped. Duplicate keys: last wins,
    // with a warning. Hypernym cycles and unknown labels are errors.
    static Lexicon load(const std::filesystem::path& path,
                        std::vector<std::string>* warnings = nullptr);
    static Lexicon parse(std::istream& in, std::vector<std::string>* warnings = nullptr);

    void set_hypernym(const std::string& concept_name, const std::string& hypernym);
    void set_category(const std::string& concept_name, const std::string& label);

    // Verifies hypernym-chain termination; called by load, available to
    // programmatic builders.
    void validate() const;

    std::optional<std::string> hypernym(const std::string& concept_name) const;
    std::optional<std::string> category(const std::string& concept_name) const;
    std::optional<CategoryGroup> group_of(const std::string& concept_name) const;

    const std::unordered_map<std::string, std::string>& hypernyms() const { return hypernyms_; }
    const std::unordered_map<std::string, std::string>& entity_categories() const {
        return entity_categories_;
    }
    const std::unordered_map<std::string, std::string>& relation_categories() const {
        return relation_categories_;
    }

    bool empty() const {
        return hypernyms_.empty() && entity_categories_.empty() && relation_categories_.empty();
    }

private:
    std::unordered_map<std::string, std::string> hypernyms_;
    std::unordered_map<std::string, std::string> entity_categories_;
    std::unordered_map<std::string, std::string> relation_categories_;
};

}  // namespace amrforge
