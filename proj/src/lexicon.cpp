#include "amrforge/lexicon.hpp"

#include <fstream>
#include <istream>
#include <sstream>

namespace amrforge {

const std::vector<CategoryInfo>& category_taxonomy() {
    static const std::vector<CategoryInfo> taxonomy{
        {"Artifact", CategoryGroup::Entity},
        {"Part", CategoryGroup::Entity},
        {"Location", CategoryGroup::Entity},
        {"Person", CategoryGroup::Entity},
        {"Flora/Nature", CategoryGroup::Entity},
        {"Clothing", CategoryGroup::Entity},
        {"Food", CategoryGroup::Entity},
        {"Animal", CategoryGroup::Entity},
        {"Vehicle", CategoryGroup::Entity},
        {"Furniture", CategoryGroup::Entity},
        {"Structure", CategoryGroup::Entity},
        {"Building", CategoryGroup::Entity},
        {"Geometric", CategoryGroup::Relation},
        {"Possessive", CategoryGroup::Relation},
        {"Semantic", CategoryGroup::Relation},
        {"Attribute Color", CategoryGroup::Relation},
        {"Attribute", CategoryGroup::Relation},
        {"AMR specific", CategoryGroup::Relation},
        {"Quantifier", CategoryGroup::Relation},
        {"Event", CategoryGroup::Relation},
        {"Misc", CategoryGroup::Relation},
    };
    return taxonomy;
}

std::optional<CategoryGroup> category_group(std::string_view label) {
    for (const auto& info : category_taxonomy())
        if (info.label == label) return info.group;
    return std::nullopt;
}

Lexicon Lexicon::load(const std::filesystem::path& path, std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw LexiconError("cannot open lexicon file: " + path.string());
    try {
        return parse(in, warnings);
    } catch (const LexiconError& e) {
        throw LexiconError(path.string() + ": " + e.what());
    }
}

Lexicon Lexicon::parse(std::istream& in, std::vector<std::string>* warnings) {
    Lexicon lex;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size())
            throw LexiconError("line " + std::to_string(lineno) +
                               ": expected `concept<TAB>hypernym` or `concept<TAB>CAT:<label>`");
        std::string concept_name = line.substr(0, tab);
        std::string value = line.substr(tab + 1);
        bool is_category = value.starts_with("CAT:");
        bool duplicate = is_category ? (lex.entity_categories_.count(concept_name) ||
                                        lex.relation_categories_.count(concept_name)) != 0
                                     : lex.hypernyms_.count(concept_name) != 0;
        if (duplicate && warnings)
            warnings->push_back("line " + std::to_string(lineno) + ": duplicate entry for '" +
                                concept_name + "' overrides the earlier one");
        if (is_category) {
            std::string label = value.substr(4);
            if (!category_group(label))
                throw LexiconError("line " + std::to_string(lineno) + ": unknown category label '" +
                                   label + "'");
            lex.set_category(concept_name, label);
        } else {
            lex.set_hypernym(concept_name, value);
        }
    }
    lex.validate();
    return lex;
}

void Lexicon::set_hypernym(const std::string& concept_name, const std::string& hypernym) {
    hypernyms_[concept_name] = hypernym;
}

// Hypernym and category are independent tables; a concept may carry both.
// Within the category table the label's group can change, so both group
// maps are cleared before the new assignment.
void Lexicon::set_category(const std::string& concept_name, const std::string& label) {
    auto group = category_group(label);
    if (!group) throw LexiconError("unknown category label '" + label + "'");
    entity_categories_.erase(concept_name);
    relation_categories_.erase(concept_name);
    if (*group == CategoryGroup::Entity)
        entity_categories_[concept_name] = label;
    else
        relation_categories_[concept_name] = label;
}

void Lexicon::validate() const {
    for (const auto& [start, first] : hypernyms_) {
        std::string current = first;
        std::size_t steps = 0;
        while (true) {
            if (current == start)
                throw LexiconError("hypernym cycle through '" + start + "'");
            auto it = hypernyms_.find(current);
            if (it == hypernyms_.end()) break;
            current = it->second;
            if (++steps > hypernyms_.size())
                throw LexiconError("hypernym cycle through '" + start + "'");
        }
    }
}

std::optional<std::string> Lexicon::hypernym(const std::string& concept_name) const {
    auto it = hypernyms_.find(concept_name);
    if (it == hypernyms_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::string> Lexicon::category(const std::string& concept_name) const {
    if (auto it = entity_categories_.find(concept_name); it != entity_categories_.end())
        return it->second;
    if (auto it = relation_categories_.find(concept_name); it != relation_categories_.end())
        return it->second;
    return std::nullopt;
}

std::optional<CategoryGroup> Lexicon::group_of(const std::string& concept_name) const {
    if (entity_categories_.count(concept_name)) return CategoryGroup::Entity;
    if (relation_categories_.count(concept_name)) return CategoryGroup::Relation;
    return std::nullopt;
}

}  // namespace amrforge
