#include "amrforge/linearize.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace amrforge {

namespace {

class Linearizer {
public:
    explicit Linearizer(const AmrGraph& g) : g_(g), consumed_(g.edges().size(), false) {
        for (std::size_t i = 0; i < g.edges().size(); ++i) {
            incident_[g.edges()[i].source].push_back(i);
            if (g.edges()[i].target != g.edges()[i].source)
                incident_[g.edges()[i].target].push_back(i);
        }
    }

    std::vector<std::string> run() {
        emit_node(g_.root());
        return std::move(out_);
    }

private:
    std::string pointer(const std::string& var) {
        auto [it, inserted] = pointers_.try_emplace(var, pointers_.size());
        (void)inserted;
        return "<p" + std::to_string(it->second) + ">";
    }

    void emit_node(const std::string& var) {
        out_.push_back("(");
        out_.push_back(pointer(var));
        out_.push_back(g_.concept_of(var));
        for (const auto& a : g_.attributes()) {
            if (a.source != var) continue;
            out_.push_back(a.role);
            out_.push_back(a.value);
        }
        auto it = incident_.find(var);
        if (it != incident_.end()) {
            for (std::size_t idx : it->second) {
                if (consumed_[idx]) continue;
                consumed_[idx] = true;
                const Edge& e = g_.edges()[idx];
                bool forward = (e.source == var);
                const std::string& far = forward ? e.target : e.source;
                out_.push_back(forward ? e.role : inverse_role(e.role));
                if (pointers_.count(far))
                    out_.push_back(pointer(far));
                else
                    emit_node(far);
            }
        }
        out_.push_back(")");
    }

    const AmrGraph& g_;
    std::vector<bool> consumed_;
    std::unordered_map<std::string, std::vector<std::size_t>> incident_;
    std::unordered_map<std::string, std::size_t> pointers_;
    std::vector<std::string> out_;
};

bool is_pointer_token(std::string_view t) {
    if (t.size() < 4 || !t.starts_with("<p") || t.back() != '>') return false;
    for (std::size_t i = 2; i + 1 < t.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
}

bool is_role_token(std::string_view t) { return t.size() >= 2 && t.front() == ':'; }

class Delinearizer {
public:
    explicit Delinearizer(std::span<const std::string> tokens) : tokens_(tokens) {}

    DelinearizeResult run() {
        DelinearizeResult result;
        if (tokens_.empty()) {
            result.error = "empty token sequence";
            return result;
        }
        // Pointer introductions are resolved up front so that re-entrant
        // references may precede their introduction in the stream.
        for (std::size_t i = 0; i + 1 < tokens_.size(); ++i) {
            if (tokens_[i] == "(" && is_pointer_token(tokens_[i + 1])) {
                if (!vars_.try_emplace(tokens_[i + 1], "z" + std::to_string(vars_.size())).second) {
                    result.error = "pointer " + tokens_[i + 1] + " introduced twice";
                    return result;
                }
            }
        }
        try {
            std::string root = parse_node();
            if (pos_ < tokens_.size())
                repairs_.push_back("ignored " + std::to_string(tokens_.size() - pos_) +
                                   " token(s) after the balanced root");
            result.graph = AmrGraph(root, std::move(concepts_), std::move(edges_),
                                    std::move(attributes_));
        } catch (const std::runtime_error& e) {
            result.error = e.what();
        }
        result.repairs = std::move(repairs_);
        return result;
    }

private:
    const std::string* peek() const { return pos_ < tokens_.size() ? &tokens_[pos_] : nullptr; }

    std::string parse_node() {
        if (!peek() || *peek() != "(") throw std::runtime_error("no valid root: expected '('");
        ++pos_;
        const std::string* ptr = peek();
        if (!ptr || !is_pointer_token(*ptr))
            throw std::runtime_error("expected pointer token after '('");
        std::string var = vars_.at(*ptr);
        ++pos_;
        const std::string* concept_name = peek();
        if (!concept_name || *concept_name == "(" || *concept_name == ")" || is_role_token(*concept_name) ||
            is_pointer_token(*concept_name))
            throw std::runtime_error("node " + var + " is missing a concept");
        concepts_[var] = *concept_name;
        ++pos_;

        while (peek() && is_role_token(*peek())) {
            std::string role = *peek();
            ++pos_;
            const std::string* value = peek();
            if (!value || *value == ")") {
                repairs_.push_back("dropped dangling role " + role);
                continue;
            }
            if (*value == "(") {
                // Reserve the edge slot before descending so the edge list
                // stays in discovery order (the serializer's spanning walk).
                std::size_t slot = edges_.size();
                edges_.push_back({var, role, ""});
                edges_[slot].target = parse_node();
            } else if (is_pointer_token(*value)) {
                auto it = vars_.find(*value);
                if (it == vars_.end())
                    throw std::runtime_error("reference to unknown pointer " + *value);
                edges_.push_back({var, role, it->second});
                ++pos_;
            } else {
                attributes_.push_back({var, role, *value});
                ++pos_;
            }
        }
        if (!peek()) {
            repairs_.push_back("closed unbalanced '(' at end of input");
        } else if (*peek() == ")") {
            ++pos_;
        } else {
            throw std::runtime_error("unexpected token '" + *peek() + "'");
        }
        return var;
    }

    std::span<const std::string> tokens_;
    std::size_t pos_ = 0;
    std::unordered_map<std::string, std::string> vars_;  // pointer token -> variable
    std::map<std::string, std::string> concepts_;
    std::vector<Edge> edges_;
    std::vector<Attribute> attributes_;
    std::vector<std::string> repairs_;
};

}  // namespace

std::vector<std::string> linearize(const AmrGraph& g) { return Linearizer(g).run(); }

DelinearizeResult delinearize(std::span<const std::string> tokens) {
    return Delinearizer(tokens).run();
}

std::string join_tokens(std::span<const std::string> tokens) {
    std::string out;
    for (const auto& t : tokens) {
        if (!out.empty()) out += ' ';
        out += t;
    }
    return out;
}

std::vector<std::string> split_tokens(std::string_view line) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i >= line.size()) break;
        std::size_t start = i;
        if (line[i] == '"') {
            // quoted constants keep internal spaces; scan to the closing quote
            ++i;
            while (i < line.size() && line[i] != '"') {
                if (line[i] == '\\' && i + 1 < line.size()) ++i;
                ++i;
            }
            if (i < line.size()) ++i;
        }
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        out.emplace_back(line.substr(start, i - start));
    }
    return out;
}

}  // namespace amrforge
