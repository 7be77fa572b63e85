#include "amrforge/penman.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace amrforge {

namespace {

struct Token {
    enum Kind { Open, Close, Slash, Role, Atom, String, End } kind = End;
    std::string text;
    std::size_t line = 1;
    std::size_t column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        skip_space_and_comments();
        Token tok;
        tok.line = line_;
        tok.column = column_;
        if (pos_ >= text_.size()) return tok;  // End
        char c = text_[pos_];
        if (c == '(') return advance(tok, Token::Open, 1);
        if (c == ')') return advance(tok, Token::Close, 1);
        if (c == '/') return advance(tok, Token::Slash, 1);
        if (c == '"') return lex_string(tok);
        std::size_t start = pos_;
        while (pos_ < text_.size() && !strchr_token(text_[pos_])) bump();
        tok.text = std::string(text_.substr(start, pos_ - start));
        tok.kind = tok.text.front() == ':' ? Token::Role : Token::Atom;
        return tok;
    }

private:
    Token advance(Token tok, Token::Kind kind, std::size_t n) {
        tok.kind = kind;
        tok.text = std::string(text_.substr(pos_, n));
        for (std::size_t i = 0; i < n; ++i) bump();
        return tok;
    }

    Token lex_string(Token tok) {
        std::size_t start = pos_;
        bump();  // opening quote
        while (pos_ < text_.size() && text_[pos_] != '"') {
            if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) bump();
            bump();
        }
        if (pos_ >= text_.size()) throw ParseError(tok.line, tok.column, "unterminated string literal");
        bump();  // closing quote
        tok.kind = Token::String;
        tok.text = std::string(text_.substr(start, pos_ - start));
        return tok;
    }

    static bool strchr_token(char c) {
        return c == '(' || c == ')' || c == '/' || c == '"' || std::isspace(static_cast<unsigned char>(c));
    }

    void skip_space_and_comments() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#' && column_ == 1) {
                while (pos_ < text_.size() && text_[pos_] != '\n') bump();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                bump();
            } else {
                break;
            }
        }
    }

    void bump() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

struct RawValue {
    enum Kind { Node, AtomRef, StringConst } kind;
    std::size_t node_index = 0;  // for Node
    Token atom;                  // for AtomRef / StringConst
};

struct RawNode {
    Token var;
    Token concept_name;
    std::vector<std::pair<Token, RawValue>> children;  // (role, value)
};

class Parser {
public:
    explicit Parser(std::string_view text) : lexer_(text) { shift(); }

    AmrGraph parse() {
        if (current_.kind == Token::End) throw ParseError(1, 1, "empty input");
        std::size_t root = parse_node();
        if (current_.kind != Token::End)
            throw ParseError(current_.line, current_.column, "trailing content after graph");
        return resolve(root);
    }

private:
    void shift() { current_ = lexer_.next(); }

    Token expect(Token::Kind kind, const char* what) {
        if (current_.kind != kind)
            throw ParseError(current_.line, current_.column,
                             std::string("expected ") + what + ", got '" +
                                 (current_.kind == Token::End ? "<end>" : current_.text) + "'");
        Token tok = current_;
        shift();
        return tok;
    }

    std::size_t parse_node() {
        expect(Token::Open, "'('");
        Token var = expect(Token::Atom, "variable");
        expect(Token::Slash, "'/'");
        Token concept_name = expect(Token::Atom, "concept");

        nodes_.push_back(RawNode{var, concept_name, {}});
        std::size_t index = nodes_.size() - 1;
        if (!defined_.insert(var.text).second)
            throw ParseError(var.line, var.column,
                             "duplicate concept assignment for variable '" + var.text + "'");

        while (current_.kind == Token::Role) {
            Token role = current_;
            shift();
            RawValue value;
            if (current_.kind == Token::Open) {
                value.kind = RawValue::Node;
                value.node_index = parse_node();
            } else if (current_.kind == Token::Atom) {
                value.kind = RawValue::AtomRef;
                value.atom = current_;
                shift();
            } else if (current_.kind == Token::String) {
                value.kind = RawValue::StringConst;
                value.atom = current_;
                shift();
            } else {
                throw ParseError(current_.line, current_.column,
                                 "role '" + role.text + "' has no value");
            }
            nodes_[index].children.emplace_back(role, value);
        }
        expect(Token::Close, "')'");
        return index;
    }

    static bool is_number(std::string_view s) {
        std::size_t i = 0;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
        std::size_t digits = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
        if (digits == 0) return false;
        if (i < s.size() && s[i] == '.') {
            ++i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        }
        if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
            ++i;
            if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
            std::size_t exp = 0;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++exp;
            if (exp == 0) return false;
        }
        return i == s.size();
    }

    AmrGraph resolve(std::size_t root_index) {
        std::map<std::string, std::string> concepts;
        for (const auto& node : nodes_) concepts[node.var.text] = node.concept_name.text;

        std::vector<Edge> edges;
        std::vector<Attribute> attributes;
        const auto& symbols = constant_symbols();
        for (const auto& node : nodes_) {
            for (const auto& [role, value] : node.children) {
                switch (value.kind) {
                    case RawValue::Node:
                        edges.push_back({node.var.text, role.text, nodes_[value.node_index].var.text});
                        break;
                    case RawValue::StringConst:
                        attributes.push_back({node.var.text, role.text, value.atom.text});
                        break;
                    case RawValue::AtomRef: {
                        const std::string& text = value.atom.text;
                        if (defined_.count(text)) {
                            edges.push_back({node.var.text, role.text, text});
                        } else if (is_number(text) ||
                                   std::find(symbols.begin(), symbols.end(), text) != symbols.end()) {
                            attributes.push_back({node.var.text, role.text, text});
                        } else {
                            throw ParseError(value.atom.line, value.atom.column,
                                             "dangling variable reference '" + text + "'");
                        }
                        break;
                    }
                }
            }
        }
        try {
            return AmrGraph(nodes_[root_index].var.text, std::move(concepts), std::move(edges),
                            std::move(attributes));
        } catch (const GraphError& e) {
            throw ParseError(nodes_[root_index].var.line, nodes_[root_index].var.column, e.what());
        }
    }

    Lexer lexer_;
    Token current_;
    std::vector<RawNode> nodes_;
    std::unordered_set<std::string> defined_;
};

}  // namespace

const std::vector<std::string>& constant_symbols() {
    static const std::vector<std::string> symbols{"-", "+", "interrogative", "imperative",
                                                  "expressive"};
    return symbols;
}

AmrGraph parse_penman(std::string_view text) { return Parser(text).parse(); }

namespace {

class Serializer {
public:
    explicit Serializer(const AmrGraph& g) : g_(g), consumed_(g.edges().size(), false) {
        for (std::size_t i = 0; i < g.edges().size(); ++i) {
            incident_[g.edges()[i].source].push_back(i);
            if (g.edges()[i].target != g.edges()[i].source)
                incident_[g.edges()[i].target].push_back(i);
        }
    }

    std::string run() {
        emit_node(g_.root());
        return out_.str();
    }

private:
    void emit_node(const std::string& var) {
        visited_.insert(var);
        out_ << '(' << var << " / " << g_.concept_of(var);
        for (const auto& a : g_.attributes())
            if (a.source == var) out_ << ' ' << a.role << ' ' << a.value;
        auto it = incident_.find(var);
        if (it != incident_.end()) {
            for (std::size_t idx : it->second) {
                if (consumed_[idx]) continue;
                consumed_[idx] = true;
                const Edge& e = g_.edges()[idx];
                bool forward = (e.source == var);
                const std::string& far = forward ? e.target : e.source;
                const std::string role = forward ? e.role : inverse_role(e.role);
                out_ << ' ' << role << ' ';
                if (visited_.count(far))
                    out_ << far;
                else
                    emit_node(far);
            }
        }
        out_ << ')';
    }

    const AmrGraph& g_;
    std::vector<bool> consumed_;
    std::unordered_map<std::string, std::vector<std::size_t>> incident_;
    std::unordered_set<std::string> visited_;
    std::ostringstream out_;
};

}  // namespace

std::string serialize_penman(const AmrGraph& g) { return Serializer(g).run(); }

std::vector<PenmanBlock> read_penman_blocks(std::istream& in) {
    std::vector<PenmanBlock> blocks;
    PenmanBlock current;
    int depth = 0;
    std::string line;
    auto flush = [&] {
        if (!current.text.empty() || !current.comments.empty()) {
            blocks.push_back(std::move(current));
            current = {};
        }
        depth = 0;
    };
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string_view sv = line;
        auto first = sv.find_first_not_of(" \t");
        if (first == std::string_view::npos) {
            if (depth == 0) flush();
            continue;
        }
        if (sv[first] == '#') {
            current.comments.push_back(line);
            continue;
        }
        current.text += line;
        current.text += '\n';
        for (char c : line) {
            if (c == '(') ++depth;
            if (c == ')') --depth;
        }
        if (depth <= 0 && !current.text.empty()) flush();
    }
    flush();
    return blocks;
}

void write_penman_blocks(std::ostream& out, const std::vector<PenmanBlock>& blocks) {
    bool first = true;
    for (const auto& block : blocks) {
        if (!first) out << '\n';
        first = false;
        for (const auto& comment : block.comments) out << comment << '\n';
        out << block.text;
        if (!block.text.empty() && block.text.back() != '\n') out << '\n';
    }
}

}  // namespace amrforge
