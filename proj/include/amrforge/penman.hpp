#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "amrforge/graph.hpp"

namespace amrforge {

struct ParseError : std::runtime_error {
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + what),
          line(line),
          column(column) {}
    std::size_t line;
    std::size_t column;
};

// Parses one PENMAN s-expression, tolerating surrounding whitespace and
// "#"-prefixed comment lines. Bare atoms are resolved in a second pass:
// an atom naming a variable defined anywhere in the graph is a re-entrant
// edge; numbers, quoted strings, and the constant symbols below are
// attribute values; anything else is a dangling variable reference.
AmrGraph parse_penman(std::string_view text);

// Unquoted atoms accepted as attribute constants ("-", "+", sentence modes).
const std::vector<std::string>& constant_symbols();

// Single-line PENMAN. Children appear in edge-list order (first-visit order
// for parsed graphs); attributes precede relations at each node. Edges that
// the spanning walk crosses against their stored direction are emitted with
// the flipped role, so parse(serialize(g)) has the same canonical triples.
std::string serialize_penman(const AmrGraph& g);

// One graph per blank-line-separated block; "#" lines ride along as opaque
// comments attached to the following block.
struct PenmanBlock {
    std::vector<std::string> comments;
    std::string text;
};

std::vector<PenmanBlock> read_penman_blocks(std::istream& in);
void write_penman_blocks(std::ostream& out, const std::vector<PenmanBlock>& blocks);

}  // namespace amrforge
