#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "amrforge/graph.hpp"

namespace amrforge {

// Flat token sequence of the kind seq2seq parsers consume and emit:
// structural "(" / ")", role tokens, concept and constant tokens, and
// pointer tokens "<pN>" introduced once per node in first-visit order
// (recurring bare on re-entrancy).
std::vector<std::string> linearize(const AmrGraph& g);

struct DelinearizeResult {
    std::optional<AmrGraph> graph;
    std::vector<std::string> repairs;  // applied recoveries, in order
    std::string error;                 // nonempty iff graph is absent

    bool ok() const { return graph.has_value(); }
};

// Best-effort inverse of linearize. Recoverable repairs: closing
// unbalanced parentheses at end of input, dropping a dangling role with
// no value, and ignoring tokens past the balanced root. Anything else
// (no valid root, unknown or re-introduced pointer, missing concept)
// fails with the repair log collected so far.
DelinearizeResult delinearize(std::span<const std::string> tokens);

std::string join_tokens(std::span<const std::string> tokens);
std::vector<std::string> split_tokens(std::string_view line);

}  // namespace amrforge
