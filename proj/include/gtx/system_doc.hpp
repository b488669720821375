#pragma once

#include <map>
#include <string>

#include "gtx/bc.hpp"
#include "gtx/errors.hpp"
#include "gtx/gts.hpp"
#include "gtx/hypergraph.hpp"

namespace gtx {

struct ParseError : DomainError {
    int line;
    int column;
    ParseError(int line_, int column_, const std::string& msg)
        : DomainError(std::to_string(line_) + ":" + std::to_string(column_) + ": " + msg),
          line(line_), column(column_) {}
};

/// A parsed system description: alphabet, named graphs, rules and states.
struct SystemDocument {
    LabelAlphabet alphabet;
    std::map<std::string, Hypergraph> graphs;
    std::map<std::string, Rule> rules;
    std::map<std::string, State> states;
    std::map<std::string, std::string> state_graph_names;

    Gts gts() const;
};

/// Parse a system description. Throws ParseError with line/column on syntax
/// errors, unknown labels, arity mismatches and unresolved references.
SystemDocument parse_system(const std::string& text);

/// Canonical printer: sorted sections, fixed layout. parse(print(d)) == d
/// and print(parse(print(d))) == print(d).
std::string print_system(const SystemDocument& doc);

} // namespace gtx
