#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gtx/gts.hpp"
#include "gtx/hypergraph.hpp"

namespace gtx {

/// A state is an inclusion: interface -> graph.
struct State {
    Hypergraph interface_;
    Hypergraph graph;

    static State make(Hypergraph interface_, Hypergraph graph);
};

/// A transition label is a cospan j -> f <- k: the environment contribution
/// together with the interface after the step.
struct Label {
    Hypergraph j;
    Hypergraph f;
    Hypergraph k;

    static Label make(Hypergraph j, Hypergraph f, Hypergraph k);
};

/// Full witnessing diagram of a borrowed-context step: the rule instance,
/// the partial match, and every graph of the five-square display.
struct Diagram {
    std::string rule;
    Hypergraph partial_match_rule;  // D in the rule's own identifiers
    Hypergraph partial_match_image; // image of D inside g
    Morphism instance;              // rule footprint (left ∪ right) -> instance copy
    Hypergraph l, i, r;             // instance graphs
    Hypergraph g, g_c, c, h;
    Hypergraph j, f, k;

    /// Re-checks the four pushout squares and the pullback square.
    bool verify(std::string* why = nullptr) const;
};

struct Transition {
    State source;
    Label label;
    State target;
    std::optional<Diagram> witness;
};

bool is_silent(const Label& lbl);
bool is_silent(const Transition& t);

struct EnumOptions {
    /// Also admit partial matches that consist of nodes only (other than the
    /// full left-hand side). Off by default: such matches borrow an entire
    /// left-hand side that is already derivable from smaller interfaces.
    bool allow_node_only_matches = false;
};

struct SkipRecord {
    std::string rule;
    std::string reason;
    std::string detail;
};

struct EnumerationResult {
    std::vector<Transition> transitions; // deduplicated, canonically ordered
    std::vector<Transition> raw;         // every accepted diagram, pre-dedup
    std::vector<SkipRecord> skips;
};

/// Complete enumeration of the borrowed-context transitions of a state.
EnumerationResult enumerate_transitions(const Gts& s, const State& st,
                                        const EnumOptions& opts = {});

/// Single candidate step: rule, chosen partial match D (a subgraph of the
/// rule's left-hand side) and an injective occurrence of D in the state
/// graph. Returns the diagram when all squares close, otherwise records why.
std::optional<Diagram> try_borrow_step(const State& st, const Rule& rule,
                                       const Hypergraph& d_rule,
                                       const std::map<Id, Id>& mono_nodes,
                                       const std::map<Id, Id>& mono_edges,
                                       SkipRecord* skip = nullptr);

Transition transition_of(const Diagram& d);

/// Compose two diagrams over the same rule along the minimal interface of
/// the first diagram's partial match. Throws IncompatibleDiagrams when the
/// routing inclusions do not exist or the composite step is not accepted.
Diagram compose_diagrams(const Gts& s, const Diagram& d1, const Diagram& d2);

/// Canonical key of the (label, target) pair of a transition, with the
/// source interface pinned pointwise. Equal keys <=> isomorphic transitions
/// of the same state.
std::string transition_key(const Transition& t);

/// Canonical key of a state up to interface-respecting isomorphism.
std::string state_key(const State& st);

} // namespace gtx
