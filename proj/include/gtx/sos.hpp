#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gtx/bc.hpp"
#include "gtx/gts.hpp"

namespace gtx {

/// A context is a cospan j -> e <- j2: a graph to glue onto a state at its
/// interface, together with the interface exposed afterwards.
struct Context {
    Hypergraph j;
    Hypergraph e;
    Hypergraph j2;

    static Context make(Hypergraph j, Hypergraph e, Hypergraph j2);
    bool is_narrowing() const { return e == j; }
    bool is_identity() const { return e == j && j2 == j; }
};

/// Basic action of a rule at a chosen part D of its left-hand side:
/// (D -> D) --(D -> L <- I)--> (I -> R).
Transition basic_action(const Rule& r, const Hypergraph& d);

/// The whole axiom family of a rule, one action per subgraph of the
/// left-hand side.
std::vector<Transition> basic_actions(const Rule& r);

/// Glue a context onto a state: the new state is j2 -> pushout(e <- j -> g).
/// When the state graph meets e outside j it is first renamed apart keeping
/// j, unless renaming is suppressed (then OverlapError).
State apply_context_to_state(const Context& c, const State& st, bool allow_rename = true);

/// Narrowing context (j -> j <- j2) applied to a label: drops the part of
/// the interface outside j2. Throws NarrowingImpossible when a borrowed edge
/// attaches to a dropped node.
Label narrow_label(const Context& c, const Label& lbl);

struct CompatibilityWitness {
    bool monotone = false;
    bool non_inhibiting = false;
    std::optional<Hypergraph> glued;   // pushout of e <- j -> f
    std::optional<Hypergraph> residue; // context after the step
    bool ok() const { return monotone && non_inhibiting; }
};

/// Monotone: j -> j2. Non-inhibiting: the context can be glued to the label
/// and survives the step (no context edge touches a node the step deletes).
CompatibilityWitness is_compatible(const Context& c, const Label& lbl);

/// Combination of a label with an outer cospan sharing its interface.
/// Generalizes narrowing. Throws NotCombinable.
Label combine_cospans(const Context& outer, const Label& lbl);

/// Compatible contextualization: run a whole transition inside a context.
Transition apply_contextualization(const Context& c, const Transition& t);

enum class DerivationKind { BasicAction, Narrowing, Contextualization, Communication, Premise };

struct DerivationTree {
    DerivationKind kind;
    Transition conclusion;
    std::vector<DerivationTree> premises;
    std::string rule;                // BasicAction
    Hypergraph action_part;          // BasicAction: D in the instance's identifiers
    std::optional<Rule> instance;    // BasicAction: the rule instance used
    std::optional<Context> context;  // Narrowing / Contextualization
};

/// Re-runs the derivation bottom-up and returns the recomputed conclusion.
Transition replay(const Gts& s, const DerivationTree& tree);

struct Derivation {
    Transition transition;
    DerivationTree tree;
};

/// All transitions of a state derivable in normal form: one basic action,
/// one compatible contextualization, one interface narrowing (identity
/// instances allowed). Deduplicated and canonically ordered.
std::vector<Derivation> derive_all(const Gts& s, const State& st, const EnumOptions& opts = {});

struct EquivalenceReport {
    bool equal = false;
    std::size_t count = 0;            // size of the common transition set
    std::vector<Transition> missing;  // enumerated but not derivable
    std::vector<Transition> extra;    // derivable but not enumerated
};

EquivalenceReport compare_transition_sets(const std::vector<Transition>& enumerated,
                                          const std::vector<Transition>& derived);

/// Checks that enumeration and derivation agree on a state, up to
/// isomorphism of (label, target) pairs.
EquivalenceReport check_equivalence(const Gts& s, const State& st, const EnumOptions& opts = {});

} // namespace gtx
