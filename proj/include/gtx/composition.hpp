#pragma once

#include <map>
#include <string>
#include <vector>

#include "gtx/bc.hpp"
#include "gtx/gts.hpp"
#include "gtx/sos.hpp"

namespace gtx {

/// Complementary pair of left-hand-side fragments: gluing d and d_hat along
/// the minimal interface reproduces the rule's left-hand side.
struct ActivePair {
    std::string rule;
    Hypergraph d;
    Hypergraph d_hat;
    Hypergraph interface_; // minimal interface of d in the left-hand side
};

/// Fragments eligible as active-pair members: proper subgraphs of the
/// left-hand side with at least one edge and no isolated nodes.
std::vector<Hypergraph> rule_fragments(const Rule& r);

/// All active pairs of the system, deduplicated as unordered pairs up to
/// isomorphism of (d, d_hat, interface) triples.
std::vector<ActivePair> active_pairs(const Gts& s);

/// Whether {d, d_other} is an active pair of the rule (literal subgraphs of
/// the rule's left-hand side).
bool is_active_pair(const Rule& r, const Hypergraph& d, const Hypergraph& d_other);

/// Witness that a rule could explain a borrow: the fragment the environment
/// would add, an occurrence of the whole left-hand side in the glued graph,
/// and the routing of the minimal interface into the state interface.
struct Admissibility {
    std::string rule;
    Hypergraph addition;          // D, in rule identifiers
    Hypergraph minimal_interface; // J_D in rule identifiers (nodes only)
    Morphism embedding;           // left-hand side -> glued graph
    std::map<Id, Id> routing;     // minimal interface nodes -> state interface
};

/// Rules admissible for borrowing `borrow_f` at the given state: the
/// left-hand side does not embed in the state graph, but does embed in the
/// glued graph with some active fragment landing inside the borrow and its
/// minimal interface inside the state interface.
std::vector<Admissibility> admissible_rules(const Gts& s, const State& st,
                                            const Hypergraph& borrow_f);

struct TauWitness {
    std::string rule;
    Admissibility first;
    Admissibility second;
};

/// Witnesses that a single rule is admissible for both transitions with
/// complementary rule additions. Empty when the transitions are not
/// tau-compatible.
std::vector<TauWitness> tau_compatible(const Gts& s, const Transition& t1,
                                       const Transition& t2);

struct SystemClass {
    bool interaction_system = false;
    bool simply_wired_states = false;
    bool lafont = false;
    bool partitioned = false;
    bool unique_partners = false;
    bool complementarity_of_actions = false;
    std::map<std::string, std::string> notes;
};

bool is_simply_wired(const Hypergraph& g);
bool is_lafont_state(const State& st);

SystemClass classify(const Gts& s, const std::vector<State>& corpus);

/// The unique rule admissible for a non-silent transition. Throws NotUnique
/// carrying all candidates when the count differs from one.
Rule unique_admissible_rule(const Gts& s, const Transition& t);

/// Synchronize two tau-compatible non-silent transitions of a suitably
/// classified system into one silent transition of the glued state. The
/// constructed transition is validated by locating it in the enumeration of
/// the composed state.
Transition compose_tau(const Gts& s, const Transition& t1, const Transition& t2);

/// Glue the source states of two transitions along the minimal interface of
/// a tau witness, routed through both admissibility embeddings. This is the
/// "parallel composition" of the two states; a silent step using the
/// witness rule exists in it even when the system is not classified.
State glue_sources(const Transition& t1, const Transition& t2, const TauWitness& w);

/// Glued state plus the predicted silent transition, built from diagrams of
/// both transitions that use the witness rule itself: sources glued along
/// the witness interface, targets glued along the rule's right-hand side.
/// Exposed for the validation suite.
struct TauComposition {
    State composed;         // glued source state
    Transition transition;  // predicted silent transition
};
std::vector<TauComposition> tau_composition_candidates(const Gts& s, const Transition& t1,
                                                       const Transition& t2,
                                                       const TauWitness& w);

struct ComposedTau {
    Transition transition;
    DerivationTree tree;
};

/// Derived communication rule: tau-compatibility check followed by
/// composition, available when the system has complementarity of actions
/// (or is partitioned Lafont / unique partners).
ComposedTau communication_rule(const Gts& s, const Transition& t1, const Transition& t2,
                               const SystemClass& cls);

} // namespace gtx
