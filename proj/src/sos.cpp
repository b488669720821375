#include "gtx/sos.hpp"

#include <algorithm>
#include <map>

#include "gtx/canonical.hpp"
#include "gtx/colimit.hpp"
#include "gtx/errors.hpp"

namespace gtx {

Context Context::make(Hypergraph j, Hypergraph e, Hypergraph j2) {
    if (!is_inclusion(j, e) || !is_inclusion(j2, e))
        throw MatchError("context legs must be subgraphs of the context graph");
    return Context{std::move(j), std::move(e), std::move(j2)};
}

Transition basic_action(const Rule& r, const Hypergraph& d) {
    if (!is_inclusion(d, r.left))
        throw MatchError("basic action part must be a subgraph of the left-hand side");
    Transition t;
    t.source = State{d, d};
    t.label = Label{d, r.left, r.interface_};
    t.target = State{r.interface_, r.right};
    return t;
}

std::vector<Transition> basic_actions(const Rule& r) {
    std::vector<Transition> out;
    for (const Hypergraph& d : subgraphs(r.left)) out.push_back(basic_action(r, d));
    return out;
}

State apply_context_to_state(const Context& c, const State& st, bool allow_rename) {
    Hypergraph g = st.graph;
    if (!non_overlapping(c.j, c.e, g)) {
        if (!allow_rename) {
            for (const Id& v : c.e.nodes())
                if (g.has_node(v) && !c.j.has_node(v)) throw OverlapError(v);
            for (const auto& [e, data] : c.e.edges())
                if (g.has_edge(e) && !c.j.has_edge(e)) throw OverlapError(e);
        }
        g = rename_apart(g, c.e, c.j).graph;
    }
    Cospan glued = pushout(Span{c.j, c.e, g});
    return State::make(c.j2, glued.apex);
}

Label narrow_label(const Context& c, const Label& lbl) {
    if (!c.is_narrowing())
        throw MatchError("narrowing requires a context of shape j -> j <- j2");
    if (c.j != lbl.j)
        throw MatchError("narrowing context does not share the label interface");
    Hypergraph f2;
    try {
        f2 = pushout_complement(c.j2, c.j, lbl.f);
    } catch (const DanglingError& err) {
        throw NarrowingImpossible(err.node, err.edge);
    }
    Hypergraph k2 = intersect_graphs(f2, lbl.k);
    return Label{c.j2, std::move(f2), std::move(k2)};
}

CompatibilityWitness is_compatible(const Context& c, const Label& lbl) {
    if (c.j != lbl.j)
        throw MatchError("context does not share the label interface");
    CompatibilityWitness w;
    w.monotone = is_inclusion(c.j, c.j2);

    Context ctx = c;
    if (!non_overlapping(c.j, c.e, lbl.f)) {
        RenamedCopy copy = rename_apart(c.e, lbl.f, c.j);
        ctx.e = copy.graph;
        ctx.j2 = image(copy.iso, c.j2);
    }
    Cospan glued = pushout(Span{ctx.j, ctx.e, lbl.f});
    try {
        Hypergraph residue = pushout_complement(lbl.k, lbl.f, glued.apex);
        w.non_inhibiting = true;
        w.glued = glued.apex;
        w.residue = std::move(residue);
    } catch (const DanglingError&) {
        w.non_inhibiting = false;
    }
    return w;
}

Label combine_cospans(const Context& outer, const Label& lbl) {
    if (outer.j != lbl.j)
        throw MatchError("combination requires a common interface");
    Context ctx = outer;
    if (!non_overlapping(outer.j, outer.e, lbl.f)) {
        RenamedCopy copy = rename_apart(outer.e, lbl.f, outer.j);
        ctx.e = copy.graph;
        ctx.j2 = image(copy.iso, outer.j2);
    }
    Cospan glued = pushout(Span{ctx.j, ctx.e, lbl.f});
    Hypergraph residue;
    Hypergraph f_bar;
    try {
        residue = pushout_complement(lbl.k, lbl.f, glued.apex);
        f_bar = pushout_complement(ctx.j2, ctx.e, glued.apex);
    } catch (const DanglingError& err) {
        throw NotCombinable(std::string("cospans are not combinable: ") + err.what());
    }
    Hypergraph k_bar = intersect_graphs(f_bar, residue);
    return Label{ctx.j2, std::move(f_bar), std::move(k_bar)};
}

Transition apply_contextualization(const Context& c, const Transition& t) {
    if (c.j != t.label.j)
        throw MatchError("context does not share the transition interface");

    // Rename the context apart from the whole transition footprint, so all
    // constructions below are plain unions.
    Hypergraph footprint = union_graphs(t.source.graph, t.label.f);
    footprint = union_graphs(footprint, t.target.graph);
    Context ctx = c;
    if (!non_overlapping(c.j, c.e, footprint)) {
        RenamedCopy copy = rename_apart(c.e, footprint, c.j);
        ctx.e = copy.graph;
        ctx.j2 = image(copy.iso, c.j2);
    }

    CompatibilityWitness w = is_compatible(ctx, t.label);
    if (!w.monotone) throw PreconditionViolated("context is not monotone");
    if (!w.non_inhibiting) throw PreconditionViolated("context inhibits the transition");

    Hypergraph f_bar = pushout_complement(ctx.j2, ctx.e, *w.glued);
    Hypergraph k_bar = intersect_graphs(f_bar, *w.residue);
    Label new_label{ctx.j2, f_bar, k_bar};

    State new_source = apply_context_to_state(ctx, t.source, false);

    // The context after the step acts on the target state.
    Context after = Context::make(t.label.k, *w.residue, k_bar);
    State new_target = apply_context_to_state(after, t.target, false);

    Transition out;
    out.source = std::move(new_source);
    out.label = std::move(new_label);
    out.target = std::move(new_target);
    return out;
}

Transition replay(const Gts& s, const DerivationTree& tree) {
    switch (tree.kind) {
        case DerivationKind::BasicAction:
            return basic_action(tree.instance ? *tree.instance : s.rule(tree.rule),
                                tree.action_part);
        case DerivationKind::Contextualization: {
            Transition premise = replay(s, tree.premises.at(0));
            return apply_contextualization(*tree.context, premise);
        }
        case DerivationKind::Narrowing: {
            Transition premise = replay(s, tree.premises.at(0));
            Label lbl = narrow_label(*tree.context, premise.label);
            Transition out;
            out.source = State::make(lbl.j, premise.source.graph);
            out.label = lbl;
            out.target = State::make(lbl.k, premise.target.graph);
            return out;
        }
        case DerivationKind::Communication:
        case DerivationKind::Premise:
            return tree.conclusion;
    }
    throw std::logic_error("unreachable");
}

std::vector<Derivation> derive_all(const Gts& s, const State& st, const EnumOptions& opts) {
    const Hypergraph& g = st.graph;
    const Hypergraph& j = st.interface_;
    std::map<std::string, Derivation> dedup;

    for (const Rule& rule : s.rules) {
        for (const Hypergraph& d : subgraphs(rule.left)) {
            bool full = d == rule.left;
            if (!full && d.edge_count() == 0 && !opts.allow_node_only_matches)
                continue;
            for (const Morphism& m : find_monos(d, g)) {
                // Rule instance pinned to the occurrence; axiom on the instance.
                RuleInstance inst = instantiate_rule(rule, m.node_map, m.edge_map, g);
                Hypergraph d_image = image(m, d);
                Rule instance_rule{rule.name, inst.left, inst.interface_, inst.right};
                Transition axiom = basic_action(instance_rule, d_image);

                // Context gluing the occurrence into the full state graph,
                // exposing the occurrence together with the state interface.
                Hypergraph j_wide = union_graphs(d_image, j);
                Context into_state = Context::make(d_image, g, j_wide);
                CompatibilityWitness w = is_compatible(into_state, axiom.label);
                if (!w.ok()) continue;
                Transition widened;
                try {
                    widened = apply_contextualization(into_state, axiom);
                } catch (const DomainError&) {
                    continue;
                }

                // Narrow the interface back down to the state's own.
                Context narrowing = Context::make(j_wide, j_wide, j);
                Label narrowed;
                try {
                    narrowed = narrow_label(narrowing, widened.label);
                } catch (const NarrowingImpossible&) {
                    continue;
                }
                Transition conclusion;
                conclusion.source = State::make(j, widened.source.graph);
                conclusion.label = narrowed;
                conclusion.target = State::make(narrowed.k, widened.target.graph);

                DerivationTree axiom_node{DerivationKind::BasicAction, axiom, {}, rule.name,
                                          d_image, instance_rule, std::nullopt};
                DerivationTree ctx_node{DerivationKind::Contextualization, widened,
                                        {axiom_node}, {}, {}, std::nullopt, into_state};
                DerivationTree narrow_node{DerivationKind::Narrowing, conclusion,
                                           {ctx_node}, {}, {}, std::nullopt, narrowing};
                Derivation derivation{conclusion, std::move(narrow_node)};
                dedup.emplace(transition_key(conclusion), std::move(derivation));
            }
        }
    }
    std::vector<Derivation> out;
    for (auto& [key, derivation] : dedup) out.push_back(std::move(derivation));
    return out;
}

EquivalenceReport compare_transition_sets(const std::vector<Transition>& enumerated,
                                          const std::vector<Transition>& derived) {
    std::map<std::string, const Transition*> lhs;
    std::map<std::string, const Transition*> rhs;
    for (const Transition& t : enumerated) lhs.emplace(transition_key(t), &t);
    for (const Transition& t : derived) rhs.emplace(transition_key(t), &t);
    EquivalenceReport report;
    for (const auto& [key, t] : lhs) {
        if (rhs.contains(key))
            ++report.count;
        else
            report.missing.push_back(*t);
    }
    for (const auto& [key, t] : rhs)
        if (!lhs.contains(key)) report.extra.push_back(*t);
    report.equal = report.missing.empty() && report.extra.empty();
    return report;
}

EquivalenceReport check_equivalence(const Gts& s, const State& st, const EnumOptions& opts) {
    EnumerationResult enumerated = enumerate_transitions(s, st, opts);
    std::vector<Derivation> derived = derive_all(s, st, opts);
    std::vector<Transition> derived_transitions;
    derived_transitions.reserve(derived.size());
    for (const Derivation& d : derived) derived_transitions.push_back(d.transition);
    return compare_transition_sets(enumerated.transitions, derived_transitions);
}

} // namespace gtx
