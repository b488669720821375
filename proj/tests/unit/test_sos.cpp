#include <doctest.h>

#include <set>

#include "gtx/canonical.hpp"
#include "gtx/colimit.hpp"
#include "gtx/errors.hpp"
#include "gtx/sos.hpp"
#include "../support/oracles.hpp"

using namespace gtx;

namespace {

const SystemDocument& sex() {
    static SystemDocument doc = oracles::load_corpus("sex.gts");
    return doc;
}

Hypergraph nodes_only(std::initializer_list<Id> ids) {
    Hypergraph g;
    for (const Id& v : ids) g.add_node(v);
    return g;
}

} // namespace

TEST_CASE("basic actions") {
    Gts s = sex().gts();
    const Rule& ab = s.rule("ab");
    SUBCASE("one axiom per subgraph of the left-hand side") {
        CHECK(basic_actions(ab).size() == subgraphs(ab.left).size());
    }
    SUBCASE("full part gives the step to the right-hand side") {
        Transition t = basic_action(ab, ab.left);
        CHECK(t.source.graph == ab.left);
        CHECK(t.label.f == ab.left);
        CHECK(t.label.k == ab.interface_);
        CHECK(t.target.graph == ab.right);
    }
    SUBCASE("empty part borrows everything") {
        Transition t = basic_action(ab, Hypergraph{});
        CHECK(t.source.graph == Hypergraph{});
        CHECK(t.label.f == ab.left);
    }
    SUBCASE("the alpha part borrows the beta part") {
        Hypergraph d;
        d.add_node("u");
        d.add_node("v");
        d.add_edge("ea", "alpha", {"u", "v"});
        Transition t = basic_action(ab, d);
        std::set<std::string> borrowed;
        for (const auto& [e, data] : t.label.f.edges())
            if (!d.has_edge(e)) borrowed.insert(data.label);
        CHECK(borrowed == std::set<std::string>{"beta"});
    }
}

TEST_CASE("apply_context_to_state") {
    Hypergraph g;
    g.add_node("u");
    g.add_node("v");
    g.add_edge("e1", "alpha", {"u", "v"});
    State st = State::make(nodes_only({"v"}), g);

    SUBCASE("identity context") {
        Context c = Context::make(nodes_only({"v"}), nodes_only({"v"}), nodes_only({"v"}));
        State out = apply_context_to_state(c, st);
        CHECK(out.graph == g);
        CHECK(out.interface_ == nodes_only({"v"}));
    }
    SUBCASE("attaching an edge at the interface") {
        Hypergraph e = nodes_only({"v"});
        e.add_edge("eg", "gamma", {"v"});
        Context c = Context::make(nodes_only({"v"}), e, nodes_only({"v"}));
        State out = apply_context_to_state(c, st);
        Hypergraph expected = g;
        expected.add_edge("eg", "gamma", {"v"});
        CHECK(out.graph == expected);
    }
    SUBCASE("overlap outside the interface renames the state") {
        Hypergraph e = nodes_only({"u", "v"}); // u collides with the state graph
        Context c = Context::make(nodes_only({"v"}), e, e);
        State out = apply_context_to_state(c, st);
        CHECK(out.graph.node_count() == 3);
        CHECK_THROWS_AS(apply_context_to_state(c, st, false), OverlapError);
    }
}

TEST_CASE("narrow_label") {
    Hypergraph jv = nodes_only({"v"});
    Hypergraph jvw = nodes_only({"v", "w"});
    SUBCASE("identity narrowing") {
        Label lbl{jvw, jvw, jvw};
        Context c = Context::make(jvw, jvw, jvw);
        Label out = narrow_label(c, lbl);
        CHECK(out.j == jvw);
        CHECK(out.f == jvw);
        CHECK(out.k == jvw);
    }
    SUBCASE("dropping an unused interface node") {
        Label lbl{jvw, jvw, jvw};
        Context c = Context::make(jvw, jvw, jv);
        Label out = narrow_label(c, lbl);
        CHECK(out.j == jv);
        CHECK(out.f == jv);
        CHECK(out.k == jv);
    }
    SUBCASE("a borrowed edge at the dropped node blocks narrowing") {
        Hypergraph f = jvw;
        f.add_edge("eg", "gamma", {"w"});
        Label lbl{jvw, f, jvw};
        Context c = Context::make(jvw, jvw, jv);
        CHECK_THROWS_AS(narrow_label(c, lbl), NarrowingImpossible);
    }
}

TEST_CASE("is_compatible") {
    Hypergraph jv = nodes_only({"v"});
    Hypergraph borrowed = nodes_only({"v", "w1", "w2"});
    borrowed.add_edge("eb", "beta", {"w1", "w2", "v"});
    Label lbl{jv, borrowed, borrowed};

    SUBCASE("identity context is compatible") {
        Context c = Context::make(jv, jv, jv);
        CHECK(is_compatible(c, lbl).ok());
    }
    SUBCASE("contexts dropping interface nodes are not monotone") {
        Context c = Context::make(jv, jv, Hypergraph{});
        CompatibilityWitness w = is_compatible(c, lbl);
        CHECK_FALSE(w.monotone);
    }
    SUBCASE("attaching to a node the step deletes is inhibiting") {
        Label deleting{jv, jv, Hypergraph{}}; // the step consumes v
        Hypergraph e = nodes_only({"v"});
        e.add_edge("ec", "gamma", {"v"});
        Context c = Context::make(jv, e, e);
        CompatibilityWitness w = is_compatible(c, deleting);
        CHECK(w.monotone);
        CHECK_FALSE(w.non_inhibiting);
    }
}

TEST_CASE("combine_cospans") {
    Hypergraph jv = nodes_only({"v"});
    Hypergraph borrowed = nodes_only({"v", "w"});
    borrowed.add_edge("eg", "alpha", {"w", "v"});
    Label lbl{jv, borrowed, borrowed};

    SUBCASE("identity outer cospan is the identity") {
        Context c = Context::make(jv, jv, jv);
        Label out = combine_cospans(c, lbl);
        CHECK(out.j == lbl.j);
        CHECK(out.f == lbl.f);
        CHECK(out.k == lbl.k);
    }
    SUBCASE("combination with a narrowing-shaped cospan equals narrowing") {
        Hypergraph jvx = nodes_only({"v", "x"});
        Label wide{jvx, union_graphs(borrowed, nodes_only({"x"})),
                   union_graphs(borrowed, nodes_only({"x"}))};
        Context c = Context::make(jvx, jvx, jv);
        Label combined = combine_cospans(c, wide);
        Label narrowed = narrow_label(c, wide);
        CHECK(combined.j == narrowed.j);
        CHECK(combined.f == narrowed.f);
        CHECK(combined.k == narrowed.k);
    }
    SUBCASE("monotone compatible contexts split as the lemma predicts") {
        Hypergraph e = nodes_only({"v", "p"});
        e.add_edge("ep", "gamma", {"p"});
        Context c = Context::make(jv, e, e);
        REQUIRE(is_compatible(c, lbl).ok());
        Label combined = combine_cospans(c, lbl);
        // new trigger = old trigger glued with the new interface over j
        CHECK(combined.f == union_graphs(borrowed, e));
        // new result interface = old one plus what the context added
        Hypergraph expected_k = union_graphs(lbl.k, e);
        CHECK(combined.k == expected_k);
        CHECK(combined.j == e);
    }
    SUBCASE("dropping a node that carries a borrowed edge is not combinable") {
        Hypergraph jvw = nodes_only({"v", "w"});
        Hypergraph f2 = jvw;
        f2.add_edge("ee", "gamma", {"w"});
        Label lbl2{jvw, f2, f2};
        Context c = Context::make(jvw, jvw, jv);
        CHECK_THROWS_AS(combine_cospans(c, lbl2), NotCombinable);
    }
}

TEST_CASE("apply_contextualization") {
    Gts s = sex().gts();
    const Rule& ag = s.rule("ag");
    SUBCASE("identity context preserves the transition") {
        Transition axiom = basic_action(ag, ag.left);
        Context c = Context::make(ag.left, ag.left, ag.left);
        Transition out = apply_contextualization(c, axiom);
        CHECK(transition_key(out) == transition_key(axiom));
    }
    SUBCASE("a basic action in context matches the enumerated borrow") {
        // axiom for the alpha-part, contextualized into the state graph
        Hypergraph d;
        d.add_node("u1");
        d.add_node("v1");
        d.add_edge("e1", "alpha", {"u1", "v1"});
        RuleInstance inst = instantiate_rule(
            ag, {{"u", "u1"}, {"v", "v1"}}, {{"ea", "e1"}}, sex().graphs.at("G1"));
        Rule pinned{"ag", inst.left, inst.interface_, inst.right};
        Transition axiom = basic_action(pinned, d);

        const State& st = sex().states.at("S1");
        Hypergraph wide = union_graphs(d, st.interface_);
        Context c = Context::make(d, st.graph, wide);
        Transition widened = apply_contextualization(c, axiom);
        Label narrowed = narrow_label(Context::make(wide, wide, st.interface_), widened.label);
        Transition conclusion{State::make(st.interface_, widened.source.graph), narrowed,
                              State::make(narrowed.k, widened.target.graph), std::nullopt};

        std::set<std::string> enumerated;
        for (const Transition& t : enumerate_transitions(s, st).transitions)
            enumerated.insert(transition_key(t));
        CHECK(enumerated.contains(transition_key(conclusion)));
    }
    SUBCASE("non-monotone context is rejected") {
        Transition axiom = basic_action(ag, ag.left);
        Context c = Context::make(ag.left, ag.left, Hypergraph{});
        CHECK_THROWS_AS(apply_contextualization(c, axiom), PreconditionViolated);
    }
}

TEST_CASE("derive_all basics") {
    Gts s = sex().gts();
    SUBCASE("a state that is itself an axiom source includes the axiom's step") {
        const Rule& ag = s.rule("ag");
        State st = State::make(ag.left, ag.left);
        std::vector<Derivation> ds = derive_all(s, st);
        bool found = false;
        for (const Derivation& d : ds) {
            if (d.transition.label.f == ag.left && is_inclusion(d.transition.label.k, ag.left))
                found = true;
        }
        CHECK(found);
    }
    SUBCASE("no rule edge, no derivation") {
        State st = State::make(nodes_only({"x"}), nodes_only({"x"}));
        CHECK(derive_all(s, st).empty());
    }
    SUBCASE("every derivation replays to its own conclusion") {
        for (const char* name : {"S1", "S4a", "S5"}) {
            const State& st = sex().states.at(name);
            for (const Derivation& d : derive_all(s, st)) {
                Transition again = replay(s, d.tree);
                CHECK(transition_key(again) == transition_key(d.transition));
            }
        }
    }
    SUBCASE("derivation trees have the normal-form shape") {
        for (const Derivation& d : derive_all(s, sex().states.at("S1"))) {
            CHECK(d.tree.kind == DerivationKind::Narrowing);
            REQUIRE(d.tree.premises.size() == 1);
            CHECK(d.tree.premises[0].kind == DerivationKind::Contextualization);
            REQUIRE(d.tree.premises[0].premises.size() == 1);
            CHECK(d.tree.premises[0].premises[0].kind == DerivationKind::BasicAction);
        }
    }
}

TEST_CASE("equivalence of derivation and enumeration") {
    for (const char* corpus : {"sex.gts", "ccs.gts", "lafont.gts"}) {
        SystemDocument doc = oracles::load_corpus(corpus);
        Gts s = doc.gts();
        for (const auto& [name, st] : doc.states) {
            EquivalenceReport report = check_equivalence(s, st);
            CHECK_MESSAGE(report.equal, corpus, "/", name, " missing=", report.missing.size(),
                          " extra=", report.extra.size());
        }
    }
}

TEST_CASE("equivalence on randomized states") {
    oracles::Lcg rng;
    for (const char* corpus : {"sex.gts", "ccs.gts", "lafont.gts"}) {
        SystemDocument doc = oracles::load_corpus(corpus);
        Gts s = doc.gts();
        std::vector<Id> labels;
        for (const auto& [label, arity] : doc.alphabet.entries()) labels.push_back(label);
        for (int i = 0; i < 25; ++i) {
            Hypergraph g;
            int n = 1 + static_cast<int>(rng.next(4));
            for (int k = 0; k < n; ++k) g.add_node("v" + std::to_string(k));
            std::vector<Id> nodes(g.nodes().begin(), g.nodes().end());
            int m = static_cast<int>(rng.next(3));
            for (int k = 0; k < m; ++k) {
                const Id& label = labels[rng.next(static_cast<std::uint32_t>(labels.size()))];
                std::vector<Id> tent;
                for (int p = 0; p < *doc.alphabet.arity(label); ++p)
                    tent.push_back(nodes[rng.next(static_cast<std::uint32_t>(nodes.size()))]);
                g.add_edge("e" + std::to_string(k), label, tent);
            }
            Hypergraph interface_;
            for (const Id& v : g.nodes())
                if (rng.next(2) == 0) interface_.add_node(v);
            State st = State::make(interface_, g);
            EquivalenceReport report = check_equivalence(s, st);
            CHECK_MESSAGE(report.equal, corpus, ": random state ", to_string(g), " interface ",
                          to_string(interface_));
        }
    }
}

TEST_CASE("equivalence also holds with node-only matches enabled") {
    SystemDocument doc = oracles::load_corpus("sex.gts");
    Gts s = doc.gts();
    for (const char* name : {"S1", "S5", "SEmpty"}) {
        EquivalenceReport report = check_equivalence(s, doc.states.at(name), EnumOptions{true});
        CHECK(report.equal);
    }
}

TEST_CASE("mutant detection: a dropped derivation shows up as missing") {
    Gts s = sex().gts();
    const State& st = sex().states.at("S1");
    EnumerationResult enumerated = enumerate_transitions(s, st);
    std::vector<Transition> derived;
    for (const Derivation& d : derive_all(s, st)) derived.push_back(d.transition);
    REQUIRE(!derived.empty());
    derived.pop_back();
    EquivalenceReport report = compare_transition_sets(enumerated.transitions, derived);
    CHECK_FALSE(report.equal);
    CHECK(report.missing.size() == 1);
    CHECK(report.extra.empty());
}
