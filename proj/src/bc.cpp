#include "gtx/bc.hpp"

#include <algorithm>
#include <map>

#include "gtx/canonical.hpp"
#include "gtx/colimit.hpp"
#include "gtx/errors.hpp"

namespace gtx {

State State::make(Hypergraph interface_, Hypergraph graph) {
    if (!is_inclusion(interface_, graph))
        throw MatchError("state interface is not a subgraph of the state graph");
    return State{std::move(interface_), std::move(graph)};
}

Label Label::make(Hypergraph j, Hypergraph f, Hypergraph k) {
    if (!is_inclusion(j, f) || !is_inclusion(k, f))
        throw MatchError("label legs must be subgraphs of the borrowed graph");
    return Label{std::move(j), std::move(f), std::move(k)};
}

bool is_silent(const Label& lbl) { return lbl.j == lbl.f && lbl.f == lbl.k; }
bool is_silent(const Transition& t) { return is_silent(t.label); }

bool Diagram::verify(std::string* why) const {
    auto fail = [&](const char* msg) {
        if (why) *why = msg;
        return false;
    };
    if (!is_pushout_square(partial_match_image, l, g, g_c))
        return fail("partial match square is not a pushout");
    if (!is_pushout_square(j, f, g, g_c))
        return fail("interface square is not a pushout");
    if (!is_pushout_square(i, l, c, g_c))
        return fail("complement square is not a pushout");
    if (!is_pushout_square(i, r, c, h))
        return fail("result square is not a pushout");
    if (!is_pullback_square(k, f, c, g_c))
        return fail("new-interface square is not a pullback");
    return true;
}

Transition transition_of(const Diagram& d) {
    Transition t;
    t.source = State{d.j, d.g};
    t.label = Label{d.j, d.f, d.k};
    t.target = State{d.k, d.h};
    t.witness = d;
    return t;
}

std::optional<Diagram> try_borrow_step(const State& st, const Rule& rule,
                                       const Hypergraph& d_rule,
                                       const std::map<Id, Id>& mono_nodes,
                                       const std::map<Id, Id>& mono_edges,
                                       SkipRecord* skip) {
    auto reject = [&](const std::string& reason, const std::string& detail) {
        if (skip) *skip = SkipRecord{rule.name, reason, detail};
        return std::nullopt;
    };
    if (!is_inclusion(d_rule, rule.left))
        throw MatchError("partial match must be a subgraph of the rule's left-hand side");

    const Hypergraph& g = st.graph;
    const Hypergraph& j = st.interface_;

    Morphism mono = Morphism::make(d_rule, g, mono_nodes, mono_edges);
    if (!mono.is_injective())
        throw MatchError("partial match occurrence must be injective");
    RuleInstance inst = instantiate_rule(rule, mono_nodes, mono_edges, g);
    Hypergraph d_image = image(mono, d_rule);

    Cospan glued = pushout(Span{d_image, g, inst.left});
    const Hypergraph& g_c = glued.apex;

    // F is determined: the interface plus everything the environment adds.
    Hypergraph f = j;
    for (const Id& v : g_c.nodes())
        if (!g.has_node(v)) f.add_node(v);
    for (const auto& [e, data] : g_c.edges()) {
        if (g.has_edge(e)) continue;
        for (const Id& v : data.tentacles)
            f.add_node(v);
    }
    for (const auto& [e, data] : g_c.edges())
        if (!g.has_edge(e)) f.add_edge(e, data.label, data.tentacles);

    if (intersect_graphs(g, f) != j)
        return reject("interface", "a borrowed edge attaches outside the interface");

    Hypergraph c;
    try {
        c = pushout_complement(inst.interface_, inst.left, g_c);
    } catch (const DanglingError& err) {
        return reject("dangling", err.what());
    }

    Hypergraph k = intersect_graphs(f, c);
    Cospan result = pushout(Span{inst.interface_, c, inst.right});

    Diagram diagram;
    diagram.rule = rule.name;
    diagram.partial_match_rule = d_rule;
    diagram.partial_match_image = std::move(d_image);
    diagram.instance = inst.map;
    diagram.l = inst.left;
    diagram.i = inst.interface_;
    diagram.r = inst.right;
    diagram.g = g;
    diagram.g_c = g_c;
    diagram.c = std::move(c);
    diagram.h = result.apex;
    diagram.j = j;
    diagram.f = std::move(f);
    diagram.k = std::move(k);

    std::string why;
    if (!diagram.verify(&why))
        throw ValidationFailed("borrowed-context step failed its re-check: " + why);
    return diagram;
}

EnumerationResult enumerate_transitions(const Gts& s, const State& st, const EnumOptions& opts) {
    EnumerationResult result;
    std::map<std::string, Transition> dedup;
    for (const Rule& rule : s.rules) {
        for (const Hypergraph& d : subgraphs(rule.left)) {
            bool full = d == rule.left;
            if (!full && d.edge_count() == 0 && !opts.allow_node_only_matches)
                continue;
            for (const Morphism& m : find_monos(d, st.graph)) {
                SkipRecord skip;
                auto diagram = try_borrow_step(st, rule, d, m.node_map, m.edge_map, &skip);
                if (!diagram) {
                    result.skips.push_back(skip);
                    continue;
                }
                Transition t = transition_of(*diagram);
                result.raw.push_back(t);
                dedup.emplace(transition_key(t), std::move(t));
            }
        }
    }
    for (auto& [key, t] : dedup) result.transitions.push_back(std::move(t));
    return result;
}

Diagram compose_diagrams(const Gts& s, const Diagram& d1, const Diagram& d2) {
    if (d1.rule != d2.rule)
        throw IncompatibleDiagrams("diagrams use different rules");
    const Rule& rule = s.rule(d1.rule);
    if (d1.partial_match_rule == rule.left)
        throw IncompatibleDiagrams("first partial match is the whole left-hand side");

    InitialPushoutResult ip = initial_pushout(d1.partial_match_rule, rule.left);
    const Hypergraph& boundary = ip.boundary; // edge-free by construction

    // Intersection of the partial matches must not exceed the glue.
    Hypergraph both = intersect_graphs(d1.partial_match_rule, d2.partial_match_rule);
    if (!is_inclusion(both, boundary))
        throw IncompatibleDiagrams("partial matches overlap outside the minimal interface");

    std::map<Id, Id> glue; // ids of d2's world -> ids of d1's world
    for (const Id& v : boundary.nodes()) {
        const Id& a = d1.instance.node_image(v);
        const Id& b = d2.instance.node_image(v);
        if (!d1.j.has_node(a))
            throw IncompatibleDiagrams("minimal interface does not land in the first interface");
        if (!d2.j.has_node(b))
            throw IncompatibleDiagrams("minimal interface does not land in the second interface");
        glue[b] = a;
    }

    std::set<Id> taken_nodes = d1.g.nodes();
    for (const Id& v : d1.g_c.nodes()) taken_nodes.insert(v);
    for (const Id& v : d1.h.nodes()) taken_nodes.insert(v);
    std::set<Id> taken_edges;
    for (const auto& [e, data] : d1.g.edges()) taken_edges.insert(e);
    for (const auto& [e, data] : d1.g_c.edges()) taken_edges.insert(e);
    for (const auto& [e, data] : d1.h.edges()) taken_edges.insert(e);

    std::map<Id, Id> psi_nodes = glue;
    std::map<Id, Id> psi_edges;
    auto rename_node = [&](const Id& v) {
        auto it = psi_nodes.find(v);
        if (it != psi_nodes.end()) return it->second;
        Id nv = fresh_id(v, taken_nodes, {});
        taken_nodes.insert(nv);
        psi_nodes[v] = nv;
        return nv;
    };
    auto rename_edge = [&](const Id& e) {
        auto it = psi_edges.find(e);
        if (it != psi_edges.end()) return it->second;
        Id ne = fresh_id(e, taken_edges, {});
        taken_edges.insert(ne);
        psi_edges[e] = ne;
        return ne;
    };
    auto rename_graph = [&](const Hypergraph& gr) {
        Hypergraph out;
        for (const Id& v : gr.nodes()) out.add_node(rename_node(v));
        for (const auto& [e, data] : gr.edges()) {
            std::vector<Id> mapped;
            for (const Id& v : data.tentacles) mapped.push_back(rename_node(v));
            out.add_edge(rename_edge(e), data.label, mapped);
        }
        return out;
    };

    Hypergraph g_bar = union_graphs(d1.g, rename_graph(d2.g));
    Hypergraph j_bar = union_graphs(d1.j, rename_graph(d2.j));
    State composed = State::make(j_bar, g_bar);

    Hypergraph d_bar = union_graphs(d1.partial_match_rule, d2.partial_match_rule);
    std::map<Id, Id> mono_nodes;
    std::map<Id, Id> mono_edges;
    for (const Id& v : d_bar.nodes())
        mono_nodes[v] = d1.partial_match_rule.has_node(v)
                            ? d1.instance.node_image(v)
                            : psi_nodes.at(d2.instance.node_image(v));
    for (const auto& [e, data] : d_bar.edges())
        mono_edges[e] = d1.partial_match_rule.has_edge(e)
                            ? d1.instance.edge_image(e)
                            : psi_edges.at(d2.instance.edge_image(e));

    Morphism mono = Morphism::make(d_bar, g_bar, mono_nodes, mono_edges);
    if (!mono.is_injective())
        throw IncompatibleDiagrams("combined partial match is not injective");

    SkipRecord skip;
    auto diagram = try_borrow_step(composed, rule, d_bar, mono_nodes, mono_edges, &skip);
    if (!diagram)
        throw IncompatibleDiagrams("composite step rejected: " + skip.reason);
    return *diagram;
}

namespace {

Coloring transition_coloring(const Transition& t, const Hypergraph& u) {
    Coloring col;
    const Hypergraph& j = t.label.j;
    const Hypergraph& f = t.label.f;
    const Hypergraph& k = t.label.k;
    const Hypergraph& h = t.target.graph;
    for (const Id& v : u.nodes()) {
        std::string c;
        if (j.has_node(v)) c += "J=" + v + ";";
        if (f.has_node(v)) c += "F";
        if (k.has_node(v)) c += "K";
        if (h.has_node(v)) c += "H";
        col.node[v] = c;
    }
    for (const auto& [e, data] : u.edges()) {
        std::string c;
        if (j.has_edge(e)) c += "J=" + e + ";";
        if (f.has_edge(e)) c += "F";
        if (k.has_edge(e)) c += "K";
        if (h.has_edge(e)) c += "H";
        col.edge[e] = c;
    }
    return col;
}

} // namespace

std::string transition_key(const Transition& t) {
    Hypergraph u = union_graphs(t.label.f, t.target.graph);
    return canonical_key(u, transition_coloring(t, u));
}

std::string state_key(const State& st) {
    Coloring col;
    for (const Id& v : st.graph.nodes())
        col.node[v] = st.interface_.has_node(v) ? "J" : "";
    for (const auto& [e, data] : st.graph.edges())
        col.edge[e] = st.interface_.has_edge(e) ? "J" : "";
    return canonical_key(st.graph, col);
}

} // namespace gtx
