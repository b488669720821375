#include "gtx/composition.hpp"

#include <algorithm>
#include <set>

#include "gtx/canonical.hpp"
#include "gtx/colimit.hpp"
#include "gtx/errors.hpp"

namespace gtx {

std::vector<Hypergraph> rule_fragments(const Rule& r) {
    std::vector<Hypergraph> out;
    for (const Hypergraph& d : subgraphs(r.left)) {
        if (d == r.left) continue;
        if (d.edge_count() == 0) continue;
        bool covered = true;
        for (const Id& v : d.nodes())
            if (degree(d, v) == 0) {
                covered = false;
                break;
            }
        if (covered) out.push_back(d);
    }
    return out;
}

namespace {

std::string pair_key(const Hypergraph& whole, const Hypergraph& d, const Hypergraph& d_hat) {
    auto key_for = [&](const Hypergraph& first, const Hypergraph& second) {
        Coloring col;
        for (const Id& v : whole.nodes()) {
            std::string c;
            if (first.has_node(v)) c += "1";
            if (second.has_node(v)) c += "2";
            col.node[v] = c;
        }
        for (const auto& [e, data] : whole.edges()) {
            std::string c;
            if (first.has_edge(e)) c += "1";
            if (second.has_edge(e)) c += "2";
            col.edge[e] = c;
        }
        return canonical_key(whole, col);
    };
    return std::min(key_for(d, d_hat), key_for(d_hat, d));
}

} // namespace

std::vector<ActivePair> active_pairs(const Gts& s) {
    std::vector<ActivePair> out;
    std::set<std::string> seen;
    for (const Rule& r : s.rules) {
        for (const Hypergraph& d : rule_fragments(r)) {
            InitialPushoutResult ip = initial_pushout(d, r.left);
            Hypergraph whole = union_graphs(d, ip.complement);
            std::string key = pair_key(whole, d, ip.complement);
            if (!seen.insert(key).second) continue;
            out.push_back(ActivePair{r.name, d, ip.complement, ip.boundary});
        }
    }
    return out;
}

bool is_active_pair(const Rule& r, const Hypergraph& d, const Hypergraph& d_other) {
    auto matches = [&](const Hypergraph& a, const Hypergraph& b) {
        if (!is_inclusion(a, r.left) || a == r.left || a.edge_count() == 0) return false;
        for (const Id& v : a.nodes())
            if (degree(a, v) == 0) return false;
        return initial_pushout(a, r.left).complement == b;
    };
    return matches(d, d_other) || matches(d_other, d);
}

std::vector<Admissibility> admissible_rules(const Gts& s, const State& st,
                                            const Hypergraph& borrow_f) {
    if (!is_inclusion(st.interface_, borrow_f))
        throw MatchError("borrow must contain the state interface");
    if (intersect_graphs(st.graph, borrow_f) != st.interface_)
        throw MatchError("borrow must meet the state graph exactly in its interface");

    Cospan glued = pushout(Span{st.interface_, st.graph, borrow_f});
    const Hypergraph& g_c = glued.apex;

    std::vector<Admissibility> out;
    for (const Rule& r : s.rules) {
        if (!find_monos(r.left, st.graph).empty()) continue;
        std::vector<Hypergraph> fragments = rule_fragments(r);
        if (fragments.empty()) continue;
        for (const Morphism& phi : find_monos(r.left, g_c)) {
            for (const Hypergraph& d : fragments) {
                Hypergraph d_image = image(phi, d);
                if (!is_inclusion(d_image, borrow_f)) continue;
                InitialPushoutResult ip = initial_pushout(d, r.left);
                // the rest of the left-hand side must come from the state
                // itself: adding D is then enough to enable the rule
                if (!is_inclusion(image(phi, ip.complement), st.graph)) continue;
                std::map<Id, Id> routing;
                bool routed = true;
                for (const Id& v : ip.boundary.nodes()) {
                    const Id& img = phi.node_image(v);
                    if (!st.interface_.has_node(img)) {
                        routed = false;
                        break;
                    }
                    routing[v] = img;
                }
                if (!routed) continue;
                out.push_back(Admissibility{r.name, d, ip.boundary, phi, std::move(routing)});
            }
        }
    }
    return out;
}

std::vector<TauWitness> tau_compatible(const Gts& s, const Transition& t1,
                                       const Transition& t2) {
    if (is_silent(t1) || is_silent(t2))
        throw PreconditionViolated("tau-compatibility is defined for non-silent transitions");
    std::vector<Admissibility> adm1 = admissible_rules(s, t1.source, t1.label.f);
    std::vector<Admissibility> adm2 = admissible_rules(s, t2.source, t2.label.f);
    std::vector<TauWitness> out;
    for (const Admissibility& a1 : adm1)
        for (const Admissibility& a2 : adm2) {
            if (a1.rule != a2.rule) continue;
            if (!is_active_pair(s.rule(a1.rule), a1.addition, a2.addition)) continue;
            out.push_back(TauWitness{a1.rule, a1, a2});
        }
    return out;
}

bool is_simply_wired(const Hypergraph& g) {
    for (const Id& v : g.nodes())
        if (degree(g, v) > 2) return false;
    return true;
}

bool is_lafont_state(const State& st) {
    if (!is_simply_wired(st.graph)) return false;
    if (!st.interface_.edges().empty()) return false;
    for (const Id& v : st.interface_.nodes())
        if (degree(st.graph, v) > 1) return false;
    return true;
}

namespace {

// Activated pair: exactly two edges sharing exactly one node, which occurs
// exactly once in each tentacle list; no nodes beyond the tentacles.
bool is_activated_pair(const Hypergraph& l) {
    if (l.edge_count() != 2) return false;
    std::vector<const Edge*> es;
    for (const auto& [e, data] : l.edges()) es.push_back(&data);
    std::set<Id> touched;
    for (const Edge* e : es)
        for (const Id& v : e->tentacles) touched.insert(v);
    if (touched != l.nodes()) return false;
    std::vector<Id> shared;
    for (const Id& v : l.nodes()) {
        auto count = [&](const Edge* e) {
            return std::count(e->tentacles.begin(), e->tentacles.end(), v);
        };
        long c0 = count(es[0]);
        long c1 = count(es[1]);
        if (c0 > 0 && c1 > 0) {
            if (c0 != 1 || c1 != 1) return false;
            shared.push_back(v);
        }
    }
    return shared.size() == 1;
}

// Port pairing (label, index) <-> (label, index) of an activated pair.
std::pair<std::pair<Id, int>, std::pair<Id, int>> activated_ports(const Hypergraph& l) {
    std::vector<std::pair<Id, const Edge*>> es;
    for (const auto& [e, data] : l.edges()) es.emplace_back(e, &data);
    Id shared;
    for (const Id& v : l.nodes()) {
        bool in0 = std::find(es[0].second->tentacles.begin(), es[0].second->tentacles.end(), v) !=
                   es[0].second->tentacles.end();
        bool in1 = std::find(es[1].second->tentacles.begin(), es[1].second->tentacles.end(), v) !=
                   es[1].second->tentacles.end();
        if (in0 && in1) shared = v;
    }
    auto port = [&](const Edge* e) {
        for (std::size_t i = 0; i < e->tentacles.size(); ++i)
            if (e->tentacles[i] == shared) return static_cast<int>(i) + 1;
        return 0;
    };
    return {{es[0].second->label, port(es[0].second)}, {es[1].second->label, port(es[1].second)}};
}

} // namespace

SystemClass classify(const Gts& s, const std::vector<State>& corpus) {
    SystemClass cls;

    cls.interaction_system = true;
    for (const Rule& r : s.rules) {
        if (!is_activated_pair(r.left)) {
            cls.interaction_system = false;
            cls.notes["interaction_system"] =
                "rule " + r.name + ": left-hand side is not an activated pair";
            break;
        }
        for (const Id& v : r.left.nodes())
            if (!r.interface_.has_node(v)) {
                cls.interaction_system = false;
                cls.notes["interaction_system"] =
                    "rule " + r.name + " deletes node " + v;
                break;
            }
        if (!cls.interaction_system) break;
    }

    bool rules_simply_wired = true;
    for (const Rule& r : s.rules)
        for (const Hypergraph* g : {&r.left, &r.interface_, &r.right})
            if (!is_simply_wired(*g)) {
                rules_simply_wired = false;
                cls.notes["lafont"] = "rule " + r.name + " has a node of degree > 2";
            }

    cls.simply_wired_states = true;
    for (const State& st : corpus)
        if (!is_lafont_state(st)) {
            cls.simply_wired_states = false;
            cls.notes["simply_wired_states"] =
                "a corpus state is not simply wired with a free-vertex interface";
            break;
        }

    cls.lafont = cls.interaction_system && rules_simply_wired && cls.simply_wired_states;

    cls.partitioned = true;
    for (std::size_t i = 0; i < s.rules.size() && cls.partitioned; ++i)
        for (std::size_t k = i + 1; k < s.rules.size() && cls.partitioned; ++k) {
            const Hypergraph& l1 = s.rules[i].left;
            const Hypergraph& l2 = s.rules[k].left;
            if (canonical_key(l1) == canonical_key(l2)) continue;
            std::set<Id> labels1;
            for (const auto& [e, data] : l1.edges()) labels1.insert(data.label);
            for (const auto& [e, data] : l2.edges())
                if (labels1.contains(data.label)) {
                    cls.partitioned = false;
                    cls.notes["partitioned"] = "rules " + s.rules[i].name + " and " +
                                               s.rules[k].name + " share label " + data.label;
                }
        }

    cls.unique_partners = cls.interaction_system;
    if (cls.unique_partners) {
        std::map<std::pair<Id, int>, std::set<std::pair<Id, int>>> partner;
        for (const Rule& r : s.rules) {
            auto [p, q] = activated_ports(r.left);
            partner[p].insert(q);
            partner[q].insert(p);
        }
        for (const auto& [label, arity] : s.alphabet.entries())
            for (int i = 1; i <= arity && cls.unique_partners; ++i) {
                auto it = partner.find({label, i});
                if (it == partner.end() || it->second.size() != 1) {
                    cls.unique_partners = false;
                    cls.notes["unique_partners"] = "port " + label + "." + std::to_string(i) +
                                                   (it == partner.end() ? " has no partner"
                                                                        : " has several partners");
                }
            }
    }

    cls.complementarity_of_actions = true;
    cls.notes["complementarity_of_actions"] =
        "checked over " + std::to_string(corpus.size()) + " corpus states";
    for (const State& st : corpus) {
        EnumerationResult res = enumerate_transitions(s, st);
        std::map<std::string, std::set<std::string>> rules_per_transition;
        for (const Transition& t : res.raw)
            rules_per_transition[transition_key(t)].insert(t.witness->rule);
        for (const auto& [key, rules] : rules_per_transition)
            if (rules.size() != 1) {
                cls.complementarity_of_actions = false;
                cls.notes["complementarity_of_actions"] =
                    "a transition is justified by " + std::to_string(rules.size()) + " rules";
            }
    }
    return cls;
}

Rule unique_admissible_rule(const Gts& s, const Transition& t) {
    if (is_silent(t))
        throw PreconditionViolated("uniqueness applies to non-silent transitions");
    std::set<std::string> names;
    for (const Admissibility& a : admissible_rules(s, t.source, t.label.f))
        names.insert(a.rule);
    if (names.size() == 1) return s.rule(*names.begin());
    throw NotUnique(std::vector<std::string>(names.begin(), names.end()));
}

namespace {

// Diagrams of the transition's own enumeration whose instance embedding also
// witnesses the admissibility of `w` (addition lands in the borrow, minimal
// interface lands in the interface).
std::vector<Diagram> aligned_diagrams(const Gts& s, const Transition& t,
                                      const std::string& rule, const Hypergraph& addition,
                                      const Hypergraph& boundary) {
    std::vector<Diagram> out;
    std::string key = transition_key(t);
    EnumerationResult res = enumerate_transitions(s, t.source);
    for (const Transition& cand : res.raw) {
        if (!cand.witness || cand.witness->rule != rule) continue;
        if (transition_key(cand) != key) continue;
        const Diagram& d = *cand.witness;
        Hypergraph add_image = image(d.instance, addition);
        if (!is_inclusion(add_image, d.f)) continue;
        bool routed = true;
        for (const Id& v : boundary.nodes())
            if (!d.j.has_node(d.instance.node_image(v))) {
                routed = false;
                break;
            }
        if (routed) out.push_back(d);
    }
    return out;
}

struct GlueResult {
    State composed;
    Hypergraph h_bar;
    bool ok = false;
};

// Glue the two diagrams' worlds, identifying the rule instances with each
// other and keeping everything else apart.
GlueResult glue_worlds(const Rule& rule, const Diagram& d1, const Diagram& d2,
                       const Hypergraph& boundary) {
    GlueResult out;

    // Shared footprints must only overlap in the glue on the state side.
    Hypergraph m_both = intersect_graphs(d1.partial_match_rule, d2.partial_match_rule);
    if (!is_inclusion(m_both, boundary)) return out;

    std::set<Id> taken_nodes = d1.g_c.nodes();
    for (const Id& v : d1.h.nodes()) taken_nodes.insert(v);
    std::set<Id> taken_edges;
    for (const auto& [e, data] : d1.g_c.edges()) taken_edges.insert(e);
    for (const auto& [e, data] : d1.h.edges()) taken_edges.insert(e);

    std::map<Id, Id> psi_nodes;
    std::map<Id, Id> psi_edges;
    for (const Id& v : d2.instance.source.nodes())
        psi_nodes[d2.instance.node_image(v)] = d1.instance.node_image(v);
    for (const auto& [e, data] : d2.instance.source.edges())
        psi_edges[d2.instance.edge_image(e)] = d1.instance.edge_image(e);

    auto map_node = [&](const Id& v) {
        auto it = psi_nodes.find(v);
        if (it != psi_nodes.end()) return it->second;
        Id nv = fresh_id(v, taken_nodes, {});
        taken_nodes.insert(nv);
        psi_nodes[v] = nv;
        return nv;
    };
    auto map_edge = [&](const Id& e) {
        auto it = psi_edges.find(e);
        if (it != psi_edges.end()) return it->second;
        Id ne = fresh_id(e, taken_edges, {});
        taken_edges.insert(ne);
        psi_edges[e] = ne;
        return ne;
    };
    auto map_graph = [&](const Hypergraph& g) {
        Hypergraph renamed;
        for (const Id& v : g.nodes()) renamed.add_node(map_node(v));
        for (const auto& [e, data] : g.edges()) {
            std::vector<Id> mapped;
            for (const Id& v : data.tentacles) mapped.push_back(map_node(v));
            renamed.add_edge(map_edge(e), data.label, mapped);
        }
        return renamed;
    };

    Hypergraph g2_renamed = map_graph(d2.g);
    Hypergraph glue_image;
    for (const Id& v : boundary.nodes()) glue_image.add_node(d1.instance.node_image(v));
    if (intersect_graphs(d1.g, g2_renamed) != glue_image) return out;

    Hypergraph g_bar = union_graphs(d1.g, g2_renamed);
    Hypergraph j_bar = union_graphs(d1.j, map_graph(d2.j));

    Hypergraph h2_renamed = map_graph(d2.h);
    Hypergraph r_image = image(d1.instance, rule.right);
    if (intersect_graphs(d1.h, h2_renamed) != r_image) return out;
    Hypergraph h_bar = union_graphs(d1.h, h2_renamed);

    if (!is_inclusion(j_bar, g_bar) || !is_inclusion(j_bar, h_bar)) return out;
    out.composed = State{j_bar, g_bar};
    out.h_bar = std::move(h_bar);
    out.ok = true;
    return out;
}

} // namespace

State glue_sources(const Transition& t1, const Transition& t2, const TauWitness& w) {
    if (w.first.routing.size() != w.second.routing.size())
        throw IncompatibleDiagrams("witness routings disagree on the minimal interface");
    std::map<Id, Id> pins; // second state's interface node -> first state's
    for (const auto& [v, a] : w.first.routing) {
        const Id& b = w.second.routing.at(v);
        pins[b] = a;
    }
    Hypergraph avoid = union_graphs(t1.source.graph, t1.source.interface_);
    RenamedCopy copy = rename_apart_pinned(t2.source.graph, avoid, pins);
    Hypergraph g_bar = union_graphs(t1.source.graph, copy.graph);
    Hypergraph j_bar = union_graphs(t1.source.interface_, image(copy.iso, t2.source.interface_));
    return State::make(j_bar, g_bar);
}

std::vector<TauComposition> tau_composition_candidates(const Gts& s, const Transition& t1,
                                                       const Transition& t2,
                                                       const TauWitness& w) {
    const Rule& rule = s.rule(w.rule);
    InitialPushoutResult ip = initial_pushout(w.first.addition, rule.left);
    std::vector<TauComposition> out;
    for (const Diagram& d1 : aligned_diagrams(s, t1, w.rule, w.first.addition, ip.boundary))
        for (const Diagram& d2 : aligned_diagrams(s, t2, w.rule, w.second.addition, ip.boundary)) {
            GlueResult glue = glue_worlds(rule, d1, d2, ip.boundary);
            if (!glue.ok) continue;
            Transition predicted;
            predicted.source = glue.composed;
            predicted.label = Label{glue.composed.interface_, glue.composed.interface_,
                                    glue.composed.interface_};
            predicted.target = State{glue.composed.interface_, glue.h_bar};
            out.push_back(TauComposition{glue.composed, std::move(predicted)});
        }
    return out;
}

Transition compose_tau(const Gts& s, const Transition& t1, const Transition& t2) {
    if (is_silent(t1) || is_silent(t2))
        throw PreconditionViolated("composition applies to non-silent transitions");
    SystemClass cls = classify(s, {t1.source, t2.source});
    // In the Lafont discipline the whole transition must stay inside the
    // subcategory of simply wired graphs with free-vertex interfaces.
    bool lafont_ok = cls.lafont && cls.partitioned && is_lafont_state(t1.target) &&
                     is_lafont_state(t2.target);
    if (!(lafont_ok || cls.unique_partners))
        throw PreconditionViolated(
            "system is neither partitioned Lafont nor an interaction system with unique partners");

    std::vector<TauWitness> witnesses = tau_compatible(s, t1, t2);
    if (witnesses.empty())
        throw PreconditionViolated("rule additions do not form an active pair of a common rule");

    for (const TauWitness& w : witnesses) {
        for (const TauComposition& cand : tau_composition_candidates(s, t1, t2, w)) {
            std::string wanted = transition_key(cand.transition);
            EnumerationResult res = enumerate_transitions(s, cand.composed);
            for (const Transition& found : res.transitions)
                if (transition_key(found) == wanted) {
                    Transition result = cand.transition;
                    result.witness = found.witness;
                    return result;
                }
        }
    }
    throw ValidationFailed("composed silent transition not found in the enumeration");
}

ComposedTau communication_rule(const Gts& s, const Transition& t1, const Transition& t2,
                               const SystemClass& cls) {
    if (!(cls.complementarity_of_actions || (cls.lafont && cls.partitioned) ||
          cls.unique_partners))
        throw PreconditionViolated("system lacks complementarity of actions");
    if (tau_compatible(s, t1, t2).empty())
        throw NotTauCompatible("transitions are not tau-compatible");
    Transition composed = compose_tau(s, t1, t2);
    DerivationTree left{DerivationKind::Premise, t1, {}, {}, {}, std::nullopt, std::nullopt};
    DerivationTree right{DerivationKind::Premise, t2, {}, {}, {}, std::nullopt, std::nullopt};
    DerivationTree tree{DerivationKind::Communication, composed, {left, right}, {}, {},
                        std::nullopt, std::nullopt};
    return ComposedTau{composed, std::move(tree)};
}

} // namespace gtx
