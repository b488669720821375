#include "gtx/colimit.hpp"

#include <algorithm>

#include "gtx/errors.hpp"

namespace gtx {

Span Span::make(Hypergraph base, Hypergraph left, Hypergraph right) {
    if (!is_inclusion(base, left) || !is_inclusion(base, right))
        throw MatchError("span legs must include the base");
    return Span{std::move(base), std::move(left), std::move(right)};
}

Cospan Cospan::make(Hypergraph left, Hypergraph right, Hypergraph apex) {
    if (!is_inclusion(left, apex) || !is_inclusion(right, apex))
        throw MatchError("cospan legs must embed in the apex");
    return Cospan{std::move(left), std::move(right), std::move(apex)};
}

Span intersection(const Cospan& c) {
    Hypergraph meet = intersect_graphs(c.left, c.right);
    return Span{std::move(meet), c.left, c.right};
}

bool non_overlapping(const Hypergraph& base, const Hypergraph& left, const Hypergraph& right) {
    for (const Id& v : left.nodes())
        if (right.has_node(v) && !base.has_node(v)) return false;
    for (const auto& [e, data] : left.edges())
        if (right.has_edge(e) && !base.has_edge(e)) return false;
    return true;
}

Cospan pushout(const Span& s) {
    for (const Id& v : s.left.nodes())
        if (s.right.has_node(v) && !s.base.has_node(v)) throw OverlapError(v);
    for (const auto& [e, data] : s.left.edges())
        if (s.right.has_edge(e) && !s.base.has_edge(e)) throw OverlapError(e);
    Hypergraph apex = union_graphs(s.left, s.right);
    return Cospan{s.left, s.right, std::move(apex)};
}

Hypergraph pushout_complement(const Hypergraph& g0, const Hypergraph& g1, const Hypergraph& g2) {
    if (!is_inclusion(g0, g1) || !is_inclusion(g1, g2))
        throw MatchError("pushout complement needs inclusions g0 -> g1 -> g2");
    for (const Id& v : g1.nodes()) {
        if (g0.has_node(v)) continue;
        for (const auto& [e, data] : g2.edges()) {
            if (g1.has_edge(e)) continue;
            if (std::find(data.tentacles.begin(), data.tentacles.end(), v) != data.tentacles.end())
                throw DanglingError(v, e);
        }
    }
    Hypergraph d;
    for (const Id& v : g2.nodes())
        if (!g1.has_node(v) || g0.has_node(v)) d.add_node(v);
    for (const auto& [e, data] : g2.edges())
        if (!g1.has_edge(e) || g0.has_edge(e)) d.add_edge(e, data.label, data.tentacles);

    // construct-and-check: pushing out again must reproduce g2 exactly
    Cospan back = pushout(Span{g0, g1, d});
    if (back.apex != g2)
        throw ValidationFailed("pushout complement failed its re-check");
    return d;
}

InitialPushoutResult initial_pushout(const Hypergraph& d, const Hypergraph& l) {
    if (!is_inclusion(d, l)) throw MatchError("initial pushout needs an inclusion");
    if (d == l) throw MatchError("initial pushout needs a proper inclusion");
    Hypergraph comp;
    for (const Id& v : l.nodes())
        if (!d.has_node(v)) comp.add_node(v);
    for (const auto& [e, data] : l.edges()) {
        if (d.has_edge(e)) continue;
        for (const Id& v : data.tentacles)
            comp.add_node(v);
    }
    for (const auto& [e, data] : l.edges())
        if (!d.has_edge(e)) comp.add_edge(e, data.label, data.tentacles);

    Hypergraph boundary = intersect_graphs(d, comp);
    if (!is_pushout_square(boundary, d, comp, l))
        throw ValidationFailed("initial pushout failed its re-check");
    return InitialPushoutResult{std::move(comp), std::move(boundary)};
}

Id fresh_id(const Id& base, const std::set<Id>& used_a, const std::set<Id>& used_b) {
    auto used = [&](const Id& id) { return used_a.contains(id) || used_b.contains(id); };
    if (!used(base)) return base;
    for (int k = 1;; ++k) {
        Id candidate = base + "_" + std::to_string(k);
        if (!used(candidate)) return candidate;
    }
}

RenamedCopy rename_apart(const Hypergraph& g, const Hypergraph& avoid, const Hypergraph& keep) {
    if (!is_inclusion(keep, g)) throw MatchError("keep must be a subgraph of g");
    std::map<Id, Id> node_map;
    std::map<Id, Id> edge_map;
    std::set<Id> taken_nodes = avoid.nodes();
    std::set<Id> taken_edges;
    for (const auto& [e, data] : avoid.edges()) taken_edges.insert(e);
    for (const Id& v : keep.nodes()) taken_nodes.insert(v);
    for (const auto& [e, data] : keep.edges()) taken_edges.insert(e);

    for (const Id& v : g.nodes()) {
        if (keep.has_node(v)) {
            node_map[v] = v;
        } else {
            Id nv = fresh_id(v, taken_nodes, {});
            taken_nodes.insert(nv);
            node_map[v] = nv;
        }
    }
    for (const auto& [e, data] : g.edges()) {
        if (keep.has_edge(e)) {
            edge_map[e] = e;
        } else {
            Id ne = fresh_id(e, taken_edges, {});
            taken_edges.insert(ne);
            edge_map[e] = ne;
        }
    }
    Hypergraph copy;
    for (const Id& v : g.nodes()) copy.add_node(node_map.at(v));
    for (const auto& [e, data] : g.edges()) {
        std::vector<Id> mapped;
        for (const Id& v : data.tentacles) mapped.push_back(node_map.at(v));
        copy.add_edge(edge_map.at(e), data.label, mapped);
    }
    return RenamedCopy{copy, Morphism::make(g, copy, std::move(node_map), std::move(edge_map))};
}

RenamedCopy rename_apart_pinned(const Hypergraph& g, const Hypergraph& avoid,
                                const std::map<Id, Id>& pin_nodes) {
    std::map<Id, Id> node_map;
    std::map<Id, Id> edge_map;
    std::set<Id> taken_nodes = avoid.nodes();
    std::set<Id> taken_edges;
    for (const auto& [e, data] : avoid.edges()) taken_edges.insert(e);
    for (const auto& [x, y] : pin_nodes) taken_nodes.insert(y);

    for (const Id& v : g.nodes()) {
        auto it = pin_nodes.find(v);
        if (it != pin_nodes.end()) {
            node_map[v] = it->second;
        } else {
            Id nv = fresh_id(v, taken_nodes, {});
            taken_nodes.insert(nv);
            node_map[v] = nv;
        }
    }
    for (const auto& [e, data] : g.edges()) {
        Id ne = fresh_id(e, taken_edges, {});
        taken_edges.insert(ne);
        edge_map[e] = ne;
    }
    Hypergraph copy;
    for (const Id& v : g.nodes()) copy.add_node(node_map.at(v));
    for (const auto& [e, data] : g.edges()) {
        std::vector<Id> mapped;
        for (const Id& v : data.tentacles) mapped.push_back(node_map.at(v));
        copy.add_edge(edge_map.at(e), data.label, mapped);
    }
    return RenamedCopy{copy, Morphism::make(g, copy, std::move(node_map), std::move(edge_map))};
}

bool is_pushout_square(const Hypergraph& base, const Hypergraph& left,
                       const Hypergraph& right, const Hypergraph& apex) {
    if (!is_inclusion(base, left) || !is_inclusion(base, right)) return false;
    if (!is_inclusion(left, apex) || !is_inclusion(right, apex)) return false;
    if (union_graphs(left, right) != apex) return false;
    return intersect_graphs(left, right) == base;
}

bool is_pullback_square(const Hypergraph& base, const Hypergraph& left,
                        const Hypergraph& right, const Hypergraph& apex) {
    if (!is_inclusion(base, left) || !is_inclusion(base, right)) return false;
    if (!is_inclusion(left, apex) || !is_inclusion(right, apex)) return false;
    return intersect_graphs(left, right) == base;
}

} // namespace gtx
