#include "gtx/gts.hpp"

#include <algorithm>
#include <set>

#include "gtx/colimit.hpp"
#include "gtx/errors.hpp"

namespace gtx {

ValidationReport validate_rule(const Rule& r, const LabelAlphabet& alphabet) {
    ValidationReport report;
    for (const Hypergraph* g : {&r.left, &r.interface_, &r.right}) {
        ValidationReport part = validate(*g, alphabet);
        for (auto& v : part.violations)
            report.violations.push_back("rule " + r.name + ": " + v);
    }
    if (!is_inclusion(r.interface_, r.left))
        report.violations.push_back("rule " + r.name + ": interface is not a subgraph of left");
    if (!is_inclusion(r.interface_, r.right))
        report.violations.push_back("rule " + r.name + ": interface is not a subgraph of right");
    if (!non_overlapping(r.interface_, r.left, r.right))
        report.violations.push_back("rule " + r.name + ": left and right overlap outside the interface");
    return report;
}

Gts Gts::make(LabelAlphabet alphabet, std::vector<Rule> rules) {
    std::set<std::string> names;
    for (const Rule& r : rules) {
        if (!names.insert(r.name).second)
            throw MatchError("duplicate rule name " + r.name);
        ValidationReport report = validate_rule(r, alphabet);
        if (!report.ok())
            throw MatchError(report.violations.front());
    }
    return Gts{std::move(alphabet), std::move(rules)};
}

const Rule& Gts::rule(const std::string& name) const {
    for (const Rule& r : rules)
        if (r.name == name) return r;
    throw MatchError("unknown rule " + name);
}

bool Gts::has_rule(const std::string& name) const {
    return std::any_of(rules.begin(), rules.end(),
                       [&](const Rule& r) { return r.name == name; });
}

RuleInstance instantiate_rule(const Rule& r, const std::map<Id, Id>& pin_nodes,
                              const std::map<Id, Id>& pin_edges, const Hypergraph& avoid) {
    Hypergraph footprint = union_graphs(r.left, r.right);
    std::map<Id, Id> node_map;
    std::map<Id, Id> edge_map;
    std::set<Id> taken_nodes = avoid.nodes();
    std::set<Id> taken_edges;
    for (const auto& [e, d] : avoid.edges()) taken_edges.insert(e);
    for (const auto& [x, y] : pin_nodes) taken_nodes.insert(y);
    for (const auto& [x, y] : pin_edges) taken_edges.insert(y);

    for (const Id& v : footprint.nodes()) {
        auto it = pin_nodes.find(v);
        if (it != pin_nodes.end()) {
            node_map[v] = it->second;
        } else {
            Id nv = fresh_id(v, taken_nodes, {});
            taken_nodes.insert(nv);
            node_map[v] = nv;
        }
    }
    for (const auto& [e, d] : footprint.edges()) {
        auto it = pin_edges.find(e);
        if (it != pin_edges.end()) {
            edge_map[e] = it->second;
        } else {
            Id ne = fresh_id(e, taken_edges, {});
            taken_edges.insert(ne);
            edge_map[e] = ne;
        }
    }

    auto apply = [&](const Hypergraph& g) {
        Hypergraph out;
        for (const Id& v : g.nodes()) out.add_node(node_map.at(v));
        for (const auto& [e, d] : g.edges()) {
            std::vector<Id> mapped;
            for (const Id& v : d.tentacles) mapped.push_back(node_map.at(v));
            out.add_edge(edge_map.at(e), d.label, mapped);
        }
        return out;
    };

    RuleInstance inst;
    inst.left = apply(r.left);
    inst.interface_ = apply(r.interface_);
    inst.right = apply(r.right);
    Hypergraph footprint_image = apply(footprint);
    inst.map = Morphism::make(std::move(footprint), std::move(footprint_image),
                              std::move(node_map), std::move(edge_map));
    if (!inst.map.is_injective())
        throw MatchError("rule instantiation pinning is not injective");
    return inst;
}

RewriteStep rewrite(const Gts& s, const Hypergraph& host, const std::string& rule,
                    const Morphism& match) {
    const Rule& r = s.rule(rule);
    if (match.source != r.left)
        throw MatchError("match source is not the rule's left-hand side");
    if (match.target != host)
        throw MatchError("match target is not the host graph");
    if (!match.is_injective())
        throw MatchError("match must be injective");

    // Instance whose left-hand side coincides with the match image; the
    // right-hand side gets fresh identifiers, so host <- interface -> right
    // is non-overlapping.
    RuleInstance inst = instantiate_rule(r, match.node_map, match.edge_map, host);
    Hypergraph intermediate = pushout_complement(inst.interface_, inst.left, host);
    Cospan glued = pushout(Span{inst.interface_, intermediate, inst.right});
    return RewriteStep{rule, match, std::move(intermediate), glued.apex};
}

std::vector<RewriteStep> enumerate_rewrites(const Gts& s, const Hypergraph& host) {
    std::vector<RewriteStep> steps;
    for (const Rule& r : s.rules)
        for (const Morphism& m : find_monos(r.left, host)) {
            try {
                steps.push_back(rewrite(s, host, r.name, m));
            } catch (const DanglingError&) {
                // no complement at this match
            }
        }
    return steps;
}

} // namespace gtx
