#include "gtx/hypergraph.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "gtx/errors.hpp"

namespace gtx {

void LabelAlphabet::set(const Id& label, int arity) {
    if (arity < 0) throw std::invalid_argument("arity must be non-negative for label " + label);
    entries_[label] = arity;
}

std::optional<int> LabelAlphabet::arity(const Id& label) const {
    auto it = entries_.find(label);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void Hypergraph::add_node(const Id& v) { nodes_.insert(v); }

void Hypergraph::add_edge(const Id& e, const Id& label, const std::vector<Id>& tentacles) {
    if (edges_.contains(e)) throw std::invalid_argument("duplicate edge id " + e);
    for (const Id& v : tentacles)
        if (!nodes_.contains(v))
            throw std::invalid_argument("edge " + e + " references unknown node " + v);
    edges_.emplace(e, Edge{label, tentacles});
}

void Hypergraph::remove_node(const Id& v) {
    for (const auto& [e, data] : edges_)
        for (const Id& t : data.tentacles)
            if (t == v) throw std::invalid_argument("node " + v + " still used by edge " + e);
    nodes_.erase(v);
}

void Hypergraph::remove_edge(const Id& e) { edges_.erase(e); }

const Edge& Hypergraph::edge(const Id& e) const {
    auto it = edges_.find(e);
    if (it == edges_.end()) throw std::invalid_argument("unknown edge id " + e);
    return it->second;
}

ValidationReport validate(const Hypergraph& g, const LabelAlphabet& alphabet) {
    ValidationReport report;
    for (const auto& [e, data] : g.edges()) {
        auto ar = alphabet.arity(data.label);
        if (!ar) {
            report.violations.push_back("unknown label '" + data.label + "' at " + e);
            continue;
        }
        if (static_cast<std::size_t>(*ar) != data.tentacles.size())
            report.violations.push_back("arity mismatch at " + e);
        for (const Id& v : data.tentacles)
            if (!g.has_node(v))
                report.violations.push_back("tentacle '" + v + "' of " + e + " is not a node");
    }
    return report;
}

int degree(const Hypergraph& g, const Id& v) {
    if (!g.has_node(v)) throw std::invalid_argument("unknown node id " + v);
    int deg = 0;
    for (const auto& [e, data] : g.edges())
        if (std::find(data.tentacles.begin(), data.tentacles.end(), v) != data.tentacles.end())
            ++deg;
    return deg;
}

bool is_inclusion(const Hypergraph& sub, const Hypergraph& sup) {
    for (const Id& v : sub.nodes())
        if (!sup.has_node(v)) return false;
    for (const auto& [e, data] : sub.edges()) {
        if (!sup.has_edge(e)) return false;
        if (sup.edge(e) != data) return false;
    }
    return true;
}

Inclusion Inclusion::make(Hypergraph sub, Hypergraph sup) {
    if (!is_inclusion(sub, sup))
        throw MatchError("not an inclusion");
    return Inclusion{std::move(sub), std::move(sup)};
}

Morphism Morphism::make(Hypergraph source, Hypergraph target,
                        std::map<Id, Id> node_map, std::map<Id, Id> edge_map) {
    for (const Id& v : source.nodes()) {
        auto it = node_map.find(v);
        if (it == node_map.end()) throw MatchError("node map not total at " + v);
        if (!target.has_node(it->second)) throw MatchError("node image missing: " + it->second);
    }
    for (const auto& [e, data] : source.edges()) {
        auto it = edge_map.find(e);
        if (it == edge_map.end()) throw MatchError("edge map not total at " + e);
        if (!target.has_edge(it->second)) throw MatchError("edge image missing: " + it->second);
        const Edge& img = target.edge(it->second);
        if (img.label != data.label) throw MatchError("label not preserved at " + e);
        if (img.tentacles.size() != data.tentacles.size())
            throw MatchError("tentacle count mismatch at " + e);
        for (std::size_t i = 0; i < data.tentacles.size(); ++i)
            if (img.tentacles[i] != node_map.at(data.tentacles[i]))
                throw MatchError("tentacles do not commute at " + e);
    }
    return Morphism{std::move(source), std::move(target), std::move(node_map), std::move(edge_map)};
}

bool Morphism::is_injective() const {
    std::set<Id> seen;
    for (const auto& [v, img] : node_map)
        if (source.has_node(v) && !seen.insert(img).second) return false;
    seen.clear();
    for (const auto& [e, img] : edge_map)
        if (source.has_edge(e) && !seen.insert(img).second) return false;
    return true;
}

const Id& Morphism::node_image(const Id& v) const {
    auto it = node_map.find(v);
    if (it == node_map.end()) throw std::invalid_argument("no image for node " + v);
    return it->second;
}

const Id& Morphism::edge_image(const Id& e) const {
    auto it = edge_map.find(e);
    if (it == edge_map.end()) throw std::invalid_argument("no image for edge " + e);
    return it->second;
}

Hypergraph image(const Morphism& m, const Hypergraph& part) {
    Hypergraph out;
    for (const Id& v : part.nodes()) out.add_node(m.node_image(v));
    for (const auto& [e, data] : part.edges()) {
        std::vector<Id> mapped;
        mapped.reserve(data.tentacles.size());
        for (const Id& v : data.tentacles) mapped.push_back(m.node_image(v));
        out.add_edge(m.edge_image(e), data.label, mapped);
    }
    return out;
}

namespace {

struct MonoSearch {
    const Hypergraph& pattern;
    const Hypergraph& host;
    std::vector<Id> pattern_edges;
    std::map<Id, Id> nodes;
    std::map<Id, Id> edges;
    std::set<Id> used_host_nodes;
    std::set<Id> used_host_edges;
    std::vector<Morphism>* out;

    bool bind_node(const Id& from, const Id& to, std::vector<Id>& bound) {
        auto it = nodes.find(from);
        if (it != nodes.end()) return it->second == to;
        if (used_host_nodes.contains(to)) return false;
        nodes.emplace(from, to);
        used_host_nodes.insert(to);
        bound.push_back(from);
        return true;
    }

    void unbind(const std::vector<Id>& bound) {
        for (const Id& v : bound) {
            used_host_nodes.erase(nodes.at(v));
            nodes.erase(v);
        }
    }

    void assign_edges(std::size_t idx) {
        if (idx == pattern_edges.size()) {
            assign_free_nodes(pattern.nodes().begin());
            return;
        }
        const Id& pe = pattern_edges[idx];
        const Edge& pdata = pattern.edge(pe);
        for (const auto& [he, hdata] : host.edges()) {
            if (hdata.label != pdata.label) continue;
            if (hdata.tentacles.size() != pdata.tentacles.size()) continue;
            if (used_host_edges.contains(he)) continue;
            std::vector<Id> bound;
            bool fits = true;
            for (std::size_t i = 0; i < pdata.tentacles.size() && fits; ++i)
                fits = bind_node(pdata.tentacles[i], hdata.tentacles[i], bound);
            if (fits) {
                edges.emplace(pe, he);
                used_host_edges.insert(he);
                assign_edges(idx + 1);
                used_host_edges.erase(he);
                edges.erase(pe);
            }
            unbind(bound);
        }
    }

    void assign_free_nodes(std::set<Id>::const_iterator it) {
        while (it != pattern.nodes().end() && nodes.contains(*it)) ++it;
        if (it == pattern.nodes().end()) {
            out->push_back(Morphism{pattern, host, nodes, edges});
            return;
        }
        const Id v = *it;
        for (const Id& hv : host.nodes()) {
            if (used_host_nodes.contains(hv)) continue;
            nodes.emplace(v, hv);
            used_host_nodes.insert(hv);
            assign_free_nodes(std::next(it));
            used_host_nodes.erase(hv);
            nodes.erase(v);
        }
    }
};

} // namespace

std::vector<Morphism> find_monos(const Hypergraph& pattern, const Hypergraph& host) {
    std::vector<Morphism> out;
    MonoSearch search{pattern, host, {}, {}, {}, {}, {}, &out};
    for (const auto& [e, data] : pattern.edges()) search.pattern_edges.push_back(e);
    search.assign_edges(0);
    std::sort(out.begin(), out.end(), [](const Morphism& a, const Morphism& b) {
        if (a.node_map != b.node_map) return a.node_map < b.node_map;
        return a.edge_map < b.edge_map;
    });
    return out;
}

std::vector<Hypergraph> subgraphs(const Hypergraph& g) {
    std::vector<Id> edge_ids;
    for (const auto& [e, data] : g.edges()) edge_ids.push_back(e);
    std::vector<Hypergraph> out;
    const std::size_t m = edge_ids.size();
    for (std::size_t emask = 0; emask < (std::size_t{1} << m); ++emask) {
        std::set<Id> incident;
        for (std::size_t i = 0; i < m; ++i)
            if (emask & (std::size_t{1} << i))
                for (const Id& v : g.edge(edge_ids[i]).tentacles) incident.insert(v);
        std::vector<Id> free_nodes;
        for (const Id& v : g.nodes())
            if (!incident.contains(v)) free_nodes.push_back(v);
        const std::size_t k = free_nodes.size();
        for (std::size_t nmask = 0; nmask < (std::size_t{1} << k); ++nmask) {
            Hypergraph sub;
            for (const Id& v : incident) sub.add_node(v);
            for (std::size_t i = 0; i < k; ++i)
                if (nmask & (std::size_t{1} << i)) sub.add_node(free_nodes[i]);
            for (std::size_t i = 0; i < m; ++i)
                if (emask & (std::size_t{1} << i)) {
                    const Edge& data = g.edge(edge_ids[i]);
                    sub.add_edge(edge_ids[i], data.label, data.tentacles);
                }
            out.push_back(std::move(sub));
        }
    }
    return out;
}

Hypergraph union_graphs(const Hypergraph& a, const Hypergraph& b) {
    Hypergraph out = a;
    for (const Id& v : b.nodes()) out.add_node(v);
    for (const auto& [e, data] : b.edges()) {
        if (out.has_edge(e)) {
            if (out.edge(e) != data)
                throw std::logic_error("inconsistent union at edge " + e);
        } else {
            out.add_edge(e, data.label, data.tentacles);
        }
    }
    return out;
}

Hypergraph intersect_graphs(const Hypergraph& a, const Hypergraph& b) {
    Hypergraph out;
    for (const Id& v : a.nodes())
        if (b.has_node(v)) out.add_node(v);
    for (const auto& [e, data] : a.edges()) {
        if (!b.has_edge(e)) continue;
        if (b.edge(e) != data)
            throw std::logic_error("inconsistent intersection at edge " + e);
        out.add_edge(e, data.label, data.tentacles);
    }
    return out;
}

std::string to_string(const Hypergraph& g) {
    std::ostringstream os;
    os << "{nodes";
    for (const Id& v : g.nodes()) os << ' ' << v;
    os << ";";
    for (const auto& [e, data] : g.edges()) {
        os << ' ' << e << '=' << data.label << '(';
        bool first = true;
        for (const Id& v : data.tentacles) {
            if (!first) os << ' ';
            os << v;
            first = false;
        }
        os << ')';
    }
    os << '}';
    return os.str();
}

} // namespace gtx
