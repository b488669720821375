#pragma once

#include <compare>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace gtx {

/// Identifiers are opaque strings. Nodes and edges live in separate id spaces;
/// subgraph relations are witnessed by shared identifiers.
using Id = std::string;

struct Edge {
    Id label;
    std::vector<Id> tentacles;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Label name -> arity.
class LabelAlphabet {
public:
    LabelAlphabet() = default;
    LabelAlphabet(std::initializer_list<std::pair<const Id, int>> init) : entries_(init) {}

    void set(const Id& label, int arity);
    std::optional<int> arity(const Id& label) const;
    const std::map<Id, int>& entries() const { return entries_; }

    friend bool operator==(const LabelAlphabet&, const LabelAlphabet&) = default;

private:
    std::map<Id, int> entries_;
};

/// Finite labelled hypergraph. Every tentacle of every edge is a member of
/// the node set; the builder enforces this, validate() re-checks it together
/// with arities against an alphabet.
class Hypergraph {
public:
    Hypergraph() = default;

    void add_node(const Id& v);
    void add_edge(const Id& e, const Id& label, const std::vector<Id>& tentacles);
    void remove_node(const Id& v); // node must not be used by any edge
    void remove_edge(const Id& e);

    bool has_node(const Id& v) const { return nodes_.contains(v); }
    bool has_edge(const Id& e) const { return edges_.contains(e); }
    const Edge& edge(const Id& e) const;

    const std::set<Id>& nodes() const { return nodes_; }
    const std::map<Id, Edge>& edges() const { return edges_; }

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    bool empty() const { return nodes_.empty() && edges_.empty(); }

    friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

private:
    std::set<Id> nodes_;
    std::map<Id, Edge> edges_;
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

ValidationReport validate(const Hypergraph& g, const LabelAlphabet& alphabet);

/// Number of distinct edges incident to v. An edge mentioning v several
/// times in its tentacle list counts once.
int degree(const Hypergraph& g, const Id& v);

/// True iff sub's nodes and edges all occur in sup with identical labels
/// and tentacle lists.
bool is_inclusion(const Hypergraph& sub, const Hypergraph& sup);

/// Subgraph witnessed by shared identifiers.
struct Inclusion {
    Hypergraph sub;
    Hypergraph sup;

    static Inclusion make(Hypergraph sub, Hypergraph sup);
};

struct Morphism {
    Hypergraph source;
    Hypergraph target;
    std::map<Id, Id> node_map;
    std::map<Id, Id> edge_map;

    /// Validates totality, label preservation and tentacle commutation.
    /// Throws MatchError on violation.
    static Morphism make(Hypergraph source, Hypergraph target,
                         std::map<Id, Id> node_map, std::map<Id, Id> edge_map);

    bool is_injective() const;
    const Id& node_image(const Id& v) const;
    const Id& edge_image(const Id& e) const;
};

/// Image of a subgraph of m.source under m.
Hypergraph image(const Morphism& m, const Hypergraph& part);

/// All injective morphisms pattern -> host, sorted by their assignment maps.
std::vector<Morphism> find_monos(const Hypergraph& pattern, const Hypergraph& host);

/// All subgraphs: every edge subset together with every superset of its
/// incident nodes inside g. Deterministic order.
std::vector<Hypergraph> subgraphs(const Hypergraph& g);

// Set-level helpers; shared identifiers must agree on label and tentacles.
Hypergraph union_graphs(const Hypergraph& a, const Hypergraph& b);
Hypergraph intersect_graphs(const Hypergraph& a, const Hypergraph& b);

/// Compact single-line rendering, stable under identical input.
std::string to_string(const Hypergraph& g);

} // namespace gtx
