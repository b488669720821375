#pragma once

#include <string>
#include <vector>

#include "gtx/hypergraph.hpp"

namespace gtx {

/// Rewrite rule: a pair of non-overlapping inclusions left <- interface -> right.
struct Rule {
    std::string name;
    Hypergraph left;
    Hypergraph interface_;
    Hypergraph right;
};

ValidationReport validate_rule(const Rule& r, const LabelAlphabet& alphabet);

struct Gts {
    LabelAlphabet alphabet;
    std::vector<Rule> rules;

    /// Validates every rule against the alphabet; throws MatchError on errors.
    static Gts make(LabelAlphabet alphabet, std::vector<Rule> rules);

    const Rule& rule(const std::string& name) const;
    bool has_rule(const std::string& name) const;
};

/// A rule instance: an isomorphic copy of the rule whose graphs are usable
/// as literal subgraphs next to a given host. `map` carries the renaming on
/// the fused footprint left ∪ right.
struct RuleInstance {
    Hypergraph left;
    Hypergraph interface_;
    Hypergraph right;
    Morphism map;
};

/// Instantiate a rule pinning some of its elements to given host identifiers
/// (the pinned part must form a subgraph of left) and choosing fresh
/// identifiers for everything else, avoiding `avoid`.
RuleInstance instantiate_rule(const Rule& r, const std::map<Id, Id>& pin_nodes,
                              const std::map<Id, Id>& pin_edges, const Hypergraph& avoid);

struct RewriteStep {
    std::string rule;
    Morphism match;          // left -> host
    Hypergraph intermediate; // host with the matched obsolete part removed
    Hypergraph result;
};

/// Double-pushout step at a given injective match. Throws DanglingError when
/// the complement does not exist and MatchError for invalid matches.
RewriteStep rewrite(const Gts& s, const Hypergraph& host, const std::string& rule,
                    const Morphism& match);

/// All rewrite steps over all rules and all injective matches, in
/// deterministic order.
std::vector<RewriteStep> enumerate_rewrites(const Gts& s, const Hypergraph& host);

} // namespace gtx
