#pragma once

#include <map>
#include <string>

#include "gtx/hypergraph.hpp"

namespace gtx {

/// Optional colors constraining which relabelings count as isomorphisms:
/// only color-preserving bijections are considered. Unlisted ids have the
/// empty color.
struct Coloring {
    std::map<Id, std::string> node;
    std::map<Id, std::string> edge;
};

struct CanonicalResult {
    Hypergraph graph;           // identifiers normalized to n0..., e0...
    std::string key;            // equal keys <=> color-respecting isomorphism exists
    std::map<Id, Id> node_map;  // original -> canonical
    std::map<Id, Id> edge_map;
};

/// Canonical form computed by color refinement followed by exhaustive search
/// over the refined cells. Intended for desk-scale graphs.
CanonicalResult canonicalize(const Hypergraph& g, const Coloring& coloring = {});

std::string canonical_key(const Hypergraph& g, const Coloring& coloring = {});

/// Canonical form with normalized identifiers; two graphs have identical
/// canonical forms iff they are isomorphic.
Hypergraph iso_canonical(const Hypergraph& g);

bool are_isomorphic(const Hypergraph& a, const Hypergraph& b);

} // namespace gtx
