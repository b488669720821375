#pragma once

#include "gtx/hypergraph.hpp"

namespace gtx {

/// Pair of inclusions out of a common subgraph: left <- base -> right.
struct Span {
    Hypergraph base;
    Hypergraph left;
    Hypergraph right;

    static Span make(Hypergraph base, Hypergraph left, Hypergraph right);
};

/// Pair of inclusions into a common graph: left -> apex <- right.
struct Cospan {
    Hypergraph left;
    Hypergraph right;
    Hypergraph apex;

    static Cospan make(Hypergraph left, Hypergraph right, Hypergraph apex);
};

/// Intersection of the two legs inside the apex; the resulting square is a
/// pullback.
Span intersection(const Cospan& c);

/// Union along the shared base. The legs must be non-overlapping (anything
/// they share lies in the base); otherwise OverlapError.
Cospan pushout(const Span& s);

bool non_overlapping(const Hypergraph& base, const Hypergraph& left, const Hypergraph& right);

/// The unique D with g0 -> D -> g2 such that g2 is the pushout of
/// g1 <- g0 -> D. Exists iff no edge of g2 outside g1 touches a node of
/// g1 outside g0 (DanglingError otherwise). The result is re-checked by
/// pushing out again.
Hypergraph pushout_complement(const Hypergraph& g0, const Hypergraph& g1, const Hypergraph& g2);

struct InitialPushoutResult {
    Hypergraph complement;  // smallest subgraph completing d -> l to a pushout
    Hypergraph boundary;    // minimal interface: complement ∩ d
};

/// Initial pushout of a proper inclusion d -> l.
InitialPushoutResult initial_pushout(const Hypergraph& d, const Hypergraph& l);

struct RenamedCopy {
    Hypergraph graph;
    Morphism iso; // original -> copy
};

/// Isomorphic copy of g whose identifiers outside keep are fresh with
/// respect to avoid. Identifiers inside keep are unchanged. Deterministic.
RenamedCopy rename_apart(const Hypergraph& g, const Hypergraph& avoid, const Hypergraph& keep);

/// Isomorphic copy of g with some nodes pinned to prescribed identifiers and
/// everything else fresh with respect to avoid.
RenamedCopy rename_apart_pinned(const Hypergraph& g, const Hypergraph& avoid,
                                const std::map<Id, Id>& pin_nodes);

/// Fresh identifier derived from base, avoiding both id sets.
Id fresh_id(const Id& base, const std::set<Id>& used_a, const std::set<Id>& used_b);

// Set-level square checks for all-inclusion squares. These coincide with the
// categorical universal properties for inclusions; the test suite verifies
// that against an explicit mediating-morphism oracle.
bool is_pushout_square(const Hypergraph& base, const Hypergraph& left,
                       const Hypergraph& right, const Hypergraph& apex);
bool is_pullback_square(const Hypergraph& base, const Hypergraph& left,
                        const Hypergraph& right, const Hypergraph& apex);

} // namespace gtx
