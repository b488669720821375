#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gtx {

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Pushout requested for a span whose legs share material outside the base.
struct OverlapError : DomainError {
    std::string offending;
    explicit OverlapError(std::string what_id)
        : DomainError("pushout legs overlap outside the shared subgraph at '" + what_id + "'"),
          offending(std::move(what_id)) {}
};

/// Pushout complement does not exist: an edge outside the removed part
/// still touches a node that would be removed.
struct DanglingError : DomainError {
    std::string node;
    std::string edge;
    DanglingError(std::string n, std::string e)
        : DomainError("dangling condition violated: edge '" + e + "' is incident to removed node '" + n + "'"),
          node(std::move(n)), edge(std::move(e)) {}
};

struct MatchError : DomainError {
    using DomainError::DomainError;
};

struct NarrowingImpossible : DomainError {
    std::string node;
    std::string edge;
    NarrowingImpossible(std::string n, std::string e)
        : DomainError("interface narrowing impossible: edge '" + e + "' attaches to dropped node '" + n + "'"),
          node(std::move(n)), edge(std::move(e)) {}
};

struct NotCombinable : DomainError {
    using DomainError::DomainError;
};

struct IncompatibleDiagrams : DomainError {
    using DomainError::DomainError;
};

struct PreconditionViolated : DomainError {
    using DomainError::DomainError;
};

/// Raised when an internally constructed object fails its own re-check.
struct ValidationFailed : DomainError {
    using DomainError::DomainError;
};

struct NotTauCompatible : DomainError {
    using DomainError::DomainError;
};

struct NotUnique : DomainError {
    std::vector<std::string> candidates;
    explicit NotUnique(std::vector<std::string> cands)
        : DomainError("expected exactly one admissible rule, found " + std::to_string(cands.size())),
          candidates(std::move(cands)) {}
};

} // namespace gtx
