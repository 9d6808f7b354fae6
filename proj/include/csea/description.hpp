#pragma once

#include "csea/vertex_set.hpp"

#include <chrono>
#include <cstddef>
#include <optional>
#include <ostream>
#include <vector>

namespace csea
{

/// The set-cover style problem behind DL(U): describe `target` as an
/// intersection of some `candidates` (each a superset of it) plus exceptions.
struct CoverInstance
{
    VertexSet target;
    std::vector<VertexSet> candidates;
    /// |𝒩|, the description vocabulary size.
    std::size_t vocabulary_size = 0;
    /// |V|.
    std::size_t num_vertices = 0;
};

/// Ascending indices into CoverInstance::candidates.
using Selection = std::vector<std::size_t>;

struct Description
{
    Selection chosen;
    VertexSet exceptions;
    double length = 0.0;
};

/// (|X|+1)·log2|𝒩| + (|exc|+1)·log2|V|.
double description_cost(std::size_t num_chosen, std::size_t num_exceptions, std::size_t vocabulary_size,
                        std::size_t num_vertices);

/// f(X, U). Throws std::invalid_argument when a chosen set does not cover U.
double description_cost(const CoverInstance& inst, const Selection& chosen);

/// exc(X, U) = (∩X) \ U, with ∩∅ = V.
VertexSet exceptions(const CoverInstance& inst, const Selection& chosen);

/// |exc(X,U)| - |exc(X ∪ Y, U)|.
std::size_t gain(const CoverInstance& inst, const Selection& extra, const Selection& chosen);

/// Lower bound on f(X ∪ Y, U) over every Y ⊆ candidates.
double lower_bound(const CoverInstance& inst, const Selection& chosen, const Selection& candidates);

/// Keeps candidates whose singleton gain is positive.
Selection prune_useless(const CoverInstance& inst, const Selection& chosen, const Selection& candidates);

/// Drops every candidate whose remaining exceptions contain another
/// candidate's; among equal exception sets the lowest index survives.
Selection prune_lower_bounded(const CoverInstance& inst, const Selection& chosen, const Selection& candidates);

/// argmin over e of f(X ∪ {e}, U), lowest index on ties.
std::size_t branch_choice(const CoverInstance& inst, const Selection& chosen, const Selection& candidates);

struct DlOptions
{
    bool prune_useless = true;
    bool prune_lower_bounded = true;
    /// Stops the search once exceeded; the result is then flagged inexact.
    std::optional<std::chrono::steady_clock::duration> time_budget;
    /// JSON-lines trace of every search node.
    std::ostream* trace = nullptr;
};

struct DlResult
{
    Description best;
    double dl = 0.0;
    std::size_t nodes = 0;
    bool exact = true;
};

/// Exact DL(U) = min over X ⊆ candidates of f(X, U) by branch and bound.
DlResult dl_optimise(const CoverInstance& inst, const DlOptions& options = {});

}  // namespace csea
