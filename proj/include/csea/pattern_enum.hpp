#pragma once

#include "csea/background.hpp"
#include "csea/graph.hpp"

#include <functional>
#include <vector>

namespace csea
{

enum class Side
{
    Lower,  ///< [0, bound]: significantly large counts
    Upper,  ///< [bound, 1]: significantly small counts
};

/// One-sided interval on the tail-probability scale of one attribute.
struct IntervalBound
{
    std::size_t attribute = 0;
    Side side = Side::Lower;
    double bound = 1.0;

    double low() const { return side == Side::Lower ? 0.0 : bound; }
    double high() const { return side == Side::Lower ? bound : 1.0; }

    friend bool operator==(const IntervalBound&, const IntervalBound&) = default;
};

struct IntervalEntity
{
    IntervalBound interval;
    VertexSet members;  ///< vertices whose ĉ lies in the interval
};

/// A distinct neighborhood member set with every (center, radius) that
/// produces it. The first alias is the representative.
struct NeighborhoodEntity
{
    VertexSet members;
    std::vector<std::pair<VertexIndex, int>> aliases;
};

/// Entity-relation view of an attributed graph: vertices, per-attribute
/// interval chains and neighborhood entities, with their incidences.
struct ErModel
{
    std::size_t num_vertices = 0;
    std::size_t num_attributes = 0;
    int max_radius = 0;
    /// |V|·(D+1), the size of the description vocabulary.
    std::size_t vocabulary_size = 0;

    TailMatrix tails;
    /// Per attribute, tightest first; the last lower interval is [0, 1].
    std::vector<std::vector<IntervalEntity>> lower_chains;
    /// Per attribute, tightest first (descending start point).
    std::vector<std::vector<IntervalEntity>> upper_chains;

    std::vector<NeighborhoodEntity> neighborhoods;
    /// center -> entity ids by increasing radius; consecutive entries are
    /// child/parent in the hop hierarchy.
    std::vector<std::vector<std::size_t>> center_chains;
    /// vertex -> ascending ids of neighborhood entities that contain it.
    std::vector<std::vector<std::size_t>> vertex_neighborhoods;
};

ErModel transform_to_er(const AttributedGraph& g, const TailMatrix& t, const BinBoundaries& bins, int max_radius);

/// A closed CSEA pattern: U, its tightest intervals and 𝒩(U).
struct ClosedPattern
{
    VertexSet vertices;
    /// Non-trivial intervals, ordered by attribute then lower before upper.
    std::vector<IntervalBound> intervals;
    /// Ascending ids of every neighborhood entity containing U.
    std::vector<std::size_t> covering;
};

/// Tightest lower and upper interval per attribute covering U; [0, 1] omitted.
std::vector<IntervalBound> tighten_s(const ErModel& er, const VertexSet& vertices);

/// Streams every closed pattern with |U| >= min_vertices in depth-first order.
/// Each U is an exact intersection of neighborhood entities and is reported once.
void for_each_closed(const ErModel& er, std::size_t min_vertices, const std::function<void(ClosedPattern&&)>& sink);

/// All closed patterns, ordered lexicographically by U.
std::vector<ClosedPattern> enumerate_closed(const ErModel& er, std::size_t min_vertices);

}  // namespace csea
