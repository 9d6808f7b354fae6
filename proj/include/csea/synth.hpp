#pragma once

#include "csea/graph.hpp"

#include <cstdint>
#include <ostream>
#include <vector>

namespace csea
{

struct SynthConfig
{
    std::size_t rows = 17;
    std::size_t cols = 17;
    std::size_t attributes = 10;
    std::size_t regions = 3;
    /// Side length of each square planted region.
    std::size_t region_size = 4;
    std::uint64_t seed = 1;
    /// Rate multiplier applied to a region's boosted attributes.
    double boost = 4.0;
};

/// Grid graph with Poisson counts and planted square regions whose
/// counts on a few attributes are boosted.
struct SynthData
{
    AttributedGraph graph;
    std::vector<VertexSet> planted;
    /// Boosted attribute indices per planted region.
    std::vector<std::vector<std::size_t>> boosted;
};

SynthData generate_grid(const SynthConfig& config);

/// CSV tables in the loader's format (vertices carry a WKT square per cell).
void write_vertices_csv(const AttributedGraph& g, std::ostream& out);
void write_edges_csv(const AttributedGraph& g, std::ostream& out);

}  // namespace csea
