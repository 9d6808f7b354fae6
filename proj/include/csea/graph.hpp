#pragma once

#include "csea/vertex_set.hpp"

#include <cstdint>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace csea
{

class GraphError : public std::runtime_error
{
public:
    enum class Kind
    {
        DuplicateVertex,
        UnknownEndpoint,
        InvalidValue,
        RaggedRow,
        SelfLoop,
        DuplicateEdge,
        InvalidVertex,
        Malformed,
    };

    GraphError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

using Edge = std::pair<VertexIndex, VertexIndex>;

/// Undirected vertex-attributed graph with nonnegative integer attributes.
/// Immutable once constructed; the constructor enforces every invariant.
class AttributedGraph
{
public:
    AttributedGraph(std::vector<std::string> vertex_ids,
                    std::vector<Edge> edges,
                    std::vector<std::string> attributes,
                    std::vector<std::int64_t> values,
                    std::vector<std::optional<std::string>> geometry = {});

    std::size_t num_vertices() const { return ids_.size(); }
    std::size_t num_edges() const { return edges_.size(); }
    std::size_t num_attributes() const { return attributes_.size(); }

    const std::vector<std::string>& vertex_ids() const { return ids_; }
    const std::vector<std::string>& attributes() const { return attributes_; }
    /// Edges normalized to (low, high) and sorted.
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<VertexIndex>& adjacent(VertexIndex v) const { return adjacency_[v]; }

    /// â(v) for attribute index a.
    std::int64_t value(VertexIndex v, std::size_t a) const { return values_[v * attributes_.size() + a]; }

    /// GeoJSON geometry object text, when the input carried geometry.
    const std::optional<std::string>& geometry(VertexIndex v) const { return geometry_[v]; }
    bool has_geometry() const;

    std::optional<VertexIndex> index_of(const std::string& id) const;

private:
    std::vector<std::string> ids_;
    std::vector<Edge> edges_;
    std::vector<std::string> attributes_;
    std::vector<std::int64_t> values_;
    std::vector<std::optional<std::string>> geometry_;
    std::vector<std::vector<VertexIndex>> adjacency_;
    std::vector<std::pair<std::string, VertexIndex>> sorted_ids_;
};

struct Neighborhood
{
    VertexIndex center = 0;
    int radius = 0;
    VertexSet members;
};

/// The description vocabulary: every N_d(v) for d in [0, D].
///
/// `items` holds one entry per (center, distinct member set); when two radii of
/// the same center reach the same set only the smallest radius is kept.
/// `vocabulary_size` is always |V|·(D+1) and is the count used by the
/// description cost.
struct NeighborhoodSet
{
    int max_radius = 0;
    std::size_t vocabulary_size = 0;
    std::vector<Neighborhood> items;
};

/// BFS ball of hop radius d around v.
Neighborhood neighborhood(const AttributedGraph& g, VertexIndex v, int d);

NeighborhoodSet all_neighborhoods(const AttributedGraph& g, int max_radius);

/// Reads a vertex table and an edge table (CSV or TSV, delimiter sniffed from
/// the header line).
AttributedGraph load_graph(std::istream& vertices, std::istream& edges);

/// Reads the single-file JSON form {"vertices":[...],"edges":[[u,v],...]}.
AttributedGraph load_graph_json(std::istream& in);

/// Dispatches on file extension: a `.json` vertices path is read as the
/// single-file form and `edges_path` must be empty.
AttributedGraph load_graph_files(const std::string& vertices_path, const std::string& edges_path);

/// Converts WKT POINT / POLYGON / MULTIPOLYGON text to a GeoJSON geometry.
std::string wkt_to_geojson(const std::string& wkt);

}  // namespace csea
