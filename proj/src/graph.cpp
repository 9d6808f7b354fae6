#include "csea/graph.hpp"

#include <algorithm>
#include <deque>

namespace csea
{

AttributedGraph::AttributedGraph(std::vector<std::string> vertex_ids,
                                 std::vector<Edge> edges,
                                 std::vector<std::string> attributes,
                                 std::vector<std::int64_t> values,
                                 std::vector<std::optional<std::string>> geometry)
    : ids_(std::move(vertex_ids)),
      attributes_(std::move(attributes)),
      values_(std::move(values)),
      geometry_(std::move(geometry))
{
    const auto n = ids_.size();
    if (values_.size() != n * attributes_.size())
        throw GraphError(GraphError::Kind::RaggedRow, "attribute matrix does not have |V| x |A| entries");
    for (auto x : values_)
        if (x < 0)
            throw GraphError(GraphError::Kind::InvalidValue, "negative attribute value");
    if (geometry_.empty())
        geometry_.resize(n);
    if (geometry_.size() != n)
        throw GraphError(GraphError::Kind::RaggedRow, "geometry list does not match vertex count");

    sorted_ids_.reserve(n);
    for (VertexIndex i = 0; i < n; ++i)
        sorted_ids_.emplace_back(ids_[i], i);
    std::sort(sorted_ids_.begin(), sorted_ids_.end());
    for (std::size_t i = 1; i < sorted_ids_.size(); ++i)
        if (sorted_ids_[i].first == sorted_ids_[i - 1].first)
            throw GraphError(GraphError::Kind::DuplicateVertex, "duplicate vertex id '" + sorted_ids_[i].first + "'");

    for (auto& [u, v] : edges)
    {
        if (u >= n || v >= n)
            throw GraphError(GraphError::Kind::UnknownEndpoint, "edge endpoint out of range");
        if (u == v)
            throw GraphError(GraphError::Kind::SelfLoop, "self-loop on vertex '" + ids_[u] + "'");
        if (u > v)
            std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    if (auto it = std::adjacent_find(edges.begin(), edges.end()); it != edges.end())
        throw GraphError(GraphError::Kind::DuplicateEdge,
                         "duplicate edge " + ids_[it->first] + " - " + ids_[it->second]);
    edges_ = std::move(edges);

    adjacency_.resize(n);
    for (auto [u, v] : edges_)
    {
        adjacency_[u].push_back(v);
        adjacency_[v].push_back(u);
    }
    for (auto& adj : adjacency_)
        std::sort(adj.begin(), adj.end());
}

bool AttributedGraph::has_geometry() const
{
    return !geometry_.empty() && std::all_of(geometry_.begin(), geometry_.end(), [](auto& g) { return g.has_value(); });
}

std::optional<VertexIndex> AttributedGraph::index_of(const std::string& id) const
{
    auto it = std::lower_bound(sorted_ids_.begin(), sorted_ids_.end(), std::pair<std::string, VertexIndex>{id, 0});
    if (it == sorted_ids_.end() || it->first != id)
        return std::nullopt;
    return it->second;
}

namespace
{

// hop distances from v, -1 for unreachable, truncated at max_depth
std::vector<int> bfs_depths(const AttributedGraph& g, VertexIndex v, int max_depth)
{
    std::vector<int> depth(g.num_vertices(), -1);
    std::deque<VertexIndex> queue{v};
    depth[v] = 0;
    while (!queue.empty())
    {
        auto u = queue.front();
        queue.pop_front();
        if (depth[u] == max_depth)
            continue;
        for (auto w : g.adjacent(u))
        {
            if (depth[w] < 0)
            {
                depth[w] = depth[u] + 1;
                queue.push_back(w);
            }
        }
    }
    return depth;
}

}  // namespace

Neighborhood neighborhood(const AttributedGraph& g, VertexIndex v, int d)
{
    if (v >= g.num_vertices())
        throw GraphError(GraphError::Kind::InvalidVertex, "vertex index out of range");
    if (d < 0)
        throw std::invalid_argument("neighborhood radius must be nonnegative");
    Neighborhood nb{v, d, VertexSet(g.num_vertices())};
    auto depth = bfs_depths(g, v, d);
    for (VertexIndex u = 0; u < depth.size(); ++u)
        if (depth[u] >= 0)
            nb.members.insert(u);
    return nb;
}

NeighborhoodSet all_neighborhoods(const AttributedGraph& g, int max_radius)
{
    if (max_radius < 0)
        throw std::invalid_argument("maximum radius must be nonnegative");
    const auto n = g.num_vertices();
    NeighborhoodSet out;
    out.max_radius = max_radius;
    out.vocabulary_size = n * static_cast<std::size_t>(max_radius + 1);
    for (VertexIndex v = 0; v < n; ++v)
    {
        auto depth = bfs_depths(g, v, max_radius);
        std::size_t previous = 0;
        for (int d = 0; d <= max_radius; ++d)
        {
            VertexSet members(n);
            for (VertexIndex u = 0; u < n; ++u)
                if (depth[u] >= 0 && depth[u] <= d)
                    members.insert(u);
            auto size = members.count();
            // the ball stops growing once it fills the component
            if (d > 0 && size == previous)
                break;
            previous = size;
            out.items.push_back({v, d, std::move(members)});
        }
    }
    return out;
}

}  // namespace csea
