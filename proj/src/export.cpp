#include "csea/export.hpp"
#include "csea/json_format.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace csea
{

std::string_view role_name(Role r)
{
    switch (r)
    {
    case Role::Covered: return "covered";
    case Role::Center: return "center";
    case Role::CenterNotInPattern: return "center-not-in-pattern";
    case Role::CenterException: return "center-exception";
    case Role::Exception: return "exception";
    }
    return "unknown";
}

namespace
{

VertexIndex lookup(const AttributedGraph& g, const std::string& id)
{
    auto v = g.index_of(id);
    if (!v)
        throw std::invalid_argument("pattern references vertex '" + id + "' missing from the graph");
    return *v;
}

// colors follow the usual map legend: green pattern, blue centers, red exceptions
std::string_view role_color(Role r)
{
    switch (r)
    {
    case Role::Covered: return "palegreen";
    case Role::Center: return "royalblue";
    case Role::CenterNotInPattern: return "mediumpurple";
    case Role::CenterException: return "orange";
    case Role::Exception: return "red";
    }
    return "white";
}

}  // namespace

std::vector<std::pair<VertexIndex, Role>> vertex_roles(const PatternRecord& record, const AttributedGraph& g)
{
    std::set<VertexIndex> in_u, exc, centers;
    for (const auto& id : record.vertices)
        in_u.insert(lookup(g, id));
    for (const auto& id : record.exceptions)
        exc.insert(lookup(g, id));
    for (const auto& c : record.centers)
        centers.insert(lookup(g, c.center));

    std::map<VertexIndex, Role> roles;
    for (auto v : in_u)
        roles[v] = Role::Covered;
    for (auto v : exc)
        roles[v] = Role::Exception;
    for (auto v : centers)
    {
        if (in_u.count(v))
            roles[v] = Role::Center;
        else if (exc.count(v))
            roles[v] = Role::CenterException;
        else
            roles[v] = Role::CenterNotInPattern;
    }
    return {roles.begin(), roles.end()};
}

std::string export_geojson(const std::vector<PatternRecord>& records, const AttributedGraph& g)
{
    std::string out = "{\"type\":\"FeatureCollection\",\"features\":[";
    bool first = true;
    for (std::size_t rank = 0; rank < records.size(); ++rank)
    {
        for (auto [v, role] : vertex_roles(records[rank], g))
        {
            const auto& geom = g.geometry(v);
            if (!geom)
                throw std::invalid_argument("vertex '" + g.vertex_ids()[v] + "' has no geometry for GeoJSON export");
            out += first ? "" : ",";
            first = false;
            out += "{\"type\":\"Feature\",\"geometry\":" + *geom + ",\"properties\":{\"pattern\":" +
                   std::to_string(rank) + ",\"id\":" + quote_json(g.vertex_ids()[v]) + ",\"role\":\"" +
                   std::string(role_name(role)) + "\",\"si\":" + format_real(records[rank].si) + "}}";
        }
    }
    return out + "]}\n";
}

std::string export_dot(const std::vector<PatternRecord>& records, const AttributedGraph& g)
{
    std::string out;
    for (std::size_t rank = 0; rank < records.size(); ++rank)
    {
        auto roles = vertex_roles(records[rank], g);
        std::map<VertexIndex, Role> by_vertex(roles.begin(), roles.end());
        out += "graph pattern_" + std::to_string(rank) + " {\n";
        out += "  label=\"pattern " + std::to_string(rank) + " si=" + format_real(records[rank].si) + "\";\n";
        out += "  node [style=filled, fillcolor=white];\n";
        for (VertexIndex v = 0; v < g.num_vertices(); ++v)
        {
            out += "  " + quote_json(g.vertex_ids()[v]);
            if (auto it = by_vertex.find(v); it != by_vertex.end())
                out += " [fillcolor=" + std::string(role_color(it->second)) + ", role=\"" +
                       std::string(role_name(it->second)) + "\"]";
            out += ";\n";
        }
        for (auto [u, v] : g.edges())
            out += "  " + quote_json(g.vertex_ids()[u]) + " -- " + quote_json(g.vertex_ids()[v]) + ";\n";
        out += "}\n";
    }
    return out;
}

}  // namespace csea
