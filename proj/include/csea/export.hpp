#pragma once

#include "csea/graph.hpp"
#include "csea/pipeline.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace csea
{

/// Display role of a vertex within one pattern.
enum class Role
{
    Covered,             ///< in U
    Center,              ///< description center inside U
    CenterNotInPattern,  ///< description center outside the described region
    CenterException,     ///< description center listed as an exception
    Exception,           ///< in the described region but not in U
};

std::string_view role_name(Role r);

/// Every vertex that plays a role in `record`, ascending by vertex index.
std::vector<std::pair<VertexIndex, Role>> vertex_roles(const PatternRecord& record, const AttributedGraph& g);

/// FeatureCollection with one feature per (pattern, role vertex). Throws
/// std::invalid_argument when a role vertex has no geometry.
std::string export_geojson(const std::vector<PatternRecord>& records, const AttributedGraph& g);

/// One undirected DOT graph per pattern, vertices colored by role.
std::string export_dot(const std::vector<PatternRecord>& records, const AttributedGraph& g);

}  // namespace csea
