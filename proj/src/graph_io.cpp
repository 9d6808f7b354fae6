#include "csea/graph.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace csea
{

namespace
{

std::string trim(std::string_view s)
{
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos)
        return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

// Splits one delimited record; double quotes protect delimiters and "" escapes a quote.
std::vector<std::string> split_record(const std::string& line, char delim)
{
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i)
    {
        char c = line[i];
        if (quoted)
        {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"')
            {
                cur.push_back('"');
                ++i;
            }
            else if (c == '"')
                quoted = false;
            else
                cur.push_back(c);
        }
        else if (c == '"')
            quoted = true;
        else if (c == delim)
        {
            fields.push_back(trim(cur));
            cur.clear();
        }
        else
            cur.push_back(c);
    }
    if (quoted)
        throw GraphError(GraphError::Kind::Malformed, "unterminated quote in record: " + line);
    fields.push_back(trim(cur));
    return fields;
}

struct Table
{
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> line_numbers;
};

Table read_table(std::istream& in, const char* what)
{
    Table t;
    std::string line;
    std::size_t line_no = 0;
    char delim = ',';
    while (std::getline(in, line))
    {
        ++line_no;
        if (trim(line).empty())
            continue;
        if (t.header.empty())
        {
            delim = line.find('\t') != std::string::npos ? '\t' : ',';
            t.header = split_record(line, delim);
            continue;
        }
        auto fields = split_record(line, delim);
        if (fields.size() != t.header.size())
            throw GraphError(GraphError::Kind::RaggedRow,
                             std::string(what) + " line " + std::to_string(line_no) + ": expected " +
                                 std::to_string(t.header.size()) + " fields, found " + std::to_string(fields.size()));
        t.rows.push_back(std::move(fields));
        t.line_numbers.push_back(line_no);
    }
    if (t.header.empty())
        throw GraphError(GraphError::Kind::Malformed, std::string(what) + " table has no header");
    return t;
}

std::int64_t parse_count(const std::string& cell, const std::string& context)
{
    std::int64_t x = 0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), x, 10);
    if (ec != std::errc{} || ptr != cell.data() + cell.size() || cell.empty())
        throw GraphError(GraphError::Kind::InvalidValue, context + ": '" + cell + "' is not a base-10 integer");
    if (x < 0)
        throw GraphError(GraphError::Kind::InvalidValue, context + ": negative value " + cell);
    return x;
}

VertexIndex resolve(const std::vector<std::pair<std::string, VertexIndex>>& sorted, const std::string& id)
{
    auto it = std::lower_bound(sorted.begin(), sorted.end(), std::pair<std::string, VertexIndex>{id, 0});
    if (it == sorted.end() || it->first != id)
        throw GraphError(GraphError::Kind::UnknownEndpoint, "edge references unknown vertex '" + id + "'");
    return it->second;
}

std::vector<std::pair<std::string, VertexIndex>> sorted_index(const std::vector<std::string>& ids)
{
    std::vector<std::pair<std::string, VertexIndex>> out;
    for (VertexIndex i = 0; i < ids.size(); ++i)
        out.emplace_back(ids[i], i);
    std::sort(out.begin(), out.end());
    for (std::size_t i = 1; i < out.size(); ++i)
        if (out[i].first == out[i - 1].first)
            throw GraphError(GraphError::Kind::DuplicateVertex, "duplicate vertex id '" + out[i].first + "'");
    return out;
}

// WKT: TYPE ( nested coordinate lists )
class WktParser
{
public:
    explicit WktParser(const std::string& text) : s_(text) {}

    nlohmann::json parse()
    {
        skip_ws();
        std::string type;
        while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_])))
            type.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(s_[pos_++]))));
        static const std::vector<std::pair<std::string, std::string>> names{{"POINT", "Point"},
                                                                           {"LINESTRING", "LineString"},
                                                                           {"POLYGON", "Polygon"},
                                                                           {"MULTIPOINT", "MultiPoint"},
                                                                           {"MULTILINESTRING", "MultiLineString"},
                                                                           {"MULTIPOLYGON", "MultiPolygon"}};
        auto it = std::find_if(names.begin(), names.end(), [&](auto& p) { return p.first == type; });
        if (it == names.end())
            fail("unsupported geometry type '" + type + "'");
        auto coords = parse_list();
        skip_ws();
        if (pos_ != s_.size())
            fail("trailing characters");
        if (type == "POINT")
            coords = coords.at(0);
        return {{"type", it->second}, {"coordinates", coords}};
    }

private:
    [[noreturn]] void fail(const std::string& why) const
    {
        throw GraphError(GraphError::Kind::Malformed, "bad WKT (" + why + "): " + s_);
    }

    void skip_ws()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    void expect(char c)
    {
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] != c)
            fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    nlohmann::json parse_list()
    {
        expect('(');
        auto out = nlohmann::json::array();
        for (;;)
        {
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == '(')
                out.push_back(parse_list());
            else
                out.push_back(parse_position());
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == ',')
            {
                ++pos_;
                continue;
            }
            expect(')');
            return out;
        }
    }

    nlohmann::json parse_position()
    {
        auto pos = nlohmann::json::array();
        for (;;)
        {
            skip_ws();
            auto start = pos_;
            while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '-' ||
                                        s_[pos_] == '+' || s_[pos_] == '.' || s_[pos_] == 'e' || s_[pos_] == 'E'))
                ++pos_;
            if (start == pos_)
                break;
            pos.push_back(std::stod(s_.substr(start, pos_ - start)));
        }
        if (pos.size() < 2)
            fail("coordinate needs at least two numbers");
        return pos;
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace

std::string wkt_to_geojson(const std::string& wkt)
{
    return WktParser(wkt).parse().dump();
}

AttributedGraph load_graph(std::istream& vertices, std::istream& edges)
{
    auto vt = read_table(vertices, "vertices");
    if (lower(vt.header.front()) != "id")
        throw GraphError(GraphError::Kind::Malformed, "vertices header must start with 'id'");
    bool has_wkt = vt.header.size() > 1 && lower(vt.header.back()) == "wkt";
    std::vector<std::string> attributes(vt.header.begin() + 1, vt.header.end() - (has_wkt ? 1 : 0));

    std::vector<std::string> ids;
    std::vector<std::int64_t> values;
    std::vector<std::optional<std::string>> geometry;
    for (std::size_t r = 0; r < vt.rows.size(); ++r)
    {
        const auto& row = vt.rows[r];
        ids.push_back(row[0]);
        for (std::size_t a = 0; a < attributes.size(); ++a)
            values.push_back(parse_count(row[a + 1], "vertices line " + std::to_string(vt.line_numbers[r])));
        if (has_wkt && !row.back().empty())
            geometry.emplace_back(wkt_to_geojson(row.back()));
        else
            geometry.emplace_back(std::nullopt);
    }
    auto index = sorted_index(ids);

    auto et = read_table(edges, "edges");
    if (et.header.size() != 2)
        throw GraphError(GraphError::Kind::Malformed, "edges header must be 'src,dst'");
    std::vector<Edge> edge_list;
    for (const auto& row : et.rows)
        edge_list.emplace_back(resolve(index, row[0]), resolve(index, row[1]));

    return AttributedGraph(std::move(ids), std::move(edge_list), std::move(attributes), std::move(values),
                           std::move(geometry));
}

AttributedGraph load_graph_json(std::istream& in)
{
    nlohmann::ordered_json doc;
    try
    {
        doc = nlohmann::ordered_json::parse(in);
    }
    catch (const nlohmann::json::exception& e)
    {
        throw GraphError(GraphError::Kind::Malformed, std::string("graph JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_array())
        throw GraphError(GraphError::Kind::Malformed, "graph JSON needs a 'vertices' array");

    auto id_text = [](const nlohmann::ordered_json& j) {
        if (j.is_string())
            return j.get<std::string>();
        if (j.is_number_integer())
            return std::to_string(j.get<std::int64_t>());
        throw GraphError(GraphError::Kind::Malformed, "vertex id must be a string or integer");
    };

    std::vector<std::string> ids;
    std::vector<std::string> attributes;
    std::vector<std::int64_t> values;
    std::vector<std::optional<std::string>> geometry;
    bool first = true;
    for (const auto& v : doc["vertices"])
    {
        ids.push_back(id_text(v.at("id")));
        const auto& attrs = v.contains("attrs") ? v["attrs"] : nlohmann::ordered_json::object();
        if (first)
        {
            for (const auto& [k, _] : attrs.items())
                attributes.push_back(k);
            first = false;
        }
        if (attrs.size() != attributes.size())
            throw GraphError(GraphError::Kind::RaggedRow, "vertex '" + ids.back() + "' has a different attribute set");
        for (const auto& name : attributes)
        {
            if (!attrs.contains(name))
                throw GraphError(GraphError::Kind::RaggedRow, "vertex '" + ids.back() + "' lacks attribute " + name);
            const auto& x = attrs[name];
            if (!x.is_number_integer() || x.get<std::int64_t>() < 0)
                throw GraphError(GraphError::Kind::InvalidValue,
                                 "vertex '" + ids.back() + "' attribute " + name + " is not a nonnegative integer");
            values.push_back(x.get<std::int64_t>());
        }
        if (v.contains("geometry") && !v["geometry"].is_null())
        {
            const auto& g = v["geometry"];
            geometry.emplace_back(g.is_string() ? wkt_to_geojson(g.get<std::string>()) : g.dump());
        }
        else
            geometry.emplace_back(std::nullopt);
    }
    auto index = sorted_index(ids);

    std::vector<Edge> edge_list;
    if (doc.contains("edges"))
        for (const auto& e : doc["edges"])
        {
            if (!e.is_array() || e.size() != 2)
                throw GraphError(GraphError::Kind::Malformed, "edge must be a two-element array");
            edge_list.emplace_back(resolve(index, id_text(e[0])), resolve(index, id_text(e[1])));
        }
    return AttributedGraph(std::move(ids), std::move(edge_list), std::move(attributes), std::move(values),
                           std::move(geometry));
}

AttributedGraph load_graph_files(const std::string& vertices_path, const std::string& edges_path)
{
    std::ifstream vin(vertices_path);
    if (!vin)
        throw std::ios_base::failure("cannot open " + vertices_path);
    if (vertices_path.size() >= 5 && lower(vertices_path.substr(vertices_path.size() - 5)) == ".json")
    {
        if (!edges_path.empty())
            throw GraphError(GraphError::Kind::Malformed, "JSON graph input carries its own edges; drop --edges");
        return load_graph_json(vin);
    }
    std::ifstream ein(edges_path);
    if (!ein)
        throw std::ios_base::failure("cannot open " + (edges_path.empty() ? std::string("<no edges file>") : edges_path));
    return load_graph(vin, ein);
}

}  // namespace csea
