#include "csea/synth.hpp"
#include "csea/json_format.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace csea
{

namespace
{

struct Rect
{
    std::size_t row, col, height, width;

    bool near(const Rect& o) const
    {
        // keep a one-cell gap between planted regions
        return row <= o.row + o.height && o.row <= row + height && col <= o.col + o.width && o.col <= col + width;
    }
};

std::string cell_polygon(std::size_t r, std::size_t c)
{
    auto x0 = static_cast<double>(c), y0 = 0.0 - static_cast<double>(r);
    nlohmann::json ring = nlohmann::json::array(
        {{x0, y0}, {x0 + 1, y0}, {x0 + 1, y0 - 1}, {x0, y0 - 1}, {x0, y0}});
    return nlohmann::json{{"type", "Polygon"}, {"coordinates", {ring}}}.dump();
}

std::string geojson_to_wkt(const std::string& text)
{
    auto j = nlohmann::json::parse(text);
    auto pos = [](const nlohmann::json& p) { return format_real(p[0].get<double>()) + " " + format_real(p[1].get<double>()); };
    auto type = j.at("type").get<std::string>();
    const auto& coords = j.at("coordinates");
    if (type == "Point")
        return "POINT (" + pos(coords) + ")";
    if (type == "Polygon")
    {
        std::string out = "POLYGON (";
        for (std::size_t r = 0; r < coords.size(); ++r)
        {
            out += r ? ", (" : "(";
            for (std::size_t i = 0; i < coords[r].size(); ++i)
                out += (i ? ", " : "") + pos(coords[r][i]);
            out += ")";
        }
        return out + ")";
    }
    throw std::invalid_argument("cannot write geometry type " + type + " as WKT");
}

}  // namespace

SynthData generate_grid(const SynthConfig& config)
{
    if (config.rows == 0 || config.cols == 0)
        throw std::invalid_argument("grid needs at least one row and column");
    if (config.region_size == 0)
        throw std::invalid_argument("planted regions need a positive side length");
    std::mt19937_64 rng(config.seed);
    const auto n = config.rows * config.cols;

    std::vector<std::string> ids;
    std::vector<std::optional<std::string>> geometry;
    for (std::size_t r = 0; r < config.rows; ++r)
        for (std::size_t c = 0; c < config.cols; ++c)
        {
            ids.push_back(fmt::format("r{:02}c{:02}", r, c));
            geometry.emplace_back(cell_polygon(r, c));
        }
    std::vector<Edge> edges;
    for (std::size_t r = 0; r < config.rows; ++r)
        for (std::size_t c = 0; c < config.cols; ++c)
        {
            auto v = r * config.cols + c;
            if (c + 1 < config.cols)
                edges.emplace_back(v, v + 1);
            if (r + 1 < config.rows)
                edges.emplace_back(v, v + config.cols);
        }
    std::vector<std::string> attributes;
    for (std::size_t a = 0; a < config.attributes; ++a)
        attributes.push_back(fmt::format("attr{}", a));

    std::uniform_real_distribution<double> size_factor(0.5, 1.5), base_rate(2.0, 8.0);
    std::vector<double> scale(n), rate(config.attributes);
    for (auto& s : scale)
        s = size_factor(rng);
    for (auto& r : rate)
        r = base_rate(rng);

    std::vector<double> boost(n * config.attributes, 1.0);
    SynthData out{AttributedGraph({}, {}, {}, {}), {}, {}};
    std::vector<Rect> rects;
    // boosted attributes are drawn without replacement while enough remain, so
    // each region owns the low-tail bins of its attributes
    std::vector<std::size_t> pool;
    for (std::size_t k = 0; k < config.regions; ++k)
    {
        Rect rect{};
        bool placed = false;
        for (int attempt = 0; attempt < 1000 && !placed; ++attempt)
        {
            rect.height = std::min(config.region_size, config.rows);
            rect.width = std::min(config.region_size, config.cols);
            rect.row = std::uniform_int_distribution<std::size_t>(0, config.rows - rect.height)(rng);
            rect.col = std::uniform_int_distribution<std::size_t>(0, config.cols - rect.width)(rng);
            placed = std::none_of(rects.begin(), rects.end(), [&](const Rect& o) { return rect.near(o); });
        }
        if (!placed)
            throw std::invalid_argument("grid too small for the requested planted regions");
        rects.push_back(rect);

        const auto per_region = std::min<std::size_t>(3, config.attributes);
        if (pool.size() < per_region)
        {
            pool.resize(config.attributes);
            std::iota(pool.begin(), pool.end(), 0);
            std::shuffle(pool.begin(), pool.end(), rng);
        }
        std::vector<std::size_t> attrs(pool.end() - per_region, pool.end());
        pool.resize(pool.size() - per_region);
        std::sort(attrs.begin(), attrs.end());

        VertexSet region(n);
        for (auto r = rect.row; r < rect.row + rect.height; ++r)
            for (auto c = rect.col; c < rect.col + rect.width; ++c)
            {
                auto v = r * config.cols + c;
                region.insert(v);
                for (auto a : attrs)
                    boost[v * config.attributes + a] = config.boost;
            }
        out.planted.push_back(std::move(region));
        out.boosted.push_back(std::move(attrs));
    }

    std::vector<std::int64_t> values(n * config.attributes);
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t a = 0; a < config.attributes; ++a)
        {
            std::poisson_distribution<std::int64_t> count(scale[v] * rate[a] * boost[v * config.attributes + a]);
            values[v * config.attributes + a] = count(rng);
        }

    out.graph = AttributedGraph(std::move(ids), std::move(edges), std::move(attributes), std::move(values),
                                std::move(geometry));
    return out;
}

void write_vertices_csv(const AttributedGraph& g, std::ostream& out)
{
    const bool geo = g.has_geometry();
    out << "id";
    for (const auto& a : g.attributes())
        out << ',' << a;
    if (geo)
        out << ",wkt";
    out << '\n';
    for (VertexIndex v = 0; v < g.num_vertices(); ++v)
    {
        out << g.vertex_ids()[v];
        for (std::size_t a = 0; a < g.num_attributes(); ++a)
            out << ',' << g.value(v, a);
        if (geo)
            out << ",\"" << geojson_to_wkt(*g.geometry(v)) << '"';
        out << '\n';
    }
}

void write_edges_csv(const AttributedGraph& g, std::ostream& out)
{
    out << "src,dst\n";
    for (auto [u, v] : g.edges())
        out << g.vertex_ids()[u] << ',' << g.vertex_ids()[v] << '\n';
}

}  // namespace csea
