#include "csea/pipeline.hpp"
#include "csea/json_format.hpp"

#include <json.hpp>

#include <limits>
#include <stdexcept>

namespace csea
{

void MiningConfig::validate() const
{
    if (max_radius < 0)
        throw std::invalid_argument("max radius must be >= 0");
    if (bins < 2)
        throw std::invalid_argument("bins must be >= 2");
    if (min_vertices < 1)
        throw std::invalid_argument("min vertices must be >= 1");
    if (top_k < 1)
        throw std::invalid_argument("top-k must be >= 1");
    if (!(tol > 0.0))
        throw std::invalid_argument("tolerance must be > 0");
    if (jobs < 1)
        throw std::invalid_argument("jobs must be >= 1");
}

MiningResult mine(const AttributedGraph& g, const BackgroundModel& m, const MiningConfig& config, std::ostream* trace)
{
    config.validate();
    auto start = std::chrono::steady_clock::now();

    auto tails = tail_matrix(m, g);
    auto bins = bin_tails(tails, config.bins);
    MiningResult result;
    result.er = transform_to_er(g, tails, bins, config.max_radius);

    auto patterns = enumerate_closed(result.er, config.min_vertices);
    result.summary.pattern_count = patterns.size();

    DlOptions dl;
    dl.trace = trace;
    if (config.dl_budget)
        dl.time_budget = *config.dl_budget;
    // node totals must cover every pattern, not only the reported ones
    std::vector<ScoredPattern> all = score_and_rank(std::move(patterns), result.er, m,
                                                    std::numeric_limits<std::size_t>::max(), config.jobs, dl);
    for (const auto& p : all)
    {
        result.summary.bnb_nodes += p.nodes;
        result.summary.inexact += p.dl_exact ? 0 : 1;
    }
    if (all.size() > config.top_k)
        all.resize(config.top_k);
    result.ranked = std::move(all);
    result.summary.reported = result.ranked.size();
    result.summary.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

namespace
{

std::string center_json(const AttributedGraph& g, VertexIndex center, int d)
{
    return "{\"center\":" + quote_json(g.vertex_ids()[center]) + ",\"d\":" + std::to_string(d) + "}";
}

std::string id_list(const AttributedGraph& g, const VertexSet& s)
{
    std::string out = "[";
    bool first = true;
    s.for_each([&](VertexIndex v) {
        out += (first ? "" : ",") + quote_json(g.vertex_ids()[v]);
        first = false;
    });
    return out + "]";
}

}  // namespace

std::string pattern_record_json(const ScoredPattern& p, const ErModel& er, const AttributedGraph& g)
{
    std::string out = "{\"U\":" + id_list(g, p.pattern.vertices) + ",\"S\":[";
    for (std::size_t i = 0; i < p.pattern.intervals.size(); ++i)
    {
        const auto& iv = p.pattern.intervals[i];
        out += (i ? ",{" : "{");
        out += "\"attr\":" + quote_json(g.attributes()[iv.attribute]) + ",\"side\":\"" +
               (iv.side == Side::Lower ? "lower" : "upper") + "\",\"bound\":" + format_real(iv.bound) + "}";
    }
    out += "],\"neighborhoods_covering\":[";
    bool first = true;
    for (auto id : p.pattern.covering)
        for (auto [center, d] : er.neighborhoods[id].aliases)
        {
            out += (first ? "" : ",") + center_json(g, center, d);
            first = false;
        }
    out += "],\"best_description\":{\"centers\":[";
    for (std::size_t i = 0; i < p.best_description.chosen.size(); ++i)
    {
        auto id = p.pattern.covering[p.best_description.chosen[i]];
        auto [center, d] = er.neighborhoods[id].aliases.front();
        out += (i ? "," : "") + center_json(g, center, d);
    }
    out += "],\"exceptions\":" + id_list(g, p.best_description.exceptions) + "}";
    out += ",\"ic\":" + format_real(p.ic) + ",\"dl\":" + format_real(p.dl) + ",\"si\":" + format_real(p.si) + "}";
    return out;
}

std::string patterns_to_jsonl(const MiningResult& r, const AttributedGraph& g)
{
    std::string out;
    for (const auto& p : r.ranked)
        out += pattern_record_json(p, r.er, g) + "\n";
    return out;
}

PatternRecord parse_pattern_record(const std::string& line)
{
    auto j = nlohmann::json::parse(line);
    PatternRecord r;
    r.vertices = j.at("U").get<std::vector<std::string>>();
    for (const auto& s : j.at("S"))
    {
        auto side = s.at("side").get<std::string>();
        if (side != "lower" && side != "upper")
            throw std::invalid_argument("pattern record: side must be lower or upper");
        r.intervals.push_back({s.at("attr").get<std::string>(), side == "lower" ? Side::Lower : Side::Upper,
                               s.at("bound").get<double>()});
    }
    auto centers = [](const nlohmann::json& arr) {
        std::vector<CenterRef> out;
        for (const auto& c : arr)
            out.push_back({c.at("center").get<std::string>(), c.at("d").get<int>()});
        return out;
    };
    r.covering = centers(j.at("neighborhoods_covering"));
    const auto& best = j.at("best_description");
    r.centers = centers(best.at("centers"));
    r.exceptions = best.at("exceptions").get<std::vector<std::string>>();
    r.ic = j.at("ic").get<double>();
    r.dl = j.at("dl").get<double>();
    r.si = j.at("si").get<double>();
    return r;
}

std::vector<PatternRecord> read_pattern_records(std::istream& in)
{
    std::vector<PatternRecord> out;
    std::string line;
    while (std::getline(in, line))
    {
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        out.push_back(parse_pattern_record(line));
    }
    return out;
}

}  // namespace csea
