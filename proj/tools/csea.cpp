// csea: mine cohesive subgraphs with exceptional attributes.
//
//   csea fit    --vertices V --edges E --out model.json
//   csea mine   --vertices V --edges E [--model model.json] [--out patterns.jsonl]
//   csea export --patterns patterns.jsonl --vertices V --edges E --format geojson|dot
//   csea synth  --out-vertices V --out-edges E [--seed N]
//
// Exit codes: 0 ok, 2 input error, 3 background fit did not converge.

#include "csea/background.hpp"
#include "csea/export.hpp"
#include "csea/graph.hpp"
#include "csea/json_format.hpp"
#include "csea/pipeline.hpp"
#include "csea/synth.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace
{

constexpr int exit_input_error = 2;
constexpr int exit_not_converged = 3;

struct GraphFiles
{
    std::string vertices;
    std::string edges;
};

void add_graph_options(CLI::App& cmd, GraphFiles& files)
{
    cmd.add_option("--vertices", files.vertices, "vertex table (CSV/TSV) or single-file JSON graph")
        ->required();
    cmd.add_option("--edges", files.edges, "edge table (CSV/TSV); omit for JSON input");
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::ios_base::failure("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// writes to `path`, or stdout when empty or "-"
void write_output(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-")
    {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw std::ios_base::failure("cannot write " + path);
    out << text;
}

// CLI11 reads config files only for the root app, so subcommand files are
// applied here with its INI reader. Options given on the command line win.
void apply_config(CLI::App& cmd, const std::string& path)
{
    if (path.empty())
        return;
    for (const auto& item : CLI::ConfigINI().from_file(path))
    {
        auto name = item.name;
        std::replace(name.begin(), name.end(), '_', '-');
        auto* opt = cmd.get_option_no_throw("--" + name);
        if (opt == nullptr || name == "config")
            throw std::invalid_argument("config file " + path + ": unknown key '" + item.fullname() + "'");
        if (opt->count() == 0)
        {
            opt->add_result(item.inputs);
            opt->run_callback();
        }
    }
}

void print_fit_report(const csea::FitReport& r)
{
    std::cerr << fmt::format("fit: {} sweeps, max residual {}, converged {}\n", r.iterations,
                             csea::format_real(r.max_residual), r.converged);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Mine cohesive subgraphs with exceptional attributes"};
    app.require_subcommand(1);

    GraphFiles graph_files;
    csea::MiningConfig config;
    std::string out_path, model_path, patterns_path, format = "geojson", trace_path, config_path;
    long dl_budget_ms = 0;

    auto* fit = app.add_subcommand("fit", "fit the background model and write it as JSON");
    add_graph_options(*fit, graph_files);
    fit->add_option("--out", out_path, "model file (stdout when omitted)");
    fit->add_option("--tol", config.tol, "relative margin tolerance")->capture_default_str();
    fit->add_option("--max-iter", config.max_iter, "maximum coordinate sweeps")->capture_default_str();
    fit->add_option("--config", config_path, "key=value configuration file; flags take precedence");

    auto* mine = app.add_subcommand("mine", "enumerate, score and rank patterns as JSON lines");
    add_graph_options(*mine, graph_files);
    mine->add_option("--model", model_path, "fitted model (fitted on the fly when omitted)");
    mine->add_option("--out", out_path, "pattern file (stdout when omitted)");
    mine->add_option("--max-radius", config.max_radius, "largest neighborhood radius D")->capture_default_str();
    mine->add_option("--bins", config.bins, "quantile bins per attribute")->capture_default_str();
    mine->add_option("--min-vertices", config.min_vertices, "smallest reported pattern")->capture_default_str();
    mine->add_option("--top-k", config.top_k, "number of patterns reported")->capture_default_str();
    mine->add_option("--tol", config.tol, "fit tolerance when fitting on the fly")->capture_default_str();
    mine->add_option("--max-iter", config.max_iter, "fit sweeps when fitting on the fly")->capture_default_str();
    mine->add_option("--jobs", config.jobs, "worker threads for description search")->capture_default_str();
    mine->add_option("--seed", config.seed, "unused by mining; accepted for config symmetry");
    mine->add_option("--trace-bnb", trace_path, "write the branch-and-bound node trace (JSON lines)");
    mine->add_option("--dl-budget-ms", dl_budget_ms, "per-pattern search budget in ms (0 = exact)");
    mine->add_option("--config", config_path, "key=value configuration file; flags take precedence");

    auto* exporter = app.add_subcommand("export", "render mined patterns as GeoJSON or DOT");
    add_graph_options(*exporter, graph_files);
    exporter->add_option("--patterns", patterns_path, "pattern file written by mine")->required();
    exporter->add_option("--format", format, "geojson or dot")
        ->check(CLI::IsMember({"geojson", "dot"}))
        ->capture_default_str();
    exporter->add_option("--out", out_path, "output file (stdout when omitted)");

    csea::SynthConfig synth_config;
    std::string synth_vertices, synth_edges, synth_planted;
    auto* synth = app.add_subcommand("synth", "generate a grid graph with planted exceptional regions");
    synth->add_option("--rows", synth_config.rows)->capture_default_str();
    synth->add_option("--cols", synth_config.cols)->capture_default_str();
    synth->add_option("--attributes", synth_config.attributes)->capture_default_str();
    synth->add_option("--regions", synth_config.regions)->capture_default_str();
    synth->add_option("--region-size", synth_config.region_size, "side length of each planted square")
        ->capture_default_str();
    synth->add_option("--seed", synth_config.seed)->capture_default_str();
    synth->add_option("--boost", synth_config.boost, "rate multiplier inside planted regions")->capture_default_str();
    synth->add_option("--out-vertices", synth_vertices)->required();
    synth->add_option("--out-edges", synth_edges)->required();
    synth->add_option("--out-planted", synth_planted, "JSON list of planted regions");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        int code = app.exit(e);
        return code == 0 ? 0 : exit_input_error;
    }

    try
    {
        if (*fit)
            apply_config(*fit, config_path);
        else if (*mine)
            apply_config(*mine, config_path);

        if (*fit)
        {
            auto g = csea::load_graph_files(graph_files.vertices, graph_files.edges);
            auto model = csea::fit_background(g, {config.tol, config.max_iter});
            print_fit_report(model.fit_report());
            write_output(out_path, csea::model_to_json(model) + "\n");
        }
        else if (*mine)
        {
            auto g = csea::load_graph_files(graph_files.vertices, graph_files.edges);
            auto model = model_path.empty() ? csea::fit_background(g, {config.tol, config.max_iter})
                                            : csea::model_from_json(read_file(model_path));
            if (model.num_vertices() != g.num_vertices() || model.num_attributes() != g.num_attributes())
                throw std::invalid_argument(fmt::format("model is {} x {} but graph has {} vertices and {} attributes",
                                                        model.num_attributes(), model.num_vertices(),
                                                        g.num_vertices(), g.num_attributes()));
            if (model_path.empty())
                print_fit_report(model.fit_report());
            if (dl_budget_ms > 0)
                config.dl_budget = std::chrono::milliseconds(dl_budget_ms);

            std::ofstream trace;
            if (!trace_path.empty())
            {
                trace.open(trace_path);
                if (!trace)
                    throw std::ios_base::failure("cannot write " + trace_path);
            }
            auto result = csea::mine(g, model, config, trace_path.empty() ? nullptr : &trace);
            write_output(out_path, csea::patterns_to_jsonl(result, g));
            const auto& s = result.summary;
            std::cerr << fmt::format("mine: {} closed patterns, {} reported, {} branch-and-bound nodes, "
                                     "{} inexact, {:.3f} s\n",
                                     s.pattern_count, s.reported, s.bnb_nodes, s.inexact, s.seconds);
        }
        else if (*exporter)
        {
            auto g = csea::load_graph_files(graph_files.vertices, graph_files.edges);
            std::ifstream in(patterns_path);
            if (!in)
                throw std::ios_base::failure("cannot open " + patterns_path);
            auto records = csea::read_pattern_records(in);
            write_output(out_path, format == "dot" ? csea::export_dot(records, g) : csea::export_geojson(records, g));
        }
        else if (*synth)
        {
            auto data = csea::generate_grid(synth_config);
            std::ostringstream vertices, edges;
            csea::write_vertices_csv(data.graph, vertices);
            csea::write_edges_csv(data.graph, edges);
            write_output(synth_vertices, vertices.str());
            write_output(synth_edges, edges.str());
            if (!synth_planted.empty())
            {
                nlohmann::json planted = nlohmann::json::array();
                for (std::size_t k = 0; k < data.planted.size(); ++k)
                {
                    std::vector<std::string> ids;
                    for (auto v : data.planted[k].members())
                        ids.push_back(data.graph.vertex_ids()[v]);
                    std::vector<std::string> attrs;
                    for (auto a : data.boosted[k])
                        attrs.push_back(data.graph.attributes()[a]);
                    planted.push_back({{"vertices", ids}, {"attributes", attrs}});
                }
                write_output(synth_planted, planted.dump() + "\n");
            }
        }
    }
    catch (const csea::FitError& e)
    {
        print_fit_report(e.report());
        std::cerr << "error: " << e.what() << '\n';
        return exit_not_converged;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input_error;
    }
    return 0;
}
