#include "csea/background.hpp"
#include "csea/json_format.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace csea
{

namespace
{

constexpr double neg_inf = -std::numeric_limits<double>::infinity();

double cell_probability(double lambda_sum)
{
    if (lambda_sum == neg_inf)
        return 1.0;
    return std::max(BackgroundModel::min_probability, -std::expm1(lambda_sum));
}

// Geometric mean as a function of the log-odds s = lambda_a + lambda_v < 0.
double geometric_mean(double s) { return 1.0 / std::expm1(-s); }

// Solves sum_i geometric_mean(t + offsets[i]) = target for t.
//
// log of the left side is convex and increasing in t, so Newton iterates
// started to the right of the root decrease monotonically onto it.
double solve_margin(std::span<const double> offsets, double target, double start)
{
    const double hi = -*std::max_element(offsets.begin(), offsets.end());
    const double log_target = std::log(target);

    auto eval = [&](double t, double& slope) {
        double sum = 0.0, dsum = 0.0;
        for (double c : offsets)
        {
            double m = geometric_mean(t + c);
            sum += m;
            dsum += m * (1.0 + m);
        }
        slope = dsum / sum;
        return std::log(sum) - log_target;
    };

    double t = std::isfinite(start) && start < hi ? start : hi - 1.0;
    double slope = 0.0;
    double phi = eval(t, slope);
    while (phi < 0.0)
    {
        double next = t - phi / slope;
        // a tangent step from the left may leave the domain; fall back to halving the gap
        t = next < hi ? next : hi - 0.5 * (hi - t);
        phi = eval(t, slope);
    }
    for (int iter = 0; iter < 200 && phi > 0.0; ++iter)
    {
        double step = phi / slope;
        if (step <= 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t)))
            break;
        t -= step;
        phi = eval(t, slope);
    }
    return t;
}

}  // namespace

BackgroundModel::BackgroundModel(std::vector<double> lambda_row, std::vector<double> lambda_col, FitReport report)
    : lambda_row_(std::move(lambda_row)), lambda_col_(std::move(lambda_col)), report_(report)
{
    p_.resize(lambda_row_.size() * lambda_col_.size());
    for (std::size_t a = 0; a < lambda_row_.size(); ++a)
        for (std::size_t v = 0; v < lambda_col_.size(); ++v)
            p_[a * lambda_col_.size() + v] = cell_probability(lambda_row_[a] + lambda_col_[v]);
}

BackgroundModel::BackgroundModel(std::vector<double> lambda_row,
                                 std::vector<double> lambda_col,
                                 std::vector<double> p,
                                 FitReport report)
    : lambda_row_(std::move(lambda_row)), lambda_col_(std::move(lambda_col)), p_(std::move(p)), report_(report)
{
    if (p_.size() != lambda_row_.size() * lambda_col_.size())
        throw std::invalid_argument("probability matrix does not match multiplier dimensions");
    for (double x : p_)
        if (!(x > 0.0 && x <= 1.0))
            throw std::invalid_argument("success probability outside (0, 1]");
}

double BackgroundModel::expected(std::size_t a, VertexIndex v) const
{
    double q = p(a, v);
    return (1.0 - q) / q;
}

BackgroundModel fit_background(std::span<const std::int64_t> values,
                               std::size_t num_vertices,
                               std::size_t num_attributes,
                               const FitOptions& options)
{
    if (!(options.tol > 0.0))
        throw std::invalid_argument("fit tolerance must be positive");
    if (values.size() != num_vertices * num_attributes)
        throw std::invalid_argument("count matrix size mismatch");

    std::vector<double> vertex_sum(num_vertices, 0.0), attr_sum(num_attributes, 0.0);
    double total = 0.0;
    for (std::size_t v = 0; v < num_vertices; ++v)
        for (std::size_t a = 0; a < num_attributes; ++a)
        {
            auto x = values[v * num_attributes + a];
            if (x < 0)
                throw std::invalid_argument("negative count in background fit");
            vertex_sum[v] += static_cast<double>(x);
            attr_sum[a] += static_cast<double>(x);
            total += static_cast<double>(x);
        }

    std::vector<std::size_t> active_v, active_a;
    for (std::size_t v = 0; v < num_vertices; ++v)
        if (vertex_sum[v] > 0)
            active_v.push_back(v);
    for (std::size_t a = 0; a < num_attributes; ++a)
        if (attr_sum[a] > 0)
            active_a.push_back(a);

    std::vector<double> lambda_row(num_attributes, neg_inf), lambda_col(num_vertices, neg_inf);
    if (total == 0.0)
        return BackgroundModel(std::move(lambda_row), std::move(lambda_col), FitReport{0, 0.0, true});

    const double mean = total / static_cast<double>(num_vertices * num_attributes);
    const double half = 0.5 * std::log(mean / (1.0 + mean));
    for (auto a : active_a)
        lambda_row[a] = half;
    for (auto v : active_v)
        lambda_col[v] = half;

    auto residual = [&]() {
        double worst = 0.0;
        for (auto a : active_a)
        {
            double e = 0.0;
            for (auto v : active_v)
                e += geometric_mean(lambda_row[a] + lambda_col[v]);
            worst = std::max(worst, std::abs(e - attr_sum[a]) / std::max(1.0, attr_sum[a]));
        }
        for (auto v : active_v)
        {
            double e = 0.0;
            for (auto a : active_a)
                e += geometric_mean(lambda_row[a] + lambda_col[v]);
            worst = std::max(worst, std::abs(e - vertex_sum[v]) / std::max(1.0, vertex_sum[v]));
        }
        return worst;
    };

    FitReport report;
    report.max_residual = residual();
    std::vector<double> offsets;
    while (report.max_residual > options.tol && report.iterations < options.max_iter)
    {
        offsets.resize(active_v.size());
        for (auto a : active_a)
        {
            for (std::size_t i = 0; i < active_v.size(); ++i)
                offsets[i] = lambda_col[active_v[i]];
            lambda_row[a] = solve_margin(offsets, attr_sum[a], lambda_row[a]);
        }
        offsets.resize(active_a.size());
        for (auto v : active_v)
        {
            for (std::size_t i = 0; i < active_a.size(); ++i)
                offsets[i] = lambda_row[active_a[i]];
            lambda_col[v] = solve_margin(offsets, vertex_sum[v], lambda_col[v]);
        }
        ++report.iterations;
        report.max_residual = residual();
    }
    report.converged = report.max_residual <= options.tol;
    if (!report.converged)
        throw FitError("fit did not converge: max residual " + format_real(report.max_residual) + " after " +
                           std::to_string(report.iterations) + " sweeps",
                       report);
    return BackgroundModel(std::move(lambda_row), std::move(lambda_col), report);
}

BackgroundModel fit_background(const AttributedGraph& g, const FitOptions& options)
{
    std::vector<std::int64_t> values(g.num_vertices() * g.num_attributes());
    for (VertexIndex v = 0; v < g.num_vertices(); ++v)
        for (std::size_t a = 0; a < g.num_attributes(); ++a)
            values[v * g.num_attributes() + a] = g.value(v, a);
    return fit_background(values, g.num_vertices(), g.num_attributes(), options);
}

double tail_probability(const BackgroundModel& m, std::size_t a, VertexIndex v, std::int64_t value)
{
    if (value < 0)
        throw std::invalid_argument("tail probability of a negative value");
    if (value == 0)
        return 1.0;
    return std::pow(1.0 - m.p(a, v), static_cast<double>(value));
}

double interval_probability(const BackgroundModel& m, std::size_t a, VertexIndex v, double k, double l)
{
    if (k > l)
        throw std::invalid_argument("interval lower end exceeds upper end");
    return std::clamp(l - k + m.p(a, v) * k, 0.0, 1.0);
}

TailMatrix tail_matrix(const BackgroundModel& m, const AttributedGraph& g)
{
    if (m.num_attributes() != g.num_attributes() || m.num_vertices() != g.num_vertices())
        throw std::invalid_argument("background model dimensions do not match the graph");
    TailMatrix t{g.num_attributes(), g.num_vertices(), std::vector<double>(g.num_attributes() * g.num_vertices())};
    for (std::size_t a = 0; a < t.num_attributes; ++a)
        for (VertexIndex v = 0; v < t.num_vertices; ++v)
            t.c[a * t.num_vertices + v] = tail_probability(m, a, v, g.value(v, a));
    return t;
}

std::size_t BinBoundaries::bin_of(std::size_t a, double value) const
{
    const auto& c = cuts[a];
    return static_cast<std::size_t>(std::lower_bound(c.begin(), c.end(), value) - c.begin());
}

BinBoundaries bin_tails(const TailMatrix& t, int bins)
{
    if (bins < 2)
        throw std::invalid_argument("at least two bins are required");
    BinBoundaries out;
    out.cuts.resize(t.num_attributes);
    const auto n = t.num_vertices;
    if (n == 0)
        return out;
    for (std::size_t a = 0; a < t.num_attributes; ++a)
    {
        auto col = t.column(a);
        std::vector<double> sorted(col.begin(), col.end());
        std::sort(sorted.begin(), sorted.end());
        auto& cuts = out.cuts[a];
        for (int i = 1; i < bins; ++i)
        {
            // nearest rank: ceil(i * n / B), 1-based
            auto rank = (static_cast<std::size_t>(i) * n + static_cast<std::size_t>(bins) - 1) /
                        static_cast<std::size_t>(bins);
            double cut = sorted[std::max<std::size_t>(rank, 1) - 1];
            if (cut >= sorted.back())
                continue;
            if (cuts.empty() || cut > cuts.back())
                cuts.push_back(cut);
        }
    }
    return out;
}

std::string model_to_json(const BackgroundModel& m)
{
    std::string out = "{\"num_attributes\":" + std::to_string(m.num_attributes()) +
                      ",\"num_vertices\":" + std::to_string(m.num_vertices()) + ",\"lambda_row\":[";
    auto list = [&](const std::vector<double>& xs) {
        for (std::size_t i = 0; i < xs.size(); ++i)
            out += (i ? "," : "") + format_real(xs[i]);
    };
    list(m.lambda_row());
    out += "],\"lambda_col\":[";
    list(m.lambda_col());
    out += "],\"p\":[";
    for (std::size_t a = 0; a < m.num_attributes(); ++a)
    {
        out += a ? ",[" : "[";
        for (std::size_t v = 0; v < m.num_vertices(); ++v)
            out += (v ? "," : "") + format_real(m.p(a, v));
        out += "]";
    }
    const auto& r = m.fit_report();
    out += "],\"fit_report\":{\"iterations\":" + std::to_string(r.iterations) +
           ",\"max_residual\":" + format_real(r.max_residual) +
           ",\"converged\":" + (r.converged ? "true" : "false") + "}}";
    return out;
}

BackgroundModel model_from_json(const std::string& text)
{
    auto doc = nlohmann::json::parse(text);
    // -infinity multipliers of degenerate rows are stored as null
    auto reals = [](const nlohmann::json& arr) {
        std::vector<double> xs;
        for (const auto& x : arr)
            xs.push_back(x.is_null() ? neg_inf : x.get<double>());
        return xs;
    };
    auto lambda_row = reals(doc.at("lambda_row"));
    auto lambda_col = reals(doc.at("lambda_col"));
    std::vector<double> p;
    const auto& rows = doc.at("p");
    if (rows.size() != lambda_row.size())
        throw std::invalid_argument("model JSON: p has wrong number of attribute rows");
    for (const auto& row : rows)
    {
        if (row.size() != lambda_col.size())
            throw std::invalid_argument("model JSON: ragged p row");
        for (const auto& x : row)
            p.push_back(x.get<double>());
    }
    FitReport report;
    if (doc.contains("fit_report"))
    {
        const auto& r = doc["fit_report"];
        report.iterations = r.value("iterations", std::size_t{0});
        report.max_residual = r.value("max_residual", 0.0);
        report.converged = r.value("converged", false);
    }
    return BackgroundModel(std::move(lambda_row), std::move(lambda_col), std::move(p), report);
}

}  // namespace csea
