#pragma once

#include "csea/graph.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace csea
{

struct FitReport
{
    std::size_t iterations = 0;
    double max_residual = 0.0;
    bool converged = false;
};

struct FitOptions
{
    /// Bound on |expected - empirical| / max(1, empirical) for every margin.
    double tol = 1e-8;
    std::size_t max_iter = 10'000;
};

class FitError : public std::runtime_error
{
public:
    FitError(const std::string& what, FitReport report) : std::runtime_error(what), report_(report) {}
    const FitReport& report() const noexcept { return report_; }

private:
    FitReport report_;
};

/// Maximum-entropy background distribution over nonnegative integer cells.
///
/// Every (attribute, vertex) cell is an independent geometric variable with
/// Pr(a(v) = z) = p (1 - p)^z and p = 1 - exp(lambda_row[a] + lambda_col[v]).
/// Cells of an all-zero attribute or vertex carry p = 1 and a multiplier of
/// -infinity.
class BackgroundModel
{
public:
    BackgroundModel(std::vector<double> lambda_row, std::vector<double> lambda_col, FitReport report);
    /// Restores a persisted model; `p` is taken verbatim (attribute-major).
    BackgroundModel(std::vector<double> lambda_row,
                    std::vector<double> lambda_col,
                    std::vector<double> p,
                    FitReport report);

    static constexpr double min_probability = 1e-12;

    std::size_t num_attributes() const { return lambda_row_.size(); }
    std::size_t num_vertices() const { return lambda_col_.size(); }

    double p(std::size_t a, VertexIndex v) const { return p_[a * lambda_col_.size() + v]; }
    /// Mean of the cell's geometric distribution, (1 - p) / p.
    double expected(std::size_t a, VertexIndex v) const;

    const std::vector<double>& lambda_row() const { return lambda_row_; }
    const std::vector<double>& lambda_col() const { return lambda_col_; }
    const std::vector<double>& p_matrix() const { return p_; }
    const FitReport& fit_report() const { return report_; }

private:
    std::vector<double> lambda_row_;
    std::vector<double> lambda_col_;
    std::vector<double> p_;
    FitReport report_;
};

/// Fits the model to a vertex-major count matrix (values[v * num_attributes + a]).
/// Throws FitError when the margins are not met within `max_iter` sweeps.
BackgroundModel fit_background(std::span<const std::int64_t> values,
                               std::size_t num_vertices,
                               std::size_t num_attributes,
                               const FitOptions& options = {});

BackgroundModel fit_background(const AttributedGraph& g, const FitOptions& options = {});

/// Pr(a(v) >= value) = (1 - p_av)^value.
double tail_probability(const BackgroundModel& m, std::size_t a, VertexIndex v, std::int64_t value);

/// Probability that the tail-transformed variable c_a(v) lands in [k, l].
double interval_probability(const BackgroundModel& m, std::size_t a, VertexIndex v, double k, double l);

/// Tail probabilities ĉ_a(v) for the observed values, attribute-major.
struct TailMatrix
{
    std::size_t num_attributes = 0;
    std::size_t num_vertices = 0;
    std::vector<double> c;

    double at(std::size_t a, VertexIndex v) const { return c[a * num_vertices + v]; }
    std::span<const double> column(std::size_t a) const { return {c.data() + a * num_vertices, num_vertices}; }
};

TailMatrix tail_matrix(const BackgroundModel& m, const AttributedGraph& g);

/// Per-attribute ascending cut points. A value x falls in bin i when
/// cuts[i-1] < x <= cuts[i] (with open ends at both sides).
struct BinBoundaries
{
    std::vector<std::vector<double>> cuts;

    std::size_t bin_of(std::size_t a, double value) const;
    std::size_t num_bins(std::size_t a) const { return cuts[a].size() + 1; }
};

/// Nearest-rank quantile cuts at ranks i/B; tied cuts merge and cuts at the
/// column maximum are dropped so every bin is non-empty.
BinBoundaries bin_tails(const TailMatrix& t, int bins);

std::string model_to_json(const BackgroundModel& m);
BackgroundModel model_from_json(const std::string& text);

}  // namespace csea
