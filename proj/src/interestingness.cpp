#include "csea/interestingness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace csea
{

double information_content(const ClosedPattern& p, const BackgroundModel& m)
{
    double ic = 0.0;
    std::size_t i = 0;
    const auto& s = p.intervals;
    while (i < s.size())
    {
        // intervals arrive grouped by attribute
        const auto a = s[i].attribute;
        double k = 0.0, l = 1.0;
        for (; i < s.size() && s[i].attribute == a; ++i)
        {
            k = std::max(k, s[i].low());
            l = std::min(l, s[i].high());
        }
        p.vertices.for_each([&](VertexIndex v) {
            double prob = interval_probability(m, a, v, k, l);
            if (!(prob > 0.0))
                throw std::runtime_error("pattern has zero probability under the background model");
            ic -= std::log2(prob);
        });
    }
    return ic;
}

double information_content_counts(const VertexSet& vertices, const std::vector<CountInterval>& s,
                                  const BackgroundModel& m)
{
    double ic = 0.0;
    for (const auto& iv : s)
    {
        if (iv.high && *iv.high < iv.low)
            throw std::invalid_argument("count interval with high < low");
        bool impossible = false;
        vertices.for_each([&](VertexIndex v) {
            double q = 1.0 - m.p(iv.attribute, v);
            double prob = std::pow(q, static_cast<double>(iv.low));
            if (iv.high)
                prob -= std::pow(q, static_cast<double>(*iv.high + 1));
            if (!(prob > 0.0))
                impossible = true;
            else
                ic -= std::log2(prob);
        });
        if (impossible)
            return std::numeric_limits<double>::infinity();
    }
    return ic;
}

CoverInstance cover_instance(const ClosedPattern& p, const ErModel& er)
{
    CoverInstance inst{p.vertices, {}, er.vocabulary_size, er.num_vertices};
    inst.candidates.reserve(p.covering.size());
    for (auto id : p.covering)
        inst.candidates.push_back(er.neighborhoods[id].members);
    return inst;
}

ScoredPattern score_pattern(ClosedPattern p, const ErModel& er, const BackgroundModel& m, const DlOptions& options)
{
    ScoredPattern out;
    out.ic = information_content(p, m);
    auto result = dl_optimise(cover_instance(p, er), options);
    out.dl = result.dl;
    // DL is zero only in the single-vertex, radius-zero graph
    out.si = out.dl > 0.0 ? out.ic / out.dl : 0.0;
    out.best_description = std::move(result.best);
    out.nodes = result.nodes;
    out.dl_exact = result.exact;
    out.pattern = std::move(p);
    return out;
}

bool ranks_before(const ScoredPattern& a, const ScoredPattern& b)
{
    if (a.si != b.si)
        return a.si > b.si;
    if (a.ic != b.ic)
        return a.ic > b.ic;
    return a.pattern.vertices < b.pattern.vertices;
}

std::vector<ScoredPattern> rank_patterns(std::vector<ScoredPattern> scored, std::size_t top_k)
{
    auto keep = std::min(top_k, scored.size());
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(keep), scored.end(), ranks_before);
    scored.resize(keep);
    return scored;
}

std::vector<ScoredPattern> score_and_rank(std::vector<ClosedPattern> patterns, const ErModel& er,
                                          const BackgroundModel& m, std::size_t top_k, unsigned jobs,
                                          const DlOptions& options)
{
    std::vector<ScoredPattern> scored(patterns.size());
    std::vector<std::string> traces(options.trace != nullptr ? patterns.size() : 0);
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(patterns.size());
    auto worker = [&]() {
        DlOptions local = options;
        for (auto i = next++; i < patterns.size(); i = next++)
        {
            std::ostringstream trace;
            if (options.trace != nullptr)
                local.trace = &trace;
            try
            {
                scored[i] = score_pattern(std::move(patterns[i]), er, m, local);
            }
            catch (...)
            {
                errors[i] = std::current_exception();
            }
            if (options.trace != nullptr)
                traces[i] = trace.str();
        }
    };
    jobs = std::max(1U, jobs);
    if (jobs == 1)
        worker();
    else
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < jobs; ++t)
            pool.emplace_back(worker);
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    // per-pattern traces are written in input order regardless of scheduling
    for (std::size_t i = 0; i < traces.size(); ++i)
        *options.trace << "{\"pattern\":" << i << "}\n" << traces[i];
    return rank_patterns(std::move(scored), top_k);
}

}  // namespace csea
