#include "csea/description.hpp"
#include "csea/json_format.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace csea
{

double description_cost(std::size_t num_chosen, std::size_t num_exceptions, std::size_t vocabulary_size,
                        std::size_t num_vertices)
{
    return static_cast<double>(num_chosen + 1) * std::log2(static_cast<double>(vocabulary_size)) +
           static_cast<double>(num_exceptions + 1) * std::log2(static_cast<double>(num_vertices));
}

namespace
{

VertexSet intersection(const CoverInstance& inst, const Selection& chosen)
{
    auto inter = VertexSet::full(inst.target.universe());
    for (auto c : chosen)
        inter &= inst.candidates.at(c);
    return inter;
}

std::vector<std::size_t> singleton_gains(const CoverInstance& inst, const VertexSet& exc, const Selection& cand)
{
    std::vector<std::size_t> g;
    g.reserve(cand.size());
    for (auto c : cand)
        g.push_back(exc.count_minus(inst.candidates[c]));
    return g;
}

// min over i of cost(|X| + i, max(0, |exc| - (g_1 + ... + g_i))) with gains sorted descending
double bound_from_gains(std::vector<std::size_t> gains, std::size_t num_chosen, std::size_t num_exc,
                        std::size_t vocab, std::size_t n)
{
    std::sort(gains.begin(), gains.end(), std::greater<>());
    double best = description_cost(num_chosen, num_exc, vocab, n);
    std::size_t removed = 0;
    for (std::size_t i = 0; i < gains.size(); ++i)
    {
        removed += gains[i];
        auto left = removed >= num_exc ? 0 : num_exc - removed;
        best = std::min(best, description_cost(num_chosen + i + 1, left, vocab, n));
    }
    return best;
}

Selection filter_useless(const CoverInstance& inst, const VertexSet& exc, const Selection& cand)
{
    Selection out;
    for (auto c : cand)
        if (exc.count_minus(inst.candidates[c]) > 0)
            out.push_back(c);
    return out;
}

Selection filter_dominated(const CoverInstance& inst, const VertexSet& exc, const Selection& cand)
{
    std::vector<VertexSet> remaining;
    remaining.reserve(cand.size());
    for (auto c : cand)
        remaining.push_back(exc & inst.candidates[c]);
    Selection out;
    for (std::size_t i = 0; i < cand.size(); ++i)
    {
        bool keep = true;
        for (std::size_t j = 0; j < cand.size() && keep; ++j)
        {
            if (j == i || !remaining[j].is_subset_of(remaining[i]))
                continue;
            // strictly better, or equal with a lower index
            if (remaining[j] != remaining[i] || j < i)
                keep = false;
        }
        if (keep)
            out.push_back(cand[i]);
    }
    return out;
}

std::size_t choose(const CoverInstance& inst, const VertexSet& exc, const Selection& cand)
{
    // f(X ∪ {e}) differs across e only through |exc ∩ e|
    std::size_t best = cand.front();
    std::size_t best_left = exc.count() + 1;
    for (auto c : cand)
    {
        auto left = exc.count() - exc.count_minus(inst.candidates[c]);
        if (left < best_left)
        {
            best_left = left;
            best = c;
        }
    }
    return best;
}

void write_selection(std::ostream& os, const Selection& s)
{
    os << '[';
    for (std::size_t i = 0; i < s.size(); ++i)
        os << (i ? "," : "") << s[i];
    os << ']';
}

class BranchAndBound
{
public:
    BranchAndBound(const CoverInstance& inst, const DlOptions& options) : inst_(inst), options_(options)
    {
        if (options_.time_budget)
            deadline_ = std::chrono::steady_clock::now() + *options_.time_budget;
    }

    DlResult run()
    {
        auto full = VertexSet::full(inst_.target.universe());
        best_cost_ = cost(0, full.count_minus(inst_.target));
        Selection all(inst_.candidates.size());
        for (std::size_t i = 0; i < all.size(); ++i)
            all[i] = i;
        visit(full, std::move(all), 0);

        DlResult r;
        std::sort(best_.begin(), best_.end());
        r.best.chosen = best_;
        r.best.exceptions = exceptions(inst_, best_);
        r.best.length = best_cost_;
        r.dl = best_cost_;
        r.nodes = nodes_;
        r.exact = !stopped_;
        return r;
    }

private:
    double cost(std::size_t chosen, std::size_t exc) const
    {
        return description_cost(chosen, exc, inst_.vocabulary_size, inst_.num_vertices);
    }

    void visit(const VertexSet& inter, Selection cand, std::size_t depth)
    {
        if (stopped_)
            return;
        ++nodes_;
        if (deadline_ && (nodes_ & 63U) == 0 && std::chrono::steady_clock::now() > *deadline_)
        {
            stopped_ = true;
            return;
        }
        auto exc = inter - inst_.target;
        auto num_exc = exc.count();
        double lb = bound_from_gains(singleton_gains(inst_, exc, cand), current_.size(), num_exc,
                                     inst_.vocabulary_size, inst_.num_vertices);
        bool explore = lb < best_cost_;
        if (options_.trace != nullptr)
        {
            auto& os = *options_.trace;
            os << "{\"node\":" << nodes_ << ",\"depth\":" << depth << ",\"x\":";
            write_selection(os, current_);
            os << ",\"cand\":";
            write_selection(os, cand);
            os << ",\"exceptions\":" << num_exc << ",\"lb\":" << format_real(lb)
               << ",\"best\":" << format_real(best_cost_) << ",\"pruned\":" << (explore ? "false" : "true") << "}\n";
        }
        if (!explore)
            return;

        if (options_.prune_useless)
            cand = filter_useless(inst_, exc, cand);
        if (options_.prune_lower_bounded)
            cand = filter_dominated(inst_, exc, cand);
        if (cand.empty())
        {
            double f = cost(current_.size(), num_exc);
            if (f < best_cost_)
            {
                best_cost_ = f;
                best_ = current_;
            }
            return;
        }

        auto e = choose(inst_, exc, cand);
        cand.erase(std::find(cand.begin(), cand.end(), e));
        current_.push_back(e);
        visit(inter & inst_.candidates[e], cand, depth + 1);
        current_.pop_back();
        visit(inter, std::move(cand), depth + 1);
    }

    const CoverInstance& inst_;
    const DlOptions& options_;
    std::optional<std::chrono::steady_clock::time_point> deadline_;
    Selection current_;
    Selection best_;
    double best_cost_ = 0.0;
    std::size_t nodes_ = 0;
    bool stopped_ = false;
};

}  // namespace

VertexSet exceptions(const CoverInstance& inst, const Selection& chosen)
{
    return intersection(inst, chosen) - inst.target;
}

double description_cost(const CoverInstance& inst, const Selection& chosen)
{
    for (auto c : chosen)
        if (!inst.target.is_subset_of(inst.candidates.at(c)))
            throw std::invalid_argument("description uses a neighborhood that does not cover the pattern");
    return description_cost(chosen.size(), exceptions(inst, chosen).count(), inst.vocabulary_size,
                            inst.num_vertices);
}

std::size_t gain(const CoverInstance& inst, const Selection& extra, const Selection& chosen)
{
    auto before = exceptions(inst, chosen);
    auto after = before;
    for (auto y : extra)
        after &= inst.candidates.at(y);
    return before.count() - after.count();
}

double lower_bound(const CoverInstance& inst, const Selection& chosen, const Selection& candidates)
{
    auto exc = exceptions(inst, chosen);
    return bound_from_gains(singleton_gains(inst, exc, candidates), chosen.size(), exc.count(), inst.vocabulary_size,
                            inst.num_vertices);
}

Selection prune_useless(const CoverInstance& inst, const Selection& chosen, const Selection& candidates)
{
    return filter_useless(inst, exceptions(inst, chosen), candidates);
}

Selection prune_lower_bounded(const CoverInstance& inst, const Selection& chosen, const Selection& candidates)
{
    return filter_dominated(inst, exceptions(inst, chosen), candidates);
}

std::size_t branch_choice(const CoverInstance& inst, const Selection& chosen, const Selection& candidates)
{
    if (candidates.empty())
        throw std::invalid_argument("branch choice over an empty candidate set");
    return choose(inst, exceptions(inst, chosen), candidates);
}

DlResult dl_optimise(const CoverInstance& inst, const DlOptions& options)
{
    for (const auto& c : inst.candidates)
        if (!inst.target.is_subset_of(c))
            throw std::invalid_argument("candidate neighborhood does not cover the pattern");
    return BranchAndBound(inst, options).run();
}

}  // namespace csea
