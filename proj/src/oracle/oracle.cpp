#include "csea/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <set>

namespace csea::oracle
{

namespace
{

double cost(std::size_t chosen, std::size_t exc, std::size_t vocab, std::size_t n)
{
    return static_cast<double>(chosen + 1) * std::log2(static_cast<double>(vocab)) +
           static_cast<double>(exc + 1) * std::log2(static_cast<double>(n));
}

std::vector<char> as_flags(const VertexSet& s)
{
    std::vector<char> f(s.universe(), 0);
    for (auto v : s.members())
        f[v] = 1;
    return f;
}

std::size_t count_exceptions(const std::vector<char>& target, const std::vector<std::vector<char>>& sets,
                             std::uint32_t mask)
{
    std::size_t exc = 0;
    for (std::size_t v = 0; v < target.size(); ++v)
    {
        bool inside = true;
        for (std::size_t i = 0; i < sets.size() && inside; ++i)
            if ((mask >> i) & 1U)
                inside = sets[i][v] != 0;
        if (inside && target[v] == 0)
            ++exc;
    }
    return exc;
}

}  // namespace

double brute_force_dl(const CoverInstance& inst)
{
    if (inst.candidates.size() > 20)
        throw GuardExceeded("brute_force_dl: more than 20 candidates");
    auto target = as_flags(inst.target);
    std::vector<std::vector<char>> sets;
    for (const auto& c : inst.candidates)
        sets.push_back(as_flags(c));
    double best = cost(0, count_exceptions(target, sets, 0), inst.vocabulary_size, inst.num_vertices);
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << sets.size()); ++mask)
    {
        auto k = static_cast<std::size_t>(std::popcount(mask));
        best = std::min(best, cost(k, count_exceptions(target, sets, mask), inst.vocabulary_size, inst.num_vertices));
    }
    return best;
}

double greedy_dl(const CoverInstance& inst)
{
    if (inst.candidates.size() > 32)
        throw GuardExceeded("greedy_dl: more than 32 candidates");
    auto target = as_flags(inst.target);
    std::vector<std::vector<char>> sets;
    for (const auto& c : inst.candidates)
        sets.push_back(as_flags(c));
    std::uint32_t mask = 0;
    std::size_t chosen = 0;
    double current = cost(0, count_exceptions(target, sets, 0), inst.vocabulary_size, inst.num_vertices);
    for (;;)
    {
        double best = current;
        std::size_t pick = sets.size();
        for (std::size_t i = 0; i < sets.size(); ++i)
        {
            if ((mask >> i) & 1U)
                continue;
            auto m = mask | (std::uint32_t{1} << i);
            double f = cost(chosen + 1, count_exceptions(target, sets, m), inst.vocabulary_size, inst.num_vertices);
            if (f < best)
            {
                best = f;
                pick = i;
            }
        }
        if (pick == sets.size())
            return current;
        mask |= std::uint32_t{1} << pick;
        ++chosen;
        current = best;
    }
}

std::vector<IntervalBound> scan_tightest(const ErModel& er, const std::vector<VertexIndex>& vertices)
{
    std::vector<IntervalBound> out;
    for (std::size_t a = 0; a < er.num_attributes; ++a)
    {
        double lo = 1.0, hi = 0.0;
        for (auto v : vertices)
        {
            lo = std::min(lo, er.tails.at(a, v));
            hi = std::max(hi, er.tails.at(a, v));
        }
        // narrowest lower interval [0, l] with l >= hi, narrowest upper [k, 1] with k <= lo
        double best_l = 1.0;
        for (const auto& e : er.lower_chains[a])
            if (e.interval.bound >= hi && e.interval.bound < best_l)
                best_l = e.interval.bound;
        double best_k = 0.0;
        for (const auto& e : er.upper_chains[a])
            if (e.interval.bound <= lo && e.interval.bound > best_k)
                best_k = e.interval.bound;
        if (best_l < 1.0)
            out.push_back({a, Side::Lower, best_l});
        if (best_k > 0.0)
            out.push_back({a, Side::Upper, best_k});
    }
    return out;
}

std::vector<ClosedPattern> brute_force_closed_patterns(const ErModel& er, std::size_t min_vertices)
{
    const auto m = er.neighborhoods.size();
    if (m > 15)
        throw GuardExceeded("brute_force_closed_patterns: more than 15 neighborhood entities");
    const auto n = er.num_vertices;
    std::vector<std::vector<char>> sets;
    for (const auto& e : er.neighborhoods)
        sets.push_back(as_flags(e.members));

    std::set<std::vector<VertexIndex>> seen;
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << m); ++mask)
    {
        std::vector<VertexIndex> u;
        for (VertexIndex v = 0; v < n; ++v)
        {
            bool inside = true;
            for (std::size_t i = 0; i < m && inside; ++i)
                if ((mask >> i) & 1U)
                    inside = sets[i][v] != 0;
            if (inside)
                u.push_back(v);
        }
        if (!u.empty() && u.size() >= min_vertices)
            seen.insert(u);
    }

    std::vector<ClosedPattern> out;
    for (const auto& u : seen)
    {
        ClosedPattern p{VertexSet(n), scan_tightest(er, u), {}};
        for (auto v : u)
            p.vertices.insert(v);
        for (std::size_t i = 0; i < m; ++i)
            if (std::all_of(u.begin(), u.end(), [&](VertexIndex v) { return sets[i][v] != 0; }))
                p.covering.push_back(i);

        // closure in U: nothing outside U satisfies S and lies in every covering neighborhood
        bool closed = true;
        for (VertexIndex w = 0; w < n && closed; ++w)
        {
            if (std::binary_search(u.begin(), u.end(), w))
                continue;
            bool in_all = std::all_of(p.covering.begin(), p.covering.end(), [&](std::size_t i) { return sets[i][w]; });
            bool satisfies = std::all_of(p.intervals.begin(), p.intervals.end(), [&](const IntervalBound& iv) {
                double c = er.tails.at(iv.attribute, w);
                return iv.low() <= c && c <= iv.high();
            });
            if (in_all && satisfies)
                closed = false;
        }
        if (closed)
            out.push_back(std::move(p));
    }
    return out;
}

}  // namespace csea::oracle
