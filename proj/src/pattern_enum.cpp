#include "csea/pattern_enum.hpp"

#include <algorithm>
#include <unordered_map>

namespace csea
{

ErModel transform_to_er(const AttributedGraph& g, const TailMatrix& t, const BinBoundaries& bins, int max_radius)
{
    const auto n = g.num_vertices();
    if (t.num_vertices != n || t.num_attributes != g.num_attributes() || bins.cuts.size() != g.num_attributes())
        throw std::invalid_argument("tail matrix or bins do not match the graph");

    ErModel er;
    er.num_vertices = n;
    er.num_attributes = g.num_attributes();
    er.max_radius = max_radius;
    er.tails = t;

    er.lower_chains.resize(er.num_attributes);
    er.upper_chains.resize(er.num_attributes);
    for (std::size_t a = 0; a < er.num_attributes; ++a)
    {
        const auto& cuts = bins.cuts[a];
        auto make = [&](Side side, double bound) {
            IntervalEntity e{{a, side, bound}, VertexSet(n)};
            for (VertexIndex v = 0; v < n; ++v)
            {
                double c = t.at(a, v);
                if (side == Side::Lower ? c <= bound : c >= bound)
                    e.members.insert(v);
            }
            return e;
        };
        for (double cut : cuts)
            er.lower_chains[a].push_back(make(Side::Lower, cut));
        er.lower_chains[a].push_back(make(Side::Lower, 1.0));
        for (auto it = cuts.rbegin(); it != cuts.rend(); ++it)
            er.upper_chains[a].push_back(make(Side::Upper, *it));
    }

    auto nbs = all_neighborhoods(g, max_radius);
    er.vocabulary_size = nbs.vocabulary_size;
    er.center_chains.resize(n);
    std::unordered_map<VertexSet, std::size_t, VertexSetHash> ids;
    for (auto& nb : nbs.items)
    {
        auto [it, fresh] = ids.try_emplace(nb.members, er.neighborhoods.size());
        if (fresh)
            er.neighborhoods.push_back({std::move(nb.members), {}});
        er.neighborhoods[it->second].aliases.emplace_back(nb.center, nb.radius);
        er.center_chains[nb.center].push_back(it->second);
    }

    er.vertex_neighborhoods.resize(n);
    for (std::size_t id = 0; id < er.neighborhoods.size(); ++id)
        er.neighborhoods[id].members.for_each([&](VertexIndex v) { er.vertex_neighborhoods[v].push_back(id); });
    return er;
}

std::vector<IntervalBound> tighten_s(const ErModel& er, const VertexSet& vertices)
{
    if (vertices.empty())
        throw std::invalid_argument("cannot tighten intervals around an empty vertex set");
    std::vector<IntervalBound> out;
    for (std::size_t a = 0; a < er.num_attributes; ++a)
    {
        for (const auto& e : er.lower_chains[a])
            if (vertices.is_subset_of(e.members))
            {
                if (e.interval.bound < 1.0)
                    out.push_back(e.interval);
                break;
            }
        for (const auto& e : er.upper_chains[a])
            if (vertices.is_subset_of(e.members))
            {
                if (e.interval.bound > 0.0)
                    out.push_back(e.interval);
                break;
            }
    }
    return out;
}

namespace
{

class ClosedEnumerator
{
public:
    ClosedEnumerator(const ErModel& er, std::size_t min_vertices, const std::function<void(ClosedPattern&&)>& sink)
        : er_(er), min_vertices_(min_vertices), sink_(sink)
    {
    }

    void run()
    {
        if (er_.num_vertices == 0 || er_.neighborhoods.empty())
            return;
        auto full = VertexSet::full(er_.num_vertices);
        auto root = closure(full);
        // V itself only counts when some neighborhood spans the whole graph
        if (!root.empty() && er_.num_vertices >= min_vertices_)
            emit(full, root);
        expand(full, root, 0);
    }

private:
    // ascending ids of all entities containing u_set
    std::vector<std::size_t> closure(const VertexSet& u_set) const
    {
        const std::vector<std::size_t>* shortest = nullptr;
        u_set.for_each([&](VertexIndex v) {
            const auto& list = er_.vertex_neighborhoods[v];
            if (shortest == nullptr || list.size() < shortest->size())
                shortest = &list;
        });
        std::vector<std::size_t> out;
        for (auto id : *shortest)
            if (u_set.is_subset_of(er_.neighborhoods[id].members))
                out.push_back(id);
        return out;
    }

    void emit(const VertexSet& u_set, const std::vector<std::size_t>& covering)
    {
        ClosedPattern p{u_set, tighten_s(er_, u_set), covering};
        sink_(std::move(p));
    }

    void expand(const VertexSet& u_set, const std::vector<std::size_t>& items, std::size_t start)
    {
        const auto m = er_.neighborhoods.size();
        for (std::size_t i = start; i < m; ++i)
        {
            if (std::binary_search(items.begin(), items.end(), i))
                continue;
            auto next = u_set & er_.neighborhoods[i].members;
            if (next.count() < min_vertices_)
                continue;
            auto next_items = closure(next);
            // prefix-preserving: the closure may not gain any entity below i
            bool canonical = true;
            for (auto j : next_items)
            {
                if (j >= i)
                    break;
                if (!std::binary_search(items.begin(), items.end(), j))
                {
                    canonical = false;
                    break;
                }
            }
            if (!canonical)
                continue;
            emit(next, next_items);
            expand(next, next_items, i + 1);
        }
    }

    const ErModel& er_;
    std::size_t min_vertices_;
    const std::function<void(ClosedPattern&&)>& sink_;
};

}  // namespace

void for_each_closed(const ErModel& er, std::size_t min_vertices, const std::function<void(ClosedPattern&&)>& sink)
{
    if (min_vertices < 1)
        throw std::invalid_argument("min_vertices must be at least 1");
    ClosedEnumerator(er, min_vertices, sink).run();
}

std::vector<ClosedPattern> enumerate_closed(const ErModel& er, std::size_t min_vertices)
{
    std::vector<ClosedPattern> out;
    for_each_closed(er, min_vertices, [&](ClosedPattern&& p) { out.push_back(std::move(p)); });
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.vertices < y.vertices; });
    return out;
}

}  // namespace csea
