#pragma once
// Random instance generators shared by the unit tests and the acceptance suite.

#include "csea/background.hpp"
#include "csea/description.hpp"
#include "csea/graph.hpp"
#include "csea/pattern_enum.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

namespace csea::testing
{

inline std::vector<std::string> numbered_ids(std::size_t n)
{
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i)
        ids.push_back(fmt::format("v{}", i));
    return ids;
}

inline std::vector<std::string> numbered_attributes(std::size_t p)
{
    std::vector<std::string> attrs;
    for (std::size_t a = 0; a < p; ++a)
        attrs.push_back(fmt::format("a{}", a));
    return attrs;
}

/// Erdős–Rényi graph with uniform counts in [0, max_value].
inline AttributedGraph random_graph(std::mt19937_64& rng, std::size_t n, std::size_t attributes, double edge_prob,
                                    int max_value)
{
    std::bernoulli_distribution coin(edge_prob);
    std::vector<Edge> edges;
    for (VertexIndex u = 0; u < n; ++u)
        for (VertexIndex v = u + 1; v < n; ++v)
            if (coin(rng))
                edges.emplace_back(u, v);
    std::uniform_int_distribution<std::int64_t> value(0, max_value);
    std::vector<std::int64_t> values(n * attributes);
    for (auto& x : values)
        x = value(rng);
    return AttributedGraph(numbered_ids(n), std::move(edges), numbered_attributes(attributes), std::move(values));
}

inline AttributedGraph path_graph(std::size_t n, std::vector<std::int64_t> values, std::size_t attributes = 1)
{
    std::vector<Edge> edges;
    for (VertexIndex v = 0; v + 1 < n; ++v)
        edges.emplace_back(v, v + 1);
    return AttributedGraph(numbered_ids(n), std::move(edges), numbered_attributes(attributes), std::move(values));
}

inline AttributedGraph cycle_graph(std::size_t n, std::vector<std::int64_t> values, std::size_t attributes = 1)
{
    std::vector<Edge> edges;
    for (VertexIndex v = 0; v < n; ++v)
        edges.emplace_back(v, (v + 1) % n);
    return AttributedGraph(numbered_ids(n), std::move(edges), numbered_attributes(attributes), std::move(values));
}

struct Mined
{
    BackgroundModel model;
    ErModel er;
};

/// Fit, tail transform, binning and ER transform in one go.
inline Mined build_er(const AttributedGraph& g, int bins, int max_radius)
{
    auto model = fit_background(g);
    auto tails = tail_matrix(model, g);
    auto cuts = bin_tails(tails, bins);
    auto er = transform_to_er(g, tails, cuts, max_radius);
    return {std::move(model), std::move(er)};
}

/// Cover instance over `n` vertices: a random non-empty target and
/// `num_candidates` random supersets of it.
inline CoverInstance random_cover(std::mt19937_64& rng, std::size_t n, std::size_t num_candidates,
                                  double target_density = 0.4, double extra_density = 0.5)
{
    std::bernoulli_distribution in_target(target_density), in_extra(extra_density);
    CoverInstance inst{VertexSet(n), {}, 0, n};
    for (VertexIndex v = 0; v < n; ++v)
        if (in_target(rng))
            inst.target.insert(v);
    if (inst.target.empty())
        inst.target.insert(std::uniform_int_distribution<VertexIndex>(0, n - 1)(rng));
    for (std::size_t i = 0; i < num_candidates; ++i)
    {
        auto c = inst.target;
        for (VertexIndex v = 0; v < n; ++v)
            if (in_extra(rng))
                c.insert(v);
        inst.candidates.push_back(std::move(c));
    }
    // vocabulary |V|·(D+1) for some D in [0, 3], never below the candidate count
    auto radius = std::uniform_int_distribution<std::size_t>(0, 3)(rng);
    inst.vocabulary_size = std::max(n * (radius + 1), num_candidates);
    return inst;
}

inline Selection random_subset(std::mt19937_64& rng, const Selection& from, double density = 0.5)
{
    std::bernoulli_distribution keep(density);
    Selection out;
    for (auto e : from)
        if (keep(rng))
            out.push_back(e);
    return out;
}

inline Selection iota_selection(std::size_t n)
{
    Selection s(n);
    for (std::size_t i = 0; i < n; ++i)
        s[i] = i;
    return s;
}

}  // namespace csea::testing
