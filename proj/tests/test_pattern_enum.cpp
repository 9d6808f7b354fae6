#include "csea/oracle.hpp"
#include "csea/pattern_enum.hpp"
#include "support.hpp"

#include <doctest.h>

#include <set>

using namespace csea;

namespace
{

ErModel er_from_tails(const AttributedGraph& g, std::vector<double> tails, int bins, int max_radius)
{
    TailMatrix t{g.num_attributes(), g.num_vertices(), std::move(tails)};
    return transform_to_er(g, t, bin_tails(t, bins), max_radius);
}

VertexSet intersection_of(const ErModel& er, const std::vector<std::size_t>& ids)
{
    auto u = VertexSet::full(er.num_vertices);
    for (auto id : ids)
        u &= er.neighborhoods[id].members;
    return u;
}

bool contains(const ErModel& er, const IntervalBound& iv, VertexIndex v)
{
    double c = er.tails.at(iv.attribute, v);
    return iv.low() <= c && c <= iv.high();
}

// every structural property a closed pattern must have, checked directly
void check_pattern(const ErModel& er, const ClosedPattern& p)
{
    REQUIRE_FALSE(p.vertices.empty());
    // containment
    for (const auto& iv : p.intervals)
        p.vertices.for_each([&](VertexIndex v) { CHECK(contains(er, iv, v)); });
    // tightest S, compared against the independent scan
    CHECK(p.intervals == oracle::scan_tightest(er, p.vertices.members()));
    // 𝒩(U) is every entity containing U, and U is exactly their intersection
    std::vector<std::size_t> covering;
    for (std::size_t id = 0; id < er.neighborhoods.size(); ++id)
        if (p.vertices.is_subset_of(er.neighborhoods[id].members))
            covering.push_back(id);
    CHECK(p.covering == covering);
    CHECK(intersection_of(er, p.covering) == p.vertices);
    // maximality: any w outside U that lies in ∩𝒩(U) must widen S
    auto region = intersection_of(er, p.covering);
    region.for_each([&](VertexIndex w) {
        if (p.vertices.contains(w))
            return;
        auto wider = p.vertices;
        wider.insert(w);
        CHECK_FALSE(tighten_s(er, wider) == p.intervals);
    });
}

}  // namespace

TEST_CASE("five bins give nine interval entities per attribute")
{
    std::vector<double> tails{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    AttributedGraph g(testing::numbered_ids(10), {}, {"x"}, std::vector<std::int64_t>(10, 0));
    auto er = er_from_tails(g, tails, 5, 0);
    REQUIRE(er.lower_chains[0].size() == 5);
    REQUIRE(er.upper_chains[0].size() == 4);
    CHECK(er.lower_chains[0].back().interval.bound == 1.0);
    CHECK(er.lower_chains[0].back().members == VertexSet::full(10));
    // the vertex with ĉ = 1 is in every upper interval
    for (const auto& e : er.upper_chains[0])
        CHECK(e.members.contains(9));
    // tightest first: lower bounds ascend, upper bounds descend
    CHECK(er.lower_chains[0][0].interval.bound == 0.2);
    CHECK(er.upper_chains[0][0].interval.bound == 0.8);
}

TEST_CASE("four-cycle with radius one has eight neighborhood entities")
{
    auto g = testing::cycle_graph(4, {1, 2, 3, 4});
    auto er = testing::build_er(g, 2, 1).er;
    CHECK(er.neighborhoods.size() == 8);
    CHECK(er.vocabulary_size == 8);
    for (VertexIndex v = 0; v < 4; ++v)
    {
        REQUIRE(er.center_chains[v].size() == 2);
        CHECK(er.neighborhoods[er.center_chains[v][0]].members.count() == 1);
        CHECK(er.neighborhoods[er.center_chains[v][1]].members.count() == 3);
    }
}

TEST_CASE("shared member sets become one entity with several aliases")
{
    // triangle: every N_1(v) is V
    AttributedGraph g(testing::numbered_ids(3), {{0, 1}, {1, 2}, {0, 2}}, {"x"}, {1, 2, 3});
    auto er = testing::build_er(g, 2, 2).er;
    CHECK(er.neighborhoods.size() == 4);
    CHECK(er.vocabulary_size == 9);
    std::size_t full_entities = 0;
    for (const auto& e : er.neighborhoods)
        if (e.members == VertexSet::full(3))
        {
            ++full_entities;
            CHECK(e.aliases.size() == 3);
            for (auto [center, d] : e.aliases)
                CHECK(d == 1);
        }
    CHECK(full_entities == 1);
}

TEST_CASE("ER incidences respect both hierarchies")
{
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 15; ++trial)
    {
        auto g = testing::random_graph(rng, 15, 3, 0.2, 9);
        auto er = testing::build_er(g, 4, 2).er;
        for (std::size_t a = 0; a < er.num_attributes; ++a)
        {
            for (std::size_t i = 0; i + 1 < er.lower_chains[a].size(); ++i)
                CHECK(er.lower_chains[a][i].members.is_subset_of(er.lower_chains[a][i + 1].members));
            for (std::size_t i = 0; i + 1 < er.upper_chains[a].size(); ++i)
                CHECK(er.upper_chains[a][i].members.is_subset_of(er.upper_chains[a][i + 1].members));
            CHECK(er.lower_chains[a].back().members == VertexSet::full(15));
            for (const auto& chain : {er.lower_chains[a], er.upper_chains[a]})
                for (const auto& e : chain)
                    for (VertexIndex v = 0; v < 15; ++v)
                        CHECK(e.members.contains(v) == contains(er, e.interval, v));
        }
        for (VertexIndex v = 0; v < 15; ++v)
        {
            const auto& chain = er.center_chains[v];
            for (std::size_t i = 0; i + 1 < chain.size(); ++i)
                CHECK(er.neighborhoods[chain[i]].members.is_subset_of(er.neighborhoods[chain[i + 1]].members));
            for (std::size_t id = 0; id < er.neighborhoods.size(); ++id)
            {
                bool listed = std::binary_search(er.vertex_neighborhoods[v].begin(), er.vertex_neighborhoods[v].end(), id);
                CHECK(listed == er.neighborhoods[id].members.contains(v));
            }
        }
    }
}

TEST_CASE("tighten_s examples")
{
    std::vector<double> tails{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    AttributedGraph g(testing::numbered_ids(10), {}, {"x"}, std::vector<std::int64_t>(10, 0));
    auto er = er_from_tails(g, tails, 5, 0);

    // full range: both chains only fit with the trivial interval
    CHECK(tighten_s(er, VertexSet::full(10)).empty());

    // ĉ in {0.7, 0.8, 0.9}: lower [0, 1] is trivial, upper [0.6, 1] is the tightest
    auto s = tighten_s(er, VertexSet(10, {6, 7, 8}));
    REQUIRE(s.size() == 1);
    CHECK(s[0] == IntervalBound{0, Side::Upper, 0.6});

    // ĉ in {0.1, 0.2}: lower [0, 0.2]; no upper interval starts at or below 0.1
    s = tighten_s(er, VertexSet(10, {0, 1}));
    REQUIRE(s.size() == 1);
    CHECK(s[0] == IntervalBound{0, Side::Lower, 0.2});

    CHECK_THROWS(tighten_s(er, VertexSet(10)));
}

TEST_CASE("tighten_s matches the scan oracle on random sets")
{
    std::mt19937_64 rng(13);
    std::bernoulli_distribution coin(0.3);
    for (int trial = 0; trial < 30; ++trial)
    {
        auto g = testing::random_graph(rng, 20, 4, 0.1, 12);
        auto er = testing::build_er(g, 5, 1).er;
        for (int k = 0; k < 20; ++k)
        {
            VertexSet u(20);
            for (VertexIndex v = 0; v < 20; ++v)
                if (coin(rng))
                    u.insert(v);
            if (u.empty())
                continue;
            CHECK(tighten_s(er, u) == oracle::scan_tightest(er, u.members()));
        }
    }
}

TEST_CASE("single vertex graph has exactly one pattern")
{
    AttributedGraph g({"only"}, {}, {"x"}, {3});
    auto er = testing::build_er(g, 5, 0).er;
    auto patterns = enumerate_closed(er, 1);
    REQUIRE(patterns.size() == 1);
    CHECK(patterns[0].vertices == VertexSet(1, {0}));
    CHECK(patterns[0].covering == std::vector<std::size_t>{0});
    check_pattern(er, patterns[0]);
}

TEST_CASE("two isolated identical vertices give two singleton patterns")
{
    AttributedGraph g(testing::numbered_ids(2), {}, {"x"}, {2, 2});
    auto er = testing::build_er(g, 5, 0).er;
    auto patterns = enumerate_closed(er, 1);
    REQUIRE(patterns.size() == 2);
    CHECK(patterns[0].vertices == VertexSet(2, {0}));
    CHECK(patterns[1].vertices == VertexSet(2, {1}));
    CHECK(oracle::brute_force_closed_patterns(er, 1).size() == 2);
}

TEST_CASE("indistinguishable clique closes to the whole vertex set")
{
    std::vector<Edge> edges;
    for (VertexIndex u = 0; u < 5; ++u)
        for (VertexIndex v = u + 1; v < 5; ++v)
            edges.emplace_back(u, v);
    AttributedGraph g(testing::numbered_ids(5), edges, {"x", "y"}, std::vector<std::int64_t>(10, 4));
    auto er = testing::build_er(g, 5, 1).er;
    // the only multi-vertex intersection of neighborhoods is V itself
    auto patterns = enumerate_closed(er, 2);
    REQUIRE(patterns.size() == 1);
    CHECK(patterns[0].vertices == VertexSet::full(5));
    CHECK(patterns[0].intervals.empty());
}

TEST_CASE("min_vertices larger than the graph gives nothing")
{
    auto g = testing::cycle_graph(4, {1, 2, 3, 4});
    auto er = testing::build_er(g, 2, 2).er;
    CHECK(enumerate_closed(er, 5).empty());
    CHECK_THROWS(enumerate_closed(er, 0));
}

TEST_CASE("enumeration equals the brute-force oracle on small random graphs")
{
    std::mt19937_64 rng(17);
    int compared = 0;
    while (compared < 40)
    {
        auto n = std::uniform_int_distribution<std::size_t>(2, 10)(rng);
        auto D = std::uniform_int_distribution<int>(0, 2)(rng);
        auto g = testing::random_graph(rng, n, 2, 0.3, 6);
        auto er = testing::build_er(g, 3, D).er;
        if (er.neighborhoods.size() > 15)
            continue;
        ++compared;
        for (std::size_t minv : {std::size_t{1}, std::size_t{2}, std::size_t{3}})
        {
            auto got = enumerate_closed(er, minv);
            auto want = oracle::brute_force_closed_patterns(er, minv);
            REQUIRE(got.size() == want.size());
            for (std::size_t i = 0; i < got.size(); ++i)
            {
                CHECK(got[i].vertices == want[i].vertices);
                CHECK(got[i].intervals == want[i].intervals);
                CHECK(got[i].covering == want[i].covering);
            }
        }
    }
}

TEST_CASE("enumeration is sound, closed, ordered and duplicate free on larger graphs")
{
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 8; ++trial)
    {
        auto g = testing::random_graph(rng, 30, 3, 0.08, 20);
        auto er = testing::build_er(g, 5, 3).er;
        auto patterns = enumerate_closed(er, 3);
        std::set<std::vector<VertexIndex>> seen;
        for (std::size_t i = 0; i < patterns.size(); ++i)
        {
            check_pattern(er, patterns[i]);
            CHECK(patterns[i].vertices.count() >= 3);
            CHECK(seen.insert(patterns[i].vertices.members()).second);
            if (i > 0)
                CHECK(patterns[i - 1].vertices < patterns[i].vertices);
        }

        // the streaming form reports the same set
        std::set<std::vector<VertexIndex>> streamed;
        for_each_closed(er, 3, [&](ClosedPattern&& p) { streamed.insert(p.vertices.members()); });
        CHECK(streamed == seen);

        // every pairwise intersection of entities with at least 3 members appears
        for (std::size_t i = 0; i < er.neighborhoods.size(); ++i)
            for (std::size_t j = i; j < er.neighborhoods.size(); ++j)
            {
                auto u = er.neighborhoods[i].members & er.neighborhoods[j].members;
                if (u.count() >= 3)
                    CHECK(seen.count(u.members()) == 1);
            }
    }
}
