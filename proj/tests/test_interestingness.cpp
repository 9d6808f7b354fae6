#include "csea/interestingness.hpp"
#include "csea/oracle.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace csea;

namespace
{

BackgroundModel model_with(std::size_t attrs, std::size_t n, std::vector<double> p)
{
    return BackgroundModel(std::vector<double>(attrs, 0.0), std::vector<double>(n, 0.0), std::move(p), {});
}

ClosedPattern pattern(VertexSet u, std::vector<IntervalBound> s)
{
    return ClosedPattern{std::move(u), std::move(s), {}};
}

ScoredPattern scored(std::size_t n, std::initializer_list<VertexIndex> u, double ic, double dl)
{
    ScoredPattern s;
    s.pattern.vertices = VertexSet(n, u);
    s.ic = ic;
    s.dl = dl;
    s.si = ic / dl;
    return s;
}

// pmf summation oracle for Pr(k <= z <= l) of a geometric cell
double pmf_sum(double p, std::int64_t k, std::int64_t l)
{
    double total = 0.0;
    for (std::int64_t z = k; z <= l; ++z)
        total += p * std::pow(1.0 - p, static_cast<double>(z));
    return total;
}

}  // namespace

TEST_CASE("ic examples")
{
    auto m = model_with(2, 4, {0.3, 0.6, 0.1, 0.9, 0.5, 0.5, 0.5, 0.5});
    CHECK(information_content(pattern(VertexSet(4, {0, 1}), {}), m) == 0.0);

    // lower interval: -n log2 l whatever p is
    auto ic = information_content(pattern(VertexSet(4, {0, 1, 2}), {{0, Side::Lower, 0.25}}), m);
    CHECK(ic == doctest::Approx(-3 * std::log2(0.25)).epsilon(1e-15));

    // upper interval: -log2(1 - k + p k) per vertex
    ic = information_content(pattern(VertexSet(4, {0, 3}), {{0, Side::Upper, 0.4}}), m);
    double want = -std::log2(1 - 0.4 + 0.3 * 0.4) - std::log2(1 - 0.4 + 0.9 * 0.4);
    CHECK(ic == doctest::Approx(want).epsilon(1e-14));
}

TEST_CASE("empty-region vertex under an upper interval contributes exactly zero")
{
    auto m = model_with(1, 2, {1.0, 0.5});
    CHECK(information_content(pattern(VertexSet(2, {0}), {{0, Side::Upper, 0.7}}), m) == 0.0);
    CHECK(information_content(pattern(VertexSet(2, {0, 1}), {{0, Side::Upper, 0.7}}), m) ==
          doctest::Approx(-std::log2(1 - 0.7 + 0.5 * 0.7)));
}

TEST_CASE("both sides on one attribute use the intersected interval")
{
    auto m = model_with(1, 1, {0.4});
    auto ic = information_content(pattern(VertexSet(1, {0}), {{0, Side::Lower, 0.6}, {0, Side::Upper, 0.3}}), m);
    CHECK(ic == doctest::Approx(-std::log2(0.6 - 0.3 + 0.4 * 0.3)).epsilon(1e-14));
}

TEST_CASE("ic equals -log2 of the product of interval probabilities")
{
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> unit(0.01, 1.0);
    for (int trial = 0; trial < 200; ++trial)
    {
        std::size_t attrs = 3, n = 8;
        std::vector<double> p(attrs * n);
        for (auto& x : p)
            x = unit(rng);
        auto m = model_with(attrs, n, p);
        VertexSet u(n);
        for (VertexIndex v = 0; v < n; ++v)
            if (unit(rng) < 0.5)
                u.insert(v);
        std::vector<IntervalBound> s;
        for (std::size_t a = 0; a < attrs; ++a)
        {
            double lo = unit(rng) * 0.5, hi = 0.5 + unit(rng) * 0.5;
            if (unit(rng) < 0.6)
                s.push_back({a, Side::Lower, hi});
            if (unit(rng) < 0.6)
                s.push_back({a, Side::Upper, lo});
        }
        long double product = 1.0L;
        for (std::size_t a = 0; a < attrs; ++a)
        {
            double k = 0.0, l = 1.0;
            for (const auto& iv : s)
                if (iv.attribute == a)
                {
                    k = std::max(k, iv.low());
                    l = std::min(l, iv.high());
                }
            u.for_each([&](VertexIndex v) { product *= interval_probability(m, a, v, k, l); });
        }
        double want = -std::log2(static_cast<double>(product));
        double got = information_content(pattern(u, s), m);
        CHECK(got == doctest::Approx(want).epsilon(1e-12));
        CHECK(got >= 0.0);

        // additivity over vertices
        double sum = 0.0;
        u.for_each([&](VertexIndex v) { sum += information_content(pattern(VertexSet(n, {v}), s), m); });
        CHECK(got == doctest::Approx(sum).epsilon(1e-12));

        // monotone in U
        for (VertexIndex v = 0; v < n; ++v)
        {
            auto bigger = u;
            bigger.insert(v);
            CHECK(information_content(pattern(bigger, s), m) >= got - 1e-12);
        }
    }
}

TEST_CASE("tightening an interval never lowers ic")
{
    auto m = model_with(1, 3, {0.2, 0.5, 0.8});
    auto u = VertexSet::full(3);
    double last = 0.0;
    for (double l : {1.0, 0.8, 0.5, 0.3, 0.1})
    {
        double ic = information_content(pattern(u, {{0, Side::Lower, l}}), m);
        CHECK(ic >= last);
        last = ic;
    }
    last = 0.0;
    for (double k : {0.0, 0.2, 0.5, 0.7, 0.95})
    {
        double ic = information_content(pattern(u, {{0, Side::Upper, k}}), m);
        CHECK(ic >= last - 1e-15);
        last = ic;
    }
}

TEST_CASE("count-space ic examples")
{
    auto m = model_with(1, 2, {0.5, 0.25});
    CHECK(information_content_counts(VertexSet::full(2), {{0, 0, std::nullopt}}, m) == 0.0);
    CHECK(information_content_counts(VertexSet(2, {0}), {{0, 0, 0}}, m) == doctest::Approx(1.0).epsilon(1e-15));
    auto empty = model_with(1, 1, {1.0});
    CHECK(std::isinf(information_content_counts(VertexSet(1, {0}), {{0, 1, std::nullopt}}, empty)));
    CHECK_THROWS(information_content_counts(VertexSet(1, {0}), {{0, 3, 2}}, m));
}

TEST_CASE("count-space ic matches pmf summation")
{
    std::mt19937_64 rng(67);
    std::uniform_real_distribution<double> unit(0.05, 1.0);
    for (int cell = 0; cell < 1000; ++cell)
    {
        double p = unit(rng);
        auto k = std::uniform_int_distribution<std::int64_t>(0, 10)(rng);
        auto l = k + std::uniform_int_distribution<std::int64_t>(0, 10)(rng);
        auto m = model_with(1, 1, {p});
        double got = information_content_counts(VertexSet(1, {0}), {{0, k, l}}, m);
        CHECK(got == doctest::Approx(-std::log2(pmf_sum(p, k, l))).epsilon(1e-10));
    }
}

TEST_CASE("ranking order and tie rules")
{
    std::vector<ScoredPattern> one{scored(4, {0}, 2.0, 4.0)};
    CHECK(rank_patterns(one, 10).size() == 1);

    // equal si, higher ic first
    auto a = scored(4, {0, 1}, 4.0, 8.0), b = scored(4, {2, 3}, 2.0, 4.0);
    auto ranked = rank_patterns({b, a}, 10);
    CHECK(ranked[0].pattern.vertices == a.pattern.vertices);
    // equal si and ic, lexicographic U
    auto c = scored(4, {0, 2}, 2.0, 4.0);
    ranked = rank_patterns({b, c}, 10);
    CHECK(ranked[0].pattern.vertices == c.pattern.vertices);
    CHECK(rank_patterns({a, b, c}, 2).size() == 2);
}

TEST_CASE("ranking matches a full sort on random patterns")
{
    std::mt19937_64 rng(71);
    std::uniform_int_distribution<int> small(1, 4);
    std::vector<ScoredPattern> patterns;
    for (VertexIndex i = 0; i < 50; ++i)
        patterns.push_back(scored(64, {i}, small(rng), small(rng)));
    auto want = patterns;
    std::sort(want.begin(), want.end(), [](const ScoredPattern& x, const ScoredPattern& y) {
        if (x.si != y.si)
            return x.si > y.si;
        if (x.ic != y.ic)
            return x.ic > y.ic;
        return x.pattern.vertices.members() < y.pattern.vertices.members();
    });
    std::shuffle(patterns.begin(), patterns.end(), rng);
    auto got = rank_patterns(patterns, 50);
    REQUIRE(got.size() == 50);
    for (std::size_t i = 0; i < 50; ++i)
        CHECK(got[i].pattern.vertices == want[i].pattern.vertices);

}

TEST_CASE("ranking does not depend on the logarithm base")
{
    std::mt19937_64 rng(72);
    std::uniform_real_distribution<double> bits(1.0, 50.0);
    std::vector<ScoredPattern> patterns;
    for (VertexIndex i = 0; i < 50; ++i)
        patterns.push_back(scored(64, {i}, bits(rng), bits(rng)));
    auto in_bits = rank_patterns(patterns, 50);
    for (auto& p : patterns)
    {
        p.ic *= std::log(2.0);
        p.dl *= std::log(2.0);
        p.si = p.ic / p.dl;
    }
    auto in_nats = rank_patterns(patterns, 50);
    for (std::size_t i = 0; i < 50; ++i)
        CHECK(in_nats[i].pattern.vertices == in_bits[i].pattern.vertices);
}

TEST_CASE("scored patterns are self-consistent")
{
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 5; ++trial)
    {
        auto g = testing::random_graph(rng, 18, 3, 0.15, 10);
        auto [model, er] = testing::build_er(g, 5, 2);
        auto patterns = enumerate_closed(er, 2);
        auto ranked = score_and_rank(patterns, er, model, patterns.size(), 2);
        REQUIRE(ranked.size() == patterns.size());
        for (std::size_t i = 0; i < ranked.size(); ++i)
        {
            const auto& s = ranked[i];
            CHECK(s.ic >= 0.0);
            CHECK(s.dl > 0.0);
            CHECK(s.si == s.ic / s.dl);
            CHECK(s.ic == information_content(s.pattern, model));
            auto inst = cover_instance(s.pattern, er);
            CHECK(description_cost(inst, s.best_description.chosen) == doctest::Approx(s.dl).epsilon(1e-12));
            if (inst.candidates.size() <= 12)
                CHECK(s.dl == doctest::Approx(oracle::brute_force_dl(inst)).epsilon(1e-12));
            if (i > 0)
                CHECK(ranks_before(ranked[i - 1], s));
        }
    }
}

TEST_CASE("thread count does not change the ranking")
{
    std::mt19937_64 rng(79);
    auto g = testing::random_graph(rng, 25, 4, 0.12, 15);
    auto [model, er] = testing::build_er(g, 5, 3);
    auto patterns = enumerate_closed(er, 3);
    auto one = score_and_rank(patterns, er, model, 30, 1);
    auto many = score_and_rank(patterns, er, model, 30, 6);
    REQUIRE(one.size() == many.size());
    for (std::size_t i = 0; i < one.size(); ++i)
    {
        CHECK(one[i].pattern.vertices == many[i].pattern.vertices);
        CHECK(one[i].si == many[i].si);
        CHECK(one[i].best_description.chosen == many[i].best_description.chosen);
    }
}
