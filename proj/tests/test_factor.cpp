#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>
#include <random>

#include "longcycle/errors.hpp"
#include "longcycle/factor.hpp"
#include "oracles.hpp"

using namespace longcycle;

namespace {

FilteredDigraph as_d0(const Digraph& d) {
    FilteredDigraph f;
    f.graph = d;
    f.to_parent.resize(d.vertex_count());
    std::iota(f.to_parent.begin(), f.to_parent.end(), 0u);
    f.from_parent = f.to_parent;
    return f;
}

Matching from_successors(std::size_t n, std::vector<std::pair<Vertex, Vertex>> pairs) {
    Matching m(n, n);
    for (auto [l, r] : pairs) {
        m.left_to_right[l] = r;
        m.right_to_left[r] = l;
    }
    return m;
}

void check_factor(const CycleFactor& f, const FilteredDigraph& d0) {
    std::vector<int> seen(d0.size(), 0);
    std::size_t total = 0;
    for (const auto& c : f.cycles) {
        CHECK(c.size() >= 2);
        total += c.size();
        for (std::size_t i = 0; i < c.size(); ++i) {
            CHECK(d0.graph.has_arc(c[i], c[(i + 1) % c.size()]));
            ++seen[c[i]];
        }
    }
    CHECK(total == f.covered.size());
    for (Vertex v = 0; v < d0.size(); ++v) {
        CHECK(f.covered.contains(v) != f.dropped.contains(v));
        CHECK(seen[v] == (f.covered.contains(v) ? 1 : 0));
    }
}

}  // namespace

TEST_CASE("H0 examples") {
    const auto tri = as_d0(Digraph::from_arcs(3, {{0, 1}, {1, 2}, {2, 0}}));
    const auto h = build_H0(tri);
    CHECK(h.edges() == std::vector<Arc>{{0, 1}, {1, 2}, {2, 0}});
    const auto m = maximum_matching(h);
    CHECK(m.size() == 3);
    CHECK(m.is_perfect());

    const auto two = build_H0(as_d0(Digraph::from_arcs(2, {{0, 1}, {1, 0}})));
    CHECK(two.edges() == std::vector<Arc>{{0, 1}, {1, 0}});

    const auto d = generate_digraph(2000, 5.0 / 2000, {1, "base-graph"});
    CHECK(build_H0(as_d0(d)).edge_count() == d.arc_count());
}

TEST_CASE("matching: two left vertices share one right vertex") {
    const std::vector<Arc> edges{{0, 0}, {1, 0}};
    const BipartiteGraph h(2, 1, edges);
    CHECK(maximum_matching(h).size() == 1);
}

TEST_CASE("matching agrees with exhaustive search on 200 small graphs") {
    std::mt19937_64 rng(31337);
    int agree = 0;
    for (int inst = 0; inst < 200; ++inst) {
        const std::size_t left = 1 + rng() % 8, right = 1 + rng() % 8;
        const double p = std::uniform_real_distribution<>(0.05, 0.6)(rng);
        std::bernoulli_distribution coin(p);
        std::vector<Arc> edges;
        for (Vertex l = 0; l < left; ++l)
            for (Vertex r = 0; r < right; ++r)
                if (coin(rng)) edges.emplace_back(l, r);
        const BipartiteGraph h(left, right, edges);
        const auto m = maximum_matching(h);
        CHECK(is_valid_matching(h, m));
        CHECK_FALSE(has_augmenting_path(h, m));
        if (m.size() == oracle::max_matching(left, right, edges)) ++agree;
    }
    CHECK(agree == 200);
}

TEST_CASE("matching is maximum and warm start keeps it valid on larger graphs") {
    for (std::uint64_t s = 1; s <= 5; ++s) {
        const auto d = generate_digraph(20000, 3.0 / 20000, {s, "base-graph"});
        const auto h = build_H0(as_d0(d));
        const auto m = maximum_matching(h);
        CHECK(is_valid_matching(h, m));
        CHECK_FALSE(has_augmenting_path(h, m));
        Matching partial(h.left_count(), h.right_count());
        for (Vertex l = 0; l < h.left_count(); l += 2) {
            const Vertex r = m.left_to_right[l];
            if (r != kNoVertex) {
                partial.left_to_right[l] = r;
                partial.right_to_left[r] = l;
            }
        }
        const auto warm = maximum_matching(h, partial);
        CHECK(is_valid_matching(h, warm));
        CHECK(warm.size() == m.size());
    }
}

TEST_CASE("trim: perfect instance drops nothing") {
    const auto tri = as_d0(Digraph::from_arcs(3, {{0, 1}, {1, 2}, {2, 0}}));
    const auto t = trim_to_perfect(build_H0(tri));
    CHECK(t.dropped.empty());
    CHECK(t.matching.is_perfect());
}

TEST_CASE("trim: {a, b} -> {x} drops one id per round until stable") {
    // ids 0 = a, 1 = b, 2 = x; a -> x, b -> x, x -> a
    const auto d0 = as_d0(Digraph::from_arcs(3, {{0, 2}, {1, 2}, {2, 0}}));
    const auto t = trim_to_perfect(build_H0(d0));
    CHECK(t.dropped.size() == 1);
    CHECK(t.dropped.contains(1));
    CHECK(t.rounds == 2);
    const auto f = extract_cycle_factor(t.matching, d0, t.dropped);
    REQUIRE(f.cycles.size() == 1);
    CHECK(f.cycles[0] == std::vector<Vertex>{0, 2});
}

TEST_CASE("trim: nothing matchable throws") {
    const auto d0 = as_d0(Digraph::from_arcs(3, {{0, 1}, {0, 2}}));
    CHECK_THROWS_AS(trim_to_perfect(build_H0(d0)), EmptyResult);
}

TEST_CASE("trim partitions V(D0) and yields a valid factor") {
    for (std::uint64_t s = 1; s <= 10; ++s) {
        const auto d0 = as_d0(generate_digraph(3000, 4.0 / 3000, {s, "base-graph"}));
        const auto t = trim_to_perfect(build_H0(d0));
        std::size_t matched = 0;
        for (Vertex v = 0; v < d0.size(); ++v) matched += t.matching.left_to_right[v] != kNoVertex ? 1 : 0;
        CHECK(matched + t.dropped.size() == d0.size());
        CHECK(t.initial_size >= matched);
        const auto f = extract_cycle_factor(t.matching, d0, t.dropped);
        check_factor(f, d0);
        std::size_t hist_total = 0;
        for (const auto& [len, count] : f.length_histogram()) hist_total += len * count;
        CHECK(hist_total == f.covered.size());
    }
}

TEST_CASE("factor examples") {
    const auto d3 = as_d0(Digraph::from_arcs(3, {{0, 1}, {1, 2}, {2, 0}}));
    const auto f3 = extract_cycle_factor(from_successors(3, {{0, 1}, {1, 2}, {2, 0}}), d3, VertexSet(3));
    REQUIRE(f3.cycles.size() == 1);
    CHECK(f3.cycles[0] == std::vector<Vertex>{0, 1, 2});

    const auto d4 = as_d0(Digraph::from_arcs(4, {{0, 1}, {1, 0}, {2, 3}, {3, 2}}));
    const auto f4 = extract_cycle_factor(from_successors(4, {{0, 1}, {1, 0}, {2, 3}, {3, 2}}), d4, VertexSet(4));
    CHECK(f4.cycles.size() == 2);
    CHECK(f4.length_histogram().at(2) == 2);
}

TEST_CASE("factor rejects a broken permutation") {
    const auto d = as_d0(Digraph::from_arcs(3, {{0, 1}, {1, 2}, {2, 0}, {0, 2}}));
    // 0 and 1 both claim successor 2 is impossible in a matching, so build an incomplete one
    auto m = from_successors(3, {{0, 1}, {1, 2}});
    CHECK_THROWS_AS(extract_cycle_factor(m, d, VertexSet(3)), BrokenPermutation);
    // matched pair that is not an arc
    auto bad = from_successors(3, {{0, 1}, {1, 0}, {2, 2}});
    CHECK_THROWS_AS(extract_cycle_factor(bad, d, VertexSet(3)), BrokenPermutation);
}
