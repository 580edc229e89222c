#pragma once
// Brute-force reference implementations. Small inputs only; none of these share code
// with the library beyond the plain Vertex / Arc types.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "longcycle/graph.hpp"

namespace oracle {

using longcycle::Arc;
using longcycle::Vertex;

using AdjList = std::vector<std::vector<Vertex>>;

inline AdjList undirected_adj(std::size_t n, const std::vector<Arc>& edges) {
    AdjList adj(n);
    for (auto [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (auto& row : adj) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    return adj;
}

// ---- filtering cascade: enumerate every simple path of 1..reach edges, iterate to fixation.
// Returns layers as sorted vertex lists.
inline std::vector<std::vector<Vertex>> filter_layers(const AdjList& adj, const std::vector<bool>& z, std::size_t reach) {
    const std::size_t n = adj.size();
    std::vector<int> layer(n, 0);
    std::vector<std::vector<Vertex>> layers;
    if (reach == 0) return layers;
    for (int k = 1;; ++k) {
        std::vector<bool> marked(n);
        for (std::size_t v = 0; v < n; ++v) marked[v] = z[v] || layer[v] != 0;
        std::set<Vertex> fresh;
        std::vector<Vertex> path;
        std::vector<bool> on(n, false);
        // all simple paths starting anywhere; qualifying if both ends marked and distinct
        auto rec = [&](auto&& self) -> void {
            const Vertex last = path.back();
            if (path.size() >= 2 && marked[path.front()] && marked[last]) {
                for (Vertex u : path) {
                    if (layer[u] == 0) fresh.insert(u);
                }
            }
            if (path.size() - 1 == reach) return;
            for (Vertex w : adj[last]) {
                if (on[w]) continue;
                on[w] = true;
                path.push_back(w);
                self(self);
                path.pop_back();
                on[w] = false;
            }
        };
        for (Vertex s = 0; s < n; ++s) {
            path.assign(1, s);
            on[s] = true;
            rec(rec);
            on[s] = false;
        }
        if (fresh.empty()) break;
        for (Vertex v : fresh) layer[v] = k;
        layers.emplace_back(fresh.begin(), fresh.end());
    }
    return layers;
}

// ---- maximum bipartite matching by exhaustive search over left vertices.
inline std::size_t max_matching(std::size_t left, std::size_t right, const std::vector<Arc>& edges) {
    std::vector<std::vector<Vertex>> adj(left);
    for (auto [l, r] : edges) adj[l].push_back(r);
    std::vector<bool> used(right, false);
    auto best = [&](auto&& self, std::size_t l) -> std::size_t {
        if (l == left) return 0;
        std::size_t b = self(self, l + 1);
        for (Vertex r : adj[l]) {
            if (used[r]) continue;
            used[r] = true;
            b = std::max(b, 1 + self(self, l + 1));
            used[r] = false;
        }
        return b;
    };
    return best(best, 0);
}

// ---- k-set expansion: smallest k such that every ordered pair of disjoint k-sets (A, B)
// has an arc A -> B. Vacuous once 2k > t.
inline std::size_t expansion_k(std::size_t t, const std::vector<Arc>& arcs) {
    std::vector<std::uint32_t> out(t, 0);
    for (auto [u, v] : arcs) out[u] |= 1u << v;
    const std::uint32_t full = t == 32 ? ~0u : ((1u << t) - 1);
    for (std::size_t k = 1;; ++k) {
        if (2 * k > t) return k;
        bool ok = true;
        for (std::uint32_t a = 0; a <= full && ok; ++a) {
            if (static_cast<std::size_t>(__builtin_popcount(a)) != k) continue;
            std::uint32_t reach = 0;
            for (std::size_t u = 0; u < t; ++u) {
                if ((a >> u) & 1u) reach |= out[u];
            }
            // a B with no incoming arc from A exists iff k vertices avoid A and N+(A)
            const std::uint32_t avoid = full & ~a & ~reach;
            if (static_cast<std::size_t>(__builtin_popcount(avoid)) >= k) ok = false;
        }
        if (ok) return k;
    }
}

// ---- shortest cycle through each vertex (0 when none): remove an incident edge, BFS back.
inline std::vector<std::size_t> shortest_cycle_through(const AdjList& adj) {
    const std::size_t n = adj.size();
    std::vector<std::size_t> best(n, 0);
    constexpr std::size_t inf = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> dist(n);
    for (Vertex v = 0; v < n; ++v) {
        std::size_t b = inf;
        for (Vertex u : adj[v]) {
            std::fill(dist.begin(), dist.end(), inf);
            std::vector<Vertex> q{u};
            dist[u] = 0;
            for (std::size_t h = 0; h < q.size(); ++h) {
                const Vertex x = q[h];
                for (Vertex y : adj[x]) {
                    if ((x == u && y == v) || (x == v && y == u)) continue;
                    if (dist[y] != inf) continue;
                    dist[y] = dist[x] + 1;
                    q.push_back(y);
                }
            }
            if (dist[v] != inf) b = std::min(b, dist[v] + 1);
        }
        best[v] = b == inf ? 0 : b;
    }
    return best;
}

// ---- all-pairs distances (Floyd-Warshall).
inline std::vector<std::vector<std::size_t>> all_pairs(const AdjList& adj) {
    const std::size_t n = adj.size();
    constexpr std::size_t inf = std::numeric_limits<std::size_t>::max() / 4;
    std::vector<std::vector<std::size_t>> d(n, std::vector<std::size_t>(n, inf));
    for (std::size_t v = 0; v < n; ++v) {
        d[v][v] = 0;
        for (Vertex u : adj[v]) d[v][u] = 1;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    return d;
}

// ---- random instances (own RNG, independent of the library generator).
inline std::vector<Arc> random_edges(std::size_t n, double p, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(p);
    std::vector<Arc> e;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (coin(rng)) e.emplace_back(u, v);
    return e;
}

inline std::vector<Arc> random_arcs(std::size_t n, double p, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(p);
    std::vector<Arc> e;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v)
            if (u != v && coin(rng)) e.emplace_back(u, v);
    return e;
}

// P(Bin(trials, p) <= k), summed term by term in long double.
inline double binomial_cdf(std::size_t trials, double p, std::size_t k) {
    long double sum = 0.0L;
    long double logq = std::log1p(-static_cast<long double>(p));
    for (std::size_t i = 0; i <= k && i <= trials; ++i) {
        long double lc = std::lgamma(static_cast<long double>(trials) + 1) - std::lgamma(static_cast<long double>(i) + 1) -
                         std::lgamma(static_cast<long double>(trials - i) + 1);
        sum += std::exp(lc + i * std::log(static_cast<long double>(p)) + (trials - i) * logq);
    }
    return static_cast<double>(sum);
}

}  // namespace oracle
