#include "longcycle/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <istream>
#include <ostream>
#include <random>

#include "longcycle/errors.hpp"

namespace longcycle {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

std::uint64_t fnv1a(std::uint64_t h, std::uint64_t word) {
    for (int i = 0; i < 8; ++i) {
        h ^= (word >> (8 * i)) & 0xffU;
        h *= kFnvPrime;
    }
    return h;
}

// Uniform double in [0, 1) with 53 random bits.
double unit_uniform(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

}  // namespace

// ---------------------------------------------------------------- Adjacency

Adjacency Adjacency::from_pairs(std::size_t vertex_count, std::span<const Arc> pairs) {
    Adjacency a;
    a.offsets_.assign(vertex_count + 1, 0);
    for (const auto& [u, v] : pairs) ++a.offsets_[u + 1];
    for (std::size_t i = 0; i < vertex_count; ++i) a.offsets_[i + 1] += a.offsets_[i];
    a.targets_.resize(pairs.size());
    std::vector<std::size_t> cursor(a.offsets_.begin(), a.offsets_.end() - 1);
    for (const auto& [u, v] : pairs) a.targets_[cursor[u]++] = v;
    for (std::size_t v = 0; v < vertex_count; ++v) {
        std::sort(a.targets_.begin() + static_cast<std::ptrdiff_t>(a.offsets_[v]),
                  a.targets_.begin() + static_cast<std::ptrdiff_t>(a.offsets_[v + 1]));
    }
    return a;
}

bool Adjacency::contains(Vertex u, Vertex v) const {
    auto row = (*this)[u];
    return std::binary_search(row.begin(), row.end(), v);
}

// ---------------------------------------------------------------- Digraph

Digraph::Digraph(std::size_t vertex_count) : n_(vertex_count) {
    out_ = Adjacency::from_pairs(n_, {});
    in_ = Adjacency::from_pairs(n_, {});
}

Digraph Digraph::from_arcs(std::size_t vertex_count, std::vector<Arc> arcs) {
    std::sort(arcs.begin(), arcs.end());
    if (std::adjacent_find(arcs.begin(), arcs.end()) != arcs.end()) {
        throw ParseError("duplicate arc");
    }
    for (const auto& [u, v] : arcs) {
        if (u >= vertex_count || v >= vertex_count) throw ParseError("arc endpoint out of range");
        if (u == v) throw ParseError("self-loop");
    }
    Digraph d;
    d.n_ = vertex_count;
    d.out_ = Adjacency::from_pairs(vertex_count, arcs);
    std::vector<Arc> reversed;
    reversed.reserve(arcs.size());
    for (const auto& [u, v] : arcs) reversed.emplace_back(v, u);
    d.in_ = Adjacency::from_pairs(vertex_count, reversed);
    return d;
}

std::vector<Arc> Digraph::arcs() const {
    std::vector<Arc> result;
    result.reserve(arc_count());
    for (Vertex u = 0; u < n_; ++u) {
        for (Vertex v : out(u)) result.emplace_back(u, v);
    }
    return result;
}

// ---------------------------------------------------------------- UndirectedView

UndirectedView UndirectedView::from_edges(std::size_t vertex_count, std::span<const Arc> edges) {
    std::vector<Arc> both;
    both.reserve(2 * edges.size());
    for (const auto& [u, v] : edges) {
        both.emplace_back(u, v);
        both.emplace_back(v, u);
    }
    return UndirectedView(Adjacency::from_pairs(vertex_count, both));
}

std::vector<Arc> UndirectedView::edges() const {
    std::vector<Arc> result;
    result.reserve(edge_count());
    for (Vertex u = 0; u < vertex_count(); ++u) {
        for (Vertex v : neighbors(u)) {
            if (u < v) result.emplace_back(u, v);
        }
    }
    return result;
}

// ---------------------------------------------------------------- RNG / sets

std::uint64_t derive_stream_seed(const RngSpec& rng) {
    std::uint64_t h = kFnvOffset;
    for (unsigned char ch : rng.stream_label) {
        h ^= ch;
        h *= kFnvPrime;
    }
    return splitmix64(splitmix64(rng.seed) ^ h);
}

VertexSet::VertexSet(std::size_t universe, std::span<const Vertex> members) : flags_(universe, 0) {
    for (Vertex v : members) insert(v);
}

bool VertexSet::insert(Vertex v) {
    if (flags_[v] != 0) return false;
    flags_[v] = 1;
    ++count_;
    return true;
}

bool VertexSet::erase(Vertex v) {
    if (flags_[v] == 0) return false;
    flags_[v] = 0;
    --count_;
    return true;
}

std::vector<Vertex> VertexSet::members() const {
    std::vector<Vertex> result;
    result.reserve(count_);
    for (std::size_t v = 0; v < flags_.size(); ++v) {
        if (flags_[v] != 0) result.push_back(static_cast<Vertex>(v));
    }
    return result;
}

// ---------------------------------------------------------------- generation

std::vector<Arc> sample_arcs(std::size_t n, double p, const RngSpec& rng) {
    std::vector<Arc> arcs;
    if (n < 2 || p <= 0.0) return arcs;
    const std::uint64_t row = n - 1;
    const std::uint64_t total = static_cast<std::uint64_t>(n) * row;
    auto emit = [&](std::uint64_t index) {
        const auto u = static_cast<Vertex>(index / row);
        auto v = static_cast<Vertex>(index % row);
        if (v >= u) ++v;
        arcs.emplace_back(u, v);
    };
    if (p >= 1.0) {
        arcs.reserve(total);
        for (std::uint64_t i = 0; i < total; ++i) emit(i);
        return arcs;
    }
    std::mt19937_64 eng(derive_stream_seed(rng));
    arcs.reserve(static_cast<std::size_t>(static_cast<double>(total) * p * 1.05) + 16);
    const double log_q = std::log1p(-p);
    // Index of the next arc = previous + 1 + Geometric(p) failures.
    std::uint64_t index = 0;
    bool first = true;
    for (;;) {
        const double u = unit_uniform(eng);
        const double skip = std::floor(std::log1p(-u) / log_q);
        if (skip >= static_cast<double>(total)) break;
        const auto gap = static_cast<std::uint64_t>(skip);
        const std::uint64_t next = first ? gap : index + 1 + gap;
        if (next >= total || next < index) break;
        index = next;
        first = false;
        emit(index);
    }
    return arcs;
}

Digraph generate_digraph(std::size_t n, double p, const RngSpec& rng) {
    return Digraph::from_arcs(n, sample_arcs(n, p, rng));
}

UndirectedView undirected_view(const Digraph& d) {
    std::vector<Arc> pairs;
    pairs.reserve(2 * d.arc_count());
    const auto n = static_cast<Vertex>(d.vertex_count());
    for (Vertex u = 0; u < n; ++u) {
        // Merge of two sorted lists drops the anti-parallel duplicate.
        auto out = d.out(u);
        auto in = d.in(u);
        std::size_t i = 0;
        std::size_t j = 0;
        while (i < out.size() || j < in.size()) {
            Vertex next;
            if (j == in.size() || (i < out.size() && out[i] < in[j])) {
                next = out[i++];
            } else if (i == out.size() || in[j] < out[i]) {
                next = in[j++];
            } else {
                next = out[i];
                ++i;
                ++j;
            }
            pairs.emplace_back(u, next);
        }
    }
    return UndirectedView(Adjacency::from_pairs(d.vertex_count(), pairs));
}

std::size_t min_degree_dir(const Digraph& d, Vertex v) {
    return std::min(d.out_degree(v), d.in_degree(v));
}

std::vector<std::size_t> bfs_distances(const UndirectedView& g, std::span<const Vertex> sources,
                                       std::size_t radius) {
    std::vector<std::size_t> dist(g.vertex_count(), kUnreached);
    std::vector<Vertex> frontier;
    for (Vertex s : sources) {
        if (dist[s] == kUnreached) {
            dist[s] = 0;
            frontier.push_back(s);
        }
    }
    std::vector<Vertex> next;
    for (std::size_t level = 1; level <= radius && !frontier.empty(); ++level) {
        next.clear();
        for (Vertex u : frontier) {
            for (Vertex w : g.neighbors(u)) {
                if (dist[w] == kUnreached) {
                    dist[w] = level;
                    next.push_back(w);
                }
            }
        }
        frontier.swap(next);
    }
    return dist;
}

std::unordered_map<Vertex, std::size_t> bfs_within(const UndirectedView& g, const VertexSet& sources,
                                                   std::size_t radius) {
    const auto members = sources.members();
    const auto dist = bfs_distances(g, members, radius);
    std::unordered_map<Vertex, std::size_t> result;
    for (std::size_t v = 0; v < dist.size(); ++v) {
        if (dist[v] != kUnreached) result.emplace(static_cast<Vertex>(v), dist[v]);
    }
    return result;
}

// ---------------------------------------------------------------- text I/O

void write_graph(std::ostream& os, const Digraph& d) {
    os << d.vertex_count() << ' ' << d.arc_count() << '\n';
    for (const auto& [u, v] : d.arcs()) os << u << ' ' << v << '\n';
}

Digraph read_graph(std::istream& is) {
    std::size_t n = 0;
    std::size_t m = 0;
    if (!(is >> n >> m)) throw ParseError("graph header must be \"n m\"");
    std::vector<Arc> arcs;
    arcs.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::uint64_t u = 0;
        std::uint64_t v = 0;
        if (!(is >> u >> v)) throw ParseError("truncated arc list");
        if (u >= n || v >= n) throw ParseError("arc endpoint out of range");
        arcs.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    return Digraph::from_arcs(n, std::move(arcs));
}

std::uint64_t arc_hash(const Digraph& d) {
    std::uint64_t h = fnv1a(kFnvOffset, d.vertex_count());
    for (const auto& [u, v] : d.arcs()) h = fnv1a(h, (static_cast<std::uint64_t>(u) << 32) | v);
    return h;
}

}  // namespace longcycle
