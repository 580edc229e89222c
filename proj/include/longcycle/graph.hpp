#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace longcycle {

using Vertex = std::uint32_t;
using Arc = std::pair<Vertex, Vertex>;

inline constexpr Vertex kNoVertex = static_cast<Vertex>(-1);

/// Compressed sparse adjacency: one sorted neighbour list per vertex.
class Adjacency {
public:
    Adjacency() = default;

    /// Builds from (source, target) pairs; duplicates must already be absent.
    static Adjacency from_pairs(std::size_t vertex_count, std::span<const Arc> pairs);

    std::size_t vertex_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t entry_count() const { return targets_.size(); }

    std::span<const Vertex> operator[](Vertex v) const {
        return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
    }
    std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
    bool contains(Vertex u, Vertex v) const;

    bool operator==(const Adjacency&) const = default;

private:
    std::vector<std::size_t> offsets_;
    std::vector<Vertex> targets_;
};

/// Sparse directed graph on vertices [0, vertex_count) without loops or parallel arcs.
/// Out- and in-adjacency are kept mutually consistent and sorted ascending.
class Digraph {
public:
    Digraph() = default;
    explicit Digraph(std::size_t vertex_count);

    /// Arcs may come in any order; self-loops and duplicates are rejected.
    static Digraph from_arcs(std::size_t vertex_count, std::vector<Arc> arcs);

    std::size_t vertex_count() const { return n_; }
    std::size_t arc_count() const { return out_.entry_count(); }

    std::span<const Vertex> out(Vertex v) const { return out_[v]; }
    std::span<const Vertex> in(Vertex v) const { return in_[v]; }
    std::size_t out_degree(Vertex v) const { return out_.degree(v); }
    std::size_t in_degree(Vertex v) const { return in_.degree(v); }
    bool has_arc(Vertex u, Vertex v) const { return out_.contains(u, v); }

    /// All arcs, sorted lexicographically.
    std::vector<Arc> arcs() const;

    bool operator==(const Digraph&) const = default;

private:
    std::size_t n_ = 0;
    Adjacency out_;
    Adjacency in_;
};

/// Undirected underlying graph; an anti-parallel pair collapses to one edge.
class UndirectedView {
public:
    UndirectedView() = default;
    explicit UndirectedView(Adjacency adj) : adj_(std::move(adj)) {}

    /// Builds from undirected edges {u, v}; each edge listed once, u != v.
    static UndirectedView from_edges(std::size_t vertex_count, std::span<const Arc> edges);

    std::size_t vertex_count() const { return adj_.vertex_count(); }
    std::size_t edge_count() const { return adj_.entry_count() / 2; }
    std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
    std::size_t degree(Vertex v) const { return adj_.degree(v); }
    bool adjacent(Vertex u, Vertex v) const { return adj_.contains(u, v); }

    /// Edges {u, v} with u < v, sorted.
    std::vector<Arc> edges() const;

    bool operator==(const UndirectedView&) const = default;

private:
    Adjacency adj_;
};

/// Seed plus a stream label; the pair determines the random stream completely.
struct RngSpec {
    std::uint64_t seed = 0;
    std::string stream_label;
};

/// 64-bit stream seed derived from (seed, label) by FNV-1a + splitmix64 mixing.
std::uint64_t derive_stream_seed(const RngSpec& rng);

/// Subset of [0, universe) with O(1) membership and insertion.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::size_t universe) : flags_(universe, 0) {}
    VertexSet(std::size_t universe, std::span<const Vertex> members);

    std::size_t universe() const { return flags_.size(); }
    std::size_t size() const { return count_; }
    bool empty() const { return count_ == 0; }

    bool contains(Vertex v) const { return v < flags_.size() && flags_[v] != 0; }
    /// Returns true when v was newly inserted.
    bool insert(Vertex v);
    bool erase(Vertex v);

    /// Members in ascending order.
    std::vector<Vertex> members() const;

    bool operator==(const VertexSet& other) const { return flags_ == other.flags_; }

private:
    std::vector<std::uint8_t> flags_;
    std::size_t count_ = 0;
};

/// D(n, p): every ordered pair (u, v), u != v, is an arc independently with probability p.
/// Cost is O(n + m): gaps between successive arcs over the linearised pair index are
/// drawn from the geometric distribution.
Digraph generate_digraph(std::size_t n, double p, const RngSpec& rng);

/// The arc list of generate_digraph without building adjacency (used for sprinkling).
std::vector<Arc> sample_arcs(std::size_t n, double p, const RngSpec& rng);

UndirectedView undirected_view(const Digraph& d);

/// min(out-degree, in-degree).
std::size_t min_degree_dir(const Digraph& d, Vertex v);

/// Multi-source BFS; exact distances <= radius, farther vertices absent.
std::unordered_map<Vertex, std::size_t> bfs_within(const UndirectedView& g, const VertexSet& sources,
                                                   std::size_t radius);

/// Dense variant of bfs_within: distance per vertex, kUnreached beyond radius.
inline constexpr std::size_t kUnreached = static_cast<std::size_t>(-1);
std::vector<std::size_t> bfs_distances(const UndirectedView& g, std::span<const Vertex> sources,
                                       std::size_t radius);

/// Plain-text dump: "n m" then one "u v" line per arc, sorted.
void write_graph(std::ostream& os, const Digraph& d);
Digraph read_graph(std::istream& is);

/// Stable 64-bit FNV-1a hash of the sorted arc list.
std::uint64_t arc_hash(const Digraph& d);

}  // namespace longcycle
