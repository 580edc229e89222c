#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

#include "longcycle/filter.hpp"
#include "longcycle/graph.hpp"

namespace longcycle {

/// Vertices on some undirected cycle of length <= radius_param.
struct ShortCycleSet {
    VertexSet members;
    std::size_t radius_param = 0;
    /// shortest[v]: length of the shortest cycle through v when <= radius_param, else 0.
    std::vector<std::size_t> shortest;
    /// (average degree)^(R/2) exceeds n: the truncated searches saturate the graph.
    bool cost_warning = false;
};

/// Diagnostic-scale (n <= 1e4 recommended). Per vertex, a BFS truncated at depth
/// floor(R/2) that labels each vertex with the root neighbour it descends from; the shortest
/// cycle through the root is the minimum of d(x) + d(y) + 1 over edges joining two labels.
ShortCycleSet short_cycle_vertices(const UndirectedView& g, std::size_t radius_param);

/// G' (G without edges inside C) and Z' = C u Z.
struct PrunedGraph {
    UndirectedView graph;
    VertexSet z_prime;
    std::size_t removed_edges = 0;
};

PrunedGraph build_pruned(const UndirectedView& g, const ShortCycleSet& c_set, const VertexSet& z);

/// X subset of X' u C.
bool containment_check(const FilterLayers& x, const FilterLayers& x_prime, const ShortCycleSet& c_set);

struct WitnessTree {
    Vertex root = 0;
    /// child -> parent; the root has no entry.
    std::unordered_map<Vertex, Vertex> parent_map;
    VertexSet leaves;
    /// Number of levels including the root.
    std::size_t levels = 0;
    /// Cascade layer of the root.
    std::size_t entry_layer = 0;

    std::size_t vertex_count() const { return parent_map.size() + 1; }
    std::size_t leaf_count() const { return leaves.size(); }
};

/// Which of the four tree bounds hold for a tree whose root entered layer k.
struct WitnessBounds {
    bool leaf_range = false;   // k < leaves <= 2^k
    bool size = false;         // vertices <= 5 (leaves - 1)
    bool levels = false;       // levels (root included) <= 4k
    bool leaves_in_seed = false;  // leaves subset of Z'

    bool all() const { return leaf_range && size && levels && leaves_in_seed; }
};

WitnessBounds check_witness_bounds(const WitnessTree& tree, const VertexSet& z_prime);

/// Assembles the witness tree for v from recorded cascade provenance on G'.
///
/// The provenance path through v is cut at the first seed-or-earlier-layer vertex on each
/// side; seed endpoints become leaves, earlier-layer endpoints are expanded recursively.
/// Throws GirthViolation when arms or subtrees collide and EmptyResult when v is unfiltered.
class WitnessExtractor {
public:
    WitnessExtractor(const UndirectedView& g_prime, const VertexSet& z_prime, const FilterLayers& layers);

    WitnessTree extract(Vertex v);

private:
    struct Partial {
        bool collided = false;
        std::vector<Arc> edges;  // (child, parent)
    };

    const Partial& build(Vertex v);
    bool seed(Vertex v, std::size_t layer) const;

    const UndirectedView& g_;
    const VertexSet& z_;
    const FilterLayers& layers_;
    std::unordered_map<Vertex, Partial> memo_;
};

WitnessTree extract_witness_tree(const FilterLayers& layers, const PrunedGraph& pruned, Vertex v);

/// |{v : dist(v, C) < radius}|.
std::size_t ball_size(const UndirectedView& g, const ShortCycleSet& c_set, std::size_t radius);

struct LevelStats {
    std::vector<std::size_t> layer_sizes;
    /// K = floor((2 / c) ln n).
    std::size_t level_cap = 0;
    std::optional<std::size_t> ball_size;
    /// e^{-(3/4) c (k + 1)} n for layer k = 1, 2, ...
    std::vector<double> bound_values;
    /// (2c)^10 e^{-2c} n.
    double global_bound = 0.0;
};

LevelStats level_profile(const FilterLayers& layers, std::size_t n, double c);

/// Natural-log formulas shared by the harness: R = floor((20/c) ln n), K = floor((2/c) ln n).
std::size_t short_cycle_radius(std::size_t n, double c);
std::size_t level_cap(std::size_t n, double c);

}  // namespace longcycle
