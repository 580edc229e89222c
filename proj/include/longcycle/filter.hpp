#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "longcycle/graph.hpp"

namespace longcycle {

/// Y = {v : d(v) = 0} and Z = {v : d(v) <= z_threshold}, d = min directed degree.
struct DegreeClasses {
    VertexSet y;
    VertexSet z;
    std::size_t z_threshold = 3;
};

DegreeClasses compute_degree_classes(const Digraph& d, std::size_t z_threshold = 3);

struct FilterOptions {
    /// Maximum number of edges of a qualifying path.
    std::size_t path_reach = 4;
    /// |X| > percolation_fraction * n marks the run as percolated.
    double percolation_fraction = 0.9;
    /// Stop the cascade as soon as it percolates instead of running to the fixed point.
    bool halt_on_percolation = false;
};

/// Layered output of the filtering cascade.
///
/// Layer k (1-based) holds the vertices first covered in round k by a simple path of at most
/// path_reach edges whose two distinct endpoints lie in Z or in an earlier layer. Every member
/// keeps the path that put it there.
struct FilterLayers {
    std::vector<std::vector<Vertex>> layers;
    VertexSet all;
    /// layer_of[v] is the 1-based layer of v, 0 when v was never filtered.
    std::vector<std::size_t> layer_of;
    /// provenance[v] is the qualifying path for v (empty when unfiltered); its first vertex is
    /// the marked vertex the search started from, its last the marked vertex it reached.
    std::vector<std::vector<Vertex>> provenance;
    std::size_t path_reach = 4;
    bool percolated = false;
    /// True when the cascade was stopped before reaching its fixed point.
    bool halted = false;

    std::size_t layer_count() const { return layers.size(); }
    std::vector<std::size_t> layer_sizes() const;
};

FilterLayers compute_filter_layers(const UndirectedView& g, const VertexSet& z, const FilterOptions& options = {});

/// Vertices a further cascade round would add on top of `layers` (empty at a fixed point).
std::vector<Vertex> next_round_additions(const UndirectedView& g, const VertexSet& z, const FilterLayers& layers);

/// Induced subgraph D0 = D[V \ (X u Y)] with id translation both ways.
struct FilteredDigraph {
    Digraph graph;
    std::vector<Vertex> to_parent;
    /// kNoVertex for filtered-out parents.
    std::vector<Vertex> from_parent;

    std::size_t size() const { return graph.vertex_count(); }
};

/// Never throws; the result may be empty.
FilteredDigraph induce_D0(const Digraph& d, const FilterLayers& layers, const DegreeClasses& classes);

/// Same as induce_D0 but throws EmptyResult when every vertex was filtered.
FilteredDigraph build_D0(const Digraph& d, const FilterLayers& layers, const DegreeClasses& classes);

/// Violations of the two deterministic guarantees on D0 (parent ids throughout).
struct StructureReport {
    /// Vertices with min directed degree 0 in D0.
    std::vector<Vertex> violations_min_degree;
    /// Pairs u < v, both of D0-min-degree <= 2, at undirected distance <= 4 in G0.
    std::vector<Arc> violations_distance;
    bool percolated = false;
    std::vector<std::size_t> layer_sizes;

    bool clean() const { return violations_min_degree.empty() && violations_distance.empty(); }
};

StructureReport check_D0_properties(const FilteredDigraph& d0);
StructureReport check_D0_properties(const FilteredDigraph& d0, const FilterLayers& layers);

}  // namespace longcycle
