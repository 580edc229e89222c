#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "longcycle/filter.hpp"
#include "longcycle/graph.hpp"

namespace longcycle {

/// Bipartite graph with left ids [0, left_count) and right ids [0, right_count).
class BipartiteGraph {
public:
    BipartiteGraph() = default;
    /// edges are (left, right) pairs without duplicates.
    BipartiteGraph(std::size_t left_count, std::size_t right_count, std::span<const Arc> edges);

    std::size_t left_count() const { return left_count_; }
    std::size_t right_count() const { return right_count_; }
    std::size_t edge_count() const { return adj_.entry_count(); }
    std::span<const Vertex> neighbors(Vertex left) const { return adj_[left]; }
    bool has_edge(Vertex left, Vertex right) const { return adj_.contains(left, right); }
    std::vector<Arc> edges() const;

private:
    std::size_t left_count_ = 0;
    std::size_t right_count_ = 0;
    Adjacency adj_;
};

/// Partial injective map left -> right.
struct Matching {
    std::vector<Vertex> left_to_right;
    std::vector<Vertex> right_to_left;

    Matching() = default;
    Matching(std::size_t left_count, std::size_t right_count)
        : left_to_right(left_count, kNoVertex), right_to_left(right_count, kNoVertex) {}

    std::size_t size() const;
    bool is_perfect() const { return size() == left_to_right.size() && size() == right_to_left.size(); }
};

/// H0: left and right copies of V(D0), x_L ~ y_R iff (x -> y) is an arc of D0.
BipartiteGraph build_H0(const FilteredDigraph& d0);

/// Hopcroft-Karp; augmenting searches scan adjacency in ascending order.
Matching maximum_matching(const BipartiteGraph& h);

/// Same, continuing from a valid partial matching.
Matching maximum_matching(const BipartiteGraph& h, Matching start);

/// True when `m` is a matching of `h` (edges exist, injective both ways).
bool is_valid_matching(const BipartiteGraph& h, const Matching& m);

/// True when some augmenting path exists for `m` in `h` (one alternating BFS).
bool has_augmenting_path(const BipartiteGraph& h, const Matching& m);

struct TrimResult {
    /// h with every edge touching a dropped id removed (ids are kept).
    BipartiteGraph residue;
    /// Perfect on the ids that survive.
    Matching matching;
    /// Ids whose left or right copy stayed unmatched at some round.
    VertexSet dropped;
    std::size_t rounds = 0;
    /// Cardinality of the first maximum matching, before any trimming.
    std::size_t initial_size = 0;
};

/// Repeatedly matches and deletes both copies of every id left unmatched until the
/// matching is perfect on what remains. Throws EmptyResult when nothing survives.
TrimResult trim_to_perfect(const BipartiteGraph& h);

/// Vertex-disjoint directed cycles of D0 (D0 ids) plus the ids left out.
struct CycleFactor {
    std::vector<std::vector<Vertex>> cycles;
    VertexSet covered;
    VertexSet dropped;

    std::size_t cycle_count() const { return cycles.size(); }
    std::map<std::size_t, std::size_t> length_histogram() const;
};

/// Reads the matching as the successor permutation x -> m(x) on V(D0) \ dropped.
/// Throws BrokenPermutation if that is not a bijection or uses a non-arc.
CycleFactor extract_cycle_factor(const Matching& m, const FilteredDigraph& d0, const VertexSet& dropped);

}  // namespace longcycle
