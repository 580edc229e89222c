#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "longcycle/factor.hpp"
#include "longcycle/graph.hpp"

namespace longcycle {

/// Vertex-disjoint directed paths of exactly path_size vertices, chopped from a cycle factor.
/// The first anchor_len vertices of a path form its prefix A_i, the last anchor_len its suffix B_i.
struct PathSystem {
    std::vector<std::vector<Vertex>> paths;
    std::size_t path_size = 0;
    std::size_t anchor_len = 0;
    VertexSet leftover;

    std::size_t path_count() const { return paths.size(); }
};

struct SprinkleEdges {
    std::vector<Arc> arcs;
    double probability_used = 0.0;
};

/// Contraction digraph: one vertex per path, arc i -> j when a sprinkled arc runs from B_i to A_j.
struct AuxArc {
    Vertex from = 0;
    Vertex to = 0;
    /// The sprinkled arc realising (from, to), in the sprinkle's coordinates.
    Arc witness;
};

class AuxDigraph {
public:
    AuxDigraph() = default;
    AuxDigraph(std::size_t size, std::vector<AuxArc> arcs);

    std::size_t size() const { return size_; }
    const std::vector<AuxArc>& arcs() const { return arcs_; }
    std::span<const Vertex> out(Vertex v) const { return adj_[v]; }
    bool has_arc(Vertex i, Vertex j) const { return adj_.contains(i, j); }
    /// Witness of arc (i, j); throws InconsistentWitness if the arc is absent.
    const Arc& witness(Vertex i, Vertex j) const;

private:
    std::size_t size_ = 0;
    std::vector<AuxArc> arcs_;  // sorted by (from, to)
    Adjacency adj_;
};

enum class ArcSource { base, sprinkle };

struct StageCounts {
    std::size_t d0_size = 0;
    std::size_t factor_covered = 0;
    std::size_t short_cycle_removed = 0;
    std::size_t chop_leftover = 0;
    std::size_t path_count = 0;
    std::size_t paths_on_cycle = 0;
    /// Vertices of traversed paths skipped before the entry or after the exit.
    std::size_t anchor_skipped = 0;
};

struct CycleCertificate {
    /// Parent-graph ids in cycle order.
    std::vector<Vertex> vertices;
    /// provenance[i] tags the arc vertices[i] -> vertices[(i + 1) % size].
    std::vector<ArcSource> arc_provenance;
    StageCounts stats;

    std::size_t length() const { return vertices.size(); }
};

/// Moves every cycle shorter than `threshold` into `dropped`. Throws EmptyResult if none survives.
struct ShortCycleDrop {
    CycleFactor kept;
    std::size_t removed = 0;
};
ShortCycleDrop drop_short_cycles(const CycleFactor& f, std::size_t threshold);

/// Greedy chop of every cycle, starting at its lowest id, into consecutive windows of
/// path_size vertices; each cycle's remainder goes to `leftover`.
/// Throws BadParameters unless 1 <= anchor_len, 2 * anchor_len <= path_size and path_size >= 2.
PathSystem chop_into_paths(const CycleFactor& f, std::size_t path_size, std::size_t anchor_len);

/// D(m, p1) arcs over [0, m).
SprinkleEdges sprinkle(std::size_t m, double p1, const RngSpec& rng);

/// Keeps, per (i, j), the witness with the latest exit in P_i, then the earliest entry in P_j.
AuxDigraph build_aux(const PathSystem& ps, const SprinkleEdges& se);

/// DFS guided by `order` (a permutation of [0, t)); returns the longest stack observed,
/// which is always a directed path of h.
std::vector<Vertex> dfs_long_path(const AuxDigraph& h, std::span<const Vertex> order);

/// Ascending-id order.
std::vector<Vertex> identity_order(std::size_t t);

/// Best back-arc closing: over arcs path[i] -> path[j], j <= i, maximise i - j (ties: smallest j)
/// and return path[j..i]. Throws NoClosingArc when no such arc exists.
std::vector<Vertex> close_to_cycle(const AuxDigraph& h, std::span<const Vertex> path);

/// Lifts an aux cycle to a directed cycle of D0 u sprinkle in parent coordinates.
/// Entry into the first path is its last prefix vertex.
CycleCertificate lift_cycle(std::span<const Vertex> aux_cycle, const PathSystem& ps, const AuxDigraph& h,
                            const FilteredDigraph& d0);

/// Sprinkled arcs translated from D0 ids to parent ids.
SprinkleEdges to_parent_coordinates(const SprinkleEdges& se, const FilteredDigraph& d0);

struct ValidationReport {
    bool valid = false;
    /// "ok", "empty", "repeat", "absent arc", "malformed".
    std::string reason;
    std::string detail;
};

/// Independent check of a certificate against the parent graph and parent-coordinate sprinkle.
ValidationReport validate_certificate(const Digraph& d, const SprinkleEdges& se, const CycleCertificate& cert);

/// "cycle <len>", one vertex per line, "arcs:", then "u v base|sprinkle" per arc.
void write_certificate(std::ostream& os, const CycleCertificate& cert);
CycleCertificate read_certificate(std::istream& is);

/// Same text layout as graph dumps ("m k" then "u v" lines).
void write_sprinkle(std::ostream& os, std::size_t vertex_count, const SprinkleEdges& se);
SprinkleEdges read_sprinkle(std::istream& is);

}  // namespace longcycle
