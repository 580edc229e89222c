#include "longcycle/factor.hpp"

#include <algorithm>
#include <limits>

#include "longcycle/errors.hpp"

namespace longcycle {

BipartiteGraph::BipartiteGraph(std::size_t left_count, std::size_t right_count, std::span<const Arc> edges)
    : left_count_(left_count), right_count_(right_count), adj_(Adjacency::from_pairs(left_count, edges)) {}

std::vector<Arc> BipartiteGraph::edges() const {
    std::vector<Arc> result;
    result.reserve(edge_count());
    for (Vertex l = 0; l < left_count_; ++l) {
        for (Vertex r : neighbors(l)) result.emplace_back(l, r);
    }
    return result;
}

std::size_t Matching::size() const {
    return static_cast<std::size_t>(
        std::count_if(left_to_right.begin(), left_to_right.end(), [](Vertex r) { return r != kNoVertex; }));
}

BipartiteGraph build_H0(const FilteredDigraph& d0) {
    const auto arcs = d0.graph.arcs();
    return BipartiteGraph(d0.size(), d0.size(), arcs);
}

namespace {

constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

class HopcroftKarp {
public:
    HopcroftKarp(const BipartiteGraph& h, Matching& m)
        : h_(h), m_(m), dist_(h.left_count()), next_edge_(h.left_count()) {}

    void run() {
        while (layer()) {
            std::fill(next_edge_.begin(), next_edge_.end(), 0);
            for (Vertex u = 0; u < h_.left_count(); ++u) {
                if (m_.left_to_right[u] == kNoVertex) augment_from(u);
            }
        }
    }

private:
    // BFS layering from free left vertices; true when some free right vertex is reachable.
    bool layer() {
        std::vector<Vertex> queue;
        for (Vertex u = 0; u < h_.left_count(); ++u) {
            if (m_.left_to_right[u] == kNoVertex) {
                dist_[u] = 0;
                queue.push_back(u);
            } else {
                dist_[u] = kInf;
            }
        }
        bool found = false;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const Vertex u = queue[head];
            for (Vertex v : h_.neighbors(u)) {
                const Vertex w = m_.right_to_left[v];
                if (w == kNoVertex) {
                    found = true;
                } else if (dist_[w] == kInf) {
                    dist_[w] = dist_[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        return found;
    }

    // Iterative layered DFS; stack_[i] currently points at neighbour next_edge_[stack_[i]].
    void augment_from(Vertex root) {
        stack_.assign(1, root);
        while (!stack_.empty()) {
            const Vertex x = stack_.back();
            const auto adj = h_.neighbors(x);
            if (next_edge_[x] == adj.size()) {
                dist_[x] = kInf;
                stack_.pop_back();
                if (!stack_.empty()) ++next_edge_[stack_.back()];
                continue;
            }
            const Vertex v = adj[next_edge_[x]];
            const Vertex w = m_.right_to_left[v];
            if (w == kNoVertex) {
                for (Vertex y : stack_) {
                    const Vertex target = h_.neighbors(y)[next_edge_[y]];
                    m_.left_to_right[y] = target;
                    m_.right_to_left[target] = y;
                }
                return;
            }
            if (dist_[w] != kInf && dist_[w] == dist_[x] + 1) {
                stack_.push_back(w);
            } else {
                ++next_edge_[x];
            }
        }
    }

    const BipartiteGraph& h_;
    Matching& m_;
    std::vector<std::size_t> dist_;
    std::vector<std::size_t> next_edge_;
    std::vector<Vertex> stack_;
};

}  // namespace

Matching maximum_matching(const BipartiteGraph& h, Matching start) {
    start.left_to_right.resize(h.left_count(), kNoVertex);
    start.right_to_left.resize(h.right_count(), kNoVertex);
    HopcroftKarp(h, start).run();
    return start;
}

Matching maximum_matching(const BipartiteGraph& h) {
    return maximum_matching(h, Matching(h.left_count(), h.right_count()));
}

bool is_valid_matching(const BipartiteGraph& h, const Matching& m) {
    if (m.left_to_right.size() != h.left_count() || m.right_to_left.size() != h.right_count()) return false;
    std::size_t pairs = 0;
    for (Vertex l = 0; l < h.left_count(); ++l) {
        const Vertex r = m.left_to_right[l];
        if (r == kNoVertex) continue;
        if (r >= h.right_count() || !h.has_edge(l, r) || m.right_to_left[r] != l) return false;
        ++pairs;
    }
    const auto right_pairs = static_cast<std::size_t>(
        std::count_if(m.right_to_left.begin(), m.right_to_left.end(), [](Vertex l) { return l != kNoVertex; }));
    return pairs == right_pairs;
}

bool has_augmenting_path(const BipartiteGraph& h, const Matching& m) {
    // Alternating BFS from all free left vertices: non-matching edges left->right,
    // matching edges right->left.
    std::vector<std::uint8_t> seen_left(h.left_count(), 0);
    std::vector<std::uint8_t> seen_right(h.right_count(), 0);
    std::vector<Vertex> queue;
    for (Vertex u = 0; u < h.left_count(); ++u) {
        if (m.left_to_right[u] == kNoVertex) {
            seen_left[u] = 1;
            queue.push_back(u);
        }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (Vertex v : h.neighbors(queue[head])) {
            if (seen_right[v] != 0) continue;
            seen_right[v] = 1;
            const Vertex w = m.right_to_left[v];
            if (w == kNoVertex) return true;
            if (seen_left[w] == 0) {
                seen_left[w] = 1;
                queue.push_back(w);
            }
        }
    }
    return false;
}

TrimResult trim_to_perfect(const BipartiteGraph& h) {
    const std::size_t ids = std::max(h.left_count(), h.right_count());
    TrimResult result;
    result.dropped = VertexSet(ids);
    result.residue = h;
    result.matching = maximum_matching(h);
    result.initial_size = result.matching.size();
    for (;;) {
        ++result.rounds;
        std::vector<Vertex> unmatched;
        for (Vertex i = 0; i < ids; ++i) {
            if (result.dropped.contains(i)) continue;
            const bool left_free = i < h.left_count() && result.matching.left_to_right[i] == kNoVertex;
            const bool right_free = i < h.right_count() && result.matching.right_to_left[i] == kNoVertex;
            if (left_free || right_free) unmatched.push_back(i);
        }
        if (unmatched.empty()) break;
        for (Vertex i : unmatched) result.dropped.insert(i);
        if (result.dropped.size() == ids) throw EmptyResult("trimming dropped every vertex");

        std::vector<Arc> kept;
        kept.reserve(result.residue.edge_count());
        for (const auto& [l, r] : result.residue.edges()) {
            if (!result.dropped.contains(l) && !result.dropped.contains(r)) kept.emplace_back(l, r);
        }
        result.residue = BipartiteGraph(h.left_count(), h.right_count(), kept);

        Matching start(h.left_count(), h.right_count());
        for (Vertex l = 0; l < h.left_count(); ++l) {
            const Vertex r = result.matching.left_to_right[l];
            if (r != kNoVertex && !result.dropped.contains(l) && !result.dropped.contains(r)) {
                start.left_to_right[l] = r;
                start.right_to_left[r] = l;
            }
        }
        result.matching = maximum_matching(result.residue, std::move(start));
    }
    if (ids == 0) throw EmptyResult("empty bipartite graph");
    return result;
}

std::map<std::size_t, std::size_t> CycleFactor::length_histogram() const {
    std::map<std::size_t, std::size_t> hist;
    for (const auto& c : cycles) ++hist[c.size()];
    return hist;
}

CycleFactor extract_cycle_factor(const Matching& m, const FilteredDigraph& d0, const VertexSet& dropped) {
    const std::size_t n = d0.size();
    CycleFactor factor;
    factor.covered = VertexSet(n);
    factor.dropped = VertexSet(n);
    for (Vertex v = 0; v < n; ++v) {
        if (dropped.contains(v)) {
            factor.dropped.insert(v);
        } else {
            factor.covered.insert(v);
        }
    }
    if (m.left_to_right.size() < n) throw BrokenPermutation("matching smaller than D0");

    std::vector<std::uint8_t> hit(n, 0);
    for (Vertex x = 0; x < n; ++x) {
        if (!factor.covered.contains(x)) continue;
        const Vertex y = m.left_to_right[x];
        if (y == kNoVertex || y >= n || !factor.covered.contains(y)) {
            throw BrokenPermutation("covered vertex without covered successor");
        }
        if (hit[y] != 0) throw BrokenPermutation("two vertices share a successor");
        if (!d0.graph.has_arc(x, y)) throw BrokenPermutation("matched pair is not an arc of D0");
        hit[y] = 1;
    }

    std::vector<std::uint8_t> seen(n, 0);
    for (Vertex start = 0; start < n; ++start) {
        if (!factor.covered.contains(start) || seen[start] != 0) continue;
        std::vector<Vertex> cycle;
        for (Vertex x = start; seen[x] == 0; x = m.left_to_right[x]) {
            seen[x] = 1;
            cycle.push_back(x);
        }
        factor.cycles.push_back(std::move(cycle));
    }
    return factor;
}

}  // namespace longcycle
