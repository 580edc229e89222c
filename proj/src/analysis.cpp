#include "longcycle/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_set>

#include "longcycle/errors.hpp"

namespace longcycle {

ShortCycleSet short_cycle_vertices(const UndirectedView& g, std::size_t radius_param) {
    const std::size_t n = g.vertex_count();
    ShortCycleSet result;
    result.radius_param = radius_param;
    result.members = VertexSet(n);
    result.shortest.assign(n, 0);
    if (n == 0) return result;

    const std::size_t max_depth = radius_param / 2;
    const double avg_degree = 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(n);
    result.cost_warning = std::pow(avg_degree, static_cast<double>(radius_param) / 2.0) > static_cast<double>(n);

    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> depth(n, none);
    std::vector<Vertex> branch(n, kNoVertex);
    std::vector<Vertex> touched;
    std::vector<Vertex> frontier;
    std::vector<Vertex> next;

    for (Vertex root = 0; root < n; ++root) {
        touched.assign(1, root);
        depth[root] = 0;
        frontier.assign(1, root);
        std::size_t best = none;
        for (std::size_t d = 0; !frontier.empty(); ++d) {
            next.clear();
            for (Vertex x : frontier) {
                for (Vertex y : g.neighbors(x)) {
                    if (depth[y] == none) {
                        if (d + 1 > max_depth) continue;
                        depth[y] = d + 1;
                        branch[y] = d == 0 ? y : branch[x];
                        touched.push_back(y);
                        next.push_back(y);
                    } else if (y == root) {
                        if (depth[x] >= 2) best = std::min(best, depth[x] + 1);
                    } else if (x != root && branch[x] != branch[y]) {
                        best = std::min(best, depth[x] + depth[y] + 1);
                    }
                }
            }
            // Every cycle of length <= 2d + 2 has been seen once level d is scanned.
            if (best <= 2 * d + 2) break;
            frontier.swap(next);
        }
        if (best <= radius_param) {
            result.members.insert(root);
            result.shortest[root] = best;
        }
        for (Vertex v : touched) {
            depth[v] = none;
            branch[v] = kNoVertex;
        }
    }
    return result;
}

PrunedGraph build_pruned(const UndirectedView& g, const ShortCycleSet& c_set, const VertexSet& z) {
    PrunedGraph pruned;
    std::vector<Arc> kept;
    for (const auto& [u, v] : g.edges()) {
        if (c_set.members.contains(u) && c_set.members.contains(v)) {
            ++pruned.removed_edges;
        } else {
            kept.emplace_back(u, v);
        }
    }
    pruned.graph = UndirectedView::from_edges(g.vertex_count(), kept);
    pruned.z_prime = VertexSet(g.vertex_count());
    for (Vertex v : c_set.members.members()) pruned.z_prime.insert(v);
    for (Vertex v : z.members()) pruned.z_prime.insert(v);
    return pruned;
}

bool containment_check(const FilterLayers& x, const FilterLayers& x_prime, const ShortCycleSet& c_set) {
    for (Vertex v : x.all.members()) {
        if (!x_prime.all.contains(v) && !c_set.members.contains(v)) return false;
    }
    return true;
}

// ---------------------------------------------------------------- witness trees

WitnessExtractor::WitnessExtractor(const UndirectedView& g_prime, const VertexSet& z_prime, const FilterLayers& layers)
    : g_(g_prime), z_(z_prime), layers_(layers) {}

bool WitnessExtractor::seed(Vertex v, std::size_t layer) const {
    const std::size_t lv = layers_.layer_of[v];
    return z_.contains(v) || (lv != 0 && lv < layer);
}

const WitnessExtractor::Partial& WitnessExtractor::build(Vertex v) {
    if (auto it = memo_.find(v); it != memo_.end()) return it->second;

    const std::size_t k = layers_.layer_of[v];
    const auto& path = layers_.provenance[v];
    Partial part;
    std::unordered_set<Vertex> used{v};
    auto claim = [&](Vertex u) {
        if (!used.insert(u).second) part.collided = true;
    };
    // Walk from v along the path in one direction until the first seed vertex.
    auto grow_arm = [&](std::ptrdiff_t step) {
        const auto at = std::find(path.begin(), path.end(), v) - path.begin();
        Vertex prev = v;
        for (auto i = at + step; i >= 0 && i < static_cast<std::ptrdiff_t>(path.size()); i += step) {
            const Vertex u = path[static_cast<std::size_t>(i)];
            claim(u);
            part.edges.emplace_back(u, prev);
            prev = u;
            if (seed(u, k)) {
                if (!z_.contains(u)) {
                    const auto& sub = build(u);
                    if (sub.collided) part.collided = true;
                    for (const auto& edge : sub.edges) {
                        claim(edge.first);
                        part.edges.push_back(edge);
                    }
                }
                return;
            }
        }
    };

    if (z_.contains(v) && k == 1) {
        // Seed root in the first layer: one arm to the nearest other seed, which can be
        // closer than the far end of the provenance path.
        std::unordered_map<Vertex, Vertex> from{{v, v}};
        std::vector<Vertex> frontier{v};
        Vertex hit = kNoVertex;
        for (std::size_t d = 0; d < path.size() - 1 && hit == kNoVertex; ++d) {
            std::vector<Vertex> next;
            for (Vertex u : frontier) {
                for (Vertex w : g_.neighbors(u)) {
                    if (!from.try_emplace(w, u).second) continue;
                    if (z_.contains(w) && (hit == kNoVertex || w < hit)) hit = w;
                    next.push_back(w);
                }
            }
            frontier = std::move(next);
        }
        if (hit == kNoVertex) {
            grow_arm(path.front() == v ? 1 : -1);
        } else {
            for (Vertex u = hit; u != v; u = from.at(u)) part.edges.emplace_back(u, from.at(u));
        }
    } else if (z_.contains(v)) {
        // A seed vertex only ever ends its qualifying path; use the whole path as one arm.
        grow_arm(path.front() == v ? 1 : -1);
    } else {
        grow_arm(-1);
        grow_arm(1);
    }
    return memo_.emplace(v, std::move(part)).first->second;
}

WitnessTree WitnessExtractor::extract(Vertex v) {
    if (v >= layers_.layer_of.size() || layers_.layer_of[v] == 0) {
        throw EmptyResult("vertex " + std::to_string(v) + " is not in any cascade layer");
    }
    const auto& part = build(v);
    if (part.collided) {
        throw GirthViolation("witness construction for vertex " + std::to_string(v) + " closes a cycle");
    }
    WitnessTree tree;
    tree.root = v;
    tree.entry_layer = layers_.layer_of[v];
    std::unordered_map<Vertex, std::size_t> tree_degree;
    tree_degree.try_emplace(v, 0);
    for (const auto& [child, parent] : part.edges) {
        if (!g_.adjacent(child, parent)) throw std::logic_error("witness edge missing from the pruned graph");
        tree.parent_map.emplace(child, parent);
        ++tree_degree[child];
        ++tree_degree[parent];
    }
    tree.leaves = VertexSet(g_.vertex_count());
    for (const auto& [u, deg] : tree_degree) {
        if (deg <= 1) tree.leaves.insert(u);
    }
    // Depth by walking parents with memoisation.
    std::unordered_map<Vertex, std::size_t> depth{{v, 0}};
    std::size_t max_depth = 0;
    for (const auto& entry : tree.parent_map) {
        std::vector<Vertex> chain;
        Vertex u = entry.first;
        while (!depth.contains(u)) {
            chain.push_back(u);
            u = tree.parent_map.at(u);
        }
        std::size_t d = depth[u];
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) depth[*it] = ++d;
        max_depth = std::max(max_depth, d);
    }
    tree.levels = max_depth + 1;
    return tree;
}

WitnessTree extract_witness_tree(const FilterLayers& layers, const PrunedGraph& pruned, Vertex v) {
    return WitnessExtractor(pruned.graph, pruned.z_prime, layers).extract(v);
}

WitnessBounds check_witness_bounds(const WitnessTree& tree, const VertexSet& z_prime) {
    WitnessBounds b;
    const std::size_t k = tree.entry_layer;
    const std::size_t leaves = tree.leaf_count();
    const bool below_cap = k >= 63 || leaves <= (std::size_t{1} << k);
    b.leaf_range = k < leaves && below_cap;
    b.size = leaves >= 1 && tree.vertex_count() <= 5 * (leaves - 1);
    b.levels = tree.levels <= 4 * k;
    b.leaves_in_seed = true;
    for (Vertex u : tree.leaves.members()) {
        if (!z_prime.contains(u)) b.leaves_in_seed = false;
    }
    return b;
}

// ---------------------------------------------------------------- level statistics

std::size_t ball_size(const UndirectedView& g, const ShortCycleSet& c_set, std::size_t radius) {
    if (radius == 0 || c_set.members.empty()) return 0;
    const auto members = c_set.members.members();
    const auto dist = bfs_distances(g, members, radius - 1);
    return static_cast<std::size_t>(std::count_if(dist.begin(), dist.end(), [](std::size_t d) { return d != kUnreached; }));
}

std::size_t short_cycle_radius(std::size_t n, double c) {
    const double r = std::floor((20.0 / c) * std::log(static_cast<double>(n)));
    return std::max<std::size_t>(3, static_cast<std::size_t>(std::max(0.0, r)));
}

std::size_t level_cap(std::size_t n, double c) {
    const double k = std::floor((2.0 / c) * std::log(static_cast<double>(n)));
    return static_cast<std::size_t>(std::max(0.0, k));
}

LevelStats level_profile(const FilterLayers& layers, std::size_t n, double c) {
    LevelStats stats;
    stats.layer_sizes = layers.layer_sizes();
    stats.level_cap = level_cap(n, c);
    const double nn = static_cast<double>(n);
    for (std::size_t k = 1; k <= stats.layer_sizes.size(); ++k) {
        stats.bound_values.push_back(std::exp(-0.75 * c * static_cast<double>(k + 1)) * nn);
    }
    stats.global_bound = std::pow(2.0 * c, 10.0) * std::exp(-2.0 * c) * nn;
    return stats;
}

}  // namespace longcycle
