#include "longcycle/filter.hpp"

#include <algorithm>
#include <utility>

#include "longcycle/errors.hpp"

namespace longcycle {

DegreeClasses compute_degree_classes(const Digraph& d, std::size_t z_threshold) {
    DegreeClasses classes{VertexSet(d.vertex_count()), VertexSet(d.vertex_count()), z_threshold};
    for (Vertex v = 0; v < d.vertex_count(); ++v) {
        const auto deg = min_degree_dir(d, v);
        if (deg == 0) classes.y.insert(v);
        if (deg <= z_threshold) classes.z.insert(v);
    }
    return classes;
}

std::vector<std::size_t> FilterLayers::layer_sizes() const {
    std::vector<std::size_t> sizes;
    sizes.reserve(layers.size());
    for (const auto& layer : layers) sizes.push_back(layer.size());
    return sizes;
}

namespace {

// Enumerates simple paths of at most `reach` edges that start at a marked vertex, run through
// unmarked vertices only and stop at the first marked vertex they meet. A qualifying path with a
// marked interior vertex splits into two such paths covering the same vertices, so nothing is
// lost by stopping there.
class PathSearch {
public:
    PathSearch(const UndirectedView& g, const std::vector<std::uint8_t>& marked, std::size_t reach)
        : g_(g), marked_(marked), reach_(reach) {}

    template <typename OnPath>
    void run(Vertex source, OnPath&& on_path) {
        path_.assign(1, source);
        extend(source, on_path);
    }

private:
    bool on_path(Vertex w) const { return std::find(path_.begin(), path_.end(), w) != path_.end(); }

    template <typename OnPath>
    void extend(Vertex u, OnPath& on_path_cb) {
        const std::size_t edges = path_.size() - 1;
        for (Vertex w : g_.neighbors(u)) {
            if (on_path(w)) continue;
            if (marked_[w] != 0) {
                path_.push_back(w);
                on_path_cb(std::as_const(path_));
                path_.pop_back();
            } else if (edges + 1 < reach_) {
                path_.push_back(w);
                extend(w, on_path_cb);
                path_.pop_back();
            }
        }
    }

    const UndirectedView& g_;
    const std::vector<std::uint8_t>& marked_;
    std::size_t reach_;
    std::vector<Vertex> path_;
};

}  // namespace

FilterLayers compute_filter_layers(const UndirectedView& g, const VertexSet& z, const FilterOptions& options) {
    const std::size_t n = g.vertex_count();
    FilterLayers result;
    result.all = VertexSet(n);
    result.layer_of.assign(n, 0);
    result.provenance.assign(n, {});
    result.path_reach = options.path_reach;
    if (options.path_reach == 0 || z.empty()) return result;

    const double limit = options.percolation_fraction * static_cast<double>(n);
    std::vector<std::uint8_t> marked(n, 0);
    for (Vertex v : z.members()) marked[v] = 1;
    std::vector<Vertex> sources = z.members();
    PathSearch search(g, marked, options.path_reach);

    for (std::size_t round = 1; !sources.empty(); ++round) {
        std::vector<Vertex> layer;
        auto record = [&](const std::vector<Vertex>& path) {
            for (Vertex v : path) {
                if (result.layer_of[v] != 0) continue;
                result.layer_of[v] = round;
                result.provenance[v] = path;
                result.all.insert(v);
                layer.push_back(v);
            }
        };
        for (Vertex x : sources) {
            search.run(x, record);
            if (options.halt_on_percolation && static_cast<double>(result.all.size()) > limit) {
                result.halted = true;
                break;
            }
        }
        if (layer.empty()) break;
        std::sort(layer.begin(), layer.end());
        // Z members were sources from round one on; only fresh non-Z vertices start new searches.
        sources.clear();
        for (Vertex v : layer) {
            if (marked[v] == 0) sources.push_back(v);
            marked[v] = 1;
        }
        result.layers.push_back(std::move(layer));
        if (result.halted) break;
    }
    result.percolated = static_cast<double>(result.all.size()) > limit;
    return result;
}

std::vector<Vertex> next_round_additions(const UndirectedView& g, const VertexSet& z, const FilterLayers& layers) {
    const std::size_t n = g.vertex_count();
    if (layers.path_reach == 0) return {};
    std::vector<std::uint8_t> marked(n, 0);
    std::vector<Vertex> sources;
    for (Vertex v = 0; v < n; ++v) {
        if (z.contains(v) || layers.all.contains(v)) {
            marked[v] = 1;
            sources.push_back(v);
        }
    }
    VertexSet added(n);
    PathSearch search(g, marked, layers.path_reach);
    for (Vertex x : sources) {
        search.run(x, [&](const std::vector<Vertex>& path) {
            for (Vertex v : path) {
                if (!layers.all.contains(v)) added.insert(v);
            }
        });
    }
    return added.members();
}

FilteredDigraph induce_D0(const Digraph& d, const FilterLayers& layers, const DegreeClasses& classes) {
    const std::size_t n = d.vertex_count();
    FilteredDigraph d0;
    d0.from_parent.assign(n, kNoVertex);
    for (Vertex v = 0; v < n; ++v) {
        if (layers.all.contains(v) || classes.y.contains(v)) continue;
        d0.from_parent[v] = static_cast<Vertex>(d0.to_parent.size());
        d0.to_parent.push_back(v);
    }
    std::vector<Arc> arcs;
    for (Vertex u : d0.to_parent) {
        for (Vertex v : d.out(u)) {
            if (d0.from_parent[v] != kNoVertex) arcs.emplace_back(d0.from_parent[u], d0.from_parent[v]);
        }
    }
    d0.graph = Digraph::from_arcs(d0.to_parent.size(), std::move(arcs));
    return d0;
}

FilteredDigraph build_D0(const Digraph& d, const FilterLayers& layers, const DegreeClasses& classes) {
    auto d0 = induce_D0(d, layers, classes);
    if (d0.size() == 0) throw EmptyResult("filtering removed every vertex");
    return d0;
}

StructureReport check_D0_properties(const FilteredDigraph& d0) {
    StructureReport report;
    const auto& g = d0.graph;
    const std::size_t n = g.vertex_count();
    if (n == 0) return report;

    std::vector<Vertex> low;
    std::vector<std::uint8_t> is_low(n, 0);
    for (Vertex v = 0; v < n; ++v) {
        const auto deg = min_degree_dir(g, v);
        if (deg == 0) report.violations_min_degree.push_back(d0.to_parent[v]);
        if (deg <= 2) {
            low.push_back(v);
            is_low[v] = 1;
        }
    }
    if (low.size() >= 2) {
        const auto g0 = undirected_view(g);
        std::vector<std::size_t> dist(n, kUnreached);
        std::vector<Vertex> touched;
        for (Vertex u : low) {
            touched.assign(1, u);
            dist[u] = 0;
            for (std::size_t head = 0; head < touched.size(); ++head) {
                const Vertex x = touched[head];
                if (dist[x] == 4) continue;
                for (Vertex w : g0.neighbors(x)) {
                    if (dist[w] != kUnreached) continue;
                    dist[w] = dist[x] + 1;
                    touched.push_back(w);
                }
            }
            for (Vertex v : touched) {
                if (v > u && is_low[v] != 0) {
                    const auto a = d0.to_parent[u];
                    const auto b = d0.to_parent[v];
                    report.violations_distance.emplace_back(std::min(a, b), std::max(a, b));
                }
                dist[v] = kUnreached;
            }
        }
        std::sort(report.violations_distance.begin(), report.violations_distance.end());
    }
    std::sort(report.violations_min_degree.begin(), report.violations_min_degree.end());
    return report;
}

StructureReport check_D0_properties(const FilteredDigraph& d0, const FilterLayers& layers) {
    auto report = check_D0_properties(d0);
    report.percolated = layers.percolated;
    report.layer_sizes = layers.layer_sizes();
    return report;
}

}  // namespace longcycle
