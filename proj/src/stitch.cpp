#include "longcycle/stitch.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <tuple>

#include "longcycle/errors.hpp"

namespace longcycle {

// ---------------------------------------------------------------- AuxDigraph

AuxDigraph::AuxDigraph(std::size_t size, std::vector<AuxArc> arcs) : size_(size), arcs_(std::move(arcs)) {
    std::sort(arcs_.begin(), arcs_.end(),
              [](const AuxArc& a, const AuxArc& b) { return std::tie(a.from, a.to) < std::tie(b.from, b.to); });
    std::vector<Arc> pairs;
    pairs.reserve(arcs_.size());
    for (const auto& a : arcs_) {
        if (a.from == a.to) throw InconsistentWitness("aux self-loop");
        pairs.emplace_back(a.from, a.to);
    }
    if (std::adjacent_find(pairs.begin(), pairs.end()) != pairs.end()) throw InconsistentWitness("duplicate aux arc");
    adj_ = Adjacency::from_pairs(size_, pairs);
}

const Arc& AuxDigraph::witness(Vertex i, Vertex j) const {
    auto it = std::lower_bound(arcs_.begin(), arcs_.end(), std::make_pair(i, j), [](const AuxArc& a, const Arc& key) {
        return std::tie(a.from, a.to) < std::tie(key.first, key.second);
    });
    if (it == arcs_.end() || it->from != i || it->to != j) throw InconsistentWitness("aux arc has no witness");
    return it->witness;
}

// ---------------------------------------------------------------- factor -> paths

ShortCycleDrop drop_short_cycles(const CycleFactor& f, std::size_t threshold) {
    ShortCycleDrop result;
    result.kept.covered = f.covered;
    result.kept.dropped = f.dropped;
    for (const auto& cycle : f.cycles) {
        if (cycle.size() >= threshold) {
            result.kept.cycles.push_back(cycle);
            continue;
        }
        result.removed += cycle.size();
        for (Vertex v : cycle) {
            result.kept.covered.erase(v);
            result.kept.dropped.insert(v);
        }
    }
    if (result.kept.cycles.empty()) throw EmptyResult("every factor cycle is shorter than the threshold");
    return result;
}

PathSystem chop_into_paths(const CycleFactor& f, std::size_t path_size, std::size_t anchor_len) {
    if (path_size < 2 || anchor_len < 1 || 2 * anchor_len > path_size) {
        std::ostringstream msg;
        msg << "need 1 <= anchor_len and 2 * anchor_len <= path_size >= 2, got path_size=" << path_size
            << " anchor_len=" << anchor_len;
        throw BadParameters(msg.str());
    }
    PathSystem ps;
    ps.path_size = path_size;
    ps.anchor_len = anchor_len;
    ps.leftover = VertexSet(f.covered.universe());
    for (const auto& cycle : f.cycles) {
        const auto lowest = std::min_element(cycle.begin(), cycle.end()) - cycle.begin();
        std::vector<Vertex> rotated(cycle.size());
        std::rotate_copy(cycle.begin(), cycle.begin() + lowest, cycle.end(), rotated.begin());
        const std::size_t full = rotated.size() / path_size;
        for (std::size_t k = 0; k < full; ++k) {
            const auto first = rotated.begin() + static_cast<std::ptrdiff_t>(k * path_size);
            ps.paths.emplace_back(first, first + static_cast<std::ptrdiff_t>(path_size));
        }
        for (std::size_t pos = full * path_size; pos < rotated.size(); ++pos) ps.leftover.insert(rotated[pos]);
    }
    return ps;
}

SprinkleEdges sprinkle(std::size_t m, double p1, const RngSpec& rng) {
    return SprinkleEdges{sample_arcs(m, p1, rng), p1};
}

// ---------------------------------------------------------------- auxiliary digraph

namespace {

struct Location {
    Vertex path = kNoVertex;
    std::size_t pos = 0;
};

std::vector<Location> locate(const PathSystem& ps, std::size_t universe) {
    std::vector<Location> loc(universe);
    for (std::size_t i = 0; i < ps.paths.size(); ++i) {
        for (std::size_t pos = 0; pos < ps.paths[i].size(); ++pos) {
            loc[ps.paths[i][pos]] = Location{static_cast<Vertex>(i), pos};
        }
    }
    return loc;
}

std::size_t universe_of(const PathSystem& ps) {
    std::size_t universe = ps.leftover.universe();
    for (const auto& p : ps.paths) {
        for (Vertex v : p) universe = std::max<std::size_t>(universe, v + 1);
    }
    return universe;
}

}  // namespace

AuxDigraph build_aux(const PathSystem& ps, const SprinkleEdges& se) {
    std::size_t universe = universe_of(ps);
    for (const auto& [u, v] : se.arcs) universe = std::max<std::size_t>(universe, std::max(u, v) + 1);
    const auto loc = locate(ps, universe);
    const std::size_t size = ps.path_size;
    const std::size_t anchor = ps.anchor_len;

    struct Candidate {
        Vertex from;
        Vertex to;
        std::size_t exit;
        std::size_t entry;
        Arc arc;
    };
    std::vector<Candidate> candidates;
    for (const auto& arc : se.arcs) {
        const auto& out = loc[arc.first];
        const auto& in = loc[arc.second];
        if (out.path == kNoVertex || in.path == kNoVertex || out.path == in.path) continue;
        if (out.pos + anchor < size || in.pos >= anchor) continue;
        candidates.push_back({out.path, in.path, out.pos, in.pos, arc});
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        return std::make_tuple(a.from, a.to, b.exit, a.entry, a.arc) <
               std::make_tuple(b.from, b.to, a.exit, b.entry, b.arc);
    });
    std::vector<AuxArc> arcs;
    for (const auto& c : candidates) {
        if (!arcs.empty() && arcs.back().from == c.from && arcs.back().to == c.to) continue;
        arcs.push_back({c.from, c.to, c.arc});
    }
    return AuxDigraph(ps.paths.size(), std::move(arcs));
}

std::vector<Vertex> identity_order(std::size_t t) {
    std::vector<Vertex> order(t);
    std::iota(order.begin(), order.end(), Vertex{0});
    return order;
}

std::vector<Vertex> dfs_long_path(const AuxDigraph& h, std::span<const Vertex> order) {
    const std::size_t t = h.size();
    std::vector<std::size_t> rank(t);
    for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;

    // Out-neighbours re-sorted by guiding rank.
    std::vector<std::vector<Vertex>> guided(t);
    for (Vertex v = 0; v < t; ++v) {
        auto out = h.out(v);
        guided[v].assign(out.begin(), out.end());
        std::sort(guided[v].begin(), guided[v].end(), [&](Vertex a, Vertex b) { return rank[a] < rank[b]; });
    }

    enum : std::uint8_t { unvisited, on_stack, explored };
    std::vector<std::uint8_t> state(t, unvisited);
    std::vector<std::size_t> cursor(t, 0);
    std::vector<Vertex> stack;
    std::vector<Vertex> best;
    std::size_t agree = 0;  // stack[0, agree) == best[0, agree)

    for (Vertex root : order) {
        if (state[root] != unvisited) continue;
        state[root] = on_stack;
        stack.push_back(root);
        while (!stack.empty()) {
            const Vertex x = stack.back();
            auto& next = cursor[x];
            while (next < guided[x].size() && state[guided[x][next]] != unvisited) ++next;
            if (next < guided[x].size()) {
                const Vertex w = guided[x][next++];
                state[w] = on_stack;
                stack.push_back(w);
                continue;
            }
            if (stack.size() > best.size()) {
                best.resize(stack.size());
                std::copy(stack.begin() + static_cast<std::ptrdiff_t>(agree), stack.end(),
                          best.begin() + static_cast<std::ptrdiff_t>(agree));
                agree = stack.size();
            }
            state[x] = explored;
            stack.pop_back();
            agree = std::min(agree, stack.size());
        }
    }
    return best;
}

std::vector<Vertex> close_to_cycle(const AuxDigraph& h, std::span<const Vertex> path) {
    if (path.size() < 2) throw NoClosingArc("path too short to close");
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::vector<std::size_t> pos(h.size(), npos);
    for (std::size_t i = 0; i < path.size(); ++i) pos[path[i]] = i;

    std::size_t best_i = 0;
    std::size_t best_j = 0;
    bool found = false;
    for (std::size_t i = 0; i < path.size(); ++i) {
        for (Vertex v : h.out(path[i])) {
            const std::size_t j = pos[v];
            if (j == npos || j >= i) continue;
            const bool better = !found || i - j > best_i - best_j || (i - j == best_i - best_j && j < best_j);
            if (better) {
                best_i = i;
                best_j = j;
                found = true;
            }
        }
    }
    if (!found) throw NoClosingArc("no arc from the path back to an earlier path vertex");
    return {path.begin() + static_cast<std::ptrdiff_t>(best_j), path.begin() + static_cast<std::ptrdiff_t>(best_i + 1)};
}

// ---------------------------------------------------------------- lifting

CycleCertificate lift_cycle(std::span<const Vertex> aux_cycle, const PathSystem& ps, const AuxDigraph& h,
                            const FilteredDigraph& d0) {
    if (aux_cycle.size() < 2) throw InconsistentWitness("aux cycle needs at least two paths");
    const auto loc = locate(ps, std::max(universe_of(ps), d0.size()));
    const std::size_t size = ps.path_size;
    const std::size_t anchor = ps.anchor_len;

    std::vector<Vertex> verts;
    std::vector<ArcSource> tags;
    auto append = [&](Vertex v, ArcSource into) {
        if (!verts.empty()) tags.push_back(into);
        verts.push_back(v);
    };
    auto locate_in = [&](Vertex v, Vertex path) -> std::size_t {
        if (v >= loc.size() || loc[v].path != path) throw InconsistentWitness("witness endpoint outside its path");
        return loc[v].pos;
    };

    const Vertex first_path = aux_cycle.front();
    std::size_t entry = anchor - 1;
    ArcSource into = ArcSource::base;
    for (std::size_t r = 0; r < aux_cycle.size(); ++r) {
        const Vertex i = aux_cycle[r];
        const Vertex j = aux_cycle[(r + 1) % aux_cycle.size()];
        const auto& [b, a] = h.witness(i, j);
        const std::size_t exit = locate_in(b, i);
        const std::size_t next_entry = locate_in(a, j);
        if (exit + anchor < size || next_entry >= anchor || entry >= exit) {
            throw InconsistentWitness("witness violates anchor positions");
        }
        for (std::size_t pos = entry; pos <= exit; ++pos) {
            append(ps.paths[i][pos], pos == entry ? into : ArcSource::base);
        }
        into = ArcSource::sprinkle;
        entry = next_entry;
    }
    // Back in the first path: run from the closing entry up to just before the start vertex.
    for (std::size_t pos = entry; pos + 1 < anchor; ++pos) {
        append(ps.paths[first_path][pos], pos == entry ? into : ArcSource::base);
    }
    tags.push_back(entry + 1 < anchor ? ArcSource::base : into);

    CycleCertificate cert;
    cert.vertices.reserve(verts.size());
    for (Vertex v : verts) cert.vertices.push_back(d0.to_parent[v]);
    cert.arc_provenance = std::move(tags);
    cert.stats.path_count = ps.path_count();
    cert.stats.paths_on_cycle = aux_cycle.size();
    cert.stats.anchor_skipped = aux_cycle.size() * size - verts.size();
    cert.stats.d0_size = d0.size();
    return cert;
}

SprinkleEdges to_parent_coordinates(const SprinkleEdges& se, const FilteredDigraph& d0) {
    SprinkleEdges out{{}, se.probability_used};
    out.arcs.reserve(se.arcs.size());
    for (const auto& [u, v] : se.arcs) out.arcs.emplace_back(d0.to_parent[u], d0.to_parent[v]);
    std::sort(out.arcs.begin(), out.arcs.end());
    return out;
}

// ---------------------------------------------------------------- validation

ValidationReport validate_certificate(const Digraph& d, const SprinkleEdges& se, const CycleCertificate& cert) {
    const auto& cycle = cert.vertices;
    if (cycle.empty()) return {false, "empty", "certificate lists no vertices"};
    if (cert.arc_provenance.size() != cycle.size()) {
        return {false, "malformed", "provenance count differs from cycle length"};
    }
    std::vector<Vertex> sorted(cycle);
    std::sort(sorted.begin(), sorted.end());
    if (auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end()) {
        return {false, "repeat", "vertex " + std::to_string(*dup) + " appears twice"};
    }
    std::vector<Arc> extra(se.arcs);
    std::sort(extra.begin(), extra.end());
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        const Vertex u = cycle[i];
        const Vertex v = cycle[(i + 1) % cycle.size()];
        bool present = false;
        if (cert.arc_provenance[i] == ArcSource::base) {
            present = u < d.vertex_count() && v < d.vertex_count() && d.has_arc(u, v);
        } else {
            present = std::binary_search(extra.begin(), extra.end(), Arc{u, v});
        }
        if (!present) {
            const char* tag = cert.arc_provenance[i] == ArcSource::base ? "base" : "sprinkle";
            return {false, "absent arc",
                    std::to_string(u) + " -> " + std::to_string(v) + " not found among " + tag + " arcs"};
        }
    }
    return {true, "ok", std::to_string(cycle.size()) + "-vertex cycle verified"};
}

void write_certificate(std::ostream& os, const CycleCertificate& cert) {
    os << "cycle " << cert.vertices.size() << '\n';
    for (Vertex v : cert.vertices) os << v << '\n';
    os << "arcs:\n";
    for (std::size_t i = 0; i < cert.vertices.size(); ++i) {
        os << cert.vertices[i] << ' ' << cert.vertices[(i + 1) % cert.vertices.size()] << ' '
           << (cert.arc_provenance[i] == ArcSource::base ? "base" : "sprinkle") << '\n';
    }
}

CycleCertificate read_certificate(std::istream& is) {
    std::string word;
    std::size_t len = 0;
    if (!(is >> word >> len) || word != "cycle") throw ParseError("certificate must start with \"cycle <len>\"");
    CycleCertificate cert;
    cert.vertices.resize(len);
    for (auto& v : cert.vertices) {
        if (!(is >> v)) throw ParseError("truncated vertex list");
    }
    if (!(is >> word) || word != "arcs:") throw ParseError("missing \"arcs:\" section");
    cert.arc_provenance.resize(len);
    for (std::size_t i = 0; i < len; ++i) {
        Vertex u = 0;
        Vertex v = 0;
        std::string tag;
        if (!(is >> u >> v >> tag)) throw ParseError("truncated arc section");
        if (u != cert.vertices[i] || v != cert.vertices[(i + 1) % len]) {
            throw ParseError("arc " + std::to_string(i) + " does not join consecutive cycle vertices");
        }
        if (tag == "base") {
            cert.arc_provenance[i] = ArcSource::base;
        } else if (tag == "sprinkle") {
            cert.arc_provenance[i] = ArcSource::sprinkle;
        } else {
            throw ParseError("unknown arc tag \"" + tag + "\"");
        }
    }
    return cert;
}

void write_sprinkle(std::ostream& os, std::size_t vertex_count, const SprinkleEdges& se) {
    os << vertex_count << ' ' << se.arcs.size() << '\n';
    for (const auto& [u, v] : se.arcs) os << u << ' ' << v << '\n';
}

SprinkleEdges read_sprinkle(std::istream& is) {
    std::size_t n = 0;
    std::size_t m = 0;
    if (!(is >> n >> m)) throw ParseError("sprinkle header must be \"n m\"");
    SprinkleEdges se;
    se.arcs.resize(m);
    for (auto& [u, v] : se.arcs) {
        if (!(is >> u >> v)) throw ParseError("truncated sprinkle list");
        if (u >= n || v >= n) throw ParseError("sprinkle arc out of range");
    }
    return se;
}

}  // namespace longcycle
