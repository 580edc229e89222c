#include <fstream>
#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "longcycle/errors.hpp"
#include "longcycle/factor.hpp"
#include "longcycle/filter.hpp"
#include "longcycle/harness.hpp"
#include "longcycle/stitch.hpp"

namespace py = pybind11;
namespace lc = longcycle;

namespace {

// Config arrives as a JSON object string built by the Python wrapper; same keys as a sweep file.
lc::ExperimentConfig config_from(const std::string& text) {
    const auto sweep = lc::parse_sweep_config(text);
    if (sweep.n_values.size() != 1 || sweep.c_values.size() != 1) throw lc::BadParameters("expected a single n and c");
    auto cfg = sweep.base;
    cfg.n = sweep.n_values[0];
    cfg.c = sweep.c_values[0];
    return cfg;
}

template <class T>
T read_file(const std::string& path, T (*reader)(std::istream&)) {
    std::ifstream in(path);
    if (!in) throw lc::ParseError("cannot open " + path);
    return reader(in);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Long cycles in sparse random digraphs: pipeline bindings";

    py::register_exception<lc::Error>(m, "LongcycleError");

    py::class_<lc::Digraph>(m, "Digraph")
        .def_static("from_arcs", &lc::Digraph::from_arcs, py::arg("n"), py::arg("arcs"))
        .def_property_readonly("vertex_count", &lc::Digraph::vertex_count)
        .def_property_readonly("arc_count", &lc::Digraph::arc_count)
        .def("arcs", &lc::Digraph::arcs)
        .def("has_arc", &lc::Digraph::has_arc)
        .def("hash", [](const lc::Digraph& d) { return lc::arc_hash(d); })
        .def("__repr__", [](const lc::Digraph& d) {
            return "<Digraph n=" + std::to_string(d.vertex_count()) + " arcs=" + std::to_string(d.arc_count()) + ">";
        });

    m.def("generate_digraph", [](std::size_t n, double c, std::uint64_t seed) {
        return lc::generate_digraph(n, c / static_cast<double>(n), {seed, "base-graph"});
    }, py::arg("n"), py::arg("c"), py::arg("seed"));

    m.def("degree_classes", [](const lc::Digraph& d, std::size_t z_threshold) {
        const auto cl = lc::compute_degree_classes(d, z_threshold);
        return py::make_tuple(cl.y.members(), cl.z.members());
    }, py::arg("digraph"), py::arg("z_threshold") = 3);

    m.def("filter_layers", [](std::size_t n, const std::vector<lc::Arc>& edges, const std::vector<lc::Vertex>& z,
                              std::size_t path_reach) {
        lc::FilterOptions o;
        o.path_reach = path_reach;
        return lc::compute_filter_layers(lc::UndirectedView::from_edges(n, edges), lc::VertexSet(n, z), o).layers;
    }, py::arg("n"), py::arg("edges"), py::arg("z"), py::arg("path_reach") = 4);

    m.def("maximum_matching_size", [](std::size_t left, std::size_t right, const std::vector<lc::Arc>& edges) {
        return lc::maximum_matching(lc::BipartiteGraph(left, right, edges)).size();
    }, py::arg("left"), py::arg("right"), py::arg("edges"));

    m.def("_resolve_params", [](const std::string& cfg) {
        const auto c = config_from(cfg);
        lc::validate_config(c);
        lc::TrialRecord r;
        r.params = lc::resolve_params(c);
        return lc::to_json(r, false)["params"].dump();
    });

    m.def("_run_trial", [](const std::string& cfg, std::uint64_t seed) {
        const auto c = config_from(cfg);
        lc::validate_config(c);
        py::gil_scoped_release release;
        return lc::to_json(lc::run_trial(c, seed), c.include_timings).dump();
    });

    m.def("_run_experiment", [](const std::string& cfg) {
        const auto c = config_from(cfg);
        lc::ExperimentResult res;
        {
            py::gil_scoped_release release;
            res = lc::run_experiment(c);
        }
        nlohmann::json out{{"records", nlohmann::json::array()}, {"summary", nlohmann::json::array()}};
        for (const auto& r : res.records) out["records"].push_back(lc::to_json(r, c.include_timings));
        for (const auto& row : res.summary) out["summary"].push_back(lc::to_json(row));
        return out.dump();
    });

    m.def("validate_files", [](const std::string& graph, const std::string& sprinkle, const std::string& certificate) {
        const auto d = read_file(graph, &lc::read_graph);
        const auto se = sprinkle.empty() ? lc::SprinkleEdges{} : read_file(sprinkle, &lc::read_sprinkle);
        const auto cert = read_file(certificate, &lc::read_certificate);
        const auto rep = lc::validate_certificate(d, se, cert);
        return py::make_tuple(rep.valid, rep.reason);
    }, py::arg("graph"), py::arg("sprinkle"), py::arg("certificate"));
}
