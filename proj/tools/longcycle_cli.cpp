// longcycle_cli: run / validate / sweep front end for the long-cycle pipeline.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "longcycle/errors.hpp"
#include "longcycle/graph.hpp"
#include "longcycle/harness.hpp"
#include "longcycle/stitch.hpp"

namespace lc = longcycle;

namespace {

void print_summary(const lc::ExperimentResult& res, std::ostream& os) {
    for (const auto& r : res.records) {
        os << "seed " << r.seed << ": n=" << r.n << " |X|=" << r.x_size << " |D0|=" << r.d0_size
           << " final=" << r.final_length << " valid=" << (r.certificate_valid ? "yes" : "no");
        if (r.percolated) os << " [percolated]";
        if (r.bad_parameters) os << " [bad parameters]";
        if (r.no_closing_arc) os << " [no closing arc]";
        if (r.empty_d0 || r.empty_factor) os << " [empty]";
        os << '\n';
    }
}

template <typename T>
std::optional<T> opt_if(CLI::Option* opt, const T& value) {
    if (opt->count() == 0) return std::nullopt;
    return value;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Long directed cycles in sparse random digraphs: filter, factor, stitch, validate"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "Run seeded trials of the full pipeline");
    lc::ExperimentConfig cfg;
    std::string mode = "desk";
    std::vector<std::uint64_t> seeds;
    std::size_t trials = 0;
    std::size_t z_thr = 0, reach = 0, psize = 0, alen = 0, short_thr = 0, radius = 0;
    double gamma = 0.0, frac = 0.0;
    bool no_timings = false;
    run->add_option("--n", cfg.n, "Vertex count")->capture_default_str();
    run->add_option("--c", cfg.c, "Average degree parameter, p = c/n")->capture_default_str();
    auto* seeds_opt = run->add_option("--seeds", seeds, "Explicit seeds (space or comma separated)")->delimiter(',');
    auto* trials_opt = run->add_option("--trials", trials, "Use seeds 1..N");
    seeds_opt->excludes(trials_opt);
    run->add_option("--mode", mode, "paper | desk")->check(CLI::IsMember({"paper", "desk"}))->capture_default_str();
    auto* z_opt = run->add_option("--z-threshold", z_thr, "Z class threshold on min directed degree");
    auto* reach_opt = run->add_option("--path-reach", reach, "Max edges of a qualifying cascade path");
    auto* psize_opt = run->add_option("--path-size", psize, "Vertices per chopped path");
    auto* alen_opt = run->add_option("--anchor-len", alen, "Prefix/suffix length of each path");
    auto* gamma_opt = run->add_option("--gamma", gamma, "Sprinkle multiplier: p1 = gamma / (n sqrt(ln n))");
    auto* short_opt = run->add_option("--short-cycle-threshold", short_thr, "Drop factor cycles shorter than this");
    auto* frac_opt = run->add_option("--percolation-fraction", frac, "Percolation flag threshold as a fraction of n");
    auto* radius_opt = run->add_option("--analysis-radius", radius, "Short-cycle radius R for --analysis");
    run->add_flag("--analysis", cfg.run_analysis, "Also run the containment / witness-tree / level diagnostics");
    run->add_flag("--shuffle-dfs", cfg.shuffle_dfs, "Seed-shuffled DFS order instead of ascending ids");
    run->add_option("--emit-cycle", cfg.emit_cycle_dir, "Directory for cycle/graph/sprinkle files per trial");
    run->add_option("--out-csv", cfg.out_csv, "CSV output path");
    run->add_option("--out-json", cfg.out_json, "JSON output path");
    run->add_option("--threads", cfg.worker_count, "Worker threads (0 = hardware)")->capture_default_str();
    run->add_option("--dump-graph", cfg.dump_graph_dir, "Directory for base-graph dumps");
    run->add_option("--load-graph", cfg.load_graph, "Use this graph file instead of sampling");
    run->add_flag("--no-timings", no_timings, "Leave wall-time columns out of CSV/JSON");

    // validate
    auto* validate = app.add_subcommand("validate", "Check a certificate against a graph and sprinkle file");
    std::string graph_path, sprinkle_path, cert_path;
    validate->add_option("--graph", graph_path, "Base graph file")->required()->check(CLI::ExistingFile);
    validate->add_option("--sprinkle", sprinkle_path, "Sprinkle file (parent ids)")->check(CLI::ExistingFile);
    validate->add_option("--certificate", cert_path, "Certificate file")->required()->check(CLI::ExistingFile);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Grid over n and c from a config file");
    std::string sweep_path;
    sweep->add_option("config", sweep_path, "key = value or JSON config file")->required()->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            cfg.mode = lc::parse_mode(mode);
            if (trials_opt->count() > 0) {
                seeds.resize(trials);
                std::iota(seeds.begin(), seeds.end(), std::uint64_t{1});
            }
            if (!seeds.empty()) cfg.seeds = seeds;
            cfg.overrides.z_threshold = opt_if(z_opt, z_thr);
            cfg.overrides.path_reach = opt_if(reach_opt, reach);
            cfg.overrides.path_size = opt_if(psize_opt, psize);
            cfg.overrides.anchor_len = opt_if(alen_opt, alen);
            cfg.overrides.sprinkle_gamma = opt_if(gamma_opt, gamma);
            cfg.overrides.short_cycle_threshold = opt_if(short_opt, short_thr);
            cfg.overrides.percolation_fraction = opt_if(frac_opt, frac);
            cfg.overrides.analysis_radius = opt_if(radius_opt, radius);
            cfg.include_timings = !no_timings;
            const auto res = lc::run_experiment(cfg);
            lc::write_outputs(res.records, res.summary, cfg);
            print_summary(res, std::cout);
            return 0;
        }
        if (validate->parsed()) {
            std::ifstream gin(graph_path);
            const auto d = lc::read_graph(gin);
            lc::SprinkleEdges se;
            if (!sprinkle_path.empty()) {
                std::ifstream sin(sprinkle_path);
                se = lc::read_sprinkle(sin);
            }
            std::ifstream cin_(cert_path);
            const auto cert = lc::read_certificate(cin_);
            const auto report = lc::validate_certificate(d, se, cert);
            std::cout << (report.valid ? "valid" : "invalid") << ": " << report.reason;
            if (!report.detail.empty()) std::cout << " (" << report.detail << ")";
            std::cout << "\nlength " << cert.length() << " of " << d.vertex_count() << '\n';
            return report.valid ? 0 : 1;
        }
        if (sweep->parsed()) {
            std::ifstream in(sweep_path);
            std::stringstream buf;
            buf << in.rdbuf();
            const auto sc = lc::parse_sweep_config(buf.str());
            const auto res = lc::run_sweep(sc);
            lc::write_outputs(res.records, res.summary, sc.base);
            print_summary(res, std::cout);
            return 0;
        }
    } catch (const lc::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
