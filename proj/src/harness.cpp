#include "longcycle/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include "longcycle/errors.hpp"
#include "longcycle/factor.hpp"

namespace longcycle {

std::string to_string(Mode mode) { return mode == Mode::paper ? "paper" : "desk"; }

Mode parse_mode(const std::string& text) {
    if (text == "paper") return Mode::paper;
    if (text == "desk") return Mode::desk;
    throw BadParameters("unknown mode '" + text + "' (expected paper or desk)");
}

void validate_config(const ExperimentConfig& cfg) {
    if (cfg.load_graph.empty()) {
        if (cfg.n < 2) throw BadParameters("n must be at least 2");
        if (!(cfg.c > 0.0) || !std::isfinite(cfg.c)) throw BadParameters("c must be positive");
        if (cfg.c > static_cast<double>(cfg.n)) throw BadParameters("c must not exceed n (p = c/n <= 1)");
    }
    if (cfg.seeds.empty()) throw BadParameters("at least one seed is required");
    const auto& o = cfg.overrides;
    if (o.percolation_fraction && !(*o.percolation_fraction > 0.0 && *o.percolation_fraction <= 1.0)) {
        throw BadParameters("percolation fraction must lie in (0, 1]");
    }
    if (o.sprinkle_gamma && !(*o.sprinkle_gamma >= 0.0)) throw BadParameters("gamma must be non-negative");
    if (o.path_size && *o.path_size == 0) throw BadParameters("path size must be positive");
}

ResolvedParams resolve_params(const ExperimentConfig& cfg) {
    ResolvedParams r;
    const double n = static_cast<double>(cfg.n);
    const double ln = std::log(n);
    const auto& o = cfg.overrides;

    r.z_threshold = o.z_threshold.value_or(3);
    r.path_reach = o.path_reach.value_or(4);
    r.percolation_fraction = o.percolation_fraction.value_or(0.9);

    const auto base_size = static_cast<std::size_t>(std::ceil(std::pow(ln, 0.9)));
    if (cfg.mode == Mode::paper) {
        r.path_size = o.path_size.value_or(base_size);
        r.anchor_len = o.anchor_len.value_or(static_cast<std::size_t>(std::floor(std::pow(ln, 0.8))));
        r.sprinkle_gamma = o.sprinkle_gamma.value_or(1.0);
        r.halt_on_percolation = false;
    } else {
        r.path_size = o.path_size.value_or(std::max<std::size_t>(6, base_size));
        r.anchor_len = o.anchor_len.value_or(std::max<std::size_t>(1, r.path_size / 4));
        r.sprinkle_gamma = o.sprinkle_gamma.value_or(8.0);
        r.halt_on_percolation = true;
    }
    // ceil(log_c(n) / 2); for c <= 1 the log is meaningless and only 2-cycles are dropped
    std::size_t threshold = 2;
    if (cfg.c > 1.0) {
        threshold = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(0.5 * ln / std::log(cfg.c))));
    }
    r.short_cycle_threshold = o.short_cycle_threshold.value_or(threshold);
    r.sprinkle_p = std::min(1.0, r.sprinkle_gamma / (n * std::sqrt(ln)));
    r.analysis_radius = o.analysis_radius.value_or(short_cycle_radius(cfg.n, cfg.c));
    return r;
}

bool reconciles(const TrialRecord& r) {
    const std::size_t downstream = r.trim_dropped + r.short_cycle_removed + r.chop_leftover +
                                   r.unused_path_vertices + r.anchor_skipped + r.final_length + r.unstitched;
    return r.n == r.filtered + r.d0_size && r.d0_size == downstream && r.uncovered + r.final_length == r.n;
}

namespace {

using Clock = std::chrono::steady_clock;

class StageTimer {
public:
    explicit StageTimer(std::map<std::string, double>& sink) : sink_(sink), start_(Clock::now()), last_(start_) {}

    void lap(const std::string& name) {
        const auto now = Clock::now();
        sink_[name] += std::chrono::duration<double>(now - last_).count();
        last_ = now;
    }
    void finish() { sink_["total"] = std::chrono::duration<double>(Clock::now() - start_).count(); }

private:
    std::map<std::string, double>& sink_;
    Clock::time_point start_;
    Clock::time_point last_;
};

AnalysisRecord run_analysis_block(const UndirectedView& g, const DegreeClasses& classes, const FilterLayers& x,
                                  const ResolvedParams& params, std::size_t n, double c) {
    AnalysisRecord a;
    a.radius = params.analysis_radius;
    const auto c_set = short_cycle_vertices(g, a.radius);
    a.short_cycle_count = c_set.members.size();
    a.cost_warning = c_set.cost_warning;
    const auto pruned = build_pruned(g, c_set, classes.z);
    a.pruned_removed_edges = pruned.removed_edges;
    a.z_prime_size = pruned.z_prime.size();

    FilterOptions opts;
    opts.path_reach = params.path_reach;
    opts.percolation_fraction = params.percolation_fraction;
    opts.halt_on_percolation = false;
    const auto x_prime = compute_filter_layers(pruned.graph, pruned.z_prime, opts);
    a.x_prime_size = x_prime.all.size();
    a.x_prime_layer_sizes = x_prime.layer_sizes();
    a.containment = containment_check(x, x_prime, c_set);

    WitnessExtractor extractor(pruned.graph, pruned.z_prime, x_prime);
    for (Vertex v : x_prime.all.members()) {
        ++a.witness.attempted;
        try {
            const auto tree = extractor.extract(v);
            ++a.witness.extracted;
            const auto b = check_witness_bounds(tree, pruned.z_prime);
            a.witness.leaf_range_failures += b.leaf_range ? 0 : 1;
            a.witness.size_failures += b.size ? 0 : 1;
            a.witness.leaf_seed_failures += b.leaves_in_seed ? 0 : 1;
            if (!b.levels) {
                ++a.witness.level_failures;
                if (pruned.z_prime.contains(v)) ++a.witness.level_failures_seed_root;
            }
            a.witness.max_levels = std::max(a.witness.max_levels, tree.levels);
            a.witness.max_leaves = std::max(a.witness.max_leaves, tree.leaf_count());
        } catch (const GirthViolation&) {
            ++a.witness.girth_violations;
        }
    }

    a.levels = level_profile(x_prime, n, c);
    a.levels.ball_size = ball_size(g, c_set, (a.radius + 1) / 2);
    return a;
}

}  // namespace

TrialRecord run_trial_on_graph(const ExperimentConfig& cfg, std::uint64_t seed, std::shared_ptr<const Digraph> graph) {
    TrialRecord rec;
    rec.seed = seed;
    rec.n = graph->vertex_count();
    rec.c = cfg.c;
    rec.mode = cfg.mode;
    ExperimentConfig local = cfg;
    local.n = rec.n;
    rec.params = resolve_params(local);
    const auto& P = rec.params;
    const Digraph& d = *graph;

    StageTimer timer(rec.timings);
    rec.arc_count = d.arc_count();

    const auto classes = compute_degree_classes(d, P.z_threshold);
    rec.y_size = classes.y.size();
    rec.z_size = classes.z.size();
    const auto g = undirected_view(d);
    timer.lap("classes");

    FilterOptions fopts;
    fopts.path_reach = P.path_reach;
    fopts.percolation_fraction = P.percolation_fraction;
    fopts.halt_on_percolation = P.halt_on_percolation;
    const auto layers = compute_filter_layers(g, classes.z, fopts);
    rec.x_size = layers.all.size();
    rec.layer_sizes = layers.layer_sizes();
    rec.percolated = layers.percolated;
    rec.halted = layers.halted;
    timer.lap("filter");

    const auto d0 = induce_D0(d, layers, classes);
    rec.d0_size = d0.size();
    rec.d0_arcs = d0.graph.arc_count();
    rec.filtered = rec.n - rec.d0_size;
    const auto structure = check_D0_properties(d0, layers);
    rec.violations_min_degree = structure.violations_min_degree.size();
    rec.violations_distance = structure.violations_distance.size();
    timer.lap("d0");

    if (cfg.run_analysis) {
        rec.analysis = run_analysis_block(g, classes, layers, P, rec.n, cfg.c);
        timer.lap("analysis");
    }

    // Everything below only moves D0 vertices between loss buckets; `unstitched` catches
    // whatever is still in play when a stage fails.
    auto stop = [&](std::size_t in_play) {
        rec.unstitched = in_play;
        rec.uncovered = rec.n - rec.final_length;
        timer.finish();
        return rec;
    };

    if (rec.d0_size == 0) {
        rec.empty_d0 = true;
        rec.validation_reason = "empty";
        return stop(0);
    }

    const auto h0 = build_H0(d0);
    TrimResult trim;
    try {
        trim = trim_to_perfect(h0);
    } catch (const EmptyResult&) {
        rec.empty_factor = true;
        rec.trim_dropped = rec.d0_size;
        rec.matching_size = maximum_matching(h0).size();
        rec.validation_reason = "empty";
        return stop(0);
    }
    rec.matching_size = trim.initial_size;
    rec.trim_dropped = trim.dropped.size();
    rec.trim_rounds = trim.rounds;
    const auto factor = extract_cycle_factor(trim.matching, d0, trim.dropped);
    rec.factor_covered = factor.covered.size();
    rec.factor_cycles = factor.cycle_count();
    rec.factor_histogram = factor.length_histogram();
    timer.lap("factor");

    ShortCycleDrop kept;
    try {
        kept = drop_short_cycles(factor, P.short_cycle_threshold);
    } catch (const EmptyResult&) {
        rec.empty_factor = true;
        rec.short_cycle_removed = rec.factor_covered;
        rec.validation_reason = "empty";
        return stop(0);
    }
    rec.short_cycle_removed = kept.removed;
    const std::size_t long_covered = kept.kept.covered.size();

    PathSystem ps;
    try {
        ps = chop_into_paths(kept.kept, P.path_size, P.anchor_len);
    } catch (const BadParameters&) {
        rec.bad_parameters = true;
        rec.validation_reason = "empty";
        return stop(long_covered);
    }
    rec.path_count = ps.path_count();
    rec.chop_leftover = ps.leftover.size();
    const std::size_t path_vertices = ps.path_count() * ps.path_size;

    const auto se = sprinkle(d0.size(), P.sprinkle_p, RngSpec{seed, "sprinkle"});
    rec.sprinkle_arcs = se.arcs.size();
    rec.parent_sprinkle = to_parent_coordinates(se, d0);
    const auto aux = build_aux(ps, se);
    rec.aux_arcs = aux.arcs().size();

    auto order = identity_order(aux.size());
    if (cfg.shuffle_dfs) {
        std::mt19937_64 rng(derive_stream_seed(RngSpec{seed, "dfs-order"}));
        std::shuffle(order.begin(), order.end(), rng);
    }
    const auto path = dfs_long_path(aux, order);
    rec.aux_path_length = path.size();

    std::vector<Vertex> aux_cycle;
    try {
        aux_cycle = close_to_cycle(aux, path);
    } catch (const NoClosingArc&) {
        rec.no_closing_arc = true;
        rec.unused_path_vertices = path_vertices;
        rec.validation_reason = "empty";
        return stop(0);
    }
    rec.aux_cycle_length = aux_cycle.size();
    auto cert = lift_cycle(aux_cycle, ps, aux, d0);
    timer.lap("stitch");

    rec.final_length = cert.length();
    rec.anchor_skipped = cert.stats.anchor_skipped;
    rec.unused_path_vertices = (ps.path_count() - aux_cycle.size()) * ps.path_size;
    const auto report = validate_certificate(d, rec.parent_sprinkle, cert);
    rec.certificate_valid = report.valid;
    rec.validation_reason = report.reason;
    rec.certificate = std::move(cert);
    timer.lap("validate");
    return stop(0);
}

TrialRecord run_trial(const ExperimentConfig& cfg, std::uint64_t seed) {
    const double p = std::min(1.0, cfg.c / static_cast<double>(cfg.n));
    const auto start = Clock::now();
    auto graph = std::make_shared<const Digraph>(generate_digraph(cfg.n, p, RngSpec{seed, "base-graph"}));
    const double gen = std::chrono::duration<double>(Clock::now() - start).count();
    auto rec = run_trial_on_graph(cfg, seed, graph);
    rec.timings["generate"] = gen;
    rec.timings["total"] += gen;
    if (!cfg.emit_cycle_dir.empty() || !cfg.dump_graph_dir.empty()) rec.graph = std::move(graph);
    return rec;
}

// ---------------------------------------------------------------- summary

namespace {

// Every numeric count of a record, in CSV order; drives both the CSV and the summary.
std::vector<std::pair<std::string, double>> numeric_fields(const TrialRecord& r) {
    auto d = [](std::size_t v) { return static_cast<double>(v); };
    return {
        {"arcs", d(r.arc_count)},
        {"y", d(r.y_size)},
        {"z", d(r.z_size)},
        {"x", d(r.x_size)},
        {"filtered", d(r.filtered)},
        {"layers", d(r.layer_sizes.size())},
        {"d0", d(r.d0_size)},
        {"d0_arcs", d(r.d0_arcs)},
        {"violations_min_degree", d(r.violations_min_degree)},
        {"violations_distance", d(r.violations_distance)},
        {"matching", d(r.matching_size)},
        {"trim_dropped", d(r.trim_dropped)},
        {"trim_rounds", d(r.trim_rounds)},
        {"factor_covered", d(r.factor_covered)},
        {"factor_cycles", d(r.factor_cycles)},
        {"short_cycle_removed", d(r.short_cycle_removed)},
        {"paths", d(r.path_count)},
        {"chop_leftover", d(r.chop_leftover)},
        {"sprinkle_arcs", d(r.sprinkle_arcs)},
        {"aux_arcs", d(r.aux_arcs)},
        {"aux_path", d(r.aux_path_length)},
        {"aux_cycle", d(r.aux_cycle_length)},
        {"final_length", d(r.final_length)},
        {"anchor_skipped", d(r.anchor_skipped)},
        {"unused_path_vertices", d(r.unused_path_vertices)},
        {"unstitched", d(r.unstitched)},
        {"uncovered", d(r.uncovered)},
    };
}

const std::vector<std::string> kTimingKeys{"generate", "classes", "filter", "d0", "analysis", "factor", "stitch", "validate", "total"};

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_bool(bool b) { return b ? "1" : "0"; }

}  // namespace

double binomial_cdf(std::size_t trials, double p, std::size_t k) {
    if (k >= trials) return 1.0;
    if (p <= 0.0) return 1.0;
    if (p >= 1.0) return 0.0;
    // log-space start avoids underflow of (1 - p)^trials for large trials
    double term = std::exp(static_cast<double>(trials) * std::log1p(-p));
    double sum = term;
    const double ratio = p / (1.0 - p);
    for (std::size_t i = 0; i < k; ++i) {
        term *= static_cast<double>(trials - i) / static_cast<double>(i + 1) * ratio;
        sum += term;
    }
    return std::min(1.0, sum);
}

SummaryTable summarize(const std::vector<TrialRecord>& records) {
    SummaryTable table;
    std::vector<std::vector<const TrialRecord*>> groups;
    for (const auto& r : records) {
        auto it = std::find_if(table.begin(), table.end(), [&](const SummaryRow& row) { return row.n == r.n && row.c == r.c; });
        if (it == table.end()) {
            SummaryRow row;
            row.n = r.n;
            row.c = r.c;
            table.push_back(row);
            groups.emplace_back();
            it = table.end() - 1;
        }
        groups[static_cast<std::size_t>(it - table.begin())].push_back(&r);
    }
    for (std::size_t gi = 0; gi < table.size(); ++gi) {
        auto& row = table[gi];
        const auto& members = groups[gi];
        row.trials = members.size();
        std::map<std::string, std::vector<double>> values;
        for (const auto* r : members) {
            for (const auto& [key, v] : numeric_fields(*r)) values[key].push_back(v);
        }
        for (const auto& [key, vs] : values) {
            FieldSummary s;
            const double k = static_cast<double>(vs.size());
            s.mean = std::accumulate(vs.begin(), vs.end(), 0.0) / k;
            double ss = 0.0;
            for (double v : vs) ss += (v - s.mean) * (v - s.mean);
            s.stddev = vs.size() > 1 ? std::sqrt(ss / (k - 1.0)) : 0.0;
            s.min = *std::min_element(vs.begin(), vs.end());
            s.max = *std::max_element(vs.begin(), vs.end());
            row.fields[key] = s;
        }
        const double n = static_cast<double>(row.n);
        const double p = std::min(1.0, row.c / n);
        const double a = std::pow(1.0 - p, n - 1.0);
        const double q = binomial_cdf(row.n - 1, p, 3);
        row.y_asymptotic = 2.0 * std::exp(-row.c) * n;
        row.y_exact = (2.0 * a - a * a) * n;
        row.z_exact = (2.0 * q - q * q) * n;
        row.x_bound = std::pow(2.0 * row.c, 10.0) * std::exp(-2.0 * row.c) * n;
    }
    return table;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    validate_config(cfg);
    auto seeds = cfg.seeds;
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());

    std::shared_ptr<const Digraph> loaded;
    if (!cfg.load_graph.empty()) {
        std::ifstream in(cfg.load_graph);
        if (!in) throw Error("cannot open graph file " + cfg.load_graph);
        loaded = std::make_shared<const Digraph>(read_graph(in));
    }

    ExperimentResult result;
    result.records.resize(seeds.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < seeds.size(); i = next++) {
            if (loaded) {
                auto rec = run_trial_on_graph(cfg, seeds[i], loaded);
                if (!cfg.emit_cycle_dir.empty() || !cfg.dump_graph_dir.empty()) rec.graph = loaded;
                result.records[i] = std::move(rec);
            } else {
                result.records[i] = run_trial(cfg, seeds[i]);
            }
        }
    };
    std::size_t workers = cfg.worker_count == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.worker_count;
    workers = std::min(workers, seeds.size());
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
    }
    result.summary = summarize(result.records);
    return result;
}

// ---------------------------------------------------------------- CSV / JSON

const std::vector<std::string>& csv_columns(bool include_timings) {
    static const std::vector<std::string> base = [] {
        std::vector<std::string> cols{"seed", "n", "c", "mode", "z_threshold", "path_reach", "path_size", "anchor_len",
                                      "sprinkle_gamma", "sprinkle_p", "short_cycle_threshold", "percolation_fraction"};
        for (const auto& [key, v] : numeric_fields(TrialRecord{})) cols.push_back(key);
        for (const char* flag : {"percolated", "halted", "empty_d0", "empty_factor", "bad_parameters", "no_closing_arc",
                                 "certificate_valid", "validation", "reconciles"}) {
            cols.emplace_back(flag);
        }
        for (const char* a : {"analysis_radius", "short_cycle_vertices", "x_prime", "containment", "witness_attempted",
                              "witness_extracted", "witness_girth_violations", "witness_bound_failures", "ball_size"}) {
            cols.emplace_back(a);
        }
        return cols;
    }();
    static const std::vector<std::string> timed = [] {
        auto cols = base;
        for (const auto& key : kTimingKeys) cols.push_back("time_" + key);
        return cols;
    }();
    return include_timings ? timed : base;
}

std::string csv_row(const TrialRecord& r, bool include_timings) {
    std::vector<std::string> cells{std::to_string(r.seed),
                                   std::to_string(r.n),
                                   fmt_double(r.c),
                                   to_string(r.mode),
                                   std::to_string(r.params.z_threshold),
                                   std::to_string(r.params.path_reach),
                                   std::to_string(r.params.path_size),
                                   std::to_string(r.params.anchor_len),
                                   fmt_double(r.params.sprinkle_gamma),
                                   fmt_double(r.params.sprinkle_p),
                                   std::to_string(r.params.short_cycle_threshold),
                                   fmt_double(r.params.percolation_fraction)};
    for (const auto& [key, v] : numeric_fields(r)) cells.push_back(std::to_string(static_cast<std::uint64_t>(v)));
    for (bool b : {r.percolated, r.halted, r.empty_d0, r.empty_factor, r.bad_parameters, r.no_closing_arc,
                   r.certificate_valid}) {
        cells.push_back(fmt_bool(b));
    }
    cells.push_back(r.validation_reason);
    cells.push_back(fmt_bool(reconciles(r)));
    if (r.analysis) {
        const auto& a = *r.analysis;
        cells.push_back(std::to_string(a.radius));
        cells.push_back(std::to_string(a.short_cycle_count));
        cells.push_back(std::to_string(a.x_prime_size));
        cells.push_back(fmt_bool(a.containment));
        cells.push_back(std::to_string(a.witness.attempted));
        cells.push_back(std::to_string(a.witness.extracted));
        cells.push_back(std::to_string(a.witness.girth_violations));
        cells.push_back(std::to_string(a.witness.bound_failures()));
        cells.push_back(a.levels.ball_size ? std::to_string(*a.levels.ball_size) : "");
    } else {
        for (int i = 0; i < 9; ++i) cells.emplace_back();
    }
    if (include_timings) {
        for (const auto& key : kTimingKeys) {
            const auto it = r.timings.find(key);
            cells.push_back(fmt_double(it == r.timings.end() ? 0.0 : it->second));
        }
    }
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i != 0) line += ',';
        line += cells[i];
    }
    return line;
}

nlohmann::json to_json(const StructureReport& report) {
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& [u, v] : report.violations_distance) pairs.push_back({u, v});
    return {{"violations_min_degree", report.violations_min_degree},
            {"violations_distance", pairs},
            {"percolated", report.percolated},
            {"layer_sizes", report.layer_sizes}};
}

nlohmann::json to_json(const CycleFactor& factor) {
    nlohmann::json hist = nlohmann::json::object();
    for (const auto& [len, count] : factor.length_histogram()) hist[std::to_string(len)] = count;
    return {{"cycle_count", factor.cycle_count()}, {"length_histogram", hist}, {"dropped", factor.dropped.size()}};
}

nlohmann::json to_json(const LevelStats& stats) {
    nlohmann::json j{{"layer_sizes", stats.layer_sizes},
                     {"level_cap", stats.level_cap},
                     {"bound_values", stats.bound_values},
                     {"global_bound", stats.global_bound}};
    j["ball_size"] = stats.ball_size ? nlohmann::json(*stats.ball_size) : nlohmann::json(nullptr);
    return j;
}

namespace {

nlohmann::json params_json(const ResolvedParams& p) {
    return {{"z_threshold", p.z_threshold},
            {"path_reach", p.path_reach},
            {"path_size", p.path_size},
            {"anchor_len", p.anchor_len},
            {"sprinkle_gamma", p.sprinkle_gamma},
            {"sprinkle_p", p.sprinkle_p},
            {"short_cycle_threshold", p.short_cycle_threshold},
            {"percolation_fraction", p.percolation_fraction},
            {"halt_on_percolation", p.halt_on_percolation},
            {"analysis_radius", p.analysis_radius}};
}

nlohmann::json analysis_json(const AnalysisRecord& a) {
    const auto& w = a.witness;
    nlohmann::json j = to_json(a.levels);
    j["radius"] = a.radius;
    j["short_cycle_vertices"] = a.short_cycle_count;
    j["cost_warning"] = a.cost_warning;
    j["pruned_removed_edges"] = a.pruned_removed_edges;
    j["z_prime"] = a.z_prime_size;
    j["x_prime"] = a.x_prime_size;
    j["x_prime_layer_sizes"] = a.x_prime_layer_sizes;
    j["containment"] = a.containment;
    j["witness"] = {{"attempted", w.attempted},
                    {"extracted", w.extracted},
                    {"girth_violations", w.girth_violations},
                    {"leaf_range_failures", w.leaf_range_failures},
                    {"size_failures", w.size_failures},
                    {"level_failures", w.level_failures},
                    {"level_failures_seed_root", w.level_failures_seed_root},
                    {"leaf_seed_failures", w.leaf_seed_failures},
                    {"max_levels", w.max_levels},
                    {"max_leaves", w.max_leaves}};
    return j;
}

}  // namespace

nlohmann::json to_json(const TrialRecord& r, bool include_timings) {
    nlohmann::json counts = nlohmann::json::object();
    for (const auto& [key, v] : numeric_fields(r)) counts[key] = static_cast<std::uint64_t>(v);
    nlohmann::json hist = nlohmann::json::object();
    for (const auto& [len, count] : r.factor_histogram) hist[std::to_string(len)] = count;
    nlohmann::json j{{"seed", r.seed},
                     {"n", r.n},
                     {"c", r.c},
                     {"mode", to_string(r.mode)},
                     {"params", params_json(r.params)},
                     {"counts", counts},
                     {"layer_sizes", r.layer_sizes},
                     {"factor_histogram", hist},
                     {"flags",
                      {{"percolated", r.percolated},
                       {"halted", r.halted},
                       {"empty_d0", r.empty_d0},
                       {"empty_factor", r.empty_factor},
                       {"bad_parameters", r.bad_parameters},
                       {"no_closing_arc", r.no_closing_arc},
                       {"certificate_valid", r.certificate_valid}}},
                     {"validation", r.validation_reason},
                     {"reconciles", reconciles(r)}};
    j["analysis"] = r.analysis ? analysis_json(*r.analysis) : nlohmann::json(nullptr);
    if (include_timings) j["timings"] = r.timings;
    return j;
}

nlohmann::json to_json(const SummaryRow& row) {
    nlohmann::json fields = nlohmann::json::object();
    for (const auto& [key, s] : row.fields) {
        fields[key] = {{"mean", s.mean}, {"stddev", s.stddev}, {"min", s.min}, {"max", s.max}};
    }
    return {{"n", row.n},
            {"c", row.c},
            {"trials", row.trials},
            {"fields", fields},
            {"analytic",
             {{"y_asymptotic", row.y_asymptotic},
              {"y_exact", row.y_exact},
              {"z_exact", row.z_exact},
              {"x_bound", row.x_bound}}}};
}

nlohmann::json to_json(const ExperimentConfig& cfg) {
    const auto& o = cfg.overrides;
    nlohmann::json ov = nlohmann::json::object();
    if (o.z_threshold) ov["z_threshold"] = *o.z_threshold;
    if (o.path_reach) ov["path_reach"] = *o.path_reach;
    if (o.path_size) ov["path_size"] = *o.path_size;
    if (o.anchor_len) ov["anchor_len"] = *o.anchor_len;
    if (o.sprinkle_gamma) ov["sprinkle_gamma"] = *o.sprinkle_gamma;
    if (o.short_cycle_threshold) ov["short_cycle_threshold"] = *o.short_cycle_threshold;
    if (o.percolation_fraction) ov["percolation_fraction"] = *o.percolation_fraction;
    if (o.analysis_radius) ov["analysis_radius"] = *o.analysis_radius;
    // worker_count and output paths are left out on purpose: they must not change the bytes
    return {{"n", cfg.n},       {"c", cfg.c},           {"seeds", cfg.seeds},
            {"mode", to_string(cfg.mode)}, {"overrides", ov}, {"run_analysis", cfg.run_analysis},
            {"shuffle_dfs", cfg.shuffle_dfs}, {"load_graph", cfg.load_graph}};
}

namespace {

std::string trial_stem(const TrialRecord& r) {
    std::ostringstream os;
    os << "n" << r.n << "_c" << fmt_double(r.c) << "_s" << r.seed;
    return os.str();
}

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    return out;
}

}  // namespace

void write_outputs(const std::vector<TrialRecord>& records, const SummaryTable& summary, const ExperimentConfig& cfg) {
    if (!cfg.out_csv.empty()) {
        auto out = open_out(cfg.out_csv);
        const auto& cols = csv_columns(cfg.include_timings);
        for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
        out << '\n';
        for (const auto& r : records) out << csv_row(r, cfg.include_timings) << '\n';
    }
    if (!cfg.out_json.empty()) {
        nlohmann::json j;
        j["config"] = to_json(cfg);
        j["records"] = nlohmann::json::array();
        for (const auto& r : records) j["records"].push_back(to_json(r, cfg.include_timings));
        j["summary"] = nlohmann::json::array();
        for (const auto& row : summary) j["summary"].push_back(to_json(row));
        auto out = open_out(cfg.out_json);
        out << j.dump(2) << '\n';
    }
    namespace fs = std::filesystem;
    if (!cfg.emit_cycle_dir.empty()) {
        for (const auto& r : records) {
            const fs::path dir(cfg.emit_cycle_dir);
            const auto stem = trial_stem(r);
            if (r.certificate) {
                auto out = open_out(dir / ("cycle_" + stem + ".txt"));
                write_certificate(out, *r.certificate);
            }
            auto sp = open_out(dir / ("sprinkle_" + stem + ".txt"));
            write_sprinkle(sp, r.n, r.parent_sprinkle);
            if (r.graph) {
                auto gr = open_out(dir / ("graph_" + stem + ".txt"));
                write_graph(gr, *r.graph);
            }
        }
    }
    if (!cfg.dump_graph_dir.empty()) {
        for (const auto& r : records) {
            if (!r.graph) continue;
            auto gr = open_out(std::filesystem::path(cfg.dump_graph_dir) / ("graph_" + trial_stem(r) + ".txt"));
            write_graph(gr, *r.graph);
        }
    }
}

// ---------------------------------------------------------------- sweep

namespace {

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(v);
    while (std::getline(is, cur, ',')) {
        cur = trim(cur);
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

// Normalises a JSON value into the same textual form key=value lines use.
std::string json_scalar_text(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
}

std::string json_text(const nlohmann::json& v) {
    if (!v.is_array()) return json_scalar_text(v);
    std::string out;
    for (const auto& e : v) out += (out.empty() ? "" : ",") + json_scalar_text(e);
    return out;
}

bool parse_bool(const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ParseError("not a boolean: " + v);
}

std::uint64_t parse_u64(const std::string& v) {
    std::size_t pos = 0;
    const auto x = std::stoull(v, &pos);
    if (pos != v.size()) throw ParseError("not an integer: " + v);
    return x;
}

double parse_real(const std::string& v) {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw ParseError("not a number: " + v);
    return x;
}

void apply_sweep_key(SweepConfig& s, const std::string& key, const std::string& value) {
    auto& b = s.base;
    try {
        if (key == "n") {
            for (const auto& x : split_list(value)) s.n_values.push_back(parse_u64(x));
        } else if (key == "c") {
            for (const auto& x : split_list(value)) s.c_values.push_back(parse_real(x));
        } else if (key == "seeds") {
            b.seeds.clear();
            for (const auto& x : split_list(value)) b.seeds.push_back(parse_u64(x));
        } else if (key == "trials") {
            b.seeds.resize(parse_u64(value));
            std::iota(b.seeds.begin(), b.seeds.end(), std::uint64_t{1});
        } else if (key == "mode") {
            b.mode = parse_mode(value);
        } else if (key == "z_threshold") {
            b.overrides.z_threshold = parse_u64(value);
        } else if (key == "path_reach") {
            b.overrides.path_reach = parse_u64(value);
        } else if (key == "path_size") {
            b.overrides.path_size = parse_u64(value);
        } else if (key == "anchor_len") {
            b.overrides.anchor_len = parse_u64(value);
        } else if (key == "gamma" || key == "sprinkle_gamma") {
            b.overrides.sprinkle_gamma = parse_real(value);
        } else if (key == "short_cycle_threshold") {
            b.overrides.short_cycle_threshold = parse_u64(value);
        } else if (key == "percolation_fraction") {
            b.overrides.percolation_fraction = parse_real(value);
        } else if (key == "analysis_radius") {
            b.overrides.analysis_radius = parse_u64(value);
        } else if (key == "analysis") {
            b.run_analysis = parse_bool(value);
        } else if (key == "shuffle_dfs") {
            b.shuffle_dfs = parse_bool(value);
        } else if (key == "threads") {
            b.worker_count = parse_u64(value);
        } else if (key == "out_csv") {
            b.out_csv = value;
        } else if (key == "out_json") {
            b.out_json = value;
        } else if (key == "emit_cycle") {
            b.emit_cycle_dir = value;
        } else if (key == "dump_graph") {
            b.dump_graph_dir = value;
        } else if (key == "timings") {
            b.include_timings = parse_bool(value);
        } else {
            throw ParseError("unknown sweep key '" + key + "'");
        }
    } catch (const std::invalid_argument&) {
        throw ParseError("bad value for '" + key + "': " + value);
    } catch (const std::out_of_range&) {
        throw ParseError("value out of range for '" + key + "': " + value);
    }
}

}  // namespace

SweepConfig parse_sweep_config(const std::string& text) {
    SweepConfig s;
    const auto body = trim(text);
    if (!body.empty() && body.front() == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(body);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(std::string("sweep JSON: ") + e.what());
        }
        for (const auto& [key, value] : j.items()) apply_sweep_key(s, key, json_text(value));
    } else {
        std::istringstream is(text);
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(is, line)) {
            ++lineno;
            if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) throw ParseError("line " + std::to_string(lineno) + ": expected key = value");
            apply_sweep_key(s, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        }
    }
    if (s.n_values.empty()) s.n_values.push_back(s.base.n);
    if (s.c_values.empty()) s.c_values.push_back(s.base.c);
    return s;
}

ExperimentResult run_sweep(const SweepConfig& sweep) {
    ExperimentResult all;
    for (std::size_t n : sweep.n_values) {
        for (double c : sweep.c_values) {
            auto cfg = sweep.base;
            cfg.n = n;
            cfg.c = c;
            auto part = run_experiment(cfg);
            for (auto& r : part.records) all.records.push_back(std::move(r));
        }
    }
    all.summary = summarize(all.records);
    return all;
}

}  // namespace longcycle
