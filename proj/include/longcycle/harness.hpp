#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "longcycle/analysis.hpp"
#include "longcycle/filter.hpp"
#include "longcycle/graph.hpp"
#include "longcycle/stitch.hpp"

namespace longcycle {

enum class Mode { paper, desk };

std::string to_string(Mode mode);
Mode parse_mode(const std::string& text);

/// Explicit parameter overrides; unset fields take the mode default.
struct Overrides {
    std::optional<std::size_t> z_threshold;
    std::optional<std::size_t> path_reach;
    std::optional<std::size_t> path_size;
    std::optional<std::size_t> anchor_len;
    std::optional<double> sprinkle_gamma;
    std::optional<std::size_t> short_cycle_threshold;
    std::optional<double> percolation_fraction;
    /// Short-cycle radius R used by the analysis block.
    std::optional<std::size_t> analysis_radius;
};

struct ExperimentConfig {
    std::size_t n = 1000;
    /// p = c / n.
    double c = 10.0;
    std::vector<std::uint64_t> seeds{1};
    Mode mode = Mode::desk;
    Overrides overrides;
    bool run_analysis = false;
    /// Guide the aux DFS by a seed-shuffled order instead of ascending ids.
    bool shuffle_dfs = false;
    std::size_t worker_count = 1;

    std::string out_csv;
    std::string out_json;
    /// Directory for cycle/graph/sprinkle files of every trial (empty: none).
    std::string emit_cycle_dir;
    /// Directory for base-graph dumps (empty: none).
    std::string dump_graph_dir;
    /// Run on this graph instead of sampling one (n is taken from the file).
    std::string load_graph;
    bool include_timings = true;
};

/// Parameters after applying mode defaults and overrides.
struct ResolvedParams {
    std::size_t z_threshold = 3;
    std::size_t path_reach = 4;
    std::size_t path_size = 0;
    std::size_t anchor_len = 0;
    double sprinkle_gamma = 1.0;
    double sprinkle_p = 0.0;
    std::size_t short_cycle_threshold = 2;
    double percolation_fraction = 0.9;
    bool halt_on_percolation = false;
    std::size_t analysis_radius = 3;
};

/// Throws BadParameters on n < 2, c <= 0, c > n, empty seeds or out-of-range overrides.
void validate_config(const ExperimentConfig& cfg);

/// Paper mode: z=3, reach=4, path_size=ceil((ln n)^0.9), anchor=floor((ln n)^0.8),
/// p1 = 1/(n sqrt(ln n)), short threshold ceil(log_c(n) / 2), no early halt.
/// Desk mode: path_size=max(6, ceil((ln n)^0.9)), anchor=max(1, floor(path_size/4)), gamma=8,
/// halt the cascade once it percolates.
ResolvedParams resolve_params(const ExperimentConfig& cfg);

struct WitnessStats {
    std::size_t attempted = 0;
    std::size_t extracted = 0;
    std::size_t girth_violations = 0;
    std::size_t leaf_range_failures = 0;
    std::size_t size_failures = 0;
    std::size_t level_failures = 0;
    std::size_t leaf_seed_failures = 0;
    /// Level failures whose root is itself a seed vertex.
    std::size_t level_failures_seed_root = 0;
    std::size_t max_levels = 0;
    std::size_t max_leaves = 0;

    std::size_t bound_failures() const {
        return leaf_range_failures + size_failures + level_failures + leaf_seed_failures;
    }
};

struct AnalysisRecord {
    std::size_t radius = 0;
    std::size_t short_cycle_count = 0;
    bool cost_warning = false;
    std::size_t pruned_removed_edges = 0;
    std::size_t z_prime_size = 0;
    std::size_t x_prime_size = 0;
    std::vector<std::size_t> x_prime_layer_sizes;
    bool containment = false;
    WitnessStats witness;
    LevelStats levels;
};

struct TrialRecord {
    std::uint64_t seed = 0;
    std::size_t n = 0;
    double c = 0.0;
    Mode mode = Mode::desk;
    ResolvedParams params;

    std::size_t arc_count = 0;
    std::size_t y_size = 0;
    std::size_t z_size = 0;
    std::size_t x_size = 0;
    std::size_t filtered = 0;  // |X u Y|
    std::vector<std::size_t> layer_sizes;
    std::size_t d0_size = 0;
    std::size_t d0_arcs = 0;
    std::size_t violations_min_degree = 0;
    std::size_t violations_distance = 0;
    std::size_t matching_size = 0;
    std::size_t trim_dropped = 0;
    std::size_t trim_rounds = 0;
    std::size_t factor_covered = 0;
    std::size_t factor_cycles = 0;
    std::map<std::size_t, std::size_t> factor_histogram;
    std::size_t short_cycle_removed = 0;
    std::size_t path_count = 0;
    std::size_t chop_leftover = 0;
    std::size_t sprinkle_arcs = 0;
    std::size_t aux_arcs = 0;
    std::size_t aux_path_length = 0;
    std::size_t aux_cycle_length = 0;
    std::size_t final_length = 0;
    std::size_t anchor_skipped = 0;
    std::size_t unused_path_vertices = 0;
    /// Vertices still in play when a flagged failure stopped the pipeline.
    std::size_t unstitched = 0;
    std::size_t uncovered = 0;

    bool percolated = false;
    bool halted = false;
    bool empty_d0 = false;
    bool empty_factor = false;
    bool bad_parameters = false;
    bool no_closing_arc = false;
    bool certificate_valid = false;
    std::string validation_reason;

    std::map<std::string, double> timings;
    std::optional<AnalysisRecord> analysis;

    /// Kept in memory for --emit-cycle; not serialised into the record.
    std::shared_ptr<const Digraph> graph;
    std::optional<CycleCertificate> certificate;
    SprinkleEdges parent_sprinkle;
};

/// n = |X u Y| + |D0|, |D0| = every downstream loss + final length, uncovered = n - final.
bool reconciles(const TrialRecord& r);

/// Full pipeline for one seed; failures become flags, never exceptions.
TrialRecord run_trial(const ExperimentConfig& cfg, std::uint64_t seed);
TrialRecord run_trial_on_graph(const ExperimentConfig& cfg, std::uint64_t seed, std::shared_ptr<const Digraph> graph);

struct FieldSummary {
    double mean = 0.0;
    double stddev = 0.0;
    double min = 0.0;
    double max = 0.0;
};

struct SummaryRow {
    std::size_t n = 0;
    double c = 0.0;
    std::size_t trials = 0;
    std::map<std::string, FieldSummary> fields;
    /// 2 e^{-c} n.
    double y_asymptotic = 0.0;
    /// (2a - a^2) n, a = (1 - p)^(n - 1).
    double y_exact = 0.0;
    /// (2q - q^2) n, q = P(Bin(n - 1, p) <= 3).
    double z_exact = 0.0;
    /// (2c)^10 e^{-2c} n.
    double x_bound = 0.0;
};

using SummaryTable = std::vector<SummaryRow>;

SummaryTable summarize(const std::vector<TrialRecord>& records);

struct ExperimentResult {
    std::vector<TrialRecord> records;
    SummaryTable summary;
};

/// Trials run on up to worker_count threads; records come back in ascending seed order.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// P(Bin(trials, p) <= k).
double binomial_cdf(std::size_t trials, double p, std::size_t k);

/// CSV column names in their frozen order.
const std::vector<std::string>& csv_columns(bool include_timings);
std::string csv_row(const TrialRecord& r, bool include_timings);

nlohmann::json to_json(const TrialRecord& r, bool include_timings);
nlohmann::json to_json(const SummaryRow& row);
nlohmann::json to_json(const ExperimentConfig& cfg);
nlohmann::json to_json(const StructureReport& report);
nlohmann::json to_json(const CycleFactor& factor);
nlohmann::json to_json(const LevelStats& stats);

/// Writes CSV / JSON / per-trial certificate files according to cfg.
void write_outputs(const std::vector<TrialRecord>& records, const SummaryTable& summary, const ExperimentConfig& cfg);

/// Grid sweep description: every (n, c) pair is run with the shared base config.
struct SweepConfig {
    std::vector<std::size_t> n_values;
    std::vector<double> c_values;
    ExperimentConfig base;
};

/// Accepts "key = value" lines (comma-separated lists, # comments) or a JSON object.
SweepConfig parse_sweep_config(const std::string& text);

ExperimentResult run_sweep(const SweepConfig& sweep);

}  // namespace longcycle
