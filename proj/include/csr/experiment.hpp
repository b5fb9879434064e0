#pragma once

#include "csr/bandit.hpp"
#include "csr/channel.hpp"
#include "csr/scenario.hpp"
#include "csr/txop.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace csr {

enum class SchedulerKind { hierarchical, flat, single, static_k };

std::string_view to_string(SchedulerKind k);
SchedulerKind parse_scheduler(std::string_view name);

/// Where a run's ScenarioScript comes from.
struct ScenarioSource {
    enum class Kind { square, random, script };

    struct Square {
        double d = 10.0;
        std::size_t txops = 2000;
        std::optional<double> post_move_offset;
        std::optional<std::vector<Wall>> walls; // default layout when unset
    };

    Kind kind = Kind::square;
    Square square;
    RandomScenarioSpec random;
    std::optional<ScenarioScript> script;

    std::size_t txops() const;
    /// Builds the script; only random sources consume `rng`.
    ScenarioScript build(Rng& rng) const;
};

struct ExperimentConfig {
    std::string label = "run";
    ScenarioSource scenario;
    SchedulerKind scheduler = SchedulerKind::hierarchical;
    std::size_t static_k = 1;
    Hyperparams theta;
    ChannelParams channel;
    TxopConfig txop;
    McsTable mcs_table = McsTable::default_table();
    std::vector<std::uint64_t> seeds{0};
    std::size_t smoothing_window = 50;
    double ci_level = 0.99;
    /// Worker threads for independent seeds; 0 means hardware concurrency.
    unsigned threads = 0;

    /// Throws std::invalid_argument describing the first problem found.
    void require_valid() const;
    /// Hyperparameters with the reward scale resolved.
    Hyperparams resolved_theta() const;
};

struct RunTrace {
    std::uint64_t seed = 0;
    std::vector<double> rate_bps;                          // per TXOP
    std::vector<std::vector<std::uint32_t>> recipients;    // station ids per TXOP
    std::map<std::uint32_t, std::uint64_t> participation;  // station id -> TXOPs served
    std::map<std::uint32_t, std::uint32_t> station_owner;  // station id -> AP id

    double mean_rate() const;
};

/// One seed of an experiment.
RunTrace simulate_run(const ExperimentConfig& cfg, std::uint64_t seed);
/// All seeds, in seed-list order. Runs execute on worker threads.
std::vector<RunTrace> run_experiment(const ExperimentConfig& cfg);

struct Aggregate {
    std::vector<double> mean;        // per TXOP, after smoothing
    std::vector<double> half_width;  // per TXOP CI half-width, after smoothing
    double overall_mean = 0.0;       // mean of the unsmoothed per-TXOP means
    std::size_t runs = 0;
    double ci_level = 0.99;
    std::size_t smoothing_window = 1;
    double txop_duration_s = 5.484e-3;
};

/// Student-t two-sided critical value for `level` with `dof` degrees of freedom.
double student_t_critical(double level, std::size_t dof);

/// Trailing moving average: element t averages the last min(window, t+1) values.
std::vector<double> moving_average(const std::vector<double>& xs, std::size_t window);

Aggregate aggregate(const std::vector<std::vector<double>>& series, double ci_level,
                    std::size_t smoothing_window = 1, double txop_duration_s = 5.484e-3);
Aggregate aggregate(const std::vector<RunTrace>& traces, double ci_level, std::size_t smoothing_window = 1,
                    double txop_duration_s = 5.484e-3);

struct StationShare {
    std::uint32_t station;
    std::uint32_t ap;
    double share; // mean fraction of TXOPs in which the station was served
};

struct FairnessReport {
    std::vector<StationShare> stations;
    std::map<std::uint32_t, double> ap_share;
    double ideal_single_tx_share = 0.0;
};

FairnessReport fairness_report(const std::vector<RunTrace>& traces);

struct ParamRange {
    double lo;
    double hi;
    bool log_scale = false;
};

struct TuneSpec {
    Algorithm algorithm = Algorithm::ucb;
    /// Base configuration: scheduler, channel, TXOP settings and the
    /// scenario source used for evaluation.
    ExperimentConfig base;
    /// Number of scenarios drawn per evaluation (random sources only).
    std::size_t scenarios = 8;
    std::vector<std::uint64_t> eval_seeds{1000, 1001};
    /// Hyperparameter name -> sampling range. Unlisted fields keep the base value.
    std::map<std::string, ParamRange> ranges;

    static std::map<std::string, ParamRange> default_ranges(Algorithm a);
};

struct TuneTrial {
    Hyperparams theta;
    double score_bps;
};

struct TuneResult {
    Hyperparams best;
    double best_score_bps = 0.0;
    std::vector<TuneTrial> trials;
};

/// Random search: `budget` draws from the ranges, each scored by the mean
/// effective rate over the fixed evaluation scenarios and seeds.
TuneResult tune(const TuneSpec& spec, std::size_t budget, Rng& rng);
double evaluate_hyperparams(const TuneSpec& spec, const Hyperparams& theta);

/// Reads/writes a named hyperparameter field.
double get_param(const Hyperparams& theta, const std::string& name);
void set_param(Hyperparams& theta, const std::string& name, double value);

// CSV output. Floating values are printed with 17 significant digits so
// they read back bit-exactly.
void write_trace_csv(const RunTrace& trace, double txop_duration_s, const std::filesystem::path& path);
RunTrace read_trace_csv(const std::filesystem::path& path);
void write_aggregate_csv(const Aggregate& agg, const std::filesystem::path& path);

struct AggregateRow {
    std::size_t txop;
    double sim_time_s;
    double mean_rate;
    double ci_lo;
    double ci_hi;
};
std::vector<AggregateRow> read_aggregate_csv(const std::filesystem::path& path);

struct SummaryRow {
    std::string label;
    std::string scheduler;
    std::string algorithm;
    std::size_t runs;
    double mean_rate_bps;
    double ci_half_width_bps;
};
/// Published average-rate reference (Mb/s) for a scheduler/algorithm, if any.
std::optional<double> reference_rate_mbps(std::string_view scheduler, std::string_view algorithm);
void write_summary_csv(const std::vector<SummaryRow>& rows, const std::filesystem::path& path);
void write_fairness_csv(const FairnessReport& report, const std::filesystem::path& path);
void write_tuning_report(const TuneSpec& spec, const TuneResult& result, const std::filesystem::path& path);

/// Summary row for one experiment (CI across per-run means).
SummaryRow summarize(const ExperimentConfig& cfg, const std::vector<RunTrace>& traces);

} // namespace csr
