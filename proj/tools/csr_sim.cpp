// Command-line front end: run / tune / sweep-d / report.

#include "csr/config.hpp"
#include "csr/experiment.hpp"
#include "csr/scenario.hpp"
#include "csr/scheduler.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <regex>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void write_json(const json& j, const fs::path& path)
{
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << j.dump(2) << '\n';
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
}

struct RunOptions {
    fs::path config;
    std::optional<std::size_t> seed_count;
    std::vector<std::uint64_t> seed_list;
    fs::path out_dir = "out";
    unsigned threads = 0;
    std::string scheduler;
    fs::path agent;
    std::string label;
};

int cmd_run(const RunOptions& opt)
{
    csr::ExperimentConfig cfg = csr::load_experiment_config(opt.config);
    if (!opt.seed_list.empty()) {
        cfg.seeds = opt.seed_list;
    } else if (opt.seed_count) {
        cfg.seeds.clear();
        for (std::size_t i = 0; i < *opt.seed_count; ++i) {
            cfg.seeds.push_back(i);
        }
    }
    if (opt.threads) {
        cfg.threads = opt.threads;
    }
    if (!opt.scheduler.empty()) {
        cfg.scheduler = csr::parse_scheduler(opt.scheduler);
    }
    if (!opt.agent.empty()) {
        // Accepts a bare hyperparameter object or a tuner output {"agent": {...}, ...}.
        const json j = csr::load_json(opt.agent);
        cfg.theta = csr::hyperparams_from_json(j.contains("agent") ? j.at("agent") : j);
    }
    if (!opt.label.empty()) {
        cfg.label = opt.label;
    }
    cfg.require_valid();
    const fs::path& out_dir = opt.out_dir;

    const auto traces = csr::run_experiment(cfg);
    fs::create_directories(out_dir);
    for (const auto& t : traces) {
        csr::write_trace_csv(t, cfg.txop.duration_s, out_dir / ("trace_" + std::to_string(t.seed) + ".csv"));
    }
    if (traces.size() >= 2) {
        csr::write_aggregate_csv(csr::aggregate(traces, cfg.ci_level, cfg.smoothing_window, cfg.txop.duration_s),
                                 out_dir / "aggregate.csv");
    } else {
        std::cerr << "note: aggregate.csv needs at least two seeds; skipped\n";
    }
    const auto row = csr::summarize(cfg, traces);
    csr::write_summary_csv({row}, out_dir / "summary.csv");
    csr::write_fairness_csv(csr::fairness_report(traces), out_dir / "fairness.csv");

    json meta = csr::to_json(cfg);
    meta["algorithm_label"] = row.algorithm;
    write_json(meta, out_dir / "run_metadata.json");

    std::printf("%s: %zu runs, mean effective rate %.2f Mb/s (+/- %.2f)\n", cfg.label.c_str(), row.runs,
                row.mean_rate_bps / 1e6, row.ci_half_width_bps / 1e6);
    return 0;
}

int cmd_tune(std::size_t budget, const std::string& algo, const std::string& scheduler, const fs::path& config,
             std::uint64_t seed, const fs::path& out_dir)
{
    const auto algorithm = csr::parse_algorithm(algo);
    csr::TuneSpec spec;
    if (!config.empty()) {
        spec = csr::tune_spec_from_json(csr::load_json(config), algorithm, config.parent_path());
    } else {
        spec.algorithm = algorithm;
        spec.base.scenario.kind = csr::ScenarioSource::Kind::random;
        spec.base.theta.algorithm = algorithm;
    }
    if (!scheduler.empty()) {
        spec.base.scheduler = csr::parse_scheduler(scheduler);
    }
    csr::Rng rng(seed);
    const auto result = csr::tune(spec, budget, rng);

    fs::create_directories(out_dir);
    csr::write_tuning_report(spec, result, out_dir / "tuning_report.csv");
    json best = csr::to_json(result.best);
    best.erase("reward_scale");
    write_json(json{{"agent", best}, {"score_mbps", result.best_score_bps / 1e6}},
               out_dir / ("best_" + std::string(csr::to_string(algorithm)) + ".json"));
    std::printf("best %s score %.2f Mb/s: %s\n", algo.c_str(), result.best_score_bps / 1e6, best.dump().c_str());
    return 0;
}

int cmd_sweep(double d_min, double d_max, double step, std::size_t samples, std::uint64_t seed,
              const fs::path& config, const fs::path& out_dir)
{
    if (!(step > 0.0) || d_max < d_min) {
        throw std::invalid_argument("sweep-d needs d-min <= d-max and a positive step");
    }
    csr::ExperimentConfig cfg;
    if (!config.empty()) {
        cfg = csr::load_experiment_config(config);
    }
    fs::create_directories(out_dir);
    const fs::path path = out_dir / "sweep_d.csv";
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << "d_m,best_k,rate_k1_bps,rate_k2_bps,rate_k3_bps,rate_k4_bps\n";
    const auto steps = static_cast<std::size_t>(std::floor((d_max - d_min) / step + 1e-9));
    for (std::size_t i = 0; i <= steps; ++i) {
        const double d = d_min + static_cast<double>(i) * step;
        const auto topo = csr::square_scenario(d, 2.0);
        csr::Rng rng(csr::Rng::derive_seed(seed, i));
        const auto r = csr::oracle_best(topo, cfg.channel, cfg.mcs_table, cfg.txop, samples, rng);
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", d);
        out << buf << ',' << r.best_k;
        for (double v : r.mean_rate_bps) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out << ',' << buf;
        }
        out << '\n';
        std::printf("d=%6.2f m  best k=%zu  (", d, r.best_k);
        for (std::size_t k = 0; k < r.mean_rate_bps.size(); ++k) {
            std::printf("%s%.1f", k ? ", " : "", r.mean_rate_bps[k] / 1e6);
        }
        std::printf(") Mb/s\n");
    }
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    return 0;
}

int cmd_report(const std::vector<fs::path>& inputs, const fs::path& out_dir, std::optional<double> ci_override,
               std::optional<std::size_t> window_override)
{
    static const std::regex trace_name(R"(trace_(\d+)\.csv)");
    std::map<std::string, std::vector<csr::SummaryRow>> by_label;
    std::vector<std::string> label_order;
    fs::create_directories(out_dir);

    for (const auto& dir : inputs) {
        json meta = json::object();
        if (fs::exists(dir / "run_metadata.json")) {
            meta = csr::load_json(dir / "run_metadata.json");
        }
        const double ci = ci_override.value_or(meta.value("ci_level", 0.99));
        const std::size_t window = window_override.value_or(meta.value("smoothing_window", std::size_t{50}));
        const double tau = meta.contains("txop") ? meta["txop"].value("duration_s", 5.484e-3) : 5.484e-3;

        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(dir)) {
            if (std::regex_match(entry.path().filename().string(), trace_name)) {
                files.push_back(entry.path());
            }
        }
        std::sort(files.begin(), files.end());
        std::vector<csr::RunTrace> traces;
        for (const auto& f : files) {
            traces.push_back(csr::read_trace_csv(f));
        }
        if (traces.empty()) {
            throw std::invalid_argument("no trace_<seed>.csv files in " + dir.string());
        }

        const std::string stem = inputs.size() == 1 ? "" : "_" + dir.filename().string();
        if (traces.size() >= 2) {
            csr::write_aggregate_csv(csr::aggregate(traces, ci, window, tau), out_dir / ("aggregate" + stem + ".csv"));
        }
        csr::write_fairness_csv(csr::fairness_report(traces), out_dir / ("fairness" + stem + ".csv"));

        csr::ExperimentConfig cfg;
        cfg.ci_level = ci;
        cfg.label = meta.value("label", dir.filename().string());
        if (meta.contains("scheduler")) {
            cfg.scheduler = csr::parse_scheduler(meta["scheduler"].value("kind", "hierarchical"));
        }
        if (meta.contains("agent")) {
            cfg.theta.algorithm = csr::parse_algorithm(meta["agent"].value("algorithm", "ucb"));
        }
        if (!by_label.contains(cfg.label)) {
            label_order.push_back(cfg.label);
        }
        by_label[cfg.label].push_back(csr::summarize(cfg, traces));
    }

    // Rows sharing a label (e.g. one algorithm over several scenarios) are
    // averaged into one summary line.
    std::vector<csr::SummaryRow> rows;
    for (const auto& label : label_order) {
        const auto& group = by_label[label];
        csr::SummaryRow row = group.front();
        row.runs = 0;
        row.mean_rate_bps = 0.0;
        row.ci_half_width_bps = 0.0;
        for (const auto& g : group) {
            row.runs += g.runs;
            row.mean_rate_bps += g.mean_rate_bps / static_cast<double>(group.size());
            row.ci_half_width_bps += g.ci_half_width_bps / static_cast<double>(group.size());
        }
        rows.push_back(row);
        std::printf("%-24s %8.2f Mb/s over %zu run(s)\n", label.c_str(), row.mean_rate_bps / 1e6, row.runs);
    }
    csr::write_summary_csv(rows, out_dir / "summary.csv");
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Coordinated spatial reuse group-selection simulator"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Run an experiment over one or more seeds");
    RunOptions run_opt;
    run->add_option("--config", run_opt.config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
    auto* seeds_opt = run->add_option("--seeds", run_opt.seed_count, "Use seeds 0..N-1");
    run->add_option("--seed-list", run_opt.seed_list, "Explicit seeds")->delimiter(',')->excludes(seeds_opt);
    run->add_option("--out", run_opt.out_dir, "Output directory");
    run->add_option("--threads", run_opt.threads, "Worker threads (0 = all cores)");
    run->add_option("--scheduler", run_opt.scheduler, "Override: hierarchical | flat | single | static");
    run->add_option("--agent", run_opt.agent, "Hyperparameter file replacing the config's agent section")
        ->check(CLI::ExistingFile);
    run->add_option("--label", run_opt.label, "Override the run label");

    auto* tune = app.add_subcommand("tune", "Random-search hyperparameters for one algorithm");
    std::size_t budget = 20;
    std::string algo = "ucb", tune_sched;
    fs::path tune_config, tune_out = "tuning";
    std::uint64_t tune_seed = 0;
    tune->add_option("--budget", budget, "Number of sampled configurations")->check(CLI::PositiveNumber);
    tune->add_option("--algo", algo, "egreedy | softmax | ucb | ts");
    tune->add_option("--scheduler", tune_sched, "hierarchical | flat");
    tune->add_option("--config", tune_config, "Tuning spec (JSON)")->check(CLI::ExistingFile);
    tune->add_option("--seed", tune_seed, "Search seed");
    tune->add_option("--out", tune_out, "Output directory");

    auto* sweep = app.add_subcommand("sweep-d", "Best static coordination level versus square side");
    double d_min = 5.0, d_max = 40.0, step = 1.0;
    std::size_t samples = 2000;
    std::uint64_t sweep_seed = 0;
    fs::path sweep_config, sweep_out = "sweep";
    sweep->add_option("--d-min", d_min);
    sweep->add_option("--d-max", d_max);
    sweep->add_option("--step", step);
    sweep->add_option("--samples", samples, "TXOPs per (d, k)")->check(CLI::PositiveNumber);
    sweep->add_option("--seed", sweep_seed);
    sweep->add_option("--config", sweep_config, "Experiment config for channel/TXOP overrides")
        ->check(CLI::ExistingFile);
    sweep->add_option("--out", sweep_out, "Output directory");

    auto* report = app.add_subcommand("report", "Aggregate existing trace directories");
    std::vector<fs::path> report_in;
    fs::path report_out = "report";
    std::optional<double> report_ci;
    std::optional<std::size_t> report_window;
    report->add_option("--in", report_in, "Run output directories")->required()->check(CLI::ExistingDirectory);
    report->add_option("--out", report_out, "Output directory");
    report->add_option("--ci-level", report_ci, "Override confidence level");
    report->add_option("--smoothing", report_window, "Override smoothing window");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            return cmd_run(run_opt);
        }
        if (*tune) {
            return cmd_tune(budget, algo, tune_sched, tune_config, tune_seed, tune_out);
        }
        if (*sweep) {
            return cmd_sweep(d_min, d_max, step, samples, sweep_seed, sweep_config, sweep_out);
        }
        if (*report) {
            return cmd_report(report_in, report_out, report_ci, report_window);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
