#include "csr/experiment.hpp"

#include "csr/scheduler.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <variant>

namespace csr {

std::string_view to_string(SchedulerKind k)
{
    switch (k) {
    case SchedulerKind::hierarchical: return "hierarchical";
    case SchedulerKind::flat: return "flat";
    case SchedulerKind::single: return "single";
    case SchedulerKind::static_k: return "static";
    }
    return "unknown";
}

SchedulerKind parse_scheduler(std::string_view name)
{
    if (name == "hierarchical") return SchedulerKind::hierarchical;
    if (name == "flat") return SchedulerKind::flat;
    if (name == "single") return SchedulerKind::single;
    if (name == "static") return SchedulerKind::static_k;
    throw std::invalid_argument("unknown scheduler kind: " + std::string(name));
}

std::size_t ScenarioSource::txops() const
{
    switch (kind) {
    case Kind::square: return square.txops;
    case Kind::random: return random.total_txops;
    case Kind::script: return script ? script->total_txops : 0;
    }
    return 0;
}

ScenarioScript ScenarioSource::build(Rng& rng) const
{
    switch (kind) {
    case Kind::square:
        return square.walls ? square_script(square.d, square.txops, square.post_move_offset, *square.walls)
                            : square_script(square.d, square.txops, square.post_move_offset);
    case Kind::random:
        return random_scenario(random, rng);
    case Kind::script:
        if (!script) {
            throw std::invalid_argument("scripted scenario source without a script");
        }
        return *script;
    }
    throw std::logic_error("unhandled scenario kind");
}

void ExperimentConfig::require_valid() const
{
    if (seeds.empty()) {
        throw std::invalid_argument("experiment needs at least one seed");
    }
    if (scenario.txops() == 0) {
        throw std::invalid_argument("experiment needs a positive TXOP count");
    }
    if (!(ci_level > 0.0 && ci_level < 1.0)) {
        throw std::invalid_argument("confidence level must lie in (0, 1)");
    }
    if (smoothing_window == 0) {
        throw std::invalid_argument("smoothing window must be at least 1");
    }
    channel.require_valid();
    txop.require_valid();
    mcs_table.require_valid();
    mcs_table.data_rate(txop.mcs_key());
    mcs_table.curve(txop.mcs);
    theta.require_valid();
    switch (scenario.kind) {
    case ScenarioSource::Kind::square:
        if (!(scenario.square.d > 0.0)) {
            throw std::invalid_argument("square side must be positive");
        }
        if (scenario.square.post_move_offset && !(*scenario.square.post_move_offset > 0.0)) {
            throw std::invalid_argument("relocation offset must be positive");
        }
        break;
    case ScenarioSource::Kind::random:
        scenario.random.require_valid();
        break;
    case ScenarioSource::Kind::script:
        if (!scenario.script) {
            throw std::invalid_argument("scripted scenario source without a script");
        }
        scenario.script->require_valid();
        break;
    }
    if (scheduler == SchedulerKind::static_k) {
        if (scenario.kind != ScenarioSource::Kind::square) {
            throw std::invalid_argument("static strategy requires the square scenario");
        }
        if (static_k < 1 || static_k > 4) {
            throw std::invalid_argument("static strategy k must lie in [1, 4]");
        }
    }
}

Hyperparams ExperimentConfig::resolved_theta() const
{
    Hyperparams t = theta;
    if (!(t.reward_scale > 0.0)) {
        t.reward_scale = max_single_link_rate(mcs_table, txop);
    }
    return t;
}

double RunTrace::mean_rate() const
{
    if (rate_bps.empty()) {
        return 0.0;
    }
    return std::accumulate(rate_bps.begin(), rate_bps.end(), 0.0) / static_cast<double>(rate_bps.size());
}

namespace {

using Policy = std::variant<HierarchicalScheduler, FlatScheduler, std::monostate>;

Policy make_policy(const ExperimentConfig& cfg, const Topology& topo)
{
    switch (cfg.scheduler) {
    case SchedulerKind::hierarchical: return HierarchicalScheduler(topo, cfg.resolved_theta());
    case SchedulerKind::flat: return FlatScheduler(topo, cfg.resolved_theta());
    default: return std::monostate{};
    }
}

} // namespace

RunTrace simulate_run(const ExperimentConfig& cfg, std::uint64_t seed)
{
    Rng scenario_rng = Rng::for_stream(seed, Stream::scenario);
    Rng p0_rng = Rng::for_stream(seed, Stream::sharing_ap);
    Rng agent_rng = Rng::for_stream(seed, Stream::agents);
    Rng noise_rng = Rng::for_stream(seed, Stream::channel_noise);
    Rng rx_rng = Rng::for_stream(seed, Stream::reception);

    const ScenarioScript script = cfg.scenario.build(scenario_rng);
    script.require_valid();

    RunTrace trace;
    trace.seed = seed;
    trace.rate_bps.reserve(script.total_txops);
    trace.recipients.reserve(script.total_txops);
    for (const auto& s : script.initial.stations()) {
        trace.participation[to_int(s.id)] = 0;
        trace.station_owner[to_int(s.id)] = to_int(s.ap);
    }

    Policy policy = make_policy(cfg, script.initial);
    const Topology* topo = &script.initial;
    std::optional<TransmissionSet> fixed;
    auto refresh_fixed = [&] {
        if (cfg.scheduler == SchedulerKind::static_k) {
            fixed = static_strategy(*topo, cfg.static_k);
        }
    };
    refresh_fixed();

    auto next_event = script.events.begin();
    for (std::size_t t = 0; t < script.total_txops; ++t) {
        if (next_event != script.events.end() && next_event->txop == t) {
            topo = &next_event->topology;
            ++next_event;
            refresh_fixed();
        }
        const Pair p0 = draw_p0(*topo, p0_rng);

        TxopResult result;
        if (auto* h = std::get_if<HierarchicalScheduler>(&policy)) {
            auto sel = h->select(p0, agent_rng);
            result = simulate_txop(sel.set, *topo, cfg.channel, cfg.mcs_table, cfg.txop, noise_rng, rx_rng);
            h->update(sel.decision, result.effective_rate_bps);
        } else if (auto* f = std::get_if<FlatScheduler>(&policy)) {
            auto sel = f->select(p0, agent_rng);
            result = simulate_txop(sel.set, *topo, cfg.channel, cfg.mcs_table, cfg.txop, noise_rng, rx_rng);
            f->update(sel.decision, result.effective_rate_bps);
        } else {
            const TransmissionSet set = fixed ? *fixed : single_tx(p0);
            result = simulate_txop(set, *topo, cfg.channel, cfg.mcs_table, cfg.txop, noise_rng, rx_rng);
        }

        trace.rate_bps.push_back(result.effective_rate_bps);
        std::vector<std::uint32_t> served;
        for (const auto& link : result.links) {
            served.push_back(to_int(link.pair.station));
            ++trace.participation[to_int(link.pair.station)];
        }
        trace.recipients.push_back(std::move(served));
    }
    return trace;
}

std::vector<RunTrace> run_experiment(const ExperimentConfig& cfg)
{
    cfg.require_valid();
    std::vector<RunTrace> out(cfg.seeds.size());
    unsigned workers = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(cfg.seeds.size()));

    if (workers <= 1) {
        for (std::size_t i = 0; i < cfg.seeds.size(); ++i) {
            out[i] = simulate_run(cfg, cfg.seeds[i]);
        }
        return out;
    }

    std::size_t next = 0;
    std::mutex mu;
    std::exception_ptr failure;
    auto work = [&] {
        while (true) {
            std::size_t i;
            {
                std::lock_guard lock(mu);
                if (next >= cfg.seeds.size() || failure) {
                    return;
                }
                i = next++;
            }
            try {
                out[i] = simulate_run(cfg, cfg.seeds[i]);
            } catch (...) {
                std::lock_guard lock(mu);
                failure = std::current_exception();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return out;
}

double student_t_critical(double level, std::size_t dof)
{
    if (dof == 0) {
        throw std::invalid_argument("Student-t needs at least one degree of freedom");
    }
    boost::math::students_t_distribution<double> dist(static_cast<double>(dof));
    return boost::math::quantile(dist, 0.5 + level / 2.0);
}

std::vector<double> moving_average(const std::vector<double>& xs, std::size_t window)
{
    if (window <= 1) {
        return xs;
    }
    std::vector<double> out(xs.size());
    double acc = 0.0;
    for (std::size_t t = 0; t < xs.size(); ++t) {
        acc += xs[t];
        if (t >= window) {
            acc -= xs[t - window];
        }
        out[t] = acc / static_cast<double>(std::min(window, t + 1));
    }
    return out;
}

Aggregate aggregate(const std::vector<std::vector<double>>& series, double ci_level, std::size_t smoothing_window,
                    double txop_duration_s)
{
    Aggregate agg;
    agg.ci_level = ci_level;
    agg.smoothing_window = std::max<std::size_t>(1, smoothing_window);
    agg.txop_duration_s = txop_duration_s;
    agg.runs = series.size();
    if (series.empty()) {
        return agg;
    }
    if (series.size() < 2) {
        throw std::invalid_argument("aggregation needs at least two runs");
    }
    const std::size_t len = series.front().size();
    for (const auto& s : series) {
        if (s.size() != len) {
            throw std::invalid_argument("traces have mismatched lengths");
        }
    }

    const double n = static_cast<double>(series.size());
    const double tcrit = student_t_critical(ci_level, series.size() - 1);

    std::vector<double> raw_mean(len, 0.0);
    for (const auto& s : series) {
        for (std::size_t t = 0; t < len; ++t) {
            raw_mean[t] += s[t] / n;
        }
    }
    agg.overall_mean = len ? std::accumulate(raw_mean.begin(), raw_mean.end(), 0.0) / static_cast<double>(len) : 0.0;

    std::vector<std::vector<double>> smoothed;
    smoothed.reserve(series.size());
    for (const auto& s : series) {
        smoothed.push_back(moving_average(s, agg.smoothing_window));
    }
    agg.mean.assign(len, 0.0);
    agg.half_width.assign(len, 0.0);
    for (std::size_t t = 0; t < len; ++t) {
        double m = 0.0;
        for (const auto& s : smoothed) {
            m += s[t];
        }
        m /= n;
        double ss = 0.0;
        for (const auto& s : smoothed) {
            ss += (s[t] - m) * (s[t] - m);
        }
        agg.mean[t] = m;
        agg.half_width[t] = tcrit * std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    }
    return agg;
}

Aggregate aggregate(const std::vector<RunTrace>& traces, double ci_level, std::size_t smoothing_window,
                    double txop_duration_s)
{
    std::vector<std::vector<double>> series;
    series.reserve(traces.size());
    for (const auto& t : traces) {
        series.push_back(t.rate_bps);
    }
    return aggregate(series, ci_level, smoothing_window, txop_duration_s);
}

FairnessReport fairness_report(const std::vector<RunTrace>& traces)
{
    FairnessReport report;
    std::map<std::uint32_t, std::pair<double, std::size_t>> acc;
    std::map<std::uint32_t, std::uint32_t> owner;
    double ideal = 0.0;
    for (const auto& t : traces) {
        const double len = static_cast<double>(t.rate_bps.size());
        if (len == 0.0) {
            continue;
        }
        for (const auto& [station, count] : t.participation) {
            auto& [sum, runs] = acc[station];
            sum += static_cast<double>(count) / len;
            ++runs;
        }
        for (const auto& [station, ap] : t.station_owner) {
            owner[station] = ap;
        }
        ideal += t.participation.empty() ? 0.0 : 1.0 / static_cast<double>(t.participation.size());
    }
    for (const auto& [station, v] : acc) {
        const double share = v.first / static_cast<double>(v.second);
        const std::uint32_t ap = owner.contains(station) ? owner[station] : 0;
        report.stations.push_back({station, ap, share});
        report.ap_share[ap] += share;
    }
    report.ideal_single_tx_share = traces.empty() ? 0.0 : ideal / static_cast<double>(traces.size());
    return report;
}

std::map<std::string, ParamRange> TuneSpec::default_ranges(Algorithm a)
{
    std::map<std::string, ParamRange> r{{"gamma", {0.9, 1.0, false}}};
    switch (a) {
    case Algorithm::epsilon_greedy:
        r["epsilon"] = {0.001, 0.5, true};
        r["epsilon_decay"] = {0.9, 1.0, false};
        break;
    case Algorithm::softmax:
        r["temperature"] = {0.005, 1.0, true};
        break;
    case Algorithm::ucb:
        r["ucb_c"] = {0.005, 2.0, true};
        break;
    case Algorithm::thompson:
        r["ts_prior_mean"] = {0.0, 2.0, false};
        r["ts_prior_var"] = {0.01, 10.0, true};
        r["ts_obs_var"] = {0.001, 1.0, true};
        break;
    }
    return r;
}

double get_param(const Hyperparams& t, const std::string& name)
{
    if (name == "epsilon") return t.epsilon;
    if (name == "epsilon_decay") return t.epsilon_decay;
    if (name == "temperature") return t.temperature;
    if (name == "ucb_c") return t.ucb_c;
    if (name == "ts_prior_mean") return t.ts_prior_mean;
    if (name == "ts_prior_var") return t.ts_prior_var;
    if (name == "ts_obs_var") return t.ts_obs_var;
    if (name == "gamma") return t.gamma;
    if (name == "reward_scale") return t.reward_scale;
    throw std::invalid_argument("unknown hyperparameter: " + name);
}

void set_param(Hyperparams& t, const std::string& name, double value)
{
    if (name == "epsilon") t.epsilon = value;
    else if (name == "epsilon_decay") t.epsilon_decay = value;
    else if (name == "temperature") t.temperature = value;
    else if (name == "ucb_c") t.ucb_c = value;
    else if (name == "ts_prior_mean") t.ts_prior_mean = value;
    else if (name == "ts_prior_var") t.ts_prior_var = value;
    else if (name == "ts_obs_var") t.ts_obs_var = value;
    else if (name == "gamma") t.gamma = value;
    else if (name == "reward_scale") t.reward_scale = value;
    else throw std::invalid_argument("unknown hyperparameter: " + name);
}

double evaluate_hyperparams(const TuneSpec& spec, const Hyperparams& theta)
{
    ExperimentConfig cfg = spec.base;
    cfg.theta = theta;
    cfg.theta.algorithm = spec.algorithm;

    // Fixed evaluation scenarios: random sources are drawn once from the
    // evaluation stream and then replayed for every candidate.
    std::vector<ScenarioScript> scripts;
    if (cfg.scenario.kind == ScenarioSource::Kind::random) {
        for (std::size_t i = 0; i < spec.scenarios; ++i) {
            Rng rng = Rng::for_stream(i, Stream::evaluation);
            scripts.push_back(random_scenario(cfg.scenario.random, rng));
        }
    } else {
        Rng unused(0);
        scripts.push_back(cfg.scenario.build(unused));
    }

    double total = 0.0;
    std::size_t n = 0;
    for (auto& script : scripts) {
        ExperimentConfig run = cfg;
        run.scenario.kind = ScenarioSource::Kind::script;
        run.scenario.script = std::move(script);
        run.seeds = spec.eval_seeds;
        for (const auto& trace : run_experiment(run)) {
            total += trace.mean_rate();
            ++n;
        }
    }
    return n ? total / static_cast<double>(n) : 0.0;
}

TuneResult tune(const TuneSpec& spec, std::size_t budget, Rng& rng)
{
    if (budget == 0) {
        throw std::invalid_argument("tuning budget must be at least 1");
    }
    const auto ranges = spec.ranges.empty() ? TuneSpec::default_ranges(spec.algorithm) : spec.ranges;
    for (const auto& [name, r] : ranges) {
        get_param(spec.base.theta, name); // rejects unknown names
        if (r.hi < r.lo || (r.log_scale && !(r.lo > 0.0))) {
            throw std::invalid_argument("invalid range for " + name);
        }
    }

    TuneResult result;
    for (std::size_t trial = 0; trial < budget; ++trial) {
        Hyperparams theta = spec.base.theta;
        theta.algorithm = spec.algorithm;
        for (const auto& [name, r] : ranges) {
            const double u = rng.uniform();
            const double v = r.log_scale ? std::exp(std::log(r.lo) + u * (std::log(r.hi) - std::log(r.lo)))
                                         : r.lo + u * (r.hi - r.lo);
            set_param(theta, name, std::clamp(v, r.lo, r.hi));
        }
        const double score = evaluate_hyperparams(spec, theta);
        result.trials.push_back({theta, score});
        if (trial == 0 || score > result.best_score_bps) {
            result.best = theta;
            result.best_score_bps = score;
        }
    }
    return result;
}

namespace {

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::filesystem::path& path)
{
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path)
{
    out.flush();
    if (!out) {
        throw std::runtime_error("error writing " + path.string());
    }
}

std::vector<std::string> split(const std::string& line, char sep)
{
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, sep)) {
        out.push_back(cell);
    }
    if (!line.empty() && line.back() == sep) {
        out.emplace_back();
    }
    return out;
}

} // namespace

void write_trace_csv(const RunTrace& trace, double txop_duration_s, const std::filesystem::path& path)
{
    auto out = open_out(path);
    out << "txop,sim_time_s,effective_rate_bps,recipients\n";
    for (std::size_t t = 0; t < trace.rate_bps.size(); ++t) {
        out << t << ',' << fmt(static_cast<double>(t) * txop_duration_s) << ',' << fmt(trace.rate_bps[t]) << ',';
        if (t < trace.recipients.size()) {
            for (std::size_t i = 0; i < trace.recipients[t].size(); ++i) {
                out << (i ? " " : "") << trace.recipients[t][i];
            }
        }
        out << '\n';
    }
    out << "# seed=" << trace.seed << '\n';
    out << "# stations=";
    bool first = true;
    for (const auto& [station, ap] : trace.station_owner) {
        out << (first ? "" : " ") << station << ':' << ap;
        first = false;
    }
    out << '\n';
    finish(out, path);
}

RunTrace read_trace_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open trace " + path.string());
    }
    RunTrace trace;
    std::string line;
    std::getline(in, line); // header
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        if (line.rfind("# seed=", 0) == 0) {
            trace.seed = std::stoull(line.substr(7));
            continue;
        }
        if (line.rfind("# stations=", 0) == 0) {
            std::istringstream ss(line.substr(11));
            std::string tok;
            while (ss >> tok) {
                auto colon = tok.find(':');
                const auto station = static_cast<std::uint32_t>(std::stoul(tok.substr(0, colon)));
                trace.station_owner[station] = static_cast<std::uint32_t>(std::stoul(tok.substr(colon + 1)));
                trace.participation.try_emplace(station, 0);
            }
            continue;
        }
        const auto cells = split(line, ',');
        if (cells.size() != 4) {
            throw std::runtime_error("malformed trace row in " + path.string());
        }
        trace.rate_bps.push_back(std::stod(cells[2]));
        std::vector<std::uint32_t> served;
        std::istringstream ss(cells[3]);
        std::uint32_t s;
        while (ss >> s) {
            served.push_back(s);
            ++trace.participation[s];
        }
        trace.recipients.push_back(std::move(served));
    }
    return trace;
}

void write_aggregate_csv(const Aggregate& agg, const std::filesystem::path& path)
{
    auto out = open_out(path);
    out << "txop,sim_time_s,mean_rate,ci_lo,ci_hi\n";
    for (std::size_t t = 0; t < agg.mean.size(); ++t) {
        out << t << ',' << fmt(static_cast<double>(t) * agg.txop_duration_s) << ',' << fmt(agg.mean[t]) << ','
            << fmt(agg.mean[t] - agg.half_width[t]) << ',' << fmt(agg.mean[t] + agg.half_width[t]) << '\n';
    }
    finish(out, path);
}

std::vector<AggregateRow> read_aggregate_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    std::vector<AggregateRow> rows;
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const auto c = split(line, ',');
        if (c.size() != 5) {
            throw std::runtime_error("malformed aggregate row in " + path.string());
        }
        rows.push_back({std::stoul(c[0]), std::stod(c[1]), std::stod(c[2]), std::stod(c[3]), std::stod(c[4])});
    }
    return rows;
}

std::optional<double> reference_rate_mbps(std::string_view scheduler, std::string_view algorithm)
{
    if (scheduler == "flat") {
        return 204.5; // best flat agent
    }
    if (scheduler != "hierarchical") {
        return std::nullopt;
    }
    if (algorithm == "egreedy") return 251.8;
    if (algorithm == "softmax") return 235.6;
    if (algorithm == "ucb") return 268.0;
    if (algorithm == "ts") return 238.8;
    return std::nullopt;
}

void write_summary_csv(const std::vector<SummaryRow>& rows, const std::filesystem::path& path)
{
    auto out = open_out(path);
    out << "label,scheduler,algorithm,runs,mean_rate_mbps,ci_half_width_mbps,reference_mbps\n";
    for (const auto& r : rows) {
        out << r.label << ',' << r.scheduler << ',' << r.algorithm << ',' << r.runs << ','
            << fmt(r.mean_rate_bps / 1e6) << ',' << fmt(r.ci_half_width_bps / 1e6) << ',';
        if (auto ref = reference_rate_mbps(r.scheduler, r.algorithm)) {
            out << fmt(*ref);
        }
        out << '\n';
    }
    finish(out, path);
}

void write_fairness_csv(const FairnessReport& report, const std::filesystem::path& path)
{
    auto out = open_out(path);
    out << "station,ap,share,ap_share,ideal_single_tx_share\n";
    for (const auto& s : report.stations) {
        out << s.station << ',' << s.ap << ',' << fmt(s.share) << ',' << fmt(report.ap_share.at(s.ap)) << ','
            << fmt(report.ideal_single_tx_share) << '\n';
    }
    finish(out, path);
}

void write_tuning_report(const TuneSpec& spec, const TuneResult& result, const std::filesystem::path& path)
{
    const auto ranges = spec.ranges.empty() ? TuneSpec::default_ranges(spec.algorithm) : spec.ranges;
    auto out = open_out(path);
    out << "# algorithm=" << to_string(spec.algorithm) << " scheduler=" << to_string(spec.base.scheduler);
    for (const auto& [name, r] : ranges) {
        out << ' ' << name << "=[" << fmt(r.lo) << ',' << fmt(r.hi) << (r.log_scale ? ",log" : "") << ']';
    }
    out << '\n';
    out << "trial,algorithm";
    for (const auto& [name, r] : ranges) {
        out << ',' << name;
    }
    out << ",score_mbps,best\n";
    for (std::size_t i = 0; i < result.trials.size(); ++i) {
        const auto& tr = result.trials[i];
        out << i << ',' << to_string(spec.algorithm);
        for (const auto& [name, r] : ranges) {
            out << ',' << fmt(get_param(tr.theta, name));
        }
        out << ',' << fmt(tr.score_bps / 1e6) << ',' << (tr.theta == result.best ? 1 : 0) << '\n';
    }
    finish(out, path);
}

SummaryRow summarize(const ExperimentConfig& cfg, const std::vector<RunTrace>& traces)
{
    SummaryRow row;
    row.label = cfg.label;
    row.scheduler = std::string(to_string(cfg.scheduler));
    row.algorithm = (cfg.scheduler == SchedulerKind::hierarchical || cfg.scheduler == SchedulerKind::flat)
                        ? std::string(to_string(cfg.theta.algorithm))
                        : "none";
    row.runs = traces.size();
    std::vector<double> means;
    for (const auto& t : traces) {
        means.push_back(t.mean_rate());
    }
    const double n = static_cast<double>(means.size());
    row.mean_rate_bps = means.empty() ? 0.0 : std::accumulate(means.begin(), means.end(), 0.0) / n;
    row.ci_half_width_bps = 0.0;
    if (means.size() >= 2) {
        double ss = 0.0;
        for (double m : means) {
            ss += (m - row.mean_rate_bps) * (m - row.mean_rate_bps);
        }
        row.ci_half_width_bps = student_t_critical(cfg.ci_level, means.size() - 1) * std::sqrt(ss / (n - 1.0) / n);
    }
    return row;
}

} // namespace csr
