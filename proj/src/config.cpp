#include "csr/config.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

namespace csr {

using nlohmann::json;

namespace {

template <typename T>
void read(const json& j, const char* key, T& out)
{
    if (auto it = j.find(key); it != j.end() && !it->is_null()) {
        out = it->get<T>();
    }
}

void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const char* where)
{
    if (!j.is_object()) {
        throw std::invalid_argument(std::string(where) + ": expected an object");
    }
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : j.items()) {
        if (!ok.contains(key)) {
            throw std::invalid_argument(std::string(where) + ": unknown key '" + key + "'");
        }
    }
}

json point(Position p)
{
    return json::array({p.x, p.y});
}

Position point_from(const json& j)
{
    if (!j.is_array() || j.size() != 2) {
        throw std::invalid_argument("position must be [x, y]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<Wall> walls_from(const json& j)
{
    std::vector<Wall> walls;
    for (const auto& w : j) {
        walls.push_back({point_from(w.at("a")), point_from(w.at("b"))});
    }
    return walls;
}

json walls_to(const std::vector<Wall>& walls)
{
    json arr = json::array();
    for (const auto& w : walls) {
        arr.push_back({{"a", point(w.a)}, {"b", point(w.b)}});
    }
    return arr;
}

} // namespace

json to_json(const Topology& topo)
{
    json aps = json::array();
    for (const auto& ap : topo.aps()) {
        aps.push_back({{"id", to_int(ap.id)}, {"pos", point(ap.pos)}});
    }
    json stations = json::array();
    for (const auto& s : topo.stations()) {
        stations.push_back({{"id", to_int(s.id)}, {"ap", to_int(s.ap)}, {"pos", point(s.pos)}});
    }
    return {{"aps", aps}, {"stations", stations}, {"walls", walls_to(topo.walls())}};
}

Topology topology_from_json(const json& j)
{
    reject_unknown(j, {"aps", "stations", "walls"}, "topology");
    std::vector<ApNode> aps;
    for (const auto& a : j.at("aps")) {
        aps.push_back({ApId{a.at("id").get<std::uint32_t>()}, point_from(a.at("pos"))});
    }
    std::vector<StationNode> stations;
    for (const auto& s : j.at("stations")) {
        stations.push_back({StationId{s.at("id").get<std::uint32_t>()}, point_from(s.at("pos")),
                            ApId{s.at("ap").get<std::uint32_t>()}});
    }
    std::vector<Wall> walls;
    if (j.contains("walls")) {
        walls = walls_from(j.at("walls"));
    }
    return Topology(std::move(aps), std::move(stations), std::move(walls));
}

json to_json(const ScenarioScript& script)
{
    json events = json::array();
    for (const auto& e : script.events) {
        events.push_back({{"txop", e.txop}, {"topology", to_json(e.topology)}});
    }
    return {{"txops", script.total_txops}, {"topology", to_json(script.initial)}, {"events", events}};
}

ScenarioScript script_from_json(const json& j)
{
    reject_unknown(j, {"type", "txops", "topology", "events"}, "scenario script");
    ScenarioScript script;
    script.initial = topology_from_json(j.at("topology"));
    script.total_txops = j.at("txops").get<std::size_t>();
    if (j.contains("events")) {
        for (const auto& e : j.at("events")) {
            script.events.push_back({e.at("txop").get<std::size_t>(), topology_from_json(e.at("topology"))});
        }
    }
    return script;
}

json to_json(const Hyperparams& t)
{
    return {{"algorithm", std::string(to_string(t.algorithm))},
            {"epsilon", t.epsilon},
            {"epsilon_decay", t.epsilon_decay},
            {"temperature", t.temperature},
            {"ucb_c", t.ucb_c},
            {"ts_prior_mean", t.ts_prior_mean},
            {"ts_prior_var", t.ts_prior_var},
            {"ts_obs_var", t.ts_obs_var},
            {"gamma", t.gamma},
            {"reward_scale", t.reward_scale}};
}

Hyperparams hyperparams_from_json(const json& j, Hyperparams t)
{
    reject_unknown(j,
                   {"algorithm", "epsilon", "epsilon_decay", "temperature", "ucb_c", "ts_prior_mean",
                    "ts_prior_var", "ts_obs_var", "gamma", "reward_scale"},
                   "agent");
    if (j.contains("algorithm")) {
        t.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
    }
    read(j, "epsilon", t.epsilon);
    read(j, "epsilon_decay", t.epsilon_decay);
    read(j, "temperature", t.temperature);
    read(j, "ucb_c", t.ucb_c);
    read(j, "ts_prior_mean", t.ts_prior_mean);
    read(j, "ts_prior_var", t.ts_prior_var);
    read(j, "ts_obs_var", t.ts_obs_var);
    read(j, "gamma", t.gamma);
    read(j, "reward_scale", t.reward_scale);
    return t;
}

json to_json(const ChannelParams& p)
{
    return {{"carrier_freq_ghz", p.carrier_freq_ghz}, {"breakpoint_m", p.breakpoint_m},
            {"tx_power_dbm", p.tx_power_dbm},         {"noise_floor_dbm", p.noise_floor_dbm},
            {"sinr_noise_std_db", p.sinr_noise_std_db}, {"wall_penalty_db", p.wall_penalty_db}};
}

ChannelParams channel_from_json(const json& j)
{
    reject_unknown(j,
                   {"carrier_freq_ghz", "breakpoint_m", "tx_power_dbm", "noise_floor_dbm", "sinr_noise_std_db",
                    "wall_penalty_db"},
                   "channel");
    ChannelParams p;
    read(j, "carrier_freq_ghz", p.carrier_freq_ghz);
    read(j, "breakpoint_m", p.breakpoint_m);
    read(j, "tx_power_dbm", p.tx_power_dbm);
    read(j, "noise_floor_dbm", p.noise_floor_dbm);
    read(j, "sinr_noise_std_db", p.sinr_noise_std_db);
    read(j, "wall_penalty_db", p.wall_penalty_db);
    return p;
}

json to_json(const TxopConfig& c)
{
    return {{"duration_s", c.duration_s}, {"subframe_bytes", c.subframe_bytes}, {"mcs", c.mcs},
            {"width_mhz", c.width_mhz},   {"streams", c.streams},               {"gi_ns", c.gi_ns}};
}

TxopConfig txop_from_json(const json& j)
{
    reject_unknown(j, {"duration_s", "subframe_bytes", "mcs", "width_mhz", "streams", "gi_ns"}, "txop");
    TxopConfig c;
    read(j, "duration_s", c.duration_s);
    read(j, "subframe_bytes", c.subframe_bytes);
    read(j, "mcs", c.mcs);
    read(j, "width_mhz", c.width_mhz);
    read(j, "streams", c.streams);
    read(j, "gi_ns", c.gi_ns);
    return c;
}

namespace {

ScenarioSource scenario_from_json(const json& j)
{
    ScenarioSource src;
    const std::string type = j.value("type", "square");
    if (type == "square") {
        reject_unknown(j, {"type", "d", "txops", "post_move_offset", "walls"}, "square scenario");
        src.kind = ScenarioSource::Kind::square;
        read(j, "d", src.square.d);
        read(j, "txops", src.square.txops);
        if (j.contains("post_move_offset") && !j.at("post_move_offset").is_null()) {
            src.square.post_move_offset = j.at("post_move_offset").get<double>();
        }
        if (j.contains("walls")) {
            src.square.walls = walls_from(j.at("walls"));
        }
    } else if (type == "random") {
        reject_unknown(j, {"type", "ap_range", "stations_range", "area_m", "sigma_range", "reposition_events", "txops"},
                       "random scenario");
        src.kind = ScenarioSource::Kind::random;
        auto& r = src.random;
        if (j.contains("ap_range")) {
            r.ap_min = j.at("ap_range").at(0).get<int>();
            r.ap_max = j.at("ap_range").at(1).get<int>();
        }
        if (j.contains("stations_range")) {
            r.stations_min = j.at("stations_range").at(0).get<int>();
            r.stations_max = j.at("stations_range").at(1).get<int>();
        }
        if (j.contains("sigma_range")) {
            r.sigma_min_m = j.at("sigma_range").at(0).get<double>();
            r.sigma_max_m = j.at("sigma_range").at(1).get<double>();
        }
        read(j, "area_m", r.area_m);
        read(j, "reposition_events", r.reposition_events);
        read(j, "txops", r.total_txops);
    } else if (type == "script") {
        src.kind = ScenarioSource::Kind::script;
        src.script = script_from_json(j);
    } else {
        throw std::invalid_argument("unknown scenario type: " + type);
    }
    return src;
}

json scenario_to_json(const ScenarioSource& src)
{
    switch (src.kind) {
    case ScenarioSource::Kind::square: {
        json j{{"type", "square"}, {"d", src.square.d}, {"txops", src.square.txops}};
        j["post_move_offset"] = src.square.post_move_offset ? json(*src.square.post_move_offset) : json(nullptr);
        if (src.square.walls) {
            j["walls"] = walls_to(*src.square.walls);
        }
        return j;
    }
    case ScenarioSource::Kind::random: {
        const auto& r = src.random;
        return {{"type", "random"},
                {"ap_range", {r.ap_min, r.ap_max}},
                {"stations_range", {r.stations_min, r.stations_max}},
                {"area_m", r.area_m},
                {"sigma_range", {r.sigma_min_m, r.sigma_max_m}},
                {"reposition_events", r.reposition_events},
                {"txops", r.total_txops}};
    }
    case ScenarioSource::Kind::script: {
        json j = src.script ? to_json(*src.script) : json::object();
        j["type"] = "script";
        return j;
    }
    }
    return {};
}

} // namespace

ExperimentConfig experiment_from_json(const json& j, const std::filesystem::path& base_dir)
{
    reject_unknown(j,
                   {"label", "scenario", "scheduler", "agent", "channel", "txop", "mcs_table", "seeds", "seed_count",
                    "seed_base", "smoothing_window", "ci_level", "threads"},
                   "experiment");
    ExperimentConfig cfg;
    read(j, "label", cfg.label);
    if (j.contains("scenario")) {
        cfg.scenario = scenario_from_json(j.at("scenario"));
    }
    if (j.contains("scheduler")) {
        const auto& s = j.at("scheduler");
        if (s.is_string()) {
            cfg.scheduler = parse_scheduler(s.get<std::string>());
        } else {
            reject_unknown(s, {"kind", "k"}, "scheduler");
            cfg.scheduler = parse_scheduler(s.value("kind", "hierarchical"));
            read(s, "k", cfg.static_k);
        }
    }
    if (j.contains("agent")) {
        cfg.theta = hyperparams_from_json(j.at("agent"));
    }
    if (j.contains("channel")) {
        cfg.channel = channel_from_json(j.at("channel"));
    }
    if (j.contains("txop")) {
        cfg.txop = txop_from_json(j.at("txop"));
    }
    if (j.contains("mcs_table")) {
        std::filesystem::path p = j.at("mcs_table").get<std::string>();
        cfg.mcs_table = McsTable::load(p.is_absolute() ? p : base_dir / p);
    }
    if (j.contains("seeds")) {
        cfg.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    } else if (j.contains("seed_count")) {
        const auto n = j.at("seed_count").get<std::size_t>();
        const auto base = j.value("seed_base", std::uint64_t{0});
        cfg.seeds.clear();
        for (std::size_t i = 0; i < n; ++i) {
            cfg.seeds.push_back(base + i);
        }
    }
    read(j, "smoothing_window", cfg.smoothing_window);
    read(j, "ci_level", cfg.ci_level);
    read(j, "threads", cfg.threads);
    return cfg;
}

json to_json(const ExperimentConfig& cfg)
{
    return {{"label", cfg.label},
            {"scenario", scenario_to_json(cfg.scenario)},
            {"scheduler", {{"kind", std::string(to_string(cfg.scheduler))}, {"k", cfg.static_k}}},
            {"agent", to_json(cfg.theta)},
            {"channel", to_json(cfg.channel)},
            {"txop", to_json(cfg.txop)},
            {"seeds", cfg.seeds},
            {"smoothing_window", cfg.smoothing_window},
            {"ci_level", cfg.ci_level}};
}

json load_json(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    try {
        return json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(path.string() + ": " + e.what());
    }
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path)
{
    try {
        return experiment_from_json(load_json(path), path.parent_path());
    } catch (const json::exception& e) {
        throw std::invalid_argument(path.string() + ": " + e.what());
    }
}

TuneSpec tune_spec_from_json(const json& j, Algorithm algorithm, const std::filesystem::path& base_dir)
{
    reject_unknown(j, {"experiment", "scenarios", "eval_seeds", "ranges"}, "tuning spec");
    TuneSpec spec;
    spec.algorithm = algorithm;
    spec.base.scenario.kind = ScenarioSource::Kind::random;
    if (j.contains("experiment")) {
        spec.base = experiment_from_json(j.at("experiment"), base_dir);
        if (!j.at("experiment").contains("scenario")) {
            spec.base.scenario = ScenarioSource{};
            spec.base.scenario.kind = ScenarioSource::Kind::random;
        }
    }
    spec.base.theta.algorithm = algorithm;
    read(j, "scenarios", spec.scenarios);
    read(j, "eval_seeds", spec.eval_seeds);
    if (j.contains("ranges")) {
        for (const auto& [name, r] : j.at("ranges").items()) {
            ParamRange range{r.at(0).get<double>(), r.at(1).get<double>(), false};
            if (r.size() > 2) {
                range.log_scale = r.at(2).get<std::string>() == "log";
            }
            spec.ranges[name] = range;
        }
    }
    return spec;
}

} // namespace csr
