#include "csr/scenario.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace csr {

void ScenarioScript::require_valid() const
{
    initial.require_valid();
    if (total_txops == 0) {
        throw std::invalid_argument("scenario needs at least one TXOP");
    }
    std::size_t prev = 0;
    for (std::size_t i = 0; i < events.size(); ++i) {
        const auto& e = events[i];
        if ((i > 0 && e.txop <= prev) || e.txop >= total_txops) {
            throw std::invalid_argument("mobility events must be strictly increasing and inside the run");
        }
        prev = e.txop;
        e.topology.require_valid();
        if (!e.topology.same_structure(initial)) {
            throw std::invalid_argument("mobility event changes the AP/station structure");
        }
    }
}

void RandomScenarioSpec::require_valid() const
{
    if (ap_min < 1 || ap_max < ap_min) {
        throw std::invalid_argument("invalid AP count range");
    }
    if (stations_min < 1 || stations_max < stations_min) {
        throw std::invalid_argument("invalid stations-per-AP range");
    }
    if (!(area_m > 0.0)) {
        throw std::invalid_argument("area side must be positive");
    }
    if (!(sigma_min_m > 0.0) || sigma_max_m < sigma_min_m) {
        throw std::invalid_argument("invalid station spread range");
    }
    if (reposition_events < 0 || total_txops == 0) {
        throw std::invalid_argument("invalid event count or TXOP total");
    }
}

std::vector<Wall> default_square_walls(double d)
{
    // Vertical wall between APs 0 and 1, horizontal wall between APs 1 and 3.
    return {
        Wall{{0.5 * d, -0.2 * d}, {0.5 * d, 0.3 * d}},
        Wall{{0.7 * d, 0.5 * d}, {1.2 * d, 0.5 * d}},
    };
}

Topology square_scenario(double d, double station_offset, std::vector<Wall> walls)
{
    if (!(d > 0.0)) {
        throw std::invalid_argument("square side must be positive");
    }
    if (!(station_offset > 0.0)) {
        throw std::invalid_argument("station offset must be positive");
    }
    const Position corners[4] = {{0.0, 0.0}, {d, 0.0}, {0.0, d}, {d, d}};
    const double o = station_offset / std::numbers::sqrt2;
    const double dirs[4][2] = {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};

    std::vector<ApNode> aps;
    std::vector<StationNode> stations;
    for (std::uint32_t a = 0; a < 4; ++a) {
        aps.push_back({ApId{a}, corners[a]});
        for (std::uint32_t j = 0; j < 4; ++j) {
            const Position p{corners[a].x + dirs[j][0] * o, corners[a].y + dirs[j][1] * o};
            stations.push_back({StationId{4 * a + j}, p, ApId{a}});
        }
    }
    return Topology(std::move(aps), std::move(stations), std::move(walls));
}

ScenarioScript square_script(double d, std::size_t total_txops, std::optional<double> post_move_offset,
                             const std::vector<Wall>& walls)
{
    if (total_txops == 0) {
        throw std::invalid_argument("scenario needs at least one TXOP");
    }
    ScenarioScript script{square_scenario(d, 2.0, walls), {}, total_txops};
    if (post_move_offset) {
        script.events.push_back({total_txops / 2, square_scenario(d, *post_move_offset, walls)});
    }
    return script;
}

ScenarioScript square_script(double d, std::size_t total_txops, std::optional<double> post_move_offset)
{
    return square_script(d, total_txops, post_move_offset, default_square_walls(d));
}

std::vector<std::size_t> even_event_indices(std::size_t total, int count)
{
    std::vector<std::size_t> out;
    for (int i = 1; i <= count; ++i) {
        out.push_back(total * static_cast<std::size_t>(i) / static_cast<std::size_t>(count + 1));
    }
    return out;
}

namespace {

struct Layout {
    std::vector<int> stations_per_ap;
    std::vector<double> sigma;
};

Topology place(const Layout& layout, const RandomScenarioSpec& spec, Rng& rng)
{
    std::vector<ApNode> aps;
    std::vector<StationNode> stations;
    std::uint32_t next_station = 0;
    for (std::size_t a = 0; a < layout.stations_per_ap.size(); ++a) {
        const Position ap{rng.uniform(0.0, spec.area_m), rng.uniform(0.0, spec.area_m)};
        aps.push_back({ApId{static_cast<std::uint32_t>(a)}, ap});
        for (int j = 0; j < layout.stations_per_ap[a]; ++j) {
            Position s;
            do {
                s = {ap.x + rng.normal(0.0, layout.sigma[a]), ap.y + rng.normal(0.0, layout.sigma[a])};
            } while (s.x < 0.0 || s.x > spec.area_m || s.y < 0.0 || s.y > spec.area_m);
            stations.push_back({StationId{next_station++}, s, ApId{static_cast<std::uint32_t>(a)}});
        }
    }
    return Topology(std::move(aps), std::move(stations));
}

} // namespace

ScenarioScript random_scenario(const RandomScenarioSpec& spec, Rng& rng)
{
    spec.require_valid();
    Layout layout;
    const auto n_aps = rng.integer(spec.ap_min, spec.ap_max);
    for (std::int64_t a = 0; a < n_aps; ++a) {
        layout.stations_per_ap.push_back(static_cast<int>(rng.integer(spec.stations_min, spec.stations_max)));
        layout.sigma.push_back(rng.uniform(spec.sigma_min_m, spec.sigma_max_m));
    }
    ScenarioScript script{place(layout, spec, rng), {}, spec.total_txops};
    for (std::size_t idx : even_event_indices(spec.total_txops, spec.reposition_events)) {
        if (idx == 0 || (!script.events.empty() && idx <= script.events.back().txop)) {
            continue;
        }
        script.events.push_back({idx, place(layout, spec, rng)});
    }
    return script;
}

} // namespace csr
