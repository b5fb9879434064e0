#pragma once

#include "csr/rng.hpp"
#include "csr/topology.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace csr {

struct MobilityEvent {
    std::size_t txop;
    Topology topology;
};

/// Initial scene plus ordered topology replacements at given TXOPs.
struct ScenarioScript {
    Topology initial;
    std::vector<MobilityEvent> events;
    std::size_t total_txops = 0;

    /// Event indices strictly increasing and below total_txops; every
    /// replacement keeps the initial AP/station structure.
    void require_valid() const;
};

struct RandomScenarioSpec {
    int ap_min = 2;
    int ap_max = 5;
    int stations_min = 3;
    int stations_max = 5;
    double area_m = 75.0;
    double sigma_min_m = 4.0;
    double sigma_max_m = 8.0;
    int reposition_events = 3;
    std::size_t total_txops = 2000;

    void require_valid() const;
};

/// Default asymmetric layout: one wall separating APs 0 and 1 (x = d/2,
/// y in [-0.2d, 0.3d]) and one separating APs 1 and 3 (y = d/2,
/// x in [0.7d, 1.2d]).
std::vector<Wall> default_square_walls(double d);

/// APs 0..3 at (0,0), (d,0), (0,d), (d,d); AP i owns stations 4i..4i+3
/// placed `station_offset` away in the NE, NW, SW, SE directions.
Topology square_scenario(double d, double station_offset, std::vector<Wall> walls);
inline Topology square_scenario(double d, double station_offset)
{
    return square_scenario(d, station_offset, default_square_walls(d));
}

/// Square scenario starting at 2 m station offset; with `post_move_offset`
/// the stations relocate at TXOP total/2.
ScenarioScript square_script(double d, std::size_t total_txops, std::optional<double> post_move_offset);
ScenarioScript square_script(double d, std::size_t total_txops, std::optional<double> post_move_offset,
                             const std::vector<Wall>& walls);

/// TXOP indices of `count` evenly spaced events: total * i / (count + 1).
std::vector<std::size_t> even_event_indices(std::size_t total, int count);

ScenarioScript random_scenario(const RandomScenarioSpec& spec, Rng& rng);

} // namespace csr
