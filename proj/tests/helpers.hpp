#pragma once

#include "csr/rng.hpp"
#include "csr/topology.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace csr::test {

/// |observed - n p| within `k` binomial standard deviations.
inline bool within_sigma(std::uint64_t observed, std::uint64_t n, double p, double k = 3.0)
{
    const double mean = static_cast<double>(n) * p;
    const double sd = std::sqrt(static_cast<double>(n) * p * (1.0 - p));
    return std::abs(static_cast<double>(observed) - mean) <= k * sd;
}

/// Pearson chi-square statistic against a uniform distribution.
inline double chi_square_uniform(const std::vector<std::uint64_t>& counts)
{
    double total = 0.0;
    for (auto c : counts) total += static_cast<double>(c);
    const double expected = total / static_cast<double>(counts.size());
    double chi2 = 0.0;
    for (auto c : counts) {
        const double diff = static_cast<double>(c) - expected;
        chi2 += diff * diff / expected;
    }
    return chi2;
}

/// Upper 0.999 quantiles of chi-square for 1..15 degrees of freedom.
inline double chi_square_999(std::size_t dof)
{
    static constexpr double q[] = {10.828, 13.816, 16.266, 18.467, 20.515, 22.458, 24.322, 26.124,
                                   27.877, 29.588, 31.264, 32.909, 34.528, 36.123, 37.697};
    return q[dof - 1];
}

/// Random well-formed topology: APs 0..n-1 with the given station counts,
/// station ids 100*ap + j.
inline Topology random_topology(Rng& rng, const std::vector<int>& stations_per_ap, double area = 50.0,
                                int n_walls = 0)
{
    std::vector<ApNode> aps;
    std::vector<StationNode> stations;
    for (std::size_t i = 0; i < stations_per_ap.size(); ++i) {
        const Position ap_pos{rng.uniform(0, area), rng.uniform(0, area)};
        aps.push_back({ApId{static_cast<std::uint32_t>(i)}, ap_pos});
        for (int j = 0; j < stations_per_ap[i]; ++j) {
            stations.push_back({StationId{static_cast<std::uint32_t>(100 * i + j)},
                                {ap_pos.x + rng.uniform(-5, 5), ap_pos.y + rng.uniform(-5, 5)},
                                ApId{static_cast<std::uint32_t>(i)}});
        }
    }
    std::vector<Wall> walls;
    for (int w = 0; w < n_walls; ++w) {
        walls.push_back({{rng.uniform(0, area), rng.uniform(0, area)}, {rng.uniform(0, area), rng.uniform(0, area)}});
    }
    return Topology(std::move(aps), std::move(stations), std::move(walls));
}

inline std::vector<int> random_station_counts(Rng& rng, int n_aps, int lo, int hi)
{
    std::vector<int> counts;
    for (int i = 0; i < n_aps; ++i) counts.push_back(static_cast<int>(rng.integer(lo, hi)));
    return counts;
}

} // namespace csr::test
