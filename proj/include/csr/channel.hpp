#pragma once

#include "csr/topology.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <tuple>

namespace csr {

/// Propagation and receiver constants. Defaults reproduce the enterprise
/// evaluation setup (5 GHz, 16.0206 dBm transmit power, -93.97 dBm noise).
struct ChannelParams {
    double carrier_freq_ghz = 5.0;
    double breakpoint_m = 10.0;
    double tx_power_dbm = 16.0206;
    double noise_floor_dbm = -93.97;
    double sinr_noise_std_db = 2.0;
    double wall_penalty_db = 7.0;

    void require_valid() const;
};

/// TGax enterprise path loss in dB. Distances below 1 m are clamped to 1 m.
double path_loss(double dist_m, int n_walls, const ChannelParams& p);

inline double rx_power(double tx_dbm, double path_loss_db)
{
    return tx_dbm - path_loss_db;
}

/// Path loss between two points including the walls the direct path crosses.
double link_loss(Position tx, Position rx, const Topology& topo, const ChannelParams& p);

/// SINR in dB at link.station. Interference is the mW sum of every other
/// AP in `active`; `noise_draw_db` is the caller-supplied perturbation.
double sinr(const Pair& link, const TransmissionSet& active, const Topology& topo,
            const ChannelParams& p, double noise_draw_db);

struct McsKey {
    int mcs;
    int width_mhz;
    int streams;
    int gi_ns;

    friend auto operator<=>(const McsKey&, const McsKey&) = default;
};

/// Logistic reception curve: p(sinr) = 1 / (1 + exp(-steepness * (sinr - midpoint))).
struct SuccessCurve {
    double midpoint_db;
    double steepness_per_db;
};

class McsTable {
public:
    McsTable() = default;

    /// Adds a row. Curve parameters are per MCS index; a second row for the
    /// same index must repeat the same curve.
    void add(const McsKey& key, double rate_bps, const SuccessCurve& curve);

    double data_rate(const McsKey& key) const;
    const SuccessCurve& curve(int mcs) const;
    bool has_mcs(int mcs) const { return curves_.contains(mcs); }

    const std::map<McsKey, double>& rates() const { return rates_; }
    const std::map<int, SuccessCurve>& curves() const { return curves_; }

    /// Throws if rates or curve midpoints are not strictly increasing in MCS.
    void require_valid() const;

    /// 802.11ax, 20 MHz, 1 spatial stream, 800 ns GI, MCS 0-11.
    static McsTable default_table();

    /// Whitespace separated rows: index width streams gi rate_bps midpoint_db steepness.
    /// Blank lines and '#' comments are ignored.
    static McsTable parse(const std::string& text);
    static McsTable load(const std::filesystem::path& path);
    std::string to_text() const;

private:
    std::map<McsKey, double> rates_;
    std::map<int, SuccessCurve> curves_;
};

double success_probability(double sinr_db, int mcs, const McsTable& table);

inline double data_rate(int mcs, int width_mhz, int streams, int gi_ns, const McsTable& table)
{
    return table.data_rate({mcs, width_mhz, streams, gi_ns});
}

} // namespace csr
