#pragma once

#include "csr/channel.hpp"
#include "csr/rng.hpp"
#include "csr/topology.hpp"

#include <cstdint>
#include <vector>

namespace csr {

/// One TXOP worth of PHY/MAC settings. Defaults: 5.484 ms, 1500 B
/// sub-frames, MCS 11 on 20 MHz / 1 SS / 800 ns GI.
struct TxopConfig {
    double duration_s = 5.484e-3;
    std::uint32_t subframe_bytes = 1500;
    int mcs = 11;
    int width_mhz = 20;
    int streams = 1;
    int gi_ns = 800;

    McsKey mcs_key() const { return {mcs, width_mhz, streams, gi_ns}; }
    double subframe_bits() const { return 8.0 * subframe_bytes; }
    void require_valid() const;
};

struct LinkOutcome {
    Pair pair;
    double sinr_db;
    double success_prob;
    std::uint32_t subframes_sent;
    std::uint32_t subframes_received;
};

struct TxopResult {
    std::vector<LinkOutcome> links;
    double effective_rate_bps = 0.0;
};

/// Number of A-MPDU sub-frames that fit in one TXOP at `rate_bps`.
std::uint32_t n_ampdu(double rate_bps, const TxopConfig& cfg);

/// Effective rate for perfect reception of a single link.
double max_single_link_rate(const McsTable& table, const TxopConfig& cfg);

/// Simulates one TXOP. The SINR perturbation of every link is drawn from
/// `noise_rng` (one draw per link, in set order) and the reception count
/// from `reception_rng`.
TxopResult simulate_txop(const TransmissionSet& set, const Topology& topo, const ChannelParams& ch,
                         const McsTable& table, const TxopConfig& cfg, Rng& noise_rng, Rng& reception_rng);

inline TxopResult simulate_txop(const TransmissionSet& set, const Topology& topo, const ChannelParams& ch,
                                const McsTable& table, const TxopConfig& cfg, Rng& rng)
{
    return simulate_txop(set, topo, ch, table, cfg, rng, rng);
}

} // namespace csr
