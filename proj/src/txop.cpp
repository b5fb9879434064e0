#include "csr/txop.hpp"

#include <cmath>
#include <stdexcept>

namespace csr {

void TxopConfig::require_valid() const
{
    if (!(duration_s > 0.0)) {
        throw std::invalid_argument("TXOP duration must be positive");
    }
    if (subframe_bytes == 0) {
        throw std::invalid_argument("A-MPDU sub-frame size must be positive");
    }
}

std::uint32_t n_ampdu(double rate_bps, const TxopConfig& cfg)
{
    if (!(rate_bps > 0.0)) {
        throw std::invalid_argument("data rate must be positive");
    }
    // Round the quotient to 1e-9 before ceil so that products which are
    // integral in exact arithmetic do not pick up an extra sub-frame.
    const double q = rate_bps * cfg.duration_s / cfg.subframe_bits();
    const double snapped = std::round(q);
    if (std::abs(q - snapped) <= 1e-9 * std::max(1.0, snapped)) {
        return static_cast<std::uint32_t>(snapped);
    }
    return static_cast<std::uint32_t>(std::ceil(q));
}

double max_single_link_rate(const McsTable& table, const TxopConfig& cfg)
{
    const auto n = n_ampdu(table.data_rate(cfg.mcs_key()), cfg);
    return n * cfg.subframe_bits() / cfg.duration_s;
}

TxopResult simulate_txop(const TransmissionSet& set, const Topology& topo, const ChannelParams& ch,
                         const McsTable& table, const TxopConfig& cfg, Rng& noise_rng, Rng& reception_rng)
{
    const auto sent = n_ampdu(table.data_rate(cfg.mcs_key()), cfg);

    TxopResult result;
    result.links.reserve(set.size());
    for (const auto& pair : set) {
        const double eps = ch.sinr_noise_std_db > 0.0 ? noise_rng.normal(0.0, ch.sinr_noise_std_db) : 0.0;
        const double s = sinr(pair, set, topo, ch, eps);
        const double p = success_probability(s, cfg.mcs, table);
        result.links.push_back({pair, s, p, sent, 0});
    }
    std::uint64_t received = 0;
    for (auto& link : result.links) {
        link.subframes_received = reception_rng.binomial(link.subframes_sent, link.success_prob);
        received += link.subframes_received;
    }
    result.effective_rate_bps = static_cast<double>(received) * cfg.subframe_bits() / cfg.duration_s;
    return result;
}

} // namespace csr
