#include "csr/channel.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace csr {

void ChannelParams::require_valid() const
{
    if (!(carrier_freq_ghz > 0.0)) {
        throw std::invalid_argument("carrier frequency must be positive");
    }
    if (!(breakpoint_m > 0.0)) {
        throw std::invalid_argument("breakpoint distance must be positive");
    }
    if (!(sinr_noise_std_db >= 0.0)) {
        throw std::invalid_argument("SINR noise std must be nonnegative");
    }
}

double path_loss(double dist_m, int n_walls, const ChannelParams& p)
{
    const double delta = std::max(dist_m, 1.0);
    double loss = 40.05 + 20.0 * std::log10(std::min(delta, p.breakpoint_m) * p.carrier_freq_ghz / 2.4);
    if (delta > p.breakpoint_m) {
        loss += 35.0 * std::log10(delta / p.breakpoint_m);
    }
    return loss + p.wall_penalty_db * n_walls;
}

double link_loss(Position tx, Position rx, const Topology& topo, const ChannelParams& p)
{
    return path_loss(distance(tx, rx), wall_count(tx, rx, topo.walls()), p);
}

double sinr(const Pair& link, const TransmissionSet& active, const Topology& topo,
            const ChannelParams& p, double noise_draw_db)
{
    const Position rx = topo.station_position(link.station);
    const double signal = rx_power(p.tx_power_dbm, link_loss(topo.ap_position(link.ap), rx, topo, p));

    double interference_mw = 0.0;
    for (const auto& other : active) {
        if (other.ap == link.ap) {
            continue;
        }
        const double loss = link_loss(topo.ap_position(other.ap), rx, topo, p);
        interference_mw += std::pow(10.0, rx_power(p.tx_power_dbm, loss) / 10.0);
    }
    const double noise_mw = std::pow(10.0, p.noise_floor_dbm / 10.0);
    return signal - 10.0 * std::log10(interference_mw + noise_mw) + noise_draw_db;
}

void McsTable::add(const McsKey& key, double rate_bps, const SuccessCurve& curve)
{
    if (!(rate_bps > 0.0)) {
        throw std::invalid_argument("MCS data rate must be positive");
    }
    if (!(curve.steepness_per_db > 0.0)) {
        throw std::invalid_argument("success curve steepness must be positive");
    }
    auto [it, inserted] = curves_.try_emplace(key.mcs, curve);
    if (!inserted && (it->second.midpoint_db != curve.midpoint_db ||
                      it->second.steepness_per_db != curve.steepness_per_db)) {
        throw std::invalid_argument("conflicting success curve for MCS " + std::to_string(key.mcs));
    }
    rates_[key] = rate_bps;
}

double McsTable::data_rate(const McsKey& key) const
{
    auto it = rates_.find(key);
    if (it == rates_.end()) {
        throw std::out_of_range("no data rate for MCS " + std::to_string(key.mcs) + " / " +
                                std::to_string(key.width_mhz) + " MHz / " + std::to_string(key.streams) +
                                " SS / " + std::to_string(key.gi_ns) + " ns");
    }
    return it->second;
}

const SuccessCurve& McsTable::curve(int mcs) const
{
    auto it = curves_.find(mcs);
    if (it == curves_.end()) {
        throw std::out_of_range("MCS not in table: " + std::to_string(mcs));
    }
    return it->second;
}

void McsTable::require_valid() const
{
    // rates_ is ordered by (mcs, width, streams, gi); compare rows sharing the
    // same width/streams/gi.
    std::map<std::tuple<int, int, int>, std::pair<int, double>> last;
    for (const auto& [key, rate] : rates_) {
        auto group = std::make_tuple(key.width_mhz, key.streams, key.gi_ns);
        auto it = last.find(group);
        if (it != last.end() && !(rate > it->second.second)) {
            throw std::invalid_argument("data rate not increasing at MCS " + std::to_string(key.mcs));
        }
        last[group] = {key.mcs, rate};
    }
    double prev = -std::numeric_limits<double>::infinity();
    for (const auto& [mcs, c] : curves_) {
        if (!(c.midpoint_db > prev)) {
            throw std::invalid_argument("success curve midpoint not increasing at MCS " + std::to_string(mcs));
        }
        prev = c.midpoint_db;
    }
}

McsTable McsTable::default_table()
{
    // Rates: 234 data subcarriers, 13.6 us symbols (12.8 us + 0.8 us GI).
    // Midpoints follow the receiver minimum-sensitivity ladder, anchored so
    // that MCS 11 is at 25 dB.
    constexpr std::array<double, 12> rates_bps{8.6e6,  17.2e6, 25.8e6,  34.4e6,  51.6e6,  68.8e6,
                                               77.4e6, 86.0e6, 103.2e6, 114.7e6, 129.0e6, 143.4e6};
    constexpr std::array<double, 12> sensitivity_dbm{-82, -79, -77, -74, -70, -66,
                                                     -65, -64, -59, -57, -54, -52};
    constexpr double kMcs11Midpoint = 25.0;
    constexpr double kSteepness = 0.5;
    McsTable t;
    for (int mcs = 0; mcs < 12; ++mcs) {
        const double midpoint = kMcs11Midpoint + sensitivity_dbm[mcs] - sensitivity_dbm[11];
        t.add({mcs, 20, 1, 800}, rates_bps[mcs], {midpoint, kSteepness});
    }
    return t;
}

McsTable McsTable::parse(const std::string& text)
{
    McsTable t;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream row(line);
        McsKey key{};
        double rate = 0.0;
        SuccessCurve curve{};
        if (!(row >> key.mcs)) {
            continue;
        }
        if (!(row >> key.width_mhz >> key.streams >> key.gi_ns >> rate >> curve.midpoint_db >>
              curve.steepness_per_db)) {
            throw std::invalid_argument("MCS table line " + std::to_string(line_no) + ": expected 7 columns");
        }
        std::string extra;
        if (row >> extra) {
            throw std::invalid_argument("MCS table line " + std::to_string(line_no) + ": trailing data");
        }
        t.add(key, rate, curve);
    }
    t.require_valid();
    return t;
}

McsTable McsTable::load(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open MCS table " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string McsTable::to_text() const
{
    std::ostringstream out;
    out << "# mcs width_mhz streams gi_ns rate_bps midpoint_db steepness_per_db\n";
    out << std::setprecision(17);
    for (const auto& [key, rate] : rates_) {
        const auto& c = curves_.at(key.mcs);
        out << key.mcs << ' ' << key.width_mhz << ' ' << key.streams << ' ' << key.gi_ns << ' ' << rate << ' '
            << c.midpoint_db << ' ' << c.steepness_per_db << '\n';
    }
    return out.str();
}

double success_probability(double sinr_db, int mcs, const McsTable& table)
{
    const auto& c = table.curve(mcs);
    if (std::isnan(sinr_db)) {
        return 0.0;
    }
    const double z = c.steepness_per_db * (sinr_db - c.midpoint_db);
    // Two branches keep exp() from overflowing at either tail.
    if (z >= 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    const double e = std::exp(z);
    return e / (1.0 + e);
}

} // namespace csr
