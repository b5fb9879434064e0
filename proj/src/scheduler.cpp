#include "csr/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace csr {

namespace {

constexpr std::size_t kMaxAps = 20;

Hyperparams resolved(Hyperparams theta)
{
    theta.require_valid();
    if (!(theta.reward_scale > 0.0)) {
        throw std::invalid_argument("scheduler needs a positive reward scale");
    }
    return theta;
}

} // namespace

NetworkStructure::NetworkStructure(const Topology& topo)
{
    topo.require_valid();
    if (topo.ap_count() > kMaxAps) {
        throw std::invalid_argument("too many APs for bitmask encoding");
    }
    for (const auto& ap : topo.aps()) {
        aps.push_back(ap.id);
        stations.push_back(topo.stations_of(ap.id));
    }
}

std::size_t NetworkStructure::index_of(ApId ap) const
{
    auto it = std::find(aps.begin(), aps.end(), ap);
    if (it == aps.end()) {
        throw std::out_of_range("unknown AP id " + std::to_string(to_int(ap)));
    }
    return static_cast<std::size_t>(it - aps.begin());
}

std::size_t NetworkStructure::total_stations() const
{
    std::size_t n = 0;
    for (const auto& s : stations) {
        n += s.size();
    }
    return n;
}

Pair draw_p0(const Topology& topo, Rng& rng)
{
    const auto& ap = topo.aps()[rng.index(topo.ap_count())];
    const auto& stations = topo.stations_of(ap.id);
    return {ap.id, stations[rng.index(stations.size())]};
}

HierarchicalScheduler::HierarchicalScheduler(const Topology& topo, const Hyperparams& theta)
    : structure_(topo)
    , theta_(resolved(theta))
{
}

std::vector<ApId> HierarchicalScheduler::shared_aps(const Pair& p0, std::size_t arm) const
{
    const std::size_t sharing = structure_.index_of(p0.ap);
    std::vector<ApId> out;
    std::size_t bit = 0;
    for (std::size_t i = 0; i < structure_.aps.size(); ++i) {
        if (i == sharing) {
            continue;
        }
        if (arm & (std::size_t{1} << bit)) {
            out.push_back(structure_.aps[i]);
        }
        ++bit;
    }
    return out;
}

std::uint32_t HierarchicalScheduler::transmitting_mask(const Pair& p0, std::size_t arm) const
{
    std::uint32_t mask = 1u << structure_.index_of(p0.ap);
    for (ApId ap : shared_aps(p0, arm)) {
        mask |= 1u << structure_.index_of(ap);
    }
    return mask;
}

Agent& HierarchicalScheduler::first_level(const Pair& p0)
{
    auto it = first_level_.find(p0);
    if (it == first_level_.end()) {
        it = first_level_.emplace(p0, Agent(first_level_arms(), theta_)).first;
    }
    return it->second;
}

Agent& HierarchicalScheduler::second_level(const SecondLevelKey& key)
{
    auto it = second_level_.find(key);
    if (it == second_level_.end()) {
        const auto n = structure_.stations[structure_.index_of(key.ap)].size();
        it = second_level_.emplace(key, Agent(n, theta_)).first;
    }
    return it->second;
}

HierarchicalScheduler::Selection HierarchicalScheduler::select(const Pair& p0, Rng& rng)
{
    const std::size_t sharing = structure_.index_of(p0.ap);
    const auto& own = structure_.stations[sharing];
    if (std::find(own.begin(), own.end(), p0.station) == own.end()) {
        throw std::invalid_argument("sharing pair is not an association of the topology");
    }

    HierarchicalDecision d;
    d.ticket = next_ticket_++;
    d.p0 = p0;
    d.first_level_arm = first_level(p0).sample(rng);

    const std::uint32_t transmitting = transmitting_mask(p0, d.first_level_arm);
    std::vector<Pair> pairs{p0};
    for (ApId ap : shared_aps(p0, d.first_level_arm)) {
        SecondLevelKey key{ap, transmitting};
        const std::size_t arm = second_level(key).sample(rng);
        d.second_level.push_back({key, arm});
        pairs.push_back({ap, structure_.stations[structure_.index_of(ap)][arm]});
    }
    pending_ticket_ = d.ticket;
    return {TransmissionSet(std::move(pairs)), std::move(d)};
}

void HierarchicalScheduler::update(const HierarchicalDecision& decision, double reward_bps)
{
    if (pending_ticket_ == 0 || decision.ticket != pending_ticket_) {
        throw std::logic_error("stale or unknown scheduling decision");
    }
    const double r = normalize_reward(reward_bps, theta_);
    for (const auto& choice : decision.second_level) {
        second_level_.at(choice.key).update(choice.arm, r);
    }
    first_level_.at(decision.p0).update(decision.first_level_arm, r);
    pending_ticket_ = 0;
}

const Agent* HierarchicalScheduler::first_level_agent(const Pair& p0) const
{
    auto it = first_level_.find(p0);
    return it == first_level_.end() ? nullptr : &it->second;
}

const Agent* HierarchicalScheduler::second_level_agent(const SecondLevelKey& key) const
{
    auto it = second_level_.find(key);
    return it == second_level_.end() ? nullptr : &it->second;
}

FlatScheduler::FlatScheduler(const Topology& topo, const Hyperparams& theta)
    : structure_(topo)
    , theta_(resolved(theta))
{
    const std::size_t n = structure_.aps.size();
    arms_.resize(n);
    for (std::size_t sharing = 0; sharing < n; ++sharing) {
        std::vector<std::size_t> others;
        for (std::size_t i = 0; i < n; ++i) {
            if (i != sharing) {
                others.push_back(i);
            }
        }
        // Subsets in increasing bitmask order; within a subset, station
        // choices in mixed-radix order with the lowest AP varying fastest.
        auto& list = arms_[sharing];
        for (std::size_t mask = 0; mask < (std::size_t{1} << others.size()); ++mask) {
            std::vector<std::size_t> members;
            for (std::size_t b = 0; b < others.size(); ++b) {
                if (mask & (std::size_t{1} << b)) {
                    members.push_back(others[b]);
                }
            }
            std::vector<std::size_t> digit(members.size(), 0);
            while (true) {
                std::vector<Pair> companions;
                for (std::size_t m = 0; m < members.size(); ++m) {
                    companions.push_back({structure_.aps[members[m]], structure_.stations[members[m]][digit[m]]});
                }
                list.push_back(std::move(companions));
                std::size_t m = 0;
                while (m < members.size() && ++digit[m] == structure_.stations[members[m]].size()) {
                    digit[m] = 0;
                    ++m;
                }
                if (m == members.size()) {
                    break;
                }
            }
        }
    }
}

std::size_t FlatScheduler::arm_count(ApId sharing_ap) const
{
    return arms_[structure_.index_of(sharing_ap)].size();
}

const std::vector<Pair>& FlatScheduler::companions(ApId sharing_ap, std::size_t arm) const
{
    return arms_[structure_.index_of(sharing_ap)].at(arm);
}

FlatScheduler::Selection FlatScheduler::select(const Pair& p0, Rng& rng)
{
    const std::size_t sharing = structure_.index_of(p0.ap);
    const auto& own = structure_.stations[sharing];
    if (std::find(own.begin(), own.end(), p0.station) == own.end()) {
        throw std::invalid_argument("sharing pair is not an association of the topology");
    }
    auto it = agents_.find(p0);
    if (it == agents_.end()) {
        it = agents_.emplace(p0, Agent(arms_[sharing].size(), theta_)).first;
    }
    FlatDecision d{next_ticket_++, p0, it->second.sample(rng)};
    std::vector<Pair> pairs{p0};
    const auto& comp = arms_[sharing][d.arm];
    pairs.insert(pairs.end(), comp.begin(), comp.end());
    pending_ticket_ = d.ticket;
    return {TransmissionSet(std::move(pairs)), d};
}

void FlatScheduler::update(const FlatDecision& decision, double reward_bps)
{
    if (pending_ticket_ == 0 || decision.ticket != pending_ticket_) {
        throw std::logic_error("stale or unknown scheduling decision");
    }
    agents_.at(decision.p0).update(decision.arm, normalize_reward(reward_bps, theta_));
    pending_ticket_ = 0;
}

const Agent* FlatScheduler::agent(const Pair& p0) const
{
    auto it = agents_.find(p0);
    return it == agents_.end() ? nullptr : &it->second;
}

TransmissionSet static_strategy(const Topology& topo, std::size_t k)
{
    const auto& aps = topo.aps();
    if (aps.size() != 4) {
        throw std::invalid_argument("static strategy requires the 4-AP square scenario");
    }
    Position center{};
    for (const auto& ap : aps) {
        center.x += ap.pos.x / 4.0;
        center.y += ap.pos.y / 4.0;
    }
    const double r0 = distance(aps[0].pos, center);
    const double tol = 1e-9 * std::max(1.0, r0);
    for (const auto& ap : aps) {
        if (std::abs(distance(ap.pos, center) - r0) > tol) {
            throw std::invalid_argument("static strategy requires APs on the corners of a square");
        }
    }
    // Corners equidistant from the centroid form a rectangle; require equal sides.
    std::vector<double> d;
    for (std::size_t i = 1; i < 4; ++i) {
        d.push_back(distance(aps[0].pos, aps[i].pos));
    }
    std::sort(d.begin(), d.end());
    if (r0 <= 0.0 || std::abs(d[0] - d[1]) > tol) {
        throw std::invalid_argument("static strategy requires APs on the corners of a square");
    }
    if (k < 1 || k > aps.size()) {
        throw std::invalid_argument("static strategy needs 1 <= k <= number of APs");
    }

    std::vector<std::size_t> chosen;
    std::size_t first = 0;
    for (std::size_t i = 1; i < aps.size(); ++i) {
        if (std::hypot(aps[i].pos.x, aps[i].pos.y) < std::hypot(aps[first].pos.x, aps[first].pos.y)) {
            first = i;
        }
    }
    chosen.push_back(first);
    while (chosen.size() < k) {
        std::size_t best = aps.size();
        double best_score = -1.0;
        for (std::size_t i = 0; i < aps.size(); ++i) {
            if (std::find(chosen.begin(), chosen.end(), i) != chosen.end()) {
                continue;
            }
            double score = 0.0;
            for (std::size_t c : chosen) {
                score += distance(aps[i].pos, aps[c].pos);
            }
            if (score > best_score + tol) {
                best_score = score;
                best = i;
            }
        }
        chosen.push_back(best);
    }

    std::vector<Pair> pairs;
    for (std::size_t i : chosen) {
        const auto& stations = topo.stations_of(aps[i].id);
        if (stations.empty()) {
            throw std::invalid_argument("AP without stations");
        }
        StationId outer = stations.front();
        double far = -1.0;
        for (StationId s : stations) {
            const double r = distance(topo.station_position(s), center);
            if (r > far + tol) {
                far = r;
                outer = s;
            }
        }
        pairs.push_back({aps[i].id, outer});
    }
    return TransmissionSet(std::move(pairs));
}

OracleResult oracle_best(const Topology& topo, const ChannelParams& ch, const McsTable& table,
                         const TxopConfig& cfg, std::size_t n_samples, Rng& rng)
{
    if (n_samples == 0) {
        throw std::invalid_argument("oracle needs at least one sample");
    }
    OracleResult out;
    for (std::size_t k = 1; k <= topo.ap_count(); ++k) {
        const auto set = static_strategy(topo, k);
        double total = 0.0;
        for (std::size_t s = 0; s < n_samples; ++s) {
            total += simulate_txop(set, topo, ch, table, cfg, rng).effective_rate_bps;
        }
        out.mean_rate_bps.push_back(total / static_cast<double>(n_samples));
    }
    // Smallest k wins ties.
    out.best_k = 1 + static_cast<std::size_t>(
        std::max_element(out.mean_rate_bps.begin(), out.mean_rate_bps.end()) - out.mean_rate_bps.begin());
    return out;
}

} // namespace csr
