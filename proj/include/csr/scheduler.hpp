#pragma once

#include "csr/bandit.hpp"
#include "csr/channel.hpp"
#include "csr/rng.hpp"
#include "csr/topology.hpp"
#include "csr/txop.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace csr {

/// AP/station structure the schedulers learn over. Positions are not part
/// of it, so agents survive mobility events unchanged.
struct NetworkStructure {
    std::vector<ApId> aps;                        // canonical order
    std::vector<std::vector<StationId>> stations; // parallel to aps

    explicit NetworkStructure(const Topology& topo);
    std::size_t index_of(ApId ap) const;
    std::size_t total_stations() const;
};

/// Sharing AP uniformly at random, then its recipient uniformly among its stations.
Pair draw_p0(const Topology& topo, Rng& rng);

/// Second-level agent key: a shared AP together with the full set of
/// transmitting APs, given as a bitmask over canonical AP indices.
struct SecondLevelKey {
    ApId ap;
    std::uint32_t transmitting;

    friend auto operator<=>(const SecondLevelKey&, const SecondLevelKey&) = default;
};

struct SecondLevelChoice {
    SecondLevelKey key;
    std::size_t arm;
};

/// What select() decided, handed back to update().
struct HierarchicalDecision {
    std::uint64_t ticket = 0;
    Pair p0{};
    std::size_t first_level_arm = 0;
    std::vector<SecondLevelChoice> second_level;
};

/// Two-level group selection. First-level agents are keyed by the sharing
/// pair and choose the subset of other APs (arm = bitmask over the other
/// APs in canonical order); second-level agents are keyed by (shared AP,
/// transmitting set) and choose that AP's recipient. Agents are created on
/// first use.
class HierarchicalScheduler {
public:
    struct Selection {
        TransmissionSet set;
        HierarchicalDecision decision;
    };

    HierarchicalScheduler(const Topology& topo, const Hyperparams& theta);

    Selection select(const Pair& p0, Rng& rng);
    /// Applies the normalized reward to the second-level agents of the
    /// decision, then to its first-level agent. Throws unless `decision` is
    /// the one returned by the most recent select().
    void update(const HierarchicalDecision& decision, double reward_bps);

    /// Shared APs encoded by a first-level arm of the agent keyed by p0.
    std::vector<ApId> shared_aps(const Pair& p0, std::size_t arm) const;
    std::size_t first_level_arms() const { return std::size_t{1} << (structure_.aps.size() - 1); }
    std::uint32_t transmitting_mask(const Pair& p0, std::size_t arm) const;

    const Agent* first_level_agent(const Pair& p0) const;
    const Agent* second_level_agent(const SecondLevelKey& key) const;
    std::size_t first_level_agent_count() const { return first_level_.size(); }
    std::size_t second_level_agent_count() const { return second_level_.size(); }

    const NetworkStructure& structure() const { return structure_; }
    const Hyperparams& hyperparams() const { return theta_; }

private:
    Agent& first_level(const Pair& p0);
    Agent& second_level(const SecondLevelKey& key);

    NetworkStructure structure_;
    Hyperparams theta_;
    std::map<Pair, Agent> first_level_;
    std::map<SecondLevelKey, Agent> second_level_;
    std::uint64_t next_ticket_ = 1;
    std::uint64_t pending_ticket_ = 0;
};

struct FlatDecision {
    std::uint64_t ticket = 0;
    Pair p0{};
    std::size_t arm = 0;
};

/// Non-hierarchical baseline: one agent per sharing pair whose arms
/// enumerate every complete set of companion pairs.
class FlatScheduler {
public:
    struct Selection {
        TransmissionSet set;
        FlatDecision decision;
    };

    FlatScheduler(const Topology& topo, const Hyperparams& theta);

    Selection select(const Pair& p0, Rng& rng);
    void update(const FlatDecision& decision, double reward_bps);

    std::size_t arm_count(ApId sharing_ap) const;
    /// Companion pairs (possibly none) encoded by an arm.
    const std::vector<Pair>& companions(ApId sharing_ap, std::size_t arm) const;

    const Agent* agent(const Pair& p0) const;
    std::size_t agent_count() const { return agents_.size(); }
    const NetworkStructure& structure() const { return structure_; }

private:
    NetworkStructure structure_;
    Hyperparams theta_;
    std::vector<std::vector<std::vector<Pair>>> arms_; // [sharing AP index][arm] -> companions
    std::map<Pair, Agent> agents_;
    std::uint64_t next_ticket_ = 1;
    std::uint64_t pending_ticket_ = 0;
};

inline TransmissionSet single_tx(const Pair& p0)
{
    return TransmissionSet{p0};
}

/// Fixed best-case strategy on the square scenario: k APs, diagonal pair
/// first, each serving its station farthest from the square's center.
TransmissionSet static_strategy(const Topology& topo, std::size_t k);

struct OracleResult {
    std::size_t best_k = 1;
    std::vector<double> mean_rate_bps; // index k-1
};

/// Monte-Carlo mean effective rate of static_strategy(k) for every k.
OracleResult oracle_best(const Topology& topo, const ChannelParams& ch, const McsTable& table,
                         const TxopConfig& cfg, std::size_t n_samples, Rng& rng);

} // namespace csr
