#pragma once

#include "csr/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace csr {

enum class Algorithm { epsilon_greedy, softmax, ucb, thompson };

std::string_view to_string(Algorithm a);
/// Accepts "egreedy"/"epsilon-greedy", "softmax", "ucb", "ts"/"thompson".
Algorithm parse_algorithm(std::string_view name);

/// Agent hyperparameters. Fields irrelevant to `algorithm` are ignored.
struct Hyperparams {
    Algorithm algorithm = Algorithm::ucb;
    double epsilon = 0.1;
    double epsilon_decay = 1.0;
    double temperature = 0.1;
    double ucb_c = 0.1;
    double ts_prior_mean = 0.0;
    double ts_prior_var = 1.0;
    double ts_obs_var = 0.1;
    /// Exponential forgetting applied to all arm statistics per update.
    double gamma = 1.0;
    /// Raw rewards are divided by this before reaching the agents; zero means
    /// "use the single-link maximum effective rate".
    double reward_scale = 0.0;

    void require_valid() const;

    friend bool operator==(const Hyperparams&, const Hyperparams&) = default;
};

double normalize_reward(double raw_bps, const Hyperparams& theta);

/// Finite-action bandit agent with discounted statistics. Every algorithm
/// keeps the same per-arm discounted reward sum and count; the value
/// estimate is their ratio.
class Agent {
public:
    Agent(std::size_t n_arms, const Hyperparams& theta);

    std::size_t sample(Rng& rng) const;
    void update(std::size_t arm, double reward);

    std::size_t n_arms() const { return sums_.size(); }
    Algorithm algorithm() const { return theta_.algorithm; }
    const Hyperparams& hyperparams() const { return theta_; }

    /// Discounted mean reward (0 for arms never played).
    double value(std::size_t arm) const;
    double count(std::size_t arm) const { return counts_.at(arm); }
    std::uint64_t plays(std::size_t arm) const { return plays_.at(arm); }
    std::uint64_t steps() const { return steps_; }
    double current_epsilon() const { return epsilon_; }

    /// UCB index of an arm; +inf for arms never played.
    double ucb_index(std::size_t arm) const;
    /// Softmax selection distribution over arms.
    std::vector<double> softmax_probabilities() const;
    /// Normal posterior (mean, variance) of an arm's reward.
    std::pair<double, double> posterior(std::size_t arm) const;

    friend bool operator==(const Agent&, const Agent&) = default;

private:
    std::size_t argmax_random_tie(const std::vector<double>& scores, Rng& rng) const;

    Hyperparams theta_;
    std::vector<double> sums_;
    std::vector<double> counts_;
    std::vector<std::uint64_t> plays_;
    std::uint64_t steps_ = 0;
    double epsilon_;
};

} // namespace csr
