#include "csr/bandit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace csr {

std::string_view to_string(Algorithm a)
{
    switch (a) {
    case Algorithm::epsilon_greedy: return "egreedy";
    case Algorithm::softmax: return "softmax";
    case Algorithm::ucb: return "ucb";
    case Algorithm::thompson: return "ts";
    }
    return "unknown";
}

Algorithm parse_algorithm(std::string_view name)
{
    if (name == "egreedy" || name == "epsilon-greedy" || name == "epsilon_greedy") {
        return Algorithm::epsilon_greedy;
    }
    if (name == "softmax") {
        return Algorithm::softmax;
    }
    if (name == "ucb") {
        return Algorithm::ucb;
    }
    if (name == "ts" || name == "thompson") {
        return Algorithm::thompson;
    }
    throw std::invalid_argument("unknown algorithm: " + std::string(name));
}

void Hyperparams::require_valid() const
{
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw std::invalid_argument("epsilon must lie in [0, 1]");
    }
    if (!(epsilon_decay > 0.0 && epsilon_decay <= 1.0)) {
        throw std::invalid_argument("epsilon decay must lie in (0, 1]");
    }
    if (!(temperature > 0.0)) {
        throw std::invalid_argument("softmax temperature must be positive");
    }
    if (!(ucb_c >= 0.0)) {
        throw std::invalid_argument("UCB exploration constant must be nonnegative");
    }
    if (!(ts_prior_var > 0.0) || !(ts_obs_var > 0.0)) {
        throw std::invalid_argument("TS variances must be positive");
    }
    if (!(gamma > 0.0 && gamma <= 1.0)) {
        throw std::invalid_argument("discount factor must lie in (0, 1]");
    }
    if (!(reward_scale >= 0.0)) {
        throw std::invalid_argument("reward scale must be nonnegative");
    }
}

double normalize_reward(double raw_bps, const Hyperparams& theta)
{
    if (!(theta.reward_scale > 0.0)) {
        throw std::logic_error("reward scale not resolved");
    }
    return raw_bps / theta.reward_scale;
}

Agent::Agent(std::size_t n_arms, const Hyperparams& theta)
    : theta_(theta)
    , sums_(n_arms, 0.0)
    , counts_(n_arms, 0.0)
    , plays_(n_arms, 0)
    , epsilon_(theta.epsilon)
{
    if (n_arms == 0) {
        throw std::invalid_argument("agent needs at least one arm");
    }
    theta_.require_valid();
}

double Agent::value(std::size_t arm) const
{
    const double n = counts_.at(arm);
    return n > 0.0 ? sums_[arm] / n : 0.0;
}

double Agent::ucb_index(std::size_t arm) const
{
    if (plays_.at(arm) == 0) {
        return std::numeric_limits<double>::infinity();
    }
    double total = 0.0;
    for (double n : counts_) {
        total += n;
    }
    const double log_total = std::max(0.0, std::log(total));
    return value(arm) + theta_.ucb_c * std::sqrt(log_total / counts_[arm]);
}

std::vector<double> Agent::softmax_probabilities() const
{
    std::vector<double> logits(n_arms());
    for (std::size_t i = 0; i < n_arms(); ++i) {
        logits[i] = value(i) / theta_.temperature;
    }
    const double top = *std::max_element(logits.begin(), logits.end());
    double z = 0.0;
    for (double& l : logits) {
        l = std::exp(l - top);
        z += l;
    }
    for (double& l : logits) {
        l /= z;
    }
    return logits;
}

std::pair<double, double> Agent::posterior(std::size_t arm) const
{
    const double precision = 1.0 / theta_.ts_prior_var + counts_.at(arm) / theta_.ts_obs_var;
    const double mean = (theta_.ts_prior_mean / theta_.ts_prior_var + sums_[arm] / theta_.ts_obs_var) / precision;
    return {mean, 1.0 / precision};
}

std::size_t Agent::argmax_random_tie(const std::vector<double>& scores, Rng& rng) const
{
    const double best = *std::max_element(scores.begin(), scores.end());
    std::vector<std::size_t> tied;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (scores[i] == best) {
            tied.push_back(i);
        }
    }
    return tied.size() == 1 ? tied.front() : tied[rng.index(tied.size())];
}

std::size_t Agent::sample(Rng& rng) const
{
    const std::size_t k = n_arms();
    if (k == 1) {
        return 0;
    }
    std::vector<double> scores(k);
    switch (theta_.algorithm) {
    case Algorithm::epsilon_greedy:
        if (rng.uniform() < epsilon_) {
            return rng.index(k);
        }
        for (std::size_t i = 0; i < k; ++i) {
            scores[i] = value(i);
        }
        return argmax_random_tie(scores, rng);

    case Algorithm::softmax: {
        const auto probs = softmax_probabilities();
        const double u = rng.uniform();
        double acc = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            acc += probs[i];
            if (u < acc) {
                return i;
            }
        }
        // Rounding left u above the final partial sum.
        for (std::size_t i = k; i-- > 0;) {
            if (probs[i] > 0.0) {
                return i;
            }
        }
        return k - 1;
    }

    case Algorithm::ucb:
        for (std::size_t i = 0; i < k; ++i) {
            scores[i] = ucb_index(i);
        }
        return argmax_random_tie(scores, rng);

    case Algorithm::thompson:
        for (std::size_t i = 0; i < k; ++i) {
            const auto [mean, var] = posterior(i);
            scores[i] = rng.normal(mean, std::sqrt(var));
        }
        return argmax_random_tie(scores, rng);
    }
    throw std::logic_error("unhandled algorithm");
}

void Agent::update(std::size_t arm, double reward)
{
    if (arm >= n_arms()) {
        throw std::out_of_range("arm " + std::to_string(arm) + " out of range for " + std::to_string(n_arms()) +
                                "-armed agent");
    }
    if (!std::isfinite(reward)) {
        throw std::invalid_argument("reward must be finite");
    }
    if (theta_.gamma < 1.0) {
        for (std::size_t i = 0; i < n_arms(); ++i) {
            sums_[i] *= theta_.gamma;
            counts_[i] *= theta_.gamma;
        }
    }
    sums_[arm] += reward;
    counts_[arm] += 1.0;
    ++plays_[arm];
    ++steps_;
    epsilon_ *= theta_.epsilon_decay;
}

} // namespace csr
