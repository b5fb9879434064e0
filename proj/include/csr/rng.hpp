#pragma once

#include <cstdint>
#include <random>

namespace csr {

/// Named randomness consumers of a simulation run. Each gets its own
/// sub-stream derived from the master seed; new consumers take new ids so
/// that existing streams are never perturbed.
enum class Stream : std::uint64_t {
    scenario = 0,
    sharing_ap = 1,
    agents = 2,
    channel_noise = 3,
    reception = 4,
    evaluation = 5,
};

/// Seeded random stream. All variates are produced by explicit transforms of
/// the mt19937_64 output so that results do not depend on the standard
/// library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    /// Seed for a named sub-stream: two rounds of splitmix64 over
    /// (master, stream id).
    static std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream_id);
    static Rng for_stream(std::uint64_t master, Stream s)
    {
        return Rng(derive_seed(master, static_cast<std::uint64_t>(s)));
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 bits of resolution.
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n); n must be positive.
    std::uint64_t index(std::uint64_t n);
    /// Uniform integer in [lo, hi].
    std::int64_t integer(std::int64_t lo, std::int64_t hi);

    /// Normal variate via Box-Muller (one value per call).
    double normal(double mean = 0.0, double stddev = 1.0);

    /// Binomial(n, p) by CDF inversion from a single uniform draw.
    std::uint32_t binomial(std::uint32_t n, double p);

private:
    std::mt19937_64 engine_;
};

} // namespace csr
