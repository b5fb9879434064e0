#include "csr/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace csr {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Inversion for p <= 0.5; the starting mass (1-p)^n stays representable for
// every n used by TXOP sizing.
std::uint32_t binomial_inversion(std::uint32_t n, double p, double u)
{
    const double q = 1.0 - p;
    const double ratio = p / q;
    double pmf = std::exp(static_cast<double>(n) * std::log1p(-p));
    double cdf = pmf;
    std::uint32_t k = 0;
    while (u >= cdf && k < n) {
        pmf *= ratio * static_cast<double>(n - k) / static_cast<double>(k + 1);
        ++k;
        cdf += pmf;
    }
    return k;
}

} // namespace

std::uint64_t Rng::derive_seed(std::uint64_t master, std::uint64_t stream_id)
{
    return splitmix64(splitmix64(master) ^ splitmix64(stream_id + 0x5851F42D4C957F2DULL));
}

double Rng::uniform()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::index(std::uint64_t n)
{
    if (n == 0) {
        throw std::invalid_argument("Rng::index: empty range");
    }
    // Rejection sampling removes modulo bias.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v = engine_();
    while (v >= limit) {
        v = engine_();
    }
    return v % n;
}

std::int64_t Rng::integer(std::int64_t lo, std::int64_t hi)
{
    if (hi < lo) {
        throw std::invalid_argument("Rng::integer: hi < lo");
    }
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(index(span));
}

double Rng::normal(double mean, double stddev)
{
    const double u1 = 1.0 - uniform(); // (0, 1]
    const double u2 = uniform();
    const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    return mean + stddev * z;
}

std::uint32_t Rng::binomial(std::uint32_t n, double p)
{
    const double u = uniform();
    if (n == 0 || p <= 0.0) {
        return 0;
    }
    if (p >= 1.0) {
        return n;
    }
    if (p > 0.5) {
        return n - binomial_inversion(n, 1.0 - p, 1.0 - u);
    }
    return binomial_inversion(n, p, u);
}

} // namespace csr
