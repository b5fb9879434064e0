#include "csr/rng.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

using namespace csr;

namespace {

double binomial_pmf(unsigned n, double p, unsigned k)
{
    return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) + k * std::log(p) +
                    (n - k) * std::log1p(-p));
}

} // namespace

TEST_CASE("same seed, same sequence")
{
    Rng a(42), b(42);
    for (int i = 0; i < 1000; ++i) {
        REQUIRE(a.next_u64() == b.next_u64());
    }
}

TEST_CASE("named streams are distinct and stable")
{
    std::set<std::uint64_t> seeds;
    for (std::uint64_t master = 0; master < 50; ++master) {
        for (std::uint64_t id = 0; id < 6; ++id) {
            seeds.insert(Rng::derive_seed(master, id));
        }
    }
    CHECK(seeds.size() == 300);
    CHECK(Rng::derive_seed(7, 3) == Rng::derive_seed(7, 3));
    Rng a = Rng::for_stream(7, Stream::agents);
    Rng b(Rng::derive_seed(7, 2));
    CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("uniform lies in [0, 1) with the right mean")
{
    Rng rng(1);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(std::abs(sum / n - 0.5) < 3.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST_CASE("index is uniform")
{
    Rng rng(2);
    for (std::uint64_t k : {2u, 3u, 7u, 13u}) {
        std::vector<std::uint64_t> counts(k);
        for (int i = 0; i < 20000; ++i) {
            const auto v = rng.index(k);
            REQUIRE(v < k);
            ++counts[v];
        }
        CHECK(test::chi_square_uniform(counts) < test::chi_square_999(k - 1));
    }
    CHECK_THROWS(rng.index(0));
    CHECK(rng.integer(5, 5) == 5);
    CHECK_THROWS(rng.integer(3, 2));
}

TEST_CASE("normal moments")
{
    Rng rng(3);
    const int n = 100000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = rng.normal(1.5, 2.0);
        REQUIRE(std::isfinite(z));
        sum += z;
        sq += z * z;
    }
    const double mean = sum / n;
    const double var = sq / n - mean * mean;
    CHECK(std::abs(mean - 1.5) < 3.0 * 2.0 / std::sqrt(n));
    CHECK(std::abs(var - 4.0) < 0.1);
}

TEST_CASE("binomial matches the exact distribution")
{
    Rng rng(4);
    struct Case { unsigned n; double p; };
    for (const Case c : {Case{66, 0.3}, Case{66, 0.85}, Case{4, 0.5}, Case{10, 0.05}, Case{66, 0.999}}) {
        const int draws = 20000;
        std::vector<double> counts(c.n + 1, 0.0);
        for (int i = 0; i < draws; ++i) {
            const auto k = rng.binomial(c.n, c.p);
            REQUIRE(k <= c.n);
            counts[k] += 1.0;
        }
        // Pool cells with small expectation into a single tail bin.
        double chi2 = 0.0, pooled_obs = 0.0, pooled_exp = 0.0;
        std::size_t bins = 0;
        for (unsigned k = 0; k <= c.n; ++k) {
            const double e = draws * binomial_pmf(c.n, c.p, k);
            if (e < 5.0) {
                pooled_obs += counts[k];
                pooled_exp += e;
                continue;
            }
            chi2 += (counts[k] - e) * (counts[k] - e) / e;
            ++bins;
        }
        if (pooled_exp > 0.0) {
            chi2 += (pooled_obs - pooled_exp) * (pooled_obs - pooled_exp) / std::max(pooled_exp, 1.0);
            ++bins;
        }
        INFO("n=" << c.n << " p=" << c.p);
        // Generous bound: chi-square mean is dof, sd sqrt(2 dof).
        const double dof = static_cast<double>(bins) - 1.0;
        CHECK(chi2 < dof + 5.0 * std::sqrt(2.0 * dof) + 10.0);
    }
}

TEST_CASE("binomial edge cases consume exactly one draw")
{
    for (const double p : {0.0, 1.0, 0.3, 0.7}) {
        Rng a(9), b(9);
        const auto k = a.binomial(20, p);
        b.uniform();
        CHECK(a.next_u64() == b.next_u64());
        if (p == 0.0) CHECK(k == 0);
        if (p == 1.0) CHECK(k == 20);
    }
    Rng rng(10);
    CHECK(rng.binomial(0, 0.5) == 0);
}
