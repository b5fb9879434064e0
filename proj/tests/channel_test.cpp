#include "csr/channel.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

using namespace csr;

namespace {

// Reference path loss written independently of the library.
double reference_loss(double d, int walls, double fc, double bp, double wall_db)
{
    const double delta = d < 1.0 ? 1.0 : d;
    const double near = delta < bp ? delta : bp;
    const double far = delta > bp ? 35.0 * std::log10(delta / bp) : 0.0;
    return 40.05 + 20.0 * std::log10(near * fc / 2.4) + far + wall_db * walls;
}

// 802.11ax PHY rate for 20 MHz / 1 SS / 800 ns GI, rounded to 0.1 Mb/s.
double phy_rate_mbps(int bits_per_subcarrier, double coding_rate)
{
    const double raw = 234.0 * bits_per_subcarrier * coding_rate / 13.6e-6 / 1e6;
    return std::round(raw * 10.0) / 10.0;
}

Topology line_topology(double ap_gap, double station_offset)
{
    // Two APs facing each other; each station sits `station_offset` towards the other AP.
    return Topology({{ApId{0}, {0, 0}}, {ApId{1}, {ap_gap, 0}}},
                    {{StationId{0}, {station_offset, 0}, ApId{0}}, {StationId{1}, {ap_gap - station_offset, 0}, ApId{1}}});
}

} // namespace

TEST_CASE("path_loss reference values")
{
    ChannelParams p;
    SUBCASE("unit distance at 2.4 GHz") {
        p.carrier_freq_ghz = 2.4;
        CHECK(path_loss(1.0, 0, p) == 40.05);
    }
    SUBCASE("at the breakpoint") {
        CHECK(std::abs(path_loss(10.0, 0, p) - 66.43) < 0.01);
    }
    SUBCASE("beyond the breakpoint with two walls") {
        CHECK(std::abs(path_loss(20.0, 2, p) - 90.96) < 0.01);
    }
    SUBCASE("distance is clamped to 1 m") {
        CHECK(path_loss(0.0, 0, p) == path_loss(1.0, 0, p));
        CHECK(path_loss(0.3, 1, p) == path_loss(1.0, 1, p));
    }
}

TEST_CASE("path_loss matches the reference formula on random input")
{
    Rng rng(5);
    for (int i = 0; i < 2000; ++i) {
        ChannelParams p;
        p.carrier_freq_ghz = rng.uniform(1.0, 7.0);
        p.breakpoint_m = rng.uniform(1.0, 30.0);
        p.wall_penalty_db = rng.uniform(0.0, 15.0);
        const double d = rng.uniform(0.0, 100.0);
        const int w = static_cast<int>(rng.integer(0, 5));
        REQUIRE(path_loss(d, w, p) == doctest::Approx(reference_loss(d, w, p.carrier_freq_ghz, p.breakpoint_m, p.wall_penalty_db)).epsilon(1e-12));
    }
}

TEST_CASE("path_loss monotonicity and continuity")
{
    const ChannelParams p;
    Rng rng(6);
    for (int i = 0; i < 2000; ++i) {
        const double a = rng.uniform(0.0, 80.0);
        const double b = a + rng.uniform(0.0, 20.0);
        const int w = static_cast<int>(rng.integer(0, 4));
        REQUIRE(path_loss(a, w, p) <= path_loss(b, w, p));
        REQUIRE(path_loss(a, w, p) < path_loss(a, w + 1, p));
    }
    CHECK(std::abs(path_loss(p.breakpoint_m - 1e-9, 0, p) - path_loss(p.breakpoint_m + 1e-9, 0, p)) < 1e-6);
}

TEST_CASE("rx_power")
{
    CHECK(rx_power(16.0206, 66.43) == 16.0206 - 66.43);
    CHECK(std::abs(rx_power(16.0206, 66.43) - (-50.41)) < 0.005);
    CHECK(rx_power(0.0, 0.0) == 0.0);
    CHECK(std::abs(rx_power(16.0206, 40.05) - (-24.03)) < 0.005);
}

TEST_CASE("sinr: isolated link")
{
    const ChannelParams p;
    const Topology t({{ApId{0}, {0, 0}}}, {{StationId{0}, {10, 0}, ApId{0}}});
    const Pair link{ApId{0}, StationId{0}};
    const TransmissionSet active{link};
    const double s = sinr(link, active, t, p, 0.0);
    CHECK(std::abs(s - 43.56) < 0.01);
    CHECK(std::abs(s - (p.tx_power_dbm - path_loss(10.0, 0, p) + 93.97)) < 1e-9);
    CHECK(sinr(link, active, t, p, 2.0) == doctest::Approx(s + 2.0).epsilon(1e-15));
}

TEST_CASE("sinr: symmetric interfering links")
{
    const ChannelParams p;
    const Topology t = line_topology(20.0, 3.0);
    const Pair a{ApId{0}, StationId{0}}, b{ApId{1}, StationId{1}};
    const TransmissionSet active{a, b};
    CHECK(sinr(a, active, t, p, 0.0) == sinr(b, active, t, p, 0.0));
}

TEST_CASE("sinr: walls attenuate interferers")
{
    const ChannelParams p;
    const Pair a{ApId{0}, StationId{0}}, b{ApId{1}, StationId{1}};
    const TransmissionSet active{a, b};
    const Topology open = line_topology(20.0, 3.0);
    const Topology walled(open.aps(), open.stations(), {Wall{{10, -5}, {10, 5}}});
    CHECK(sinr(a, active, walled, p, 0.0) > sinr(a, active, open, p, 0.0));
}

TEST_CASE("sinr: without interferers equals TX - PL - noise floor")
{
    const ChannelParams p;
    Rng rng(7);
    for (int i = 0; i < 500; ++i) {
        const Topology t = test::random_topology(rng, {1}, 60.0, 3);
        const auto& st = t.stations().front();
        const Pair link{ApId{0}, st.id};
        const double expected = p.tx_power_dbm - link_loss(t.ap_position(ApId{0}), st.pos, t, p) - p.noise_floor_dbm;
        REQUIRE(std::abs(sinr(link, TransmissionSet{link}, t, p, 0.0) - expected) < 1e-9);
    }
}

TEST_CASE("sinr: adding an interferer strictly lowers SINR")
{
    const ChannelParams p;
    Rng rng(8);
    for (int i = 0; i < 500; ++i) {
        const Topology t = test::random_topology(rng, {1, 1, 1, 1}, 60.0, 2);
        std::vector<Pair> pairs;
        for (const auto& s : t.stations()) pairs.push_back({s.ap, s.id});
        const std::size_t k = static_cast<std::size_t>(rng.integer(1, 3));
        const TransmissionSet smaller(std::vector<Pair>(pairs.begin(), pairs.begin() + static_cast<std::ptrdiff_t>(k)));
        const TransmissionSet larger(std::vector<Pair>(pairs.begin(), pairs.begin() + static_cast<std::ptrdiff_t>(k) + 1));
        const double eps = rng.normal(0.0, 2.0);
        REQUIRE(sinr(pairs[0], larger, t, p, eps) < sinr(pairs[0], smaller, t, p, eps));
    }
}

TEST_CASE("success_probability")
{
    const McsTable table = McsTable::default_table();
    const auto& c = table.curve(11);
    CHECK(success_probability(c.midpoint_db, 11, table) == 0.5);
    CHECK(success_probability(c.midpoint_db + 40.0, 11, table) >= 0.999999);
    CHECK(success_probability(-std::numeric_limits<double>::infinity(), 11, table) == 0.0);
    CHECK(success_probability(std::numeric_limits<double>::infinity(), 11, table) == 1.0);
    CHECK(success_probability(c.midpoint_db + 10.0, 11, table) > 0.99);
    CHECK_THROWS_WITH_AS(success_probability(10.0, 12, table), doctest::Contains("MCS not in table"), std::out_of_range);
}

TEST_CASE("success_probability is bounded and monotone")
{
    const McsTable table = McsTable::default_table();
    Rng rng(9);
    for (int i = 0; i < 5000; ++i) {
        const int mcs = static_cast<int>(rng.integer(0, 11));
        const double a = rng.uniform(-100.0, 100.0);
        const double b = a + rng.uniform(0.0, 10.0);
        const double pa = success_probability(a, mcs, table);
        const double pb = success_probability(b, mcs, table);
        REQUIRE(pa >= 0.0);
        REQUIRE(pb <= 1.0);
        REQUIRE(pa <= pb);
    }
}

TEST_CASE("data_rate matches the PHY rate formula")
{
    const McsTable table = McsTable::default_table();
    struct Mod { int bits; double rate; };
    const Mod mods[12] = {{1, 1.0 / 2}, {2, 1.0 / 2}, {2, 3.0 / 4}, {4, 1.0 / 2}, {4, 3.0 / 4}, {6, 2.0 / 3},
                          {6, 3.0 / 4}, {6, 5.0 / 6}, {8, 3.0 / 4}, {8, 5.0 / 6}, {10, 3.0 / 4}, {10, 5.0 / 6}};
    for (int mcs = 0; mcs < 12; ++mcs) {
        CHECK(data_rate(mcs, 20, 1, 800, table) == doctest::Approx(phy_rate_mbps(mods[mcs].bits, mods[mcs].rate) * 1e6));
    }
    CHECK(data_rate(11, 20, 1, 800, table) == doctest::Approx(143.4e6));
    CHECK(data_rate(0, 20, 1, 800, table) == doctest::Approx(8.6e6));
    CHECK(data_rate(11, 20, 1, 800, table) == data_rate(11, 20, 1, 800, table));
    CHECK_THROWS_AS(data_rate(11, 40, 1, 800, table), std::out_of_range);
}

TEST_CASE("McsTable: default table is valid and round-trips through text")
{
    const McsTable table = McsTable::default_table();
    CHECK_NOTHROW(table.require_valid());
    const McsTable back = McsTable::parse(table.to_text());
    CHECK(back.rates() == table.rates());
    for (const auto& [mcs, c] : table.curves()) {
        CHECK(back.curve(mcs).midpoint_db == c.midpoint_db);
        CHECK(back.curve(mcs).steepness_per_db == c.steepness_per_db);
    }
}

TEST_CASE("McsTable: shipped data file equals the built-in table")
{
    const McsTable file = McsTable::load(CSR_SOURCE_DIR "/data/mcs_table.txt");
    const McsTable builtin = McsTable::default_table();
    CHECK(file.rates() == builtin.rates());
    for (const auto& [mcs, c] : builtin.curves()) {
        CHECK(file.curve(mcs).midpoint_db == c.midpoint_db);
    }
}

TEST_CASE("McsTable: parse errors")
{
    CHECK_THROWS_WITH(McsTable::parse("11 20 1 800 143400000 25\n"), doctest::Contains("expected 7 columns"));
    CHECK_THROWS_WITH(McsTable::parse("11 20 1 800 143400000 25 0.5 9\n"), doctest::Contains("trailing data"));
    CHECK_THROWS_WITH(McsTable::parse("0 20 1 800 2e6 5 0.5\n1 20 1 800 1e6 6 0.5\n"), doctest::Contains("not increasing"));
    CHECK_THROWS_WITH(McsTable::parse("0 20 1 800 1e6 5 0.5\n1 20 1 800 2e6 4 0.5\n"), doctest::Contains("midpoint"));
    CHECK_THROWS_AS(McsTable::parse("0 20 1 800 1e6 5 0.5\n0 40 1 800 2e6 6 0.5\n"), std::invalid_argument);
    CHECK_THROWS_AS(McsTable::parse("0 20 1 800 -1 5 0.5\n"), std::invalid_argument);
    CHECK_NOTHROW(McsTable::parse("# comment only\n\n0 20 1 800 1e6 5 0.5  # trailing comment\n"));
    CHECK_THROWS_AS(McsTable::load("/nonexistent/mcs.txt"), std::runtime_error);
}

TEST_CASE("ChannelParams validation")
{
    ChannelParams p;
    CHECK_NOTHROW(p.require_valid());
    p.breakpoint_m = 0.0;
    CHECK_THROWS_AS(p.require_valid(), std::invalid_argument);
    p = {};
    p.sinr_noise_std_db = -1.0;
    CHECK_THROWS_AS(p.require_valid(), std::invalid_argument);
    p = {};
    p.carrier_freq_ghz = 0.0;
    CHECK_THROWS_AS(p.require_valid(), std::invalid_argument);
}
