#include "csr/scenario.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace csr;

TEST_CASE("square_scenario geometry")
{
    const Topology t = square_scenario(10.0, 2.0);
    CHECK(t.ap_position(ApId{0}) == Position{0, 0});
    CHECK(t.ap_position(ApId{1}) == Position{10, 0});
    CHECK(t.ap_position(ApId{2}) == Position{0, 10});
    CHECK(t.ap_position(ApId{3}) == Position{10, 10});
    const Position ne = t.station_position(StationId{0});
    CHECK(ne.x == doctest::Approx(1.414).epsilon(1e-3));
    CHECK(ne.y == doctest::Approx(1.414).epsilon(1e-3));
    CHECK(ne.x == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    for (const auto& s : t.stations()) {
        CHECK(distance(s.pos, t.ap_position(s.ap)) == doctest::Approx(2.0).epsilon(1e-12));
    }
    CHECK(t.walls() == default_square_walls(10.0));
    CHECK_THROWS_AS(square_scenario(10.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(square_scenario(0.0, 2.0), std::invalid_argument);
}

TEST_CASE("square_scenario is always valid")
{
    Rng rng(1);
    for (int i = 0; i < 1000; ++i) {
        const double d = rng.uniform(0.01, 200.0);
        const double off = rng.uniform(0.01, 20.0);
        REQUIRE(validate(square_scenario(d, off)).empty());
    }
}

TEST_CASE("square_scenario stations are symmetric under a quarter turn")
{
    Rng rng(2);
    for (int i = 0; i < 200; ++i) {
        const double d = rng.uniform(1.0, 100.0);
        const Topology t = square_scenario(d, rng.uniform(0.1, 10.0), {});
        for (const auto& s : t.stations()) {
            // Rotate 90 degrees about the centre of the square.
            const Position r{d - s.pos.y, s.pos.x};
            bool matched = false;
            for (const auto& other : t.stations()) {
                if (std::abs(other.pos.x - r.x) < 1e-9 && std::abs(other.pos.y - r.y) < 1e-9) matched = true;
            }
            REQUIRE(matched);
        }
    }
}

TEST_CASE("square_script")
{
    SUBCASE("no move") {
        const auto s = square_script(10.0, 2000, std::nullopt);
        CHECK(s.events.empty());
        CHECK(s.total_txops == 2000);
    }
    SUBCASE("move to 3 m at the midpoint") {
        const auto s = square_script(20.0, 4000, 3.0);
        REQUIRE(s.events.size() == 1);
        CHECK(s.events[0].txop == 2000);
        const auto& moved = s.events[0].topology;
        CHECK(distance(moved.station_position(StationId{5}), moved.ap_position(ApId{1})) == doctest::Approx(3.0));
        CHECK(distance(s.initial.station_position(StationId{5}), s.initial.ap_position(ApId{1})) == doctest::Approx(2.0));
        CHECK_NOTHROW(s.require_valid());
    }
    SUBCASE("move to 4 m") {
        const auto s = square_script(30.0, 8001, 4.0);
        CHECK(s.events.at(0).txop == 4000);
    }
    CHECK_THROWS(square_script(10.0, 0, std::nullopt));
}

TEST_CASE("ScenarioScript validation")
{
    ScenarioScript s{square_scenario(10.0, 2.0), {}, 100};
    CHECK_NOTHROW(s.require_valid());
    s.events = {{50, square_scenario(10.0, 3.0)}, {50, square_scenario(10.0, 4.0)}};
    CHECK_THROWS(s.require_valid());
    s.events = {{100, square_scenario(10.0, 3.0)}};
    CHECK_THROWS(s.require_valid());
    s.events = {{10, Topology({{ApId{0}, {0, 0}}}, {{StationId{0}, {1, 0}, ApId{0}}})}};
    CHECK_THROWS(s.require_valid());
}

TEST_CASE("even_event_indices")
{
    CHECK(even_event_indices(1000, 3) == std::vector<std::size_t>{250, 500, 750});
    CHECK(even_event_indices(1000, 0).empty());
    CHECK(even_event_indices(2000, 1) == std::vector<std::size_t>{1000});
}

TEST_CASE("random_scenario respects the spec")
{
    Rng rng(3);
    const RandomScenarioSpec spec;
    for (int i = 0; i < 1000; ++i) {
        const auto s = random_scenario(spec, rng);
        REQUIRE_NOTHROW(s.require_valid());
        REQUIRE(validate(s.initial).empty());
        const auto n = s.initial.ap_count();
        REQUIRE(n >= 2);
        REQUIRE(n <= 5);
        REQUIRE(s.initial.walls().empty());
        for (const auto& ap : s.initial.aps()) {
            const auto k = s.initial.stations_of(ap.id).size();
            REQUIRE(k >= 3);
            REQUIRE(k <= 5);
        }
        std::vector<const Topology*> all{&s.initial};
        for (const auto& e : s.events) all.push_back(&e.topology);
        for (const Topology* t : all) {
            for (const auto& ap : t->aps()) {
                REQUIRE(ap.pos.x >= 0.0);
                REQUIRE(ap.pos.x <= spec.area_m);
                REQUIRE(ap.pos.y >= 0.0);
                REQUIRE(ap.pos.y <= spec.area_m);
            }
            for (const auto& st : t->stations()) {
                REQUIRE(st.pos.x >= 0.0);
                REQUIRE(st.pos.x <= spec.area_m);
                REQUIRE(st.pos.y >= 0.0);
                REQUIRE(st.pos.y <= spec.area_m);
            }
        }
        REQUIRE(s.events.size() == 3);
        REQUIRE(s.events[0].txop == 500);
        REQUIRE(s.events[2].txop == 1500);
    }
}

TEST_CASE("random_scenario station spread")
{
    RandomScenarioSpec spec;
    spec.sigma_min_m = 4.0;
    spec.sigma_max_m = 4.0;
    spec.area_m = 1e6;
    spec.reposition_events = 0;
    Rng rng(4);
    double sum = 0.0, sq = 0.0;
    std::size_t n = 0;
    while (n < 10000) {
        const auto s = random_scenario(spec, rng);
        for (const auto& st : s.initial.stations()) {
            const Position ap = s.initial.ap_position(st.ap);
            for (const double dx : {st.pos.x - ap.x, st.pos.y - ap.y}) {
                sum += dx;
                sq += dx * dx;
                ++n;
            }
        }
    }
    const double mean = sum / n;
    const double sd = std::sqrt(sq / n - mean * mean);
    CHECK(std::abs(sd - 4.0) < 3.0 * 4.0 / std::sqrt(2.0 * n));
    CHECK(std::abs(mean) < 3.0 * 4.0 / std::sqrt(n));
}

TEST_CASE("random_scenario is reproducible and keeps structure across events")
{
    Rng a(5), b(5);
    const RandomScenarioSpec spec;
    const auto sa = random_scenario(spec, a);
    const auto sb = random_scenario(spec, b);
    CHECK(sa.initial.stations().size() == sb.initial.stations().size());
    for (std::size_t i = 0; i < sa.initial.stations().size(); ++i) {
        CHECK(sa.initial.stations()[i].pos == sb.initial.stations()[i].pos);
    }
    for (const auto& e : sa.events) CHECK(e.topology.same_structure(sa.initial));
}

TEST_CASE("RandomScenarioSpec validation")
{
    RandomScenarioSpec s;
    CHECK_NOTHROW(s.require_valid());
    s.ap_min = 6;
    CHECK_THROWS(s.require_valid());
    s = {};
    s.sigma_min_m = 0.0;
    CHECK_THROWS(s.require_valid());
    s = {};
    s.stations_min = 0;
    CHECK_THROWS(s.require_valid());
}
