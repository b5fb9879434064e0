#include "csr/geometry.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <vector>

using namespace csr;

namespace {

// Parametric intersection: solve p + t(q - p) = a + u(b - a) and require
// both parameters strictly inside (0, 1).
int brute_force_count(Position p, Position q, const std::vector<Wall>& walls)
{
    int n = 0;
    for (const auto& w : walls) {
        const double rx = q.x - p.x, ry = q.y - p.y;
        const double sx = w.b.x - w.a.x, sy = w.b.y - w.a.y;
        const double denom = rx * sy - ry * sx;
        if (denom == 0.0) continue;
        const double t = ((w.a.x - p.x) * sy - (w.a.y - p.y) * sx) / denom;
        const double u = ((w.a.x - p.x) * ry - (w.a.y - p.y) * rx) / denom;
        if (t > 0.0 && t < 1.0 && u > 0.0 && u < 1.0) ++n;
    }
    return n;
}

} // namespace

TEST_CASE("wall_count: no walls")
{
    CHECK(wall_count({0, 0}, {4, 0}, {}) == 0);
}

TEST_CASE("wall_count: single perpendicular crossing")
{
    const std::vector<Wall> walls{{{2, -1}, {2, 1}}};
    CHECK(wall_count({0, 0}, {4, 0}, walls) == 1);
}

TEST_CASE("wall_count: wall beyond the receiver is not crossed")
{
    const std::vector<Wall> walls{{{2, -1}, {2, 1}}, {{3, -1}, {3, 1}}, {{5, -1}, {5, 1}}};
    CHECK(brute_force_count({0, 0}, {4, 0}, walls) == 2);
    CHECK(wall_count({0, 0}, {4, 0}, walls) == 2);
}

TEST_CASE("wall_count: grazing does not count")
{
    SUBCASE("endpoint touches the path") {
        const std::vector<Wall> walls{{{2, 0}, {2, 1}}};
        CHECK(wall_count({0, 0}, {4, 0}, walls) == 0);
    }
    SUBCASE("collinear overlap") {
        const std::vector<Wall> walls{{{1, 0}, {3, 0}}};
        CHECK(wall_count({0, 0}, {4, 0}, walls) == 0);
    }
    SUBCASE("path ends on the wall") {
        const std::vector<Wall> walls{{{2, -1}, {2, 1}}};
        CHECK(wall_count({0, 0}, {2, 0}, walls) == 0);
    }
    SUBCASE("junction of two walls") {
        const std::vector<Wall> walls{{{2, 0}, {2, 2}}, {{0, 2}, {2, 2}}};
        CHECK(wall_count({0, 0}, {4, 4}, walls) == 0);
    }
}

TEST_CASE("wall_count: degenerate path")
{
    const std::vector<Wall> walls{{{-1, -1}, {1, 1}}};
    CHECK(wall_count({0, 0}, {0, 0}, walls) == 0);
}

TEST_CASE("wall_count: symmetric and equal to the parametric oracle on random input")
{
    Rng rng(11);
    for (int trial = 0; trial < 5000; ++trial) {
        std::vector<Wall> walls;
        const int n = static_cast<int>(rng.integer(0, 6));
        for (int i = 0; i < n; ++i) {
            walls.push_back({{rng.uniform(-10, 10), rng.uniform(-10, 10)}, {rng.uniform(-10, 10), rng.uniform(-10, 10)}});
        }
        const Position a{rng.uniform(-10, 10), rng.uniform(-10, 10)};
        const Position b{rng.uniform(-10, 10), rng.uniform(-10, 10)};
        const int ab = wall_count(a, b, walls);
        REQUIRE(ab == wall_count(b, a, walls));
        REQUIRE(ab == brute_force_count(a, b, walls));
    }
}

TEST_CASE("wall_count: symmetric and oracle-equal on lattice input with frequent degeneracies")
{
    Rng rng(12);
    for (int trial = 0; trial < 5000; ++trial) {
        auto pt = [&] { return Position{static_cast<double>(rng.integer(0, 4)), static_cast<double>(rng.integer(0, 4))}; };
        std::vector<Wall> walls;
        for (int i = 0; i < 3; ++i) {
            Wall w{pt(), pt()};
            if (w.a != w.b) walls.push_back(w);
        }
        const Position a = pt(), b = pt();
        REQUIRE(wall_count(a, b, walls) == wall_count(b, a, walls));
        REQUIRE(wall_count(a, b, walls) == brute_force_count(a, b, walls));
    }
}

TEST_CASE("distance")
{
    CHECK(distance({0, 0}, {3, 4}) == 5.0);
    CHECK(distance({1, 1}, {1, 1}) == 0.0);
    CHECK(distance({0, 0}, {10, 10}) == doctest::Approx(14.142135623730951).epsilon(1e-15));
}
