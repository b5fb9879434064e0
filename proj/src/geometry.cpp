#include "csr/geometry.hpp"

#include <algorithm>
#include <tuple>
#include <utility>

namespace csr {

namespace {

double cross(Position o, Position a, Position b)
{
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Orientation of c relative to the directed line a->b: +1, -1, or 0 when c
// lies within a relative tolerance of the line.
int orientation(Position a, Position b, Position c)
{
    const double v = cross(a, b, c);
    const double scale = std::max({std::abs(b.x - a.x), std::abs(b.y - a.y), 1.0}) *
                         std::max({std::abs(c.x - a.x), std::abs(c.y - a.y), 1.0});
    constexpr double kRelTol = 1e-9;
    if (std::abs(v) <= kRelTol * scale) {
        return 0;
    }
    return v > 0.0 ? 1 : -1;
}

} // namespace

bool strictly_crosses(Position p, Position q, const Wall& w)
{
    if (p == q || w.a == w.b) {
        return false;
    }
    // Canonical endpoint order keeps the result exactly symmetric in p and q.
    if (std::tie(q.x, q.y) < std::tie(p.x, p.y)) {
        std::swap(p, q);
    }
    const int o1 = orientation(p, q, w.a);
    const int o2 = orientation(p, q, w.b);
    const int o3 = orientation(w.a, w.b, p);
    const int o4 = orientation(w.a, w.b, q);
    return o1 * o2 < 0 && o3 * o4 < 0;
}

int wall_count(Position tx, Position rx, std::span<const Wall> walls)
{
    return static_cast<int>(std::count_if(walls.begin(), walls.end(), [&](const Wall& w) {
        return strictly_crosses(tx, rx, w);
    }));
}

} // namespace csr
