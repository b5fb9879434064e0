#pragma once

#include <cmath>
#include <span>

namespace csr {

/// Planar node location in meters.
struct Position {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Position&, const Position&) = default;
};

/// Wall modelled as a line segment between two distinct points.
struct Wall {
    Position a;
    Position b;

    friend bool operator==(const Wall&, const Wall&) = default;
};

inline double distance(Position tx, Position rx)
{
    return std::hypot(rx.x - tx.x, rx.y - tx.y);
}

/// True when the open segments p-q and w.a-w.b cross at a single interior
/// point. Touching at an endpoint or running collinear does not count.
bool strictly_crosses(Position p, Position q, const Wall& w);

/// Number of walls strictly crossed by the straight path tx-rx.
int wall_count(Position tx, Position rx, std::span<const Wall> walls);

} // namespace csr
