#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>

namespace sous {

struct Coord {
    int row = 0;
    int col = 0;

    auto operator<=>(const Coord&) const = default;
};

enum class Direction : uint8_t { North, East, South, West };

inline constexpr std::array<Direction, 4> kDirections = {
    Direction::North, Direction::East, Direction::South, Direction::West};

inline Coord neighbor(Coord c, Direction d) {
    switch (d) {
        case Direction::North: return {c.row - 1, c.col};
        case Direction::East: return {c.row, c.col + 1};
        case Direction::South: return {c.row + 1, c.col};
        case Direction::West: return {c.row, c.col - 1};
    }
    return c;
}

inline Direction turn_left(Direction d) {
    return static_cast<Direction>((static_cast<int>(d) + 3) % 4);
}

inline Direction turn_right(Direction d) {
    return static_cast<Direction>((static_cast<int>(d) + 1) % 4);
}

inline Direction opposite(Direction d) {
    return static_cast<Direction>((static_cast<int>(d) + 2) % 4);
}

// Direction from `from` toward an adjacent cell `to`; requires adjacency.
Direction direction_between(Coord from, Coord to);

int manhattan(Coord a, Coord b);

std::string to_string(Coord c);  // "(row, col)" -- the canonical answer format
const char* to_string(Direction d);

}  // namespace sous
