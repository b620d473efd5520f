#include "sous/geometry.hpp"

#include <cassert>
#include <cstdlib>

namespace sous {

Direction direction_between(Coord from, Coord to) {
    if (to.row == from.row - 1 && to.col == from.col) return Direction::North;
    if (to.row == from.row + 1 && to.col == from.col) return Direction::South;
    if (to.col == from.col + 1 && to.row == from.row) return Direction::East;
    return Direction::West;
}

int manhattan(Coord a, Coord b) {
    return std::abs(a.row - b.row) + std::abs(a.col - b.col);
}

std::string to_string(Coord c) {
    return "(" + std::to_string(c.row) + ", " + std::to_string(c.col) + ")";
}

const char* to_string(Direction d) {
    switch (d) {
        case Direction::North: return "north";
        case Direction::East: return "east";
        case Direction::South: return "south";
        case Direction::West: return "west";
    }
    return "?";
}

}  // namespace sous
