#pragma once

#include <string>
#include <vector>

#include "sous/geometry.hpp"
#include "sous/tile.hpp"

namespace sous {

inline constexpr int kMaxMapSide = 12;

// Static kitchen layout. Dynamic contents (what sits on a counter, what is
// in a pot) live in WorldState, not here.
struct GridMap {
    std::vector<std::vector<Tile>> cells;  // [row][col]
    int height = 0;
    int width = 0;
    Coord player_spawn{};
    Coord teammate_spawn{};
    std::vector<Coord> invisible_hazards;
    std::string map_id;

    bool in_bounds(Coord c) const {
        return c.row >= 0 && c.row < height && c.col >= 0 && c.col < width;
    }
    TileKind at(Coord c) const { return cells[c.row][c.col].kind; }
    bool walkable(Coord c) const { return in_bounds(c) && is_walkable(at(c)); }

    std::vector<Coord> find_all(TileKind kind) const;
};

// Round-trips with mapgen::parse_map. Includes the trailing metadata block.
std::string serialize(const GridMap& map);

}  // namespace sous
