#include "sous/map.hpp"

#include <algorithm>

namespace sous {

std::vector<Coord> GridMap::find_all(TileKind kind) const {
    std::vector<Coord> out;
    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
            if (cells[r][c].kind == kind) out.push_back({r, c});
        }
    }
    return out;
}

namespace {

char symbol_for(TileKind k) {
    switch (k) {
        case TileKind::Floor: return ' ';
        case TileKind::Counter: return '#';
        case TileKind::OnionDispenser: return 'O';
        case TileKind::TomatoDispenser: return 'T';
        case TileKind::SteakDispenser: return 'N';
        case TileKind::DishDispenser: return 'D';
        case TileKind::CookingPot: return 'C';
        case TileKind::Grill: return 'G';
        case TileKind::CuttingBoard: return 'B';
        case TileKind::Sink: return 'S';
        case TileKind::Delivery: return 'E';
        case TileKind::VisibleHazard: return 'H';
        case TileKind::InvisibleHazard: return 'I';
    }
    return '?';
}

}  // namespace

std::string serialize(const GridMap& map) {
    std::string out;
    for (int r = 0; r < map.height; ++r) {
        for (int c = 0; c < map.width; ++c) {
            Coord here{r, c};
            if (here == map.player_spawn) {
                out += 'X';
            } else if (here == map.teammate_spawn) {
                out += 'Y';
            } else {
                out += symbol_for(map.cells[r][c].kind);
            }
        }
        out += '\n';
    }
    out += "# meta: map_id=" + map.map_id + "\n";
    return out;
}

}  // namespace sous
