#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace sous {

enum class TileKind : uint8_t {
    Floor,
    Counter,
    OnionDispenser,
    TomatoDispenser,
    SteakDispenser,
    DishDispenser,
    CookingPot,
    Grill,
    CuttingBoard,
    Sink,
    Delivery,
    VisibleHazard,
    InvisibleHazard,
};

inline constexpr int kTileKindCount = 13;

struct Tile {
    TileKind kind = TileKind::Floor;
};

inline bool is_walkable(TileKind k) {
    return k == TileKind::Floor || k == TileKind::VisibleHazard ||
           k == TileKind::InvisibleHazard;
}

inline bool is_dispenser(TileKind k) {
    return k == TileKind::OnionDispenser || k == TileKind::TomatoDispenser ||
           k == TileKind::SteakDispenser || k == TileKind::DishDispenser;
}

inline bool is_station(TileKind k) {
    return !is_walkable(k) && k != TileKind::Counter;
}

std::string to_string(TileKind k);

}  // namespace sous
