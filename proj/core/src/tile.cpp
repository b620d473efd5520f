#include "sous/tile.hpp"

namespace sous {

std::string to_string(TileKind k) {
    switch (k) {
        case TileKind::Floor: return "floor";
        case TileKind::Counter: return "counter";
        case TileKind::OnionDispenser: return "onion dispenser";
        case TileKind::TomatoDispenser: return "tomato dispenser";
        case TileKind::SteakDispenser: return "steak dispenser";
        case TileKind::DishDispenser: return "dish dispenser";
        case TileKind::CookingPot: return "cooking pot";
        case TileKind::Grill: return "grill";
        case TileKind::CuttingBoard: return "cutting board";
        case TileKind::Sink: return "sink";
        case TileKind::Delivery: return "delivery";
        case TileKind::VisibleHazard: return "visible hazard";
        case TileKind::InvisibleHazard: return "invisible hazard";
    }
    return "?";
}

}  // namespace sous
