#include "sous/item.hpp"

#include <algorithm>

namespace sous {

std::string to_string(ItemKind k) {
    switch (k) {
        case ItemKind::Tomato: return "tomato";
        case ItemKind::Onion: return "onion";
        case ItemKind::Steak: return "steak";
        case ItemKind::DirtyDish: return "dirty dish";
        case ItemKind::CleanDish: return "clean dish";
        case ItemKind::ChoppedOnion: return "chopped onion";
        case ItemKind::ChoppedSteak: return "chopped steak";
        case ItemKind::GrilledSteak: return "grilled steak";
        case ItemKind::Soup: return "soup";
        case ItemKind::ComboDish: return "combo dish";
    }
    return "?";
}

std::string item_label(const Item& item) {
    if (item.kind == ItemKind::ComboDish) {
        std::string label;
        for (size_t i = 0; i < item.parts.size(); ++i) {
            if (i) label += " and ";
            label += to_string(item.parts[i]);
        }
        return label + " plate";
    }
    return to_string(item.kind);
}

}  // namespace sous
