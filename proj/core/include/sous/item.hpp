#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sous {

enum class ItemKind : uint8_t {
    Tomato,
    Onion,
    Steak,
    DirtyDish,
    CleanDish,
    ChoppedOnion,
    ChoppedSteak,
    GrilledSteak,
    Soup,
    ComboDish,
};

// A holdable or stationed object. `plated` marks that the item sits on a
// clean dish (cooked food can only leave a range on a dish). `parts` lists
// the components of a Soup (its ingredients) or a ComboDish (its member
// items), kept in placement order.
struct Item {
    ItemKind kind;
    bool plated = false;
    std::vector<ItemKind> parts;
    int progress = 0;  // chop/wash work units applied so far

    bool operator==(const Item& other) const {
        return kind == other.kind && plated == other.plated &&
               parts == other.parts && progress == other.progress;
    }
};

std::string to_string(ItemKind k);
// Human-readable label used in events, QA answers and prompts,
// e.g. "grilled steak and chopped onion plate".
std::string item_label(const Item& item);

inline Item make_item(ItemKind k) { return Item{k}; }

}  // namespace sous
