#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sous/geometry.hpp"
#include "sous/item.hpp"
#include "sous/tile.hpp"

namespace sous {

enum class EventKind : uint8_t {
    PickedUp,
    Placed,
    CookingStarted,
    CookingFinished,
    Chopped,
    Washed,
    Delivered,
    Tripped,
    DroppedOnHazard,
    InteractFailed,
    Blocked,
};

struct Event {
    int64_t tick = 0;
    EventKind kind;
    std::string item;                 // label of the item involved, if any
    std::optional<TileKind> station;  // station involved, if any
    std::optional<Coord> pos;         // location involved, if any
    std::string detail;               // failure reason or extra context
};

using EventList = std::vector<Event>;

std::string to_string(EventKind k);

// One line-delimited record: {"tick":..,"kind":..,...}
std::string to_jsonl(const Event& e);
// Short prose line for prompt rendering, e.g. "tick 12: picked up tomato".
std::string describe(const Event& e);

}  // namespace sous
