#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sous/action.hpp"
#include "sous/event.hpp"
#include "sous/geometry.hpp"
#include "sous/item.hpp"
#include "sous/map.hpp"
#include "sous/recipe.hpp"

namespace sous {

inline constexpr int kSoupCookTicks = 20;
inline constexpr int kSteakCookTicks = 15;
inline constexpr int kChopWorkUnits = 3;
inline constexpr int kWashWorkUnits = 3;
inline constexpr double kHazardDropProb = 0.5;
inline constexpr int kDefaultHorizon = 400;

enum class CookStatus : uint8_t { Idle, Cooking, Cooked };

// Dynamic state of one non-floor tile: pot ingredients and cook timer,
// the item resting on a counter/board/grill, or an item dropped on a
// walkable hazard tile.
struct StationState {
    std::vector<ItemKind> contents;  // pot ingredients, placement order
    std::optional<Item> item;
    CookStatus status = CookStatus::Idle;
    int timer = 0;

    bool empty() const {
        return contents.empty() && !item && status == CookStatus::Idle;
    }
};

struct PlayerState {
    Coord pos{};
    Direction facing = Direction::South;
    std::optional<Item> held;
};

struct WorldState {
    GridMap map;
    RecipeVariant variant = RecipeVariant::Original;
    int64_t tick = 0;
    PlayerState player;
    std::optional<PlayerState> teammate;
    std::map<Coord, StationState> stations;
    int deliveries = 0;
    uint64_t rng_state = 0;  // advanced only by hazard drop rolls
    double hazard_drop_prob = kHazardDropProb;
};

enum class FailReason : uint8_t {
    NothingThere,
    HandsFull,
    HandsEmpty,
    StillCooking,
    NotCooked,
    StationBusy,
    WrongItem,
    NeedCleanDish,
    PotRejects,
    NotServable,
    NoMatchingCombination,
    NotAStation,
};

std::string to_string(FailReason r);

// The deterministic outcome table for Interact against the faced tile.
struct InteractOutcome {
    enum class Kind : uint8_t {
        PickupFromDispenser,
        PickupFromSurface,   // counter, floor drop, chopped-item free pickup
        PickupCombined,      // chopped item joins the held plate
        PickupCooked,        // cooked food leaves pot/grill onto the held dish
        PlaceOnSurface,
        PlaceIntoRange,      // ingredient into pot or steak onto grill
        PlaceOnBoard,
        ChopProgress,
        WashProgress,
        Deliver,
        Failed,
    };
    Kind kind = Kind::Failed;
    FailReason reason = FailReason::NothingThere;  // set when kind == Failed
    Item result{};       // held item after a pickup/transform, when applicable
    bool starts_cooking = false;
    bool completes_work = false;  // this chop/wash reaches its work-unit count
};

// Pure query: what Interact would do for the player's faced tile.
InteractOutcome interact_resolution(const WorldState& state);

WorldState make_world(const GridMap& map, RecipeVariant variant, uint64_t seed,
                      bool with_teammate = true);

// Advance one tick. Pure: identical (state, actions) always produce the
// identical successor and events. Illegal actions never fault; they emit
// Blocked or InteractFailed.
std::pair<WorldState, EventList> step(const WorldState& state,
                                      Action player_action,
                                      Action teammate_action);

bool is_terminal(const WorldState& state, int64_t horizon);

// Deterministic back-and-forth patrol for the scripted teammate.
Action teammate_patrol_action(const WorldState& state);

Coord faced_tile(const PlayerState& p);

// Absolute grid direction a Move* action translates along.
std::optional<Direction> move_direction(Action a);

}  // namespace sous
