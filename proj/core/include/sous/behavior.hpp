#pragma once

#include <optional>
#include <vector>

#include "sous/item.hpp"
#include "sous/path.hpp"
#include "sous/tile.hpp"

namespace sous {

// Declarative modifiers a defect applies to a heuristic's perception, goals,
// skill targeting, or path planning. The correction oracle strips these by
// evaluating the base heuristic with default mods.
struct BehaviorMods {
    // Perception edits
    bool pot_full_at_one = false;          // a single ingredient looks like a full pot
    bool cooking_looks_done = false;       // a cooking range looks ready immediately
    bool dirty_dish_counts_clean = false;  // dirty dishes look usable
    std::optional<std::vector<ItemKind>> pot_recipe_override;

    // Goal edits
    bool disable_steak_pipeline = false;
    bool disable_soup_pipeline = false;
    bool skip_soup_serving = false;        // finished soup is never served
    bool skip_combination = false;         // serve without the final combine step
    bool serve_unchopped_steak = false;    // skip the chopping stage entirely
    bool deliver_to_counter = false;       // an empty counter counts as delivery
    bool handoff_to_teammate = false;      // bring held ingredients to the teammate
    bool combine_onion_with_steak = false; // alt1: wrong combination target

    // Skill substitutions
    bool no_dispenser_interact = false;    // walk to dispensers but never interact
    bool no_facing_turns = false;          // omit the turn toward the station
    std::optional<TileKind> tomato_target_override;
    std::optional<TileKind> onion_target_override;
    bool ingredients_to_counter = false;   // place ingredients on counters, not ranges
    bool ingredients_hold = false;         // carry ingredients to the range, never place

    // Planner flags
    HazardPolicy hazard_policy = HazardPolicy::Avoid;
    bool teammate_walkable = false;

    bool operator==(const BehaviorMods&) const = default;
};

}  // namespace sous
