#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "sous/action.hpp"
#include "sous/geometry.hpp"
#include "sous/map.hpp"

namespace sous {

// How hazards are treated while the agent is holding an item. Hazards only
// threaten carried items, so nothing is blocked when empty-handed.
//   Avoid           block both hazard kinds
//   IgnoreVisible   walk over the visible hazard, still avoid the invisible
//   IgnoreInvisible walk over the invisible hazard, still avoid the visible
//   OverAvoid       block hazards and their 4-neighbors
enum class HazardPolicy : uint8_t {
    Avoid,
    IgnoreVisible,
    IgnoreInvisible,
    OverAvoid,
};

struct PathQuery {
    Coord from{};
    Direction facing = Direction::South;
    bool holding = false;
    HazardPolicy policy = HazardPolicy::Avoid;
    std::optional<Coord> blocked_agent;  // teammate tile, when impassable
};

struct PathPlan {
    std::vector<Action> actions;  // Move* then trailing Turn* to face target
    int moves = 0;
};

// Shortest 4-connected path to a walkable tile adjacent to `station`, plus
// the turns needed to face it. Breadth-first with (N,E,S,W) successor order,
// so results are deterministic. Turns are free; cost is the move count.
std::optional<PathPlan> plan_path(const GridMap& map, const PathQuery& query,
                                  Coord station);

// Move-count distance from `from` to any tile satisfying `goal`; nullopt if
// unreachable under the query's hazard policy.
std::optional<int> shortest_moves(const GridMap& map, const PathQuery& query,
                                  const std::function<bool(Coord)>& goal);

bool tile_blocked(const GridMap& map, const PathQuery& query, Coord c);

Action move_action_toward(Direction d);

}  // namespace sous
