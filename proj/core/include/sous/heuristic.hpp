#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sous/action.hpp"
#include "sous/behavior.hpp"
#include "sous/rng.hpp"
#include "sous/world.hpp"

namespace sous {

// A prioritized, stateless gameplay strategy. The next subtask is recomputed
// from scratch every tick, so the policy is a pure function of the state.
struct Heuristic {
    std::string id;           // "H1".."H5"
    std::string description;  // surfaces in dataset metadata and prompts
};

const std::vector<Heuristic>& all_heuristics();
std::optional<Heuristic> heuristic_by_id(const std::string& id);

// One concrete thing to do right now: stand adjacent to `target`, face it,
// and (usually) interact.
struct Subtask {
    Coord target{};
    bool interact = true;
    std::string name;
};

// The guarded subtasks the heuristic would consider in priority order,
// before path feasibility filtering. Exposed for the defect locality tests.
std::vector<Subtask> candidate_subtasks(const Heuristic& h,
                                        const WorldState& state,
                                        const BehaviorMods& mods = {});

// First primitive action of the first feasible subtask; NoAction when no
// subtask is enabled.
Action next_action(const Heuristic& h, const WorldState& state,
                   const BehaviorMods& mods = {});

// Epsilon-random wrapper around a (possibly defect-wrapped) heuristic.
struct NoisyPolicy {
    Heuristic base;
    BehaviorMods mods;
    double epsilon = 0.0;
    SplitMix64 rng{0};
};

struct NoisyDecision {
    Action action;
    bool was_random = false;
};

NoisyDecision noisy_next_action(NoisyPolicy& policy, const WorldState& state);

}  // namespace sous
