#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sous/behavior.hpp"
#include "sous/heuristic.hpp"
#include "sous/recipe.hpp"

namespace sous {

enum class DefectSplit : uint8_t { Train, HeldOut, TaskGen };

std::string to_string(DefectSplit split);

struct Defect {
    std::string id;           // stable key, e.g. "train-05", "no-defect"
    std::string description;  // surfaced verbatim in datasets and prompts
    DefectSplit split = DefectSplit::Train;
    // Set for TaskGen defects; Train/HeldOut apply to the original recipe.
    std::optional<RecipeVariant> taskgen_variant;
    BehaviorMods mods;
};

// Order-stable: 17 Train (incl. "no-defect"), 5 HeldOut, 6 TaskGen.
const std::vector<Defect>& defect_registry();

const Defect* find_defect(const std::string& id);
const Defect& no_defect();

std::vector<Defect> defects_in_split(DefectSplit split);

// Which recipe variant a defect is exercised on.
RecipeVariant variant_for(const Defect& d);
bool compatible(const Defect& d, RecipeVariant variant);

struct UnknownDefect : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct VariantMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DefectivePolicy {
    Heuristic base;
    Defect defect;

    Action next_action(const WorldState& state) const {
        return sous::next_action(base, state, defect.mods);
    }
};

// Throws UnknownDefect / VariantMismatch.
DefectivePolicy apply_defect(const Heuristic& base, const Defect& defect,
                             RecipeVariant variant = RecipeVariant::Original);

}  // namespace sous
