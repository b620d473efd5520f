#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sous/item.hpp"

namespace sous {

enum class RecipeVariant : uint8_t { Original, Alt1, Alt2, Alt3 };

inline constexpr std::array<RecipeVariant, 4> kAllVariants = {
    RecipeVariant::Original, RecipeVariant::Alt1, RecipeVariant::Alt2,
    RecipeVariant::Alt3};

// How a chopped item may leave the cutting board: either only while holding a
// specific plated item (the pair combines), or freely with empty hands.
struct CombinationRule {
    ItemKind pickup;                    // chopped item on the board
    std::optional<ItemKind> held;       // required held kind; nullopt = empty-handed
};

struct RecipeRules {
    RecipeVariant variant;
    std::vector<ItemKind> pot_recipe;       // ingredient multiset that starts cooking
    bool onion_after_two_tomatoes = false;  // alt2/alt3 ordering constraint
    std::vector<ItemKind> chop_targets;     // raw kinds the board accepts
    bool board_accepts_grilled_steak = false;
    std::vector<CombinationRule> combinations;
};

const RecipeRules& rules_for(RecipeVariant v);

// Whether a held item may be accepted at the delivery window.
bool is_servable(RecipeVariant v, const Item& item);

// Whether `ingredient` may be added to a pot currently holding `contents`.
bool pot_accepts(const RecipeRules& rules, const std::vector<ItemKind>& contents,
                 ItemKind ingredient);

std::string to_string(RecipeVariant v);
std::optional<RecipeVariant> parse_variant(const std::string& name);

// The verbatim rules text shown to language models for this variant.
std::string rules_text(RecipeVariant v);
// Short natural-language recipe description used in task prompts.
std::string recipe_text(RecipeVariant v);

}  // namespace sous
