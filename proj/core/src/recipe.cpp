#include "sous/recipe.hpp"

#include <algorithm>

namespace sous {

namespace {

RecipeRules make_original() {
    RecipeRules r;
    r.variant = RecipeVariant::Original;
    r.pot_recipe = {ItemKind::Tomato, ItemKind::Tomato, ItemKind::Tomato};
    r.chop_targets = {ItemKind::Onion};
    // Cut onions leave the board only onto a held plated grilled steak.
    r.combinations = {{ItemKind::ChoppedOnion, ItemKind::GrilledSteak}};
    return r;
}

RecipeRules make_alt1() {
    RecipeRules r;
    r.variant = RecipeVariant::Alt1;
    r.pot_recipe = {ItemKind::Tomato, ItemKind::Tomato, ItemKind::Tomato};
    r.chop_targets = {ItemKind::Onion};
    // Chopped onions are added to a held soup; grilled steak serves alone.
    r.combinations = {{ItemKind::ChoppedOnion, ItemKind::Soup}};
    return r;
}

RecipeRules make_alt2() {
    RecipeRules r;
    r.variant = RecipeVariant::Alt2;
    r.pot_recipe = {ItemKind::Tomato, ItemKind::Tomato, ItemKind::Onion};
    r.onion_after_two_tomatoes = true;
    r.chop_targets = {ItemKind::Onion};
    r.board_accepts_grilled_steak = true;
    // Chopped steak is added to the held tomato-and-onion soup to finish the stew.
    r.combinations = {{ItemKind::ChoppedSteak, ItemKind::Soup}};
    return r;
}

RecipeRules make_alt3() {
    RecipeRules r;
    r.variant = RecipeVariant::Alt3;
    r.pot_recipe = {ItemKind::Tomato, ItemKind::Tomato, ItemKind::Onion};
    r.onion_after_two_tomatoes = true;
    r.chop_targets = {ItemKind::Onion};
    r.board_accepts_grilled_steak = true;
    // Skewers: chopped steak (already plated) is picked up empty-handed.
    r.combinations = {{ItemKind::ChoppedSteak, std::nullopt}};
    return r;
}

}  // namespace

const RecipeRules& rules_for(RecipeVariant v) {
    static const RecipeRules original = make_original();
    static const RecipeRules alt1 = make_alt1();
    static const RecipeRules alt2 = make_alt2();
    static const RecipeRules alt3 = make_alt3();
    switch (v) {
        case RecipeVariant::Original: return original;
        case RecipeVariant::Alt1: return alt1;
        case RecipeVariant::Alt2: return alt2;
        case RecipeVariant::Alt3: return alt3;
    }
    return original;
}

bool is_servable(RecipeVariant v, const Item& item) {
    if (!item.plated) return false;
    auto combo_is = [&](ItemKind a, ItemKind b) {
        return item.kind == ItemKind::ComboDish && item.parts.size() == 2 &&
               ((item.parts[0] == a && item.parts[1] == b) ||
                (item.parts[0] == b && item.parts[1] == a));
    };
    switch (v) {
        case RecipeVariant::Original:
            return item.kind == ItemKind::Soup ||
                   combo_is(ItemKind::GrilledSteak, ItemKind::ChoppedOnion);
        case RecipeVariant::Alt1:
            return item.kind == ItemKind::GrilledSteak ||
                   combo_is(ItemKind::Soup, ItemKind::ChoppedOnion);
        case RecipeVariant::Alt2:
            return combo_is(ItemKind::Soup, ItemKind::ChoppedSteak);
        case RecipeVariant::Alt3:
            return item.kind == ItemKind::Soup ||
                   item.kind == ItemKind::ChoppedSteak;
    }
    return false;
}

bool pot_accepts(const RecipeRules& rules, const std::vector<ItemKind>& contents,
                 ItemKind ingredient) {
    auto count = [&](ItemKind k) {
        return std::count(contents.begin(), contents.end(), k);
    };
    auto needed = [&](ItemKind k) {
        return std::count(rules.pot_recipe.begin(), rules.pot_recipe.end(), k);
    };
    if (count(ingredient) >= needed(ingredient)) return false;
    if (rules.onion_after_two_tomatoes && ingredient == ItemKind::Onion &&
        count(ItemKind::Tomato) < 2) {
        return false;
    }
    return true;
}

std::string to_string(RecipeVariant v) {
    switch (v) {
        case RecipeVariant::Original: return "original";
        case RecipeVariant::Alt1: return "alternate1";
        case RecipeVariant::Alt2: return "alternate2";
        case RecipeVariant::Alt3: return "alternate3";
    }
    return "original";
}

std::optional<RecipeVariant> parse_variant(const std::string& name) {
    for (RecipeVariant v : kAllVariants) {
        if (name == to_string(v)) return v;
    }
    return std::nullopt;
}

std::string rules_text(RecipeVariant v) {
    switch (v) {
        case RecipeVariant::Original:
            return
                "Overcooked Rules: \n"
                "1. Players must pick up ingredients from dispensers and place them in the cooking ranges to cook them.\n"
                "2. Tomatoes are placed in the cooking pots to make soup.\n"
                "3. Players must interact with dispensers to pick up ingredients.\n"
                "4. Onions need to be cut at the cutting board.\n"
                "5. Steak needs to be cooked on the grill.\n"
                "6. There is one visible trip hazard and one invisible trip hazard on the map.\n"
                "7. If the player walks over a hazard while holding an object, they may drop the object.\n"
                "8. Players must deliver cooked food to the delivery location.\n"
                "9. A player can only hold one object at a time. \n"
                "10. Dishes are cleaned at the sink.\n"
                "11. A player can perform an action at a location by interacting with the location, i.e. cleaning dishes at the sink, or cutting onions at the cutting board.\n"
                "12. Soup starts cooking when there are three tomatoes in the pot. \n"
                "13. Steak starts cooking when there is one steak on the grill.\n"
                "14. Once food is cooking, you can no longer place ingredients on it until the food is cooked and picked up.  \n"
                "15. If you want to drop an ingredient, you have to drop it on a counter. \n"
                "16. You are only controlling one player in overcooked.\n"
                "17. Interacting with cooking ranges before the food is cooked will not do anything.\n"
                "18. Cut onions can only be picked up once you are holding grilled steak.\n"
                "19. The only ingredients in the game are steak, tomatoes, and onions. \n"
                "20. The game has no audio, i.e. the player only receives visual ques while playing the game. \n";
        case RecipeVariant::Alt1:
            return
                "Overcooked Rules: \n"
                "1. Players must pick up ingredients from dispensers and place them in the cooking ranges to cook them.\n"
                "2. Tomatoes are placed in the cooking pots to make soup.\n"
                "3. Players must interact with dispensers to pick up ingredients.\n"
                "4. Onions need to be cut at the cutting board.\n"
                "5. Steak needs to be cooked on the grill.\n"
                "6. There is one visible trip hazard and one invisible trip hazard on the map.\n"
                "7. If the player walks over a hazard while holding an object, they may drop the object.\n"
                "8. Players must deliver cooked food to the delivery location.\n"
                "9. A player can only hold one object at a time. \n"
                "10. Dishes are cleaned at the sink.\n"
                "11. A player can perform an action at a location by interacting with the location, i.e. cleaning dishes at the sink, or cutting onions at the cutting board.\n"
                "12. Soup starts cooking when there are three tomatoes in the pot. \n"
                "13. Steak starts cooking when there is one steak on the grill.\n"
                "14. The two recipes you need to make are soup with chopped onions and a grilled steak.  \n"
                "15. If you want to drop an ingredient, you have to drop it on a counter. \n"
                "16. You are only controlling one player in overcooked.\n"
                "17. Interacting with cooking ranges before the food is cooked will not do anything.\n"
                "18. Chopped onions can only be picked up once you are holding soup.\n"
                "19. The only ingredients in the game are steak, tomatoes, and onions. \n"
                "20. The game has no audio, i.e. the player only receives visual ques while playing the game. \n"
                "21. Chopped onions must be picked up from the chopping board while holding soup. \n";
        case RecipeVariant::Alt2:
            return
                "Overcooked Rules: \n"
                "1. Players must pick up ingredients from dispensers and place them in the cooking ranges to cook them.\n"
                "2. Tomatoes are placed in the cooking pots to make soup.\n"
                "3. Players must interact with dispensers to pick up ingredients.\n"
                "4. One onion needs to be placed in the cooking pot to make tomato and onion soup.\n"
                "5. Steak needs to be cooked on the grill.\n"
                "6. There is one visible trip hazard and one invisible trip hazard on the map.\n"
                "7. If the player walks over a hazard while holding an object, they may drop the object.\n"
                "8. Players must deliver cooked food to the delivery location.\n"
                "9. A player can only hold one object at a time. \n"
                "10. Dishes are cleaned at the sink.\n"
                "11. A player can perform an action at a location by interacting with the location, i.e. cleaning dishes at the sink, or cutting onions at the cutting board.\n"
                "12. Soup starts cooking when there are two tomatoes and one onion in the cooking pot. \n"
                "13. Steak starts cooking when there is one steak on the grill.\n"
                "14. The only recipe you need to make is tomato, onion and steak stew.  \n"
                "15. If you want to drop an ingredient, you have to drop it on a counter. \n"
                "16. You are only controlling one player in overcooked.\n"
                "17. Interacting with cooking ranges before the food is cooked will not do anything.\n"
                "18. You can only place an onion in the cooking pot, once there are two tomatoes in the pot. \n"
                "19. The only ingredients in the game are steak, tomatoes, and onions. \n"
                "20. The game has no audio, i.e. the player only receives visual ques while playing the game.\n"
                "21. You need to chop grilled steak on the chopping board. \n"
                "22. To complete your stew, you first need to pick up the cooked tomato and onion soup from the pot, and then pick up chopped steak from the chopping board while holding the soup.\n";
        case RecipeVariant::Alt3:
            return
                "Overcooked Rules: \n"
                "1. Players must pick up ingredients from dispensers and place them in the cooking ranges to cook them.\n"
                "2. Tomatoes are placed in the cooking pots to make soup.\n"
                "3. Players must interact with dispensers to pick up ingredients.\n"
                "4. One onion needs to be placed in the cooking pot to make tomato and onion soup.\n"
                "5. Steak needs to be cooked on the grill.\n"
                "6. There is one visible trip hazard and one invisible trip hazard on the map.\n"
                "7. If the player walks over a hazard while holding an object, they may drop the object.\n"
                "8. Players must deliver cooked food to the delivery location.\n"
                "9. A player can only hold one object at a time. \n"
                "10. Dishes are cleaned at the sink.\n"
                "11. A player can perform an action at a location by interacting with the location, i.e. cleaning dishes at the sink, or cutting onions at the cutting board.\n"
                "12. Soup starts cooking when there are two tomatoes and one onion in the cooking pot. \n"
                "13. Steak starts cooking when there is one steak on the grill.\n"
                "14. The two recipes you need to make are tomato and onion soup and grilled steak skewers.  \n"
                "15. If you want to drop an ingredient, you have to drop it on a counter. \n"
                "16. You are only controlling one player in overcooked.\n"
                "17. Interacting with cooking ranges before the food is cooked will not do anything.\n"
                "18. You can only place an onion in the cooking pot, once there are two tomatoes in the pot to make tomato and onion soup. \n"
                "19. The only ingredients in the game are steak, tomatoes, and onions. \n"
                "20. The game has no audio, i.e. the player only receives visual ques while playing the game.\n"
                "21. You need to chop grilled steak on the chopping board to make grilled steak skewers. \n"
                "22. Once you have chopped the grilled steak, you can pick it up and serve the grilled steak skewers.\n"
                "23. Ingredients cannot be removed once they are placed in the cooking pot or on the grill.\n";
    }
    return {};
}

std::string recipe_text(RecipeVariant v) {
    switch (v) {
        case RecipeVariant::Original:
            return "Grilled Steak and Onions: The player needs to cook steak on "
                   "the grill, chop onions on the chopping board, and combine "
                   "them with the cooked steak. \nTomato Soup: The player needs "
                   "to place three tomatoes in the cooking pot.";
        case RecipeVariant::Alt1:
            return "Grilled Steak:  The player needs to cook steak on the grill "
                   "and serve it. \n Soup and Chopped Onions: The player needs "
                   "to make soup by placing three tomatoes in the cooking pot, "
                   "and add chopped onions after picking up the soup.";
        case RecipeVariant::Alt2:
            return "Tomato, Onion and Steak Stew: The player needs to cook steak "
                   "on the grill and chop it on the chopping board. The player "
                   "also needs to cook tomato and onion soup, by cooking two "
                   "tomatoes and one onions in the cooking pot. Finally, the "
                   "chopped steak should be added to the soup prior to serving.";
        case RecipeVariant::Alt3:
            return "Tomato and Onion Soup: The player needs to cook two tomatoes "
                   "and one onion in the cooking pot. Grilled Steak Skewers: The "
                   "player needs to cook steak on the grill, then chop it prior "
                   "to serving.";
    }
    return {};
}

}  // namespace sous
