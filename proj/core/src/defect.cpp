#include "sous/defect.hpp"

namespace sous {

std::string to_string(DefectSplit split) {
    switch (split) {
        case DefectSplit::Train: return "train";
        case DefectSplit::HeldOut: return "heldout";
        case DefectSplit::TaskGen: return "taskgen";
    }
    return "?";
}

namespace {

std::vector<Defect> build_registry() {
    std::vector<Defect> out;
    auto train = [&](std::string id, std::string desc, BehaviorMods mods) {
        out.push_back({std::move(id), std::move(desc), DefectSplit::Train,
                       std::nullopt, std::move(mods)});
    };
    auto heldout = [&](std::string id, std::string desc, BehaviorMods mods) {
        out.push_back({std::move(id), std::move(desc), DefectSplit::HeldOut,
                       std::nullopt, std::move(mods)});
    };
    auto taskgen = [&](std::string id, std::string desc, RecipeVariant variant,
                       BehaviorMods mods) {
        out.push_back({std::move(id), std::move(desc), DefectSplit::TaskGen,
                       variant, std::move(mods)});
    };
    BehaviorMods m;

    m = {};
    m.pot_full_at_one = true;
    train("train-01",
          "Player does not know that the cooking pot needs to be full for the "
          "soup to start cooking.",
          m);
    m = {};
    m.no_dispenser_interact = true;
    train("train-02",
          "Player does not know that you need to interact with dispensers to "
          "pick up ingredients.",
          m);
    m = {};
    m.deliver_to_counter = true;
    train("train-03",
          "Player believes that leaving cooked food on an empty counter means "
          "they have delivered the food.",
          m);
    m = {};
    m.no_facing_turns = true;
    train("train-04",
          "Player does not know that they need to face the object to "
          "successfully interact with any object in the game.",
          m);
    m = {};
    m.disable_steak_pipeline = true;
    train("train-05", "The player thinks it is best to only serve soup.", m);
    m = {};
    m.tomato_target_override = TileKind::Grill;
    train("train-06", "The player thinks tomatoes can be placed on the grill.",
          m);
    m = {};
    m.onion_target_override = TileKind::Grill;
    train("train-07",
          "The player thinks onions should be placed directly on the grill.",
          m);
    m = {};
    m.skip_combination = true;
    train("train-08",
          "Player does not know that cut onions need to be placed on the "
          "cooked steak before serving.",
          m);
    m = {};
    m.teammate_walkable = true;
    train("train-09",
          "Player mistakenly thinks that the teammate will always walk around "
          "them.",
          m);
    m = {};
    m.dirty_dish_counts_clean = true;
    train("train-10",
          "Player does not know that dishes need to be cleaned before being "
          "used to pick up food.",
          m);
    m = {};
    m.hazard_policy = HazardPolicy::IgnoreVisible;
    train("train-11",
          "Player does not walk around the visible trip hazards when they are "
          "holding an object.",
          m);
    m = {};
    m.hazard_policy = HazardPolicy::IgnoreInvisible;
    train("train-12",
          "Player does not remember or keep track of where the invisible trip "
          "hazard is.",
          m);
    m = {};
    m.cooking_looks_done = true;
    train("train-13",
          "Player attempts to pick up food before it is finished cooking.", m);
    m = {};
    m.hazard_policy = HazardPolicy::OverAvoid;
    train("train-14",
          "Player is overly cautious about trip hazards when they are holding "
          "something, and doesn't go near spaces adjacent to the hazard.",
          m);
    m = {};
    m.handoff_to_teammate = true;
    train("train-15",
          "Player tries to directly hand ingredients they are holding to "
          "their teammate.",
          m);
    m = {};
    m.onion_target_override = TileKind::Sink;
    train("train-16", "Player tries to wash ingredients in the sink.", m);
    train("no-defect", "No Defect", {});

    m = {};
    m.ingredients_hold = true;
    heldout("heldout-01",
            "Player does not know that ingredients need to be placed in the "
            "cooking ranges to cook.",
            m);
    m = {};
    m.skip_soup_serving = true;
    heldout("heldout-02", "The player never serves cooked soup.", m);
    m = {};
    m.disable_soup_pipeline = true;
    heldout("heldout-03", "The player thinks it is best to only serve steak.",
            m);
    m = {};
    m.onion_target_override = TileKind::CookingPot;
    heldout("heldout-04",
            "The player thinks onions can be cut in the cooking pot.", m);
    m = {};
    m.ingredients_to_counter = true;
    heldout("heldout-05",
            "The player places ingredients on the counter instead of in the "
            "cooking range.",
            m);

    m = {};
    m.skip_combination = true;
    taskgen("alt1-1",
            "Player forgets to place chopped onions in the cooked soup before "
            "serving the soup.",
            RecipeVariant::Alt1, m);
    m = {};
    m.combine_onion_with_steak = true;
    taskgen("alt1-2", "Player tries to place chopped onions on grilled steak.",
            RecipeVariant::Alt1, m);
    m = {};
    m.onion_target_override = TileKind::CuttingBoard;
    taskgen("alt2-1",
            "Player tries to place onions on the chopping board instead of in "
            "the cooking pot.",
            RecipeVariant::Alt2, m);
    m = {};
    m.skip_combination = true;
    taskgen("alt2-2",
            "Player tries to serve cooked tomato and onion soup before "
            "picking up chopped steak from the chopping board.",
            RecipeVariant::Alt2, m);
    m = {};
    m.pot_recipe_override = std::vector<ItemKind>{
        ItemKind::Tomato, ItemKind::Tomato, ItemKind::Tomato};
    taskgen("alt3-1",
            "Player tries to place three tomatoes into the cooking pot, "
            "instead of two tomatoes and an onion.",
            RecipeVariant::Alt3, m);
    m = {};
    m.serve_unchopped_steak = true;
    taskgen("alt3-2",
            "Player doesn't know that grilled steak needs to be chopped to "
            "make grilled steak skewers.",
            RecipeVariant::Alt3, m);
    return out;
}

}  // namespace

const std::vector<Defect>& defect_registry() {
    static const std::vector<Defect> registry = build_registry();
    return registry;
}

const Defect* find_defect(const std::string& id) {
    for (const auto& d : defect_registry()) {
        if (d.id == id) return &d;
    }
    return nullptr;
}

const Defect& no_defect() { return *find_defect("no-defect"); }

std::vector<Defect> defects_in_split(DefectSplit split) {
    std::vector<Defect> out;
    for (const auto& d : defect_registry()) {
        if (d.split == split) out.push_back(d);
    }
    return out;
}

RecipeVariant variant_for(const Defect& d) {
    return d.taskgen_variant.value_or(RecipeVariant::Original);
}

bool compatible(const Defect& d, RecipeVariant variant) {
    if (d.id == "no-defect") return true;
    if (d.taskgen_variant) return *d.taskgen_variant == variant;
    return variant == RecipeVariant::Original;
}

DefectivePolicy apply_defect(const Heuristic& base, const Defect& defect,
                             RecipeVariant variant) {
    const Defect* registered = find_defect(defect.id);
    if (!registered) throw UnknownDefect("unknown defect id: " + defect.id);
    if (!compatible(*registered, variant)) {
        throw VariantMismatch("defect " + defect.id +
                              " is not defined for this recipe variant");
    }
    return DefectivePolicy{base, *registered};
}

}  // namespace sous
