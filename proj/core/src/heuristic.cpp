#include "sous/heuristic.hpp"

#include <algorithm>

namespace sous {

const std::vector<Heuristic>& all_heuristics() {
    static const std::vector<Heuristic> heuristics = {
        {"H1", "Always prioritize steak preparation over soup preparation."},
        {"H2", "Always prioritize soup preparation over steak preparation."},
        {"H3", "Always make sure dishes are cleaned and ready before starting "
               "any meal-prep."},
        {"H4", "Always work on the task whose station is closest to you."},
        {"H5", "Stage all ingredients on counters before starting to cook."},
    };
    return heuristics;
}

std::optional<Heuristic> heuristic_by_id(const std::string& id) {
    for (const auto& h : all_heuristics()) {
        if (h.id == id) return h;
    }
    return std::nullopt;
}

namespace {

struct View {
    const WorldState& s;
    const BehaviorMods& m;
    RecipeRules rules;  // pot recipe override already applied

    View(const WorldState& state, const BehaviorMods& mods)
        : s(state), m(mods), rules(rules_for(state.variant)) {
        if (mods.pot_recipe_override) {
            rules.pot_recipe = *mods.pot_recipe_override;
            rules.onion_after_two_tomatoes = false;
        }
    }
};

using Subtasks = std::vector<Subtask>;

const StationState* station_at(const View& v, Coord c) {
    auto it = v.s.stations.find(c);
    return it == v.s.stations.end() ? nullptr : &it->second;
}

std::optional<Coord> first_tile(const View& v, TileKind kind) {
    auto all = v.s.map.find_all(kind);
    if (all.empty()) return std::nullopt;
    return all.front();
}

CookStatus perceived_status(const View& v, Coord range) {
    const StationState* st = station_at(v, range);
    CookStatus status = st ? st->status : CookStatus::Idle;
    bool has_load = st && (!st->contents.empty() || st->item.has_value());
    if (v.m.pot_full_at_one && status == CookStatus::Idle && has_load &&
        v.s.map.at(range) == TileKind::CookingPot) {
        return CookStatus::Cooking;
    }
    if (v.m.cooking_looks_done && status == CookStatus::Cooking) {
        return CookStatus::Cooked;
    }
    return status;
}

bool dish_like(const View& v, const Item& item) {
    if (item.plated) return false;
    if (item.kind == ItemKind::CleanDish) return true;
    return v.m.dirty_dish_counts_clean && item.kind == ItemKind::DirtyDish;
}

// Onion is chopped at the board in the original and alternate-1 recipes;
// the two stew/skewer recipes chop grilled steak instead.
bool board_chops_onion(RecipeVariant variant) {
    return variant == RecipeVariant::Original || variant == RecipeVariant::Alt1;
}

std::optional<ItemKind> next_pot_ingredient(const View& v, Coord pot) {
    const StationState* st = station_at(v, pot);
    std::vector<ItemKind> contents = st ? st->contents : std::vector<ItemKind>{};
    auto count = [&](ItemKind k) {
        return std::count(contents.begin(), contents.end(), k);
    };
    auto needed = [&](ItemKind k) {
        return std::count(v.rules.pot_recipe.begin(), v.rules.pot_recipe.end(), k);
    };
    if (count(ItemKind::Tomato) < needed(ItemKind::Tomato)) return ItemKind::Tomato;
    if (count(ItemKind::Onion) < needed(ItemKind::Onion)) return ItemKind::Onion;
    return std::nullopt;
}

std::optional<Coord> counter_with(const View& v,
                                  const std::function<bool(const Item&)>& pred) {
    for (const auto& [pos, st] : v.s.stations) {
        if (!st.item) continue;
        if (v.s.map.at(pos) != TileKind::Counter) continue;
        if (pred(*st.item)) return pos;
    }
    return std::nullopt;
}

std::optional<Coord> nearest_empty_counter(const View& v) {
    std::optional<Coord> best;
    int best_dist = 0;
    for (Coord c : v.s.map.find_all(TileKind::Counter)) {
        const StationState* st = station_at(v, c);
        if (st && st->item) continue;
        bool has_floor_neighbor = false;
        for (Direction d : kDirections) {
            if (v.s.map.walkable(neighbor(c, d))) has_floor_neighbor = true;
        }
        if (!has_floor_neighbor) continue;
        int dist = manhattan(v.s.player.pos, c);
        if (!best || dist < best_dist) {
            best = c;
            best_dist = dist;
        }
    }
    return best;
}

Subtasks one(Coord target, std::string name, bool interact = true) {
    return {Subtask{target, interact, std::move(name)}};
}

// Nearest raw `kind` on a counter, else the matching dispenser.
Subtasks fetch(const View& v, ItemKind kind) {
    if (auto counter = counter_with(v, [&](const Item& it) {
            return it.kind == kind && !it.plated;
        })) {
        return one(*counter, "fetch " + to_string(kind) + " from counter");
    }
    TileKind disp = TileKind::TomatoDispenser;
    if (kind == ItemKind::Onion) disp = TileKind::OnionDispenser;
    if (kind == ItemKind::Steak) disp = TileKind::SteakDispenser;
    if (auto pos = first_tile(v, disp)) {
        return {Subtask{*pos, !v.m.no_dispenser_interact,
                        "fetch " + to_string(kind) + " from dispenser"}};
    }
    return {};
}

Subtasks dish_acquire(const View& v) {
    if (auto counter = counter_with(v, [&](const Item& it) {
            return !it.plated && (it.kind == ItemKind::CleanDish ||
                                  (v.m.dirty_dish_counts_clean &&
                                   it.kind == ItemKind::DirtyDish));
        })) {
        return one(*counter, "take dish from counter");
    }
    if (auto pos = first_tile(v, TileKind::DishDispenser)) {
        return {Subtask{*pos, !v.m.no_dispenser_interact, "take dish"}};
    }
    return {};
}

Subtasks deliver_target(const View& v) {
    if (v.m.deliver_to_counter) {
        if (auto counter = nearest_empty_counter(v))
            return one(*counter, "deliver to counter");
        return {};
    }
    if (auto pos = first_tile(v, TileKind::Delivery))
        return one(*pos, "deliver");
    return {};
}

// Where a held ingredient headed for `intended` actually goes under the
// active skill substitutions.
Subtasks place_ingredient(const View& v, ItemKind kind, Coord intended,
                          const char* name) {
    if (v.m.ingredients_to_counter) {
        if (auto counter = nearest_empty_counter(v))
            return one(*counter, "put ingredient on counter");
        return {};
    }
    if (v.m.ingredients_hold) {
        return {Subtask{intended, false, "carry ingredient to range"}};
    }
    std::optional<TileKind> redirect;
    if (kind == ItemKind::Tomato) redirect = v.m.tomato_target_override;
    if (kind == ItemKind::Onion) redirect = v.m.onion_target_override;
    if (redirect) {
        if (auto pos = first_tile(v, *redirect))
            return one(*pos, std::string(name) + " (redirected)");
        return {};
    }
    return one(intended, name);
}

// What to do with the held item. Empty result means no pipeline claims it.
Subtasks route_held(const View& v) {
    const Item& held = *v.s.player.held;
    RecipeVariant variant = v.s.variant;
    auto board = first_tile(v, TileKind::CuttingBoard);
    auto pot = first_tile(v, TileKind::CookingPot);
    auto grill = first_tile(v, TileKind::Grill);

    if (v.m.handoff_to_teammate && v.s.teammate && !held.plated &&
        (held.kind == ItemKind::Tomato || held.kind == ItemKind::Onion ||
         held.kind == ItemKind::Steak)) {
        return one(v.s.teammate->pos, "hand to teammate");
    }

    if (v.m.combine_onion_with_steak && held.plated &&
        held.kind == ItemKind::GrilledSteak) {
        // Wrong-combination belief: the onion goes on the steak, so the
        // plated steak heads to the board instead of the pass.
        if (board) {
            const StationState* bst = station_at(v, *board);
            if (bst && bst->item) return one(*board, "combine at board");
        }
        return {};
    }

    if (is_servable(variant, held)) {
        if (held.kind == ItemKind::Soup && v.m.skip_soup_serving) return {};
        return deliver_target(v);
    }

    if (held.kind == ItemKind::Soup && held.plated) {
        if (v.m.skip_combination) return deliver_target(v);
        if (!board) return {};
        const StationState* bst = station_at(v, *board);
        if (bst && bst->item) {
            // Combine with (or finish chopping) the board item.
            return one(*board, "combine at board");
        }
        return {};
    }

    if (held.kind == ItemKind::GrilledSteak && held.plated) {
        if (variant == RecipeVariant::Original) {
            if (v.m.skip_combination) return deliver_target(v);
            if (!board) return {};
            const StationState* bst = station_at(v, *board);
            if (bst && bst->item) return one(*board, "combine at board");
            return {};
        }
        if (variant == RecipeVariant::Alt1) return {};  // servable; handled above
        // Alt2/Alt3: steak must be chopped.
        if (v.m.serve_unchopped_steak) return deliver_target(v);
        if (!board) return {};
        const StationState* bst = station_at(v, *board);
        if (!bst || !bst->item) return one(*board, "place steak on board");
        return {};
    }

    if (held.kind == ItemKind::Tomato && !held.plated) {
        if (!pot) return {};
        if (perceived_status(v, *pot) == CookStatus::Idle &&
            next_pot_ingredient(v, *pot) == ItemKind::Tomato) {
            return place_ingredient(v, ItemKind::Tomato, *pot, "tomato to pot");
        }
        return {};
    }

    if (held.kind == ItemKind::Onion && !held.plated) {
        bool pot_wants = pot && perceived_status(v, *pot) == CookStatus::Idle &&
                         next_pot_ingredient(v, *pot) == ItemKind::Onion;
        if (pot_wants) {
            return place_ingredient(v, ItemKind::Onion, *pot, "onion to pot");
        }
        if (board_chops_onion(variant) && board) {
            const StationState* bst = station_at(v, *board);
            if (!bst || !bst->item) {
                return place_ingredient(v, ItemKind::Onion, *board,
                                        "onion to board");
            }
        }
        return {};
    }

    if (held.kind == ItemKind::Steak && !held.plated) {
        if (!grill) return {};
        const StationState* gst = station_at(v, *grill);
        if ((!gst || gst->empty()) &&
            perceived_status(v, *grill) == CookStatus::Idle) {
            return place_ingredient(v, ItemKind::Steak, *grill,
                                    "steak to grill");
        }
        return {};
    }

    if (held.kind == ItemKind::DirtyDish && !v.m.dirty_dish_counts_clean) {
        if (auto sink = first_tile(v, TileKind::Sink))
            return one(*sink, "wash dish");
        return {};
    }

    if (dish_like(v, held)) {
        if (pot && perceived_status(v, *pot) == CookStatus::Cooked &&
            !v.m.skip_soup_serving && !v.m.disable_soup_pipeline) {
            // Combination recipes plate soup only once the board-side
            // component is chopped and waiting.
            bool gated = false;
            if (!v.m.skip_combination && board) {
                const StationState* bst = station_at(v, *board);
                if (variant == RecipeVariant::Alt1) {
                    gated = !(bst && bst->item &&
                              bst->item->kind == ItemKind::ChoppedOnion);
                } else if (variant == RecipeVariant::Alt2) {
                    gated = !(bst && bst->item &&
                              bst->item->kind == ItemKind::ChoppedSteak);
                }
                if (gated && bst && bst->item &&
                    (bst->item->kind == ItemKind::Onion ||
                     bst->item->kind == ItemKind::GrilledSteak)) {
                    // Finish the chop with the dish in hand.
                    return one(*board, "chop");
                }
            }
            if (!gated) return one(*pot, "plate soup");
        }
        if (grill && perceived_status(v, *grill) == CookStatus::Cooked &&
            !v.m.disable_steak_pipeline) {
            bool gated = false;
            if (variant == RecipeVariant::Original && !v.m.skip_combination &&
                board) {
                const StationState* bst = station_at(v, *board);
                gated = !(bst && bst->item &&
                          bst->item->kind == ItemKind::ChoppedOnion);
                if (gated && bst && bst->item &&
                    bst->item->kind == ItemKind::Onion) {
                    return one(*board, "chop");
                }
            }
            if (!gated) return one(*grill, "plate steak");
        }
        return {};
    }

    return {};
}

// Board bookkeeping owned by a pipeline: start, advance, or harvest a chop.
Subtasks board_needs(const View& v, ItemKind raw_kind) {
    auto board = first_tile(v, TileKind::CuttingBoard);
    if (!board) return {};
    const StationState* bst = station_at(v, *board);
    if (!bst || !bst->item) {
        if (raw_kind == ItemKind::Onion) {
            if (v.m.onion_target_override) {
                // The onion is being routed somewhere wrong; fetching more
                // onions for the board would fight the substitution.
                return fetch(v, ItemKind::Onion);
            }
            return fetch(v, ItemKind::Onion);
        }
        return {};  // steak arrives on the board already plated
    }
    const Item& on_board = *bst->item;
    if (on_board.kind == ItemKind::Onion ||
        on_board.kind == ItemKind::GrilledSteak) {
        return one(*board, "chop");
    }
    if (on_board.kind == ItemKind::ChoppedSteak &&
        v.s.variant == RecipeVariant::Alt3) {
        return one(*board, "pick up skewers");
    }
    return {};
}

Subtasks soup_needs(const View& v) {
    if (v.m.disable_soup_pipeline) return {};
    auto pot = first_tile(v, TileKind::CookingPot);
    if (!pot) return {};
    CookStatus status = perceived_status(v, *pot);

    bool owns_board = board_chops_onion(v.s.variant) &&
                      v.s.variant == RecipeVariant::Alt1;

    if (status == CookStatus::Cooked) {
        if (v.m.skip_soup_serving) return {};
        if (owns_board && !v.m.skip_combination) {
            auto board = first_tile(v, TileKind::CuttingBoard);
            const StationState* bst = board ? station_at(v, *board) : nullptr;
            bool chopped_ready = bst && bst->item &&
                                 bst->item->kind == ItemKind::ChoppedOnion;
            if (!chopped_ready) {
                Subtasks tasks = board_needs(v, ItemKind::Onion);
                if (!tasks.empty()) return tasks;
            }
        }
        if (v.s.variant == RecipeVariant::Alt2 && !v.m.skip_combination) {
            // The stew plates onto the chopped steak; leave the cooked soup
            // in the pot until the grill side has delivered it to the board.
            auto board = first_tile(v, TileKind::CuttingBoard);
            const StationState* bst = board ? station_at(v, *board) : nullptr;
            bool chopped_ready = bst && bst->item &&
                                 bst->item->kind == ItemKind::ChoppedSteak;
            if (!chopped_ready) return {};
        }
        return dish_acquire(v);
    }
    if (status == CookStatus::Cooking) return {};

    if (auto ingredient = next_pot_ingredient(v, *pot)) {
        return fetch(v, *ingredient);
    }
    if (owns_board) return board_needs(v, ItemKind::Onion);
    return {};
}

Subtasks steak_needs(const View& v) {
    if (v.m.disable_steak_pipeline) return {};
    auto grill = first_tile(v, TileKind::Grill);
    if (!grill) return {};
    RecipeVariant variant = v.s.variant;
    CookStatus status = perceived_status(v, *grill);

    if (status == CookStatus::Cooked) {
        if (variant == RecipeVariant::Alt1 && v.m.combine_onion_with_steak) {
            // Wrong-combination belief mirrors the original-recipe flow:
            // insist on a chopped onion before plating the steak.
            auto board = first_tile(v, TileKind::CuttingBoard);
            const StationState* bst = board ? station_at(v, *board) : nullptr;
            bool chopped_ready = bst && bst->item &&
                                 bst->item->kind == ItemKind::ChoppedOnion;
            if (!chopped_ready) {
                Subtasks tasks = board_needs(v, ItemKind::Onion);
                if (!tasks.empty()) return tasks;
            }
        }
        if (variant == RecipeVariant::Original && !v.m.skip_combination) {
            auto board = first_tile(v, TileKind::CuttingBoard);
            const StationState* bst = board ? station_at(v, *board) : nullptr;
            bool chopped_ready = bst && bst->item &&
                                 bst->item->kind == ItemKind::ChoppedOnion;
            if (!chopped_ready) {
                Subtasks tasks = board_needs(v, ItemKind::Onion);
                if (!tasks.empty()) return tasks;
            }
        }
        return dish_acquire(v);
    }
    if (status == CookStatus::Cooking) {
        // While the steak cooks, keep the side work moving.
        if (variant == RecipeVariant::Original && !v.m.skip_combination) {
            return board_needs(v, ItemKind::Onion);
        }
        return {};
    }

    if (variant == RecipeVariant::Alt2 || variant == RecipeVariant::Alt3) {
        // Chop (or harvest) the plated steak before starting the next one.
        Subtasks tasks = board_needs(v, ItemKind::GrilledSteak);
        if (!tasks.empty()) return tasks;
    }
    const StationState* gst = station_at(v, *grill);
    if (!gst || gst->empty()) {
        Subtasks tasks = fetch(v, ItemKind::Steak);
        if (!tasks.empty()) return tasks;
    }
    if (variant == RecipeVariant::Original && !v.m.skip_combination) {
        return board_needs(v, ItemKind::Onion);
    }
    return {};
}

Subtasks stash_held(const View& v) {
    const Item& held = *v.s.player.held;
    // Waiting with a dish in hand is deliberate when food is on the way.
    if (dish_like(v, held)) {
        for (TileKind range : {TileKind::CookingPot, TileKind::Grill}) {
            for (Coord c : v.s.map.find_all(range)) {
                CookStatus st = perceived_status(v, c);
                if (st == CookStatus::Cooking || st == CookStatus::Cooked)
                    return {};
            }
        }
    }
    if (auto counter = nearest_empty_counter(v)) {
        return one(*counter, "stash held item");
    }
    return {};
}

bool clean_dish_present(const View& v) {
    const auto& held = v.s.player.held;
    if (held && dish_like(v, *held)) return true;
    if (counter_with(v, [&](const Item& it) {
            return !it.plated && (it.kind == ItemKind::CleanDish ||
                                  (v.m.dirty_dish_counts_clean &&
                                   it.kind == ItemKind::DirtyDish));
        })) {
        return true;
    }
    if (held && held->kind == ItemKind::DirtyDish) return true;  // being washed
    return false;
}

// Raw-ingredient staging for the batch-prep strategy. Counts everything a
// kind has already become so staging terminates.
Subtasks batch_stage(const View& v) {
    auto required_of = [&](ItemKind k) -> int {
        int n = static_cast<int>(std::count(v.rules.pot_recipe.begin(),
                                            v.rules.pot_recipe.end(), k));
        if (k == ItemKind::Steak) n += 1;
        if (k == ItemKind::Onion && board_chops_onion(v.s.variant)) n += 1;
        return n;
    };
    auto accounted = [&](ItemKind k) -> int {
        int n = 0;
        auto credit_item = [&](const Item& it) {
            if (it.kind == k) n += 1;
            if (k == ItemKind::Onion && it.kind == ItemKind::ChoppedOnion) n += 1;
            if (k == ItemKind::Steak && (it.kind == ItemKind::GrilledSteak ||
                                         it.kind == ItemKind::ChoppedSteak)) {
                n += 1;
            }
            if (it.kind == ItemKind::Soup || it.kind == ItemKind::ComboDish) {
                for (ItemKind part : it.parts) {
                    if (part == k) n += 1;
                    if (k == ItemKind::Onion && part == ItemKind::ChoppedOnion)
                        n += 1;
                    if (k == ItemKind::Steak &&
                        (part == ItemKind::GrilledSteak ||
                         part == ItemKind::ChoppedSteak)) {
                        n += 1;
                    }
                }
                if (it.kind == ItemKind::Soup && k == ItemKind::Tomato &&
                    it.parts.empty()) {
                    n += 3;
                }
            }
        };
        for (const auto& [pos, st] : v.s.stations) {
            for (ItemKind part : st.contents) {
                if (part == k) n += 1;
            }
            if (st.item) credit_item(*st.item);
        }
        if (v.s.player.held) credit_item(*v.s.player.held);
        // Delivered dishes are gone; a fresh batch is intended then.
        return n;
    };

    for (ItemKind k : {ItemKind::Tomato, ItemKind::Onion, ItemKind::Steak}) {
        if (required_of(k) == 0) continue;
        if (accounted(k) < required_of(k)) {
            const auto& held = v.s.player.held;
            if (held && held->kind == k && !held->plated) {
                if (auto counter = nearest_empty_counter(v)) {
                    return one(*counter, "stage ingredient");
                }
                return {};
            }
            if (!held) return fetch(v, k);
            return {};
        }
    }
    return {};
}

int plan_distance(const View& v, const Subtask& sub) {
    PathQuery q;
    q.from = v.s.player.pos;
    q.facing = v.s.player.facing;
    q.holding = v.s.player.held.has_value();
    q.policy = v.m.hazard_policy;
    if (v.s.teammate && !v.m.teammate_walkable) {
        q.blocked_agent = v.s.teammate->pos;
    }
    auto plan = plan_path(v.s.map, q, sub.target);
    return plan ? plan->moves : 1 << 20;
}

}  // namespace

std::vector<Subtask> candidate_subtasks(const Heuristic& h,
                                        const WorldState& state,
                                        const BehaviorMods& mods) {
    View v(state, mods);
    Subtasks out;
    auto add = [&](Subtasks tasks) {
        for (auto& t : tasks) out.push_back(std::move(t));
    };

    if (state.player.held) {
        add(route_held(v));
        if (h.id == "H5" && out.empty()) add(batch_stage(v));
        if (out.empty()) add(stash_held(v));
        return out;
    }

    if (h.id == "H3" && !clean_dish_present(v)) {
        add(dish_acquire(v));
        if (!out.empty()) return out;
    }
    if (h.id == "H5") {
        add(batch_stage(v));
        if (!out.empty()) return out;
    }

    if (h.id == "H1") {
        add(steak_needs(v));
        add(soup_needs(v));
    } else if (h.id == "H4") {
        Subtasks a = soup_needs(v);
        Subtasks b = steak_needs(v);
        if (!a.empty() && !b.empty()) {
            if (plan_distance(v, b.front()) < plan_distance(v, a.front()))
                std::swap(a, b);
        }
        add(std::move(a));
        add(std::move(b));
    } else {
        add(soup_needs(v));
        add(steak_needs(v));
    }
    return out;
}

Action next_action(const Heuristic& h, const WorldState& state,
                   const BehaviorMods& mods) {
    std::vector<Subtask> subs = candidate_subtasks(h, state, mods);
    PathQuery q;
    q.from = state.player.pos;
    q.facing = state.player.facing;
    q.holding = state.player.held.has_value();
    q.policy = mods.hazard_policy;
    if (state.teammate && !mods.teammate_walkable) {
        q.blocked_agent = state.teammate->pos;
    }
    for (const Subtask& sub : subs) {
        auto plan = plan_path(state.map, q, sub.target);
        if (!plan) continue;
        std::vector<Action> actions = plan->actions;
        if (mods.no_facing_turns) {
            std::erase_if(actions, [](Action a) {
                return a == Action::TurnLeft || a == Action::TurnRight;
            });
        }
        if (actions.empty()) {
            return sub.interact ? Action::Interact : Action::NoAction;
        }
        return actions.front();
    }
    return Action::NoAction;
}

NoisyDecision noisy_next_action(NoisyPolicy& policy, const WorldState& state) {
    if (policy.epsilon > 0.0 && policy.rng.uniform() < policy.epsilon) {
        Action a = kAllActions[policy.rng.below(kAllActions.size())];
        return {a, true};
    }
    return {next_action(policy.base, state, policy.mods), false};
}

}  // namespace sous
