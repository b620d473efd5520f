#include "sous/world.hpp"

#include <algorithm>

#include "sous/rng.hpp"

namespace sous {

std::string to_string(FailReason r) {
    switch (r) {
        case FailReason::NothingThere: return "nothing there";
        case FailReason::HandsFull: return "hands full";
        case FailReason::HandsEmpty: return "hands empty";
        case FailReason::StillCooking: return "still cooking";
        case FailReason::NotCooked: return "not cooked";
        case FailReason::StationBusy: return "station busy";
        case FailReason::WrongItem: return "wrong item";
        case FailReason::NeedCleanDish: return "need clean dish";
        case FailReason::PotRejects: return "pot rejects ingredient";
        case FailReason::NotServable: return "not servable";
        case FailReason::NoMatchingCombination: return "no matching combination";
        case FailReason::NotAStation: return "not a station";
    }
    return "?";
}

Coord faced_tile(const PlayerState& p) { return neighbor(p.pos, p.facing); }

std::optional<Direction> move_direction(Action a) {
    switch (a) {
        case Action::MoveForward: return Direction::North;
        case Action::MoveBackward: return Direction::South;
        case Action::MoveLeft: return Direction::West;
        case Action::MoveRight: return Direction::East;
        default: return std::nullopt;
    }
}

namespace {

const StationState* station_at(const WorldState& s, Coord c) {
    auto it = s.stations.find(c);
    return it == s.stations.end() ? nullptr : &it->second;
}

InteractOutcome fail(FailReason r) {
    InteractOutcome o;
    o.kind = InteractOutcome::Kind::Failed;
    o.reason = r;
    return o;
}

ItemKind dispensed_kind(TileKind k) {
    switch (k) {
        case TileKind::OnionDispenser: return ItemKind::Onion;
        case TileKind::TomatoDispenser: return ItemKind::Tomato;
        case TileKind::SteakDispenser: return ItemKind::Steak;
        default: return ItemKind::DirtyDish;
    }
}

bool is_raw_ingredient(ItemKind k) {
    return k == ItemKind::Tomato || k == ItemKind::Onion || k == ItemKind::Steak;
}

bool is_chopped(ItemKind k) {
    return k == ItemKind::ChoppedOnion || k == ItemKind::ChoppedSteak;
}

ItemKind chopped_form(ItemKind k) {
    return k == ItemKind::Onion ? ItemKind::ChoppedOnion : ItemKind::ChoppedSteak;
}

InteractOutcome resolve_board(const WorldState& s, const StationState* st) {
    const auto& rules = rules_for(s.variant);
    const auto& held = s.player.held;
    if (!st || !st->item) {
        if (!held) return fail(FailReason::NothingThere);
        bool choppable =
            (!held->plated && std::count(rules.chop_targets.begin(),
                                         rules.chop_targets.end(), held->kind)) ||
            (rules.board_accepts_grilled_steak && held->plated &&
             held->kind == ItemKind::GrilledSteak);
        if (!choppable) return fail(FailReason::WrongItem);
        InteractOutcome o;
        o.kind = InteractOutcome::Kind::PlaceOnBoard;
        return o;
    }
    const Item& on_board = *st->item;
    if (!is_chopped(on_board.kind)) {
        InteractOutcome o;
        o.kind = InteractOutcome::Kind::ChopProgress;
        o.completes_work = on_board.progress + 1 >= kChopWorkUnits;
        if (o.completes_work) {
            o.result = on_board;
            o.result.kind = chopped_form(on_board.kind);
            o.result.progress = 0;
        }
        return o;
    }
    // Fully chopped: pickup is gated by the variant's combination rules.
    for (const auto& rule : rules.combinations) {
        if (rule.pickup != on_board.kind) continue;
        if (!rule.held) {
            if (held) return fail(FailReason::HandsFull);
            InteractOutcome o;
            o.kind = InteractOutcome::Kind::PickupFromSurface;
            o.result = on_board;
            return o;
        }
        if (held && held->plated && held->kind == *rule.held) {
            InteractOutcome o;
            o.kind = InteractOutcome::Kind::PickupCombined;
            o.result.kind = ItemKind::ComboDish;
            o.result.plated = true;
            o.result.parts = {held->kind, on_board.kind};
            return o;
        }
    }
    return fail(FailReason::NoMatchingCombination);
}

}  // namespace

InteractOutcome interact_resolution(const WorldState& s) {
    Coord target = faced_tile(s.player);
    if (!s.map.in_bounds(target)) return fail(FailReason::NothingThere);
    TileKind kind = s.map.at(target);
    const StationState* st = station_at(s, target);
    const auto& held = s.player.held;
    const auto& rules = rules_for(s.variant);

    switch (kind) {
        case TileKind::Floor:
        case TileKind::VisibleHazard:
        case TileKind::InvisibleHazard: {
            // Dropped items can be recovered, but nothing can be set down here.
            if (st && st->item) {
                if (held) return fail(FailReason::HandsFull);
                InteractOutcome o;
                o.kind = InteractOutcome::Kind::PickupFromSurface;
                o.result = *st->item;
                return o;
            }
            return fail(FailReason::NothingThere);
        }
        case TileKind::Counter: {
            if (st && st->item) {
                if (held) return fail(FailReason::StationBusy);
                InteractOutcome o;
                o.kind = InteractOutcome::Kind::PickupFromSurface;
                o.result = *st->item;
                return o;
            }
            if (!held) return fail(FailReason::NothingThere);
            InteractOutcome o;
            o.kind = InteractOutcome::Kind::PlaceOnSurface;
            return o;
        }
        case TileKind::OnionDispenser:
        case TileKind::TomatoDispenser:
        case TileKind::SteakDispenser:
        case TileKind::DishDispenser: {
            if (held) return fail(FailReason::HandsFull);
            InteractOutcome o;
            o.kind = InteractOutcome::Kind::PickupFromDispenser;
            o.result = make_item(dispensed_kind(kind));
            return o;
        }
        case TileKind::CookingPot: {
            if (st && st->status == CookStatus::Cooking)
                return fail(FailReason::StillCooking);
            if (st && st->status == CookStatus::Cooked) {
                if (held && held->kind == ItemKind::CleanDish && !held->plated) {
                    InteractOutcome o;
                    o.kind = InteractOutcome::Kind::PickupCooked;
                    o.result.kind = ItemKind::Soup;
                    o.result.plated = true;
                    o.result.parts = st->contents;
                    return o;
                }
                return fail(FailReason::NeedCleanDish);
            }
            if (!held) return fail(FailReason::HandsEmpty);
            if (held->kind != ItemKind::Tomato && held->kind != ItemKind::Onion)
                return fail(FailReason::WrongItem);
            std::vector<ItemKind> contents = st ? st->contents : std::vector<ItemKind>{};
            if (!pot_accepts(rules, contents, held->kind))
                return fail(FailReason::PotRejects);
            InteractOutcome o;
            o.kind = InteractOutcome::Kind::PlaceIntoRange;
            o.starts_cooking = contents.size() + 1 == rules.pot_recipe.size();
            return o;
        }
        case TileKind::Grill: {
            if (st && st->status == CookStatus::Cooking)
                return fail(FailReason::StillCooking);
            if (st && st->status == CookStatus::Cooked) {
                if (held && held->kind == ItemKind::CleanDish && !held->plated) {
                    InteractOutcome o;
                    o.kind = InteractOutcome::Kind::PickupCooked;
                    o.result.kind = ItemKind::GrilledSteak;
                    o.result.plated = true;
                    return o;
                }
                return fail(FailReason::NeedCleanDish);
            }
            if (!held) return fail(FailReason::HandsEmpty);
            if (held->kind != ItemKind::Steak) return fail(FailReason::WrongItem);
            InteractOutcome o;
            o.kind = InteractOutcome::Kind::PlaceIntoRange;
            o.starts_cooking = true;
            return o;
        }
        case TileKind::CuttingBoard:
            return resolve_board(s, st);
        case TileKind::Sink: {
            if (!held) return fail(FailReason::HandsEmpty);
            if (held->kind != ItemKind::DirtyDish) return fail(FailReason::WrongItem);
            InteractOutcome o;
            o.kind = InteractOutcome::Kind::WashProgress;
            o.completes_work = held->progress + 1 >= kWashWorkUnits;
            if (o.completes_work) {
                o.result = make_item(ItemKind::CleanDish);
            }
            return o;
        }
        case TileKind::Delivery: {
            if (!held) return fail(FailReason::HandsEmpty);
            if (!is_servable(s.variant, *held)) return fail(FailReason::NotServable);
            InteractOutcome o;
            o.kind = InteractOutcome::Kind::Deliver;
            return o;
        }
    }
    return fail(FailReason::NotAStation);
}

WorldState make_world(const GridMap& map, RecipeVariant variant, uint64_t seed,
                      bool with_teammate) {
    WorldState s;
    s.map = map;
    s.variant = variant;
    s.rng_state = seed;
    s.player.pos = map.player_spawn;
    s.player.facing = Direction::South;
    if (with_teammate) {
        PlayerState mate;
        mate.pos = map.teammate_spawn;
        mate.facing = Direction::East;
        s.teammate = mate;
    }
    return s;
}

bool is_terminal(const WorldState& state, int64_t horizon) {
    return state.tick >= horizon;
}

Action teammate_patrol_action(const WorldState& state) {
    if (!state.teammate) return Action::NoAction;
    const PlayerState& mate = *state.teammate;
    Coord to = neighbor(mate.pos, mate.facing);
    if (state.map.walkable(to) && to != state.player.pos) {
        switch (mate.facing) {
            case Direction::North: return Action::MoveForward;
            case Direction::South: return Action::MoveBackward;
            case Direction::West: return Action::MoveLeft;
            case Direction::East: return Action::MoveRight;
        }
    }
    return Action::TurnRight;
}

namespace {

void erase_if_empty(WorldState& s, Coord c) {
    auto it = s.stations.find(c);
    if (it != s.stations.end() && it->second.empty()) s.stations.erase(it);
}

void apply_move(WorldState& s, PlayerState& actor, bool is_player, Direction d,
                int64_t t, EventList& ev) {
    Coord to = neighbor(actor.pos, d);
    const PlayerState* other =
        is_player ? (s.teammate ? &*s.teammate : nullptr) : &s.player;
    if (!s.map.walkable(to) || (other && other->pos == to)) {
        if (is_player) ev.push_back({t, EventKind::Blocked, {}, std::nullopt, to, {}});
        return;
    }
    actor.pos = to;
    TileKind kind = s.map.at(to);
    bool hazard = kind == TileKind::VisibleHazard || kind == TileKind::InvisibleHazard;
    if (is_player && hazard && actor.held) {
        SplitMix64 rng(s.rng_state);
        double u = rng.uniform();
        s.rng_state = rng.state;
        if (u < s.hazard_drop_prob) {
            ev.push_back({t, EventKind::Tripped, {}, kind, to, {}});
            StationState& st = s.stations[to];
            if (!st.item) {
                st.item = *actor.held;
                ev.push_back({t, EventKind::DroppedOnHazard,
                              item_label(*actor.held), kind, to, {}});
                actor.held.reset();
            } else {
                erase_if_empty(s, to);
            }
        }
    }
}

void apply_interact(WorldState& s, int64_t t, EventList& ev) {
    InteractOutcome out = interact_resolution(s);
    Coord target = faced_tile(s.player);
    TileKind kind = s.map.in_bounds(target) ? s.map.at(target) : TileKind::Floor;
    auto& held = s.player.held;
    using K = InteractOutcome::Kind;
    switch (out.kind) {
        case K::Failed:
            ev.push_back({t, EventKind::InteractFailed, {}, kind, target,
                          to_string(out.reason)});
            break;
        case K::PickupFromDispenser:
            held = out.result;
            ev.push_back({t, EventKind::PickedUp, item_label(*held), kind, target, {}});
            break;
        case K::PickupFromSurface: {
            held = out.result;
            s.stations[target].item.reset();
            erase_if_empty(s, target);
            ev.push_back({t, EventKind::PickedUp, item_label(*held), kind, target, {}});
            break;
        }
        case K::PickupCombined: {
            held = out.result;
            s.stations[target].item.reset();
            erase_if_empty(s, target);
            ev.push_back({t, EventKind::PickedUp, item_label(*held), kind, target, {}});
            break;
        }
        case K::PickupCooked: {
            held = out.result;
            StationState& st = s.stations[target];
            st.contents.clear();
            st.item.reset();
            st.status = CookStatus::Idle;
            st.timer = 0;
            erase_if_empty(s, target);
            ev.push_back({t, EventKind::PickedUp, item_label(*held), kind, target, {}});
            break;
        }
        case K::PlaceOnSurface:
        case K::PlaceOnBoard: {
            StationState& st = s.stations[target];
            st.item = *held;
            st.item->progress = 0;
            ev.push_back({t, EventKind::Placed, item_label(*held), kind, target, {}});
            held.reset();
            break;
        }
        case K::PlaceIntoRange: {
            StationState& st = s.stations[target];
            std::string label = item_label(*held);
            if (kind == TileKind::CookingPot) {
                st.contents.push_back(held->kind);
            } else {
                st.item = *held;
            }
            held.reset();
            ev.push_back({t, EventKind::Placed, label, kind, target, {}});
            if (out.starts_cooking) {
                st.status = CookStatus::Cooking;
                st.timer = kind == TileKind::CookingPot ? kSoupCookTicks
                                                        : kSteakCookTicks;
                std::string food = kind == TileKind::CookingPot ? "soup" : "steak";
                ev.push_back({t, EventKind::CookingStarted, food, kind, target, {}});
            }
            break;
        }
        case K::ChopProgress: {
            StationState& st = s.stations[target];
            if (out.completes_work) {
                st.item = out.result;
                ev.push_back({t, EventKind::Chopped, item_label(*st.item), kind,
                              target, {}});
            } else {
                st.item->progress += 1;
            }
            break;
        }
        case K::WashProgress: {
            if (out.completes_work) {
                held = out.result;
                ev.push_back({t, EventKind::Washed, item_label(*held), kind,
                              target, {}});
            } else {
                held->progress += 1;
            }
            break;
        }
        case K::Deliver: {
            ev.push_back({t, EventKind::Delivered, item_label(*held), kind,
                          target, {}});
            held.reset();
            s.deliveries += 1;
            break;
        }
    }
}

void apply_action(WorldState& s, PlayerState& actor, bool is_player, Action a,
                  int64_t t, EventList& ev) {
    if (auto dir = move_direction(a)) {
        apply_move(s, actor, is_player, *dir, t, ev);
        return;
    }
    switch (a) {
        case Action::TurnLeft:
            actor.facing = turn_left(actor.facing);
            break;
        case Action::TurnRight:
            actor.facing = turn_right(actor.facing);
            break;
        case Action::Interact:
            if (is_player) apply_interact(s, t, ev);
            break;
        default:
            break;
    }
}

}  // namespace

std::pair<WorldState, EventList> step(const WorldState& state,
                                      Action player_action,
                                      Action teammate_action) {
    WorldState next = state;
    EventList ev;
    int64_t t = state.tick;

    apply_action(next, next.player, true, player_action, t, ev);
    if (next.teammate) {
        apply_action(next, *next.teammate, false, teammate_action, t, ev);
    }

    // Cook timers advance after actions resolve.
    for (auto& [pos, st] : next.stations) {
        if (st.status != CookStatus::Cooking) continue;
        if (--st.timer <= 0) {
            st.timer = 0;
            st.status = CookStatus::Cooked;
            TileKind kind = next.map.at(pos);
            std::string food = "steak";
            if (kind == TileKind::CookingPot) {
                food = "soup";
            } else if (st.item) {
                st.item->kind = ItemKind::GrilledSteak;
            }
            ev.push_back({t, EventKind::CookingFinished, food, kind, pos, {}});
        }
    }

    next.tick = state.tick + 1;
    return {std::move(next), std::move(ev)};
}

}  // namespace sous
