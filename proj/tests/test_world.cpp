#include <doctest.h>

#include "sous/rollout.hpp"
#include "sous/world.hpp"

using namespace sous;

namespace {

WorldState ref_world(uint64_t seed = 1) {
    GridMap map = load_fixture_map("ref_original");
    return make_world(map, RecipeVariant::Original, seed);
}

// Park the teammate far from the action so it cannot interfere.
void park_teammate(WorldState& s, Coord c) {
    if (s.teammate) s.teammate->pos = c;
}

// Fixture layout (7x7):
//   #T#O#N#     T(0,1) O(0,3) N(0,5)
//   B     C     B(1,0) pot C(1,6)
//   # X   #     player spawn (2,2)
//   E  I  S     E(3,0) I(3,3) S(3,6)
//   #   H #     H(4,4)
//   D  Y  G     D(5,0) teammate spawn (5,3) grill G(5,6)
//   #######

}  // namespace

TEST_CASE("world constants") {
    CHECK(kSoupCookTicks == 20);
    CHECK(kSteakCookTicks == 15);
    CHECK(kChopWorkUnits == 3);
    CHECK(kWashWorkUnits == 3);
    CHECK(kHazardDropProb == doctest::Approx(0.5));
    CHECK(kDefaultHorizon == 400);
}

TEST_CASE("moves are absolute translations and do not change facing") {
    WorldState s = ref_world();
    s.player.pos = {2, 3};
    s.player.facing = Direction::East;
    park_teammate(s, {5, 3});

    auto [n1, e1] = step(s, Action::MoveForward, Action::NoAction);
    CHECK(n1.player.pos == Coord{1, 3});
    CHECK(n1.player.facing == Direction::East);

    auto [n2, e2] = step(s, Action::MoveBackward, Action::NoAction);
    CHECK(n2.player.pos == Coord{3, 3});

    auto [n3, e3] = step(s, Action::MoveLeft, Action::NoAction);
    CHECK(n3.player.pos == Coord{2, 2});

    auto [n4, e4] = step(s, Action::MoveRight, Action::NoAction);
    CHECK(n4.player.pos == Coord{2, 4});
    CHECK(n4.player.facing == Direction::East);
}

TEST_CASE("turns rotate facing and keep position") {
    WorldState s = ref_world();
    s.player.facing = Direction::North;
    auto left = step(s, Action::TurnLeft, Action::NoAction).first;
    CHECK(left.player.facing == Direction::West);
    CHECK(left.player.pos == s.player.pos);
    auto right = step(s, Action::TurnRight, Action::NoAction).first;
    CHECK(right.player.facing == Direction::East);
}

TEST_CASE("moving into a counter is blocked with an event") {
    WorldState s = ref_world();
    s.player.pos = {1, 1};
    park_teammate(s, {5, 3});
    auto [next, events] = step(s, Action::MoveForward, Action::NoAction);
    CHECK(next.player.pos == Coord{1, 1});
    REQUIRE(events.size() >= 1);
    CHECK(events[0].kind == EventKind::Blocked);
}

TEST_CASE("interact picks up from a faced dispenser") {
    WorldState s = ref_world();
    s.player.pos = {1, 1};
    s.player.facing = Direction::North;  // faces T at (0,1)
    park_teammate(s, {5, 3});

    InteractOutcome outcome = interact_resolution(s);
    CHECK(outcome.kind == InteractOutcome::Kind::PickupFromDispenser);

    auto [next, events] = step(s, Action::Interact, Action::NoAction);
    REQUIRE(next.player.held.has_value());
    CHECK(next.player.held->kind == ItemKind::Tomato);
    REQUIRE(!events.empty());
    CHECK(events[0].kind == EventKind::PickedUp);
}

TEST_CASE("hold-one: a second pickup fails with HandsFull") {
    WorldState s = ref_world();
    s.player.pos = {1, 1};
    s.player.facing = Direction::North;
    s.player.held = make_item(ItemKind::Onion);
    InteractOutcome outcome = interact_resolution(s);
    CHECK(outcome.kind == InteractOutcome::Kind::Failed);
    CHECK(outcome.reason == FailReason::HandsFull);
}

TEST_CASE("facing gate: interact toward empty floor fails") {
    WorldState s = ref_world();
    s.player.pos = {2, 3};
    s.player.facing = Direction::South;  // faces floor (3,3 is hazard-free? I)
    s.player.facing = Direction::East;   // faces floor (2,4)
    park_teammate(s, {5, 3});
    InteractOutcome outcome = interact_resolution(s);
    CHECK(outcome.kind == InteractOutcome::Kind::Failed);
    auto [next, events] = step(s, Action::Interact, Action::NoAction);
    REQUIRE(!events.empty());
    CHECK(events[0].kind == EventKind::InteractFailed);
    CHECK(!next.player.held.has_value());
}

TEST_CASE("pot cook cycle: three tomatoes, timer, dish pickup") {
    WorldState s = ref_world();
    park_teammate(s, {5, 3});
    s.player.pos = {1, 5};
    s.player.facing = Direction::East;  // faces pot at (1,6)

    for (int i = 0; i < 3; ++i) {
        s.player.held = make_item(ItemKind::Tomato);
        auto [next, events] = step(s, Action::Interact, Action::NoAction);
        s = next;
        if (i < 2) {
            CHECK(s.stations.at({1, 6}).status == CookStatus::Idle);
        } else {
            bool started = false;
            for (const auto& e : events)
                if (e.kind == EventKind::CookingStarted) started = true;
            CHECK(started);
            CHECK(s.stations.at({1, 6}).status == CookStatus::Cooking);
            // The timer advances on the same tick cooking starts.
            CHECK(s.stations.at({1, 6}).timer == kSoupCookTicks - 1);
        }
    }

    // Cook gate: pickup attempts fail while cooking.
    s.player.held = make_item(ItemKind::CleanDish);
    InteractOutcome during = interact_resolution(s);
    CHECK(during.kind == InteractOutcome::Kind::Failed);
    CHECK(during.reason == FailReason::StillCooking);

    // A fourth ingredient is rejected while the pot is busy.
    {
        WorldState extra = s;
        extra.player.held = make_item(ItemKind::Tomato);
        InteractOutcome o = interact_resolution(extra);
        CHECK(o.kind == InteractOutcome::Kind::Failed);
    }

    for (int t = 0; t < kSoupCookTicks; ++t)
        s = step(s, Action::NoAction, Action::NoAction).first;
    CHECK(s.stations.at({1, 6}).status == CookStatus::Cooked);

    // Pickup requires a clean dish.
    {
        WorldState bare = s;
        bare.player.held.reset();
        InteractOutcome o = interact_resolution(bare);
        CHECK(o.kind == InteractOutcome::Kind::Failed);
        CHECK(o.reason == FailReason::NeedCleanDish);
    }

    s.player.held = make_item(ItemKind::CleanDish);
    auto [after, events] = step(s, Action::Interact, Action::NoAction);
    REQUIRE(after.player.held.has_value());
    CHECK(after.player.held->kind == ItemKind::Soup);
    CHECK(after.player.held->plated);
    // The emptied pot entry is dropped from the station table.
    CHECK(after.stations.count(Coord{1, 6}) == 0);
}

TEST_CASE("grill cooks one steak into grilled steak") {
    WorldState s = ref_world();
    park_teammate(s, {1, 3});
    s.player.pos = {5, 5};
    s.player.facing = Direction::East;  // faces grill at (5,6)
    s.player.held = make_item(ItemKind::Steak);
    s = step(s, Action::Interact, Action::NoAction).first;
    CHECK(s.stations.at({5, 6}).status == CookStatus::Cooking);
    CHECK(s.stations.at({5, 6}).timer == kSteakCookTicks - 1);
    for (int t = 0; t < kSteakCookTicks; ++t)
        s = step(s, Action::NoAction, Action::NoAction).first;
    REQUIRE(s.stations.at({5, 6}).item.has_value());
    CHECK(s.stations.at({5, 6}).item->kind == ItemKind::GrilledSteak);
    s.player.held = make_item(ItemKind::CleanDish);
    s = step(s, Action::Interact, Action::NoAction).first;
    REQUIRE(s.player.held.has_value());
    CHECK(s.player.held->kind == ItemKind::GrilledSteak);
    CHECK(s.player.held->plated);
}

TEST_CASE("chop and wash take three work units") {
    WorldState s = ref_world();
    park_teammate(s, {1, 3});
    s.player.pos = {1, 1};
    s.player.facing = Direction::West;  // faces board B at (1,0)
    s.player.held = make_item(ItemKind::Onion);
    s = step(s, Action::Interact, Action::NoAction).first;  // place
    REQUIRE(s.stations.at({1, 0}).item.has_value());
    for (int i = 0; i < kChopWorkUnits; ++i) {
        CHECK(s.stations.at({1, 0}).item->kind == ItemKind::Onion);
        s = step(s, Action::Interact, Action::NoAction).first;
    }
    CHECK(s.stations.at({1, 0}).item->kind == ItemKind::ChoppedOnion);

    // Wash a dirty dish at the sink.
    s.player.pos = {3, 5};
    s.player.facing = Direction::East;  // faces sink at (3,6)
    s.player.held = make_item(ItemKind::DirtyDish);
    s = step(s, Action::Interact, Action::NoAction).first;  // place into sink
    for (int i = 0; i < kWashWorkUnits; ++i)
        s = step(s, Action::Interact, Action::NoAction).first;
    // After the final wash the dish is clean and retrievable.
    bool clean_somewhere =
        (s.player.held && s.player.held->kind == ItemKind::CleanDish) ||
        (s.stations.count({3, 6}) && s.stations.at({3, 6}).item &&
         s.stations.at({3, 6}).item->kind == ItemKind::CleanDish);
    CHECK(clean_somewhere);
}

TEST_CASE("combination gate: chopped onion needs held grilled steak") {
    WorldState s = ref_world();
    park_teammate(s, {1, 3});
    s.player.pos = {1, 1};
    s.player.facing = Direction::West;
    s.stations[{1, 0}].item = make_item(ItemKind::ChoppedOnion);

    SUBCASE("empty-handed pickup is refused") {
        InteractOutcome o = interact_resolution(s);
        CHECK(o.kind == InteractOutcome::Kind::Failed);
    }
    SUBCASE("plated grilled steak combines") {
        Item steak = make_item(ItemKind::GrilledSteak);
        steak.plated = true;
        s.player.held = steak;
        auto [next, events] = step(s, Action::Interact, Action::NoAction);
        REQUIRE(next.player.held.has_value());
        CHECK(next.player.held->kind == ItemKind::ComboDish);
        CHECK(next.stations.count(Coord{1, 0}) == 0);
    }
}

TEST_CASE("delivery accepts servable plates and rejects raw items") {
    WorldState s = ref_world();
    park_teammate(s, {1, 3});
    s.player.pos = {3, 1};
    s.player.facing = Direction::West;  // faces delivery E at (3,0)

    Item soup = make_item(ItemKind::Soup);
    soup.plated = true;
    soup.parts = {ItemKind::Tomato, ItemKind::Tomato, ItemKind::Tomato};
    s.player.held = soup;
    auto [next, events] = step(s, Action::Interact, Action::NoAction);
    CHECK(next.deliveries == 1);
    CHECK(!next.player.held.has_value());
    bool delivered = false;
    for (const auto& e : events)
        if (e.kind == EventKind::Delivered) delivered = true;
    CHECK(delivered);

    WorldState raw = ref_world();
    park_teammate(raw, {1, 3});
    raw.player.pos = {3, 1};
    raw.player.facing = Direction::West;
    raw.player.held = make_item(ItemKind::Tomato);
    InteractOutcome o = interact_resolution(raw);
    CHECK(o.kind == InteractOutcome::Kind::Failed);
}

TEST_CASE("hazards drop held items about half the time, never bare-handed") {
    GridMap map = load_fixture_map("ref_original");
    int drops = 0;
    const int trials = 400;
    for (int i = 0; i < trials; ++i) {
        WorldState s = make_world(map, RecipeVariant::Original, 1000 + i);
        if (s.teammate) s.teammate->pos = {1, 3};
        s.player.pos = {4, 3};
        s.player.held = make_item(ItemKind::Tomato);
        // Step east onto the visible hazard H at (4,4).
        auto [next, events] = step(s, Action::MoveRight, Action::NoAction);
        for (const auto& e : events)
            if (e.kind == EventKind::DroppedOnHazard) ++drops;
    }
    CHECK(drops > trials * 0.4);
    CHECK(drops < trials * 0.6);

    // Empty-handed walks never trip a drop.
    for (int i = 0; i < 50; ++i) {
        WorldState s = make_world(map, RecipeVariant::Original, 2000 + i);
        if (s.teammate) s.teammate->pos = {1, 3};
        s.player.pos = {4, 3};
        auto [next, events] = step(s, Action::MoveRight, Action::NoAction);
        for (const auto& e : events)
            CHECK(e.kind != EventKind::DroppedOnHazard);
    }
}

TEST_CASE("step is a pure function of state and actions") {
    WorldState s = ref_world(77);
    s.player.pos = {2, 2};
    auto a = step(s, Action::MoveRight, Action::NoAction);
    auto b = step(s, Action::MoveRight, Action::NoAction);
    CHECK(a.first.player.pos == b.first.player.pos);
    CHECK(a.first.tick == b.first.tick);
    CHECK(a.second.size() == b.second.size());
}

TEST_CASE("action strings are the fixed lowercase vocabulary") {
    CHECK(to_string(Action::MoveForward) == "move forward");
    CHECK(to_string(Action::MoveBackward) == "move backward");
    CHECK(to_string(Action::MoveLeft) == "move left");
    CHECK(to_string(Action::MoveRight) == "move right");
    CHECK(to_string(Action::TurnLeft) == "turn left");
    CHECK(to_string(Action::TurnRight) == "turn right");
    CHECK(to_string(Action::Interact) == "interact");
    CHECK(to_string(Action::NoAction) == "no action");
    CHECK(parse_action(" Move   Forward ") == Action::MoveForward);
    CHECK(!parse_action("sprint").has_value());
}
