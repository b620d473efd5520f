#include <doctest.h>

#include "sous/mapgen.hpp"
#include "sous/rng.hpp"
#include "sous/rollout.hpp"
#include "sous/world.hpp"

using namespace sous;

namespace {

// One fuzz run: `steps` random actions for both players, checking the
// structural invariants after every tick.
void fuzz_map(const GridMap& map, uint64_t seed, int steps) {
    SplitMix64 rng(seed);
    WorldState s = make_world(map, RecipeVariant::Original, seed);
    int last_deliveries = 0;
    for (int i = 0; i < steps; ++i) {
        Action a = kAllActions[rng.below(kAllActions.size())];
        Action b = kAllActions[rng.below(kAllActions.size())];
        auto [next, events] = step(s, a, b);

        REQUIRE(next.tick == s.tick + 1);
        REQUIRE(next.map.walkable(next.player.pos));
        if (next.teammate) {
            REQUIRE(next.map.walkable(next.teammate->pos));
        }
        REQUIRE(next.deliveries >= last_deliveries);
        last_deliveries = next.deliveries;

        for (const auto& [pos, station] : next.stations) {
            TileKind kind = next.map.at(pos);
            if (!station.contents.empty()) {
                // Only cooking ranges accumulate ingredients, bounded by the
                // largest recipe (three tomatoes).
                REQUIRE((kind == TileKind::CookingPot ||
                         kind == TileKind::Grill));
                REQUIRE(station.contents.size() <= 3);
            }
            if (station.status == CookStatus::Cooking) {
                REQUIRE(station.timer > 0);
                REQUIRE(station.timer <= kSoupCookTicks);
                // Pots cook their contents; grills cook the resting item.
                if (kind == TileKind::CookingPot) {
                    REQUIRE(!station.contents.empty());
                } else {
                    REQUIRE(station.item.has_value());
                }
            }
            if (station.status == CookStatus::Idle) {
                REQUIRE(station.timer == 0);
            }
            if (station.item && next.map.walkable(pos)) {
                // Items on a walkable tile can only be hazard drops.
                REQUIRE((kind == TileKind::VisibleHazard ||
                         kind == TileKind::InvisibleHazard));
            }
        }

        for (const auto& e : events) REQUIRE(e.tick == s.tick);
        s = std::move(next);
    }
}

}  // namespace

TEST_CASE("20,000 random steps never break a world invariant") {
    auto maps = generate_maps(4242, 8);
    int steps_total = 0;
    for (size_t m = 0; m < maps.size(); ++m) {
        fuzz_map(maps[m], 9000 + m, 1250);
        steps_total += 1250;
    }
    GridMap fixture = load_fixture_map("ref_original");
    for (uint64_t seed : {1u, 2u, 3u, 4u}) {
        fuzz_map(fixture, seed, 2500);
        steps_total += 2500;
    }
    CHECK(steps_total == 20000);
}

TEST_CASE("stepping is pure under repeated replay") {
    GridMap map = load_fixture_map("defect_lab_hazards");
    WorldState s = make_world(map, RecipeVariant::Original, 77);
    SplitMix64 rng(5);
    for (int i = 0; i < 300; ++i) {
        Action a = kAllActions[rng.below(kAllActions.size())];
        Action b = kAllActions[rng.below(kAllActions.size())];
        auto first = step(s, a, b);
        auto second = step(s, a, b);
        REQUIRE(first.second.size() == second.second.size());
        REQUIRE(first.first.tick == second.first.tick);
        REQUIRE(first.first.player.pos == second.first.player.pos);
        REQUIRE(first.first.rng_state == second.first.rng_state);
        s = std::move(first.first);
    }
}
