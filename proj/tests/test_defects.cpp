#include <doctest.h>

#include "sous/defect.hpp"
#include "sous/rollout.hpp"
#include "sous/world.hpp"

using namespace sous;

namespace {

// Noise-free lockstep comparison: does the defective policy ever pick a
// different action than its base within `ticks`?
bool diverges_on(const GridMap& map, const Heuristic& h, const Defect& d,
                 RecipeVariant variant, int ticks) {
    WorldState s = make_world(map, variant, 11);
    for (int t = 0; t < ticks; ++t) {
        Action defective = next_action(h, s, d.mods);
        Action base = next_action(h, s, {});
        if (defective != base) return true;
        s = step(s, defective, teammate_patrol_action(s)).first;
    }
    return false;
}

bool manifests(const Defect& d, int ticks) {
    RecipeVariant variant = variant_for(d);
    std::vector<GridMap> maps = {
        load_fixture_map("defect_lab_open"),
        load_fixture_map("defect_lab_hazards"),
        load_fixture_map(reference_map_name(variant)),
    };
    for (const auto& map : maps) {
        for (const auto& h : all_heuristics()) {
            if (diverges_on(map, h, d, variant, ticks)) return true;
        }
    }
    return false;
}

}  // namespace

TEST_CASE("registry holds 17 + 5 + 6 defects in stable order") {
    const auto& reg = defect_registry();
    CHECK(reg.size() == 28);
    CHECK(defects_in_split(DefectSplit::Train).size() == 17);
    CHECK(defects_in_split(DefectSplit::HeldOut).size() == 5);
    CHECK(defects_in_split(DefectSplit::TaskGen).size() == 6);

    CHECK(reg[0].id == "train-01");
    CHECK(reg[15].id == "train-16");
    CHECK(reg[16].id == "no-defect");
    CHECK(reg[17].id == "heldout-01");
    CHECK(reg[21].id == "heldout-05");
    CHECK(reg[22].id == "alt1-1");
    CHECK(reg[27].id == "alt3-2");
}

TEST_CASE("defect descriptions are byte-exact") {
    CHECK(find_defect("train-01")->description ==
          "Player does not know that the cooking pot needs to be full for "
          "the soup to start cooking.");
    CHECK(find_defect("train-05")->description ==
          "The player thinks it is best to only serve soup.");
    CHECK(find_defect("train-12")->description ==
          "Player does not remember or keep track of where the invisible "
          "trip hazard is.");
    CHECK(find_defect("train-16")->description ==
          "Player tries to wash ingredients in the sink.");
    CHECK(find_defect("no-defect")->description == "No Defect");
    CHECK(find_defect("heldout-01")->description ==
          "Player does not know that ingredients need to be placed in the "
          "cooking ranges to cook.");
    CHECK(find_defect("heldout-03")->description ==
          "The player thinks it is best to only serve steak.");
    CHECK(find_defect("alt1-2")->description ==
          "Player tries to place chopped onions on grilled steak.");
    CHECK(find_defect("alt3-2")->description ==
          "Player doesn't know that grilled steak needs to be chopped to "
          "make grilled steak skewers.");
}

TEST_CASE("variant compatibility is enforced") {
    CHECK(compatible(no_defect(), RecipeVariant::Alt2));
    CHECK(compatible(*find_defect("train-03"), RecipeVariant::Original));
    CHECK(!compatible(*find_defect("train-03"), RecipeVariant::Alt1));
    CHECK(compatible(*find_defect("alt2-1"), RecipeVariant::Alt2));
    CHECK(!compatible(*find_defect("alt2-1"), RecipeVariant::Alt3));

    auto h = *heuristic_by_id("H1");
    CHECK_THROWS_AS((void)apply_defect(h, *find_defect("alt1-1"),
                                       RecipeVariant::Original),
                    VariantMismatch);
    Defect bogus;
    bogus.id = "nope";
    CHECK_THROWS_AS((void)apply_defect(h, bogus), UnknownDefect);
}

TEST_CASE("no-defect has default mods and never diverges") {
    CHECK(no_defect().mods == BehaviorMods{});
    for (const auto& h : all_heuristics()) {
        for (const char* name : {"defect_lab_open", "defect_lab_hazards"}) {
            CHECK(!diverges_on(load_fixture_map(name), h, no_defect(),
                               RecipeVariant::Original, 100));
        }
    }
}

TEST_CASE("every real defect manifests within 100 noise-free ticks") {
    for (const auto& d : defect_registry()) {
        if (d.id == "no-defect") continue;
        INFO("defect ", d.id);
        CHECK(manifests(d, 100));
    }
}

TEST_CASE("hazard defects differ from each other") {
    // Walking over the visible versus the invisible hazard are distinct
    // behaviors: the two policies must diverge from each other somewhere.
    GridMap map = load_fixture_map("defect_lab_hazards");
    const Defect& vis = *find_defect("train-11");
    const Defect& invis = *find_defect("train-12");
    bool differ = false;
    for (const auto& h : all_heuristics()) {
        WorldState s = make_world(map, RecipeVariant::Original, 5);
        for (int t = 0; t < 150 && !differ; ++t) {
            Action a = next_action(h, s, vis.mods);
            Action b = next_action(h, s, invis.mods);
            if (a != b) differ = true;
            s = step(s, a, teammate_patrol_action(s)).first;
        }
        if (differ) break;
    }
    CHECK(differ);
}
