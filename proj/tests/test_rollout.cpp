#include <doctest.h>

#include "sous/mapgen.hpp"
#include "sous/rollout.hpp"

using namespace sous;

namespace {

NoisyPolicy policy_for(const char* h, double epsilon = 0.2) {
    NoisyPolicy p;
    p.base = *heuristic_by_id(h);
    p.epsilon = epsilon;
    return p;
}

}  // namespace

TEST_CASE("run_episode is deterministic in the seed") {
    GridMap map = load_fixture_map("ref_original");
    Trajectory a = run_episode(map, policy_for("H2"), 80, 42,
                               RecipeVariant::Original);
    Trajectory b = run_episode(map, policy_for("H2"), 80, 42,
                               RecipeVariant::Original);
    CHECK(trajectory_hash(a) == trajectory_hash(b));
    CHECK(trajectory_to_jsonl(a) == trajectory_to_jsonl(b));

    Trajectory c = run_episode(map, policy_for("H2"), 80, 43,
                               RecipeVariant::Original);
    CHECK(trajectory_hash(a) != trajectory_hash(c));
}

TEST_CASE("trajectory shape: horizon+1 frames, terminal frame actionless") {
    GridMap map = load_fixture_map("ref_original");
    Trajectory t = run_episode(map, policy_for("H1"), 50, 7,
                               RecipeVariant::Original);
    REQUIRE(t.frames.size() == 51);
    for (size_t i = 0; i + 1 < t.frames.size(); ++i) {
        CHECK(t.frames[i].action.has_value());
        CHECK(t.frames[i].state.tick == static_cast<int64_t>(i));
    }
    CHECK(!t.frames.back().action.has_value());

    int64_t last = -1;
    for (const auto& e : t.events) {
        CHECK(e.tick >= last);
        last = e.tick;
        CHECK(e.tick < 50);
    }
}

TEST_CASE("noise-free episodes flag no random steps") {
    GridMap map = load_fixture_map("ref_original");
    Trajectory t = run_episode(map, policy_for("H3", 0.0), 120, 3,
                               RecipeVariant::Original);
    for (const auto& f : t.frames) CHECK(!f.was_random);
}

TEST_CASE("ground-truth correction equals the base policy's next action") {
    GridMap map = load_fixture_map("ref_original");
    for (const char* h : {"H1", "H2", "H3", "H4", "H5"}) {
        TrajectoryMeta meta;
        meta.heuristic_id = h;
        meta.defect_id = "train-05";
        NoisyPolicy p = policy_for(h, 0.0);
        p.mods = find_defect("train-05")->mods;
        Trajectory t = run_episode(map, p, 60, 9, RecipeVariant::Original,
                                   meta);
        Action oracle = ground_truth_correction(t);
        CHECK(oracle ==
              next_action(*heuristic_by_id(h), t.final_state(), {}));
    }

    Trajectory bogus;
    bogus.meta.heuristic_id = "H9";
    bogus.frames.push_back(
        {make_world(map, RecipeVariant::Original, 1), {}, false});
    CHECK_THROWS_AS((void)ground_truth_correction(bogus),
                    std::invalid_argument);
}

TEST_CASE("reference trajectories deliver on every heuristic and variant") {
    for (const auto& h : all_heuristics()) {
        for (RecipeVariant v : kAllVariants) {
            Trajectory t = reference_trajectory(h, v);
            INFO(h.id, " on ", to_string(v));
            CHECK(t.final_state().deliveries >= 1);
            CHECK(t.frames.size() ==
                  static_cast<size_t>(kReferenceHorizon) + 1);
            for (const auto& f : t.frames) CHECK(!f.was_random);
        }
    }
}

TEST_CASE("triple keys and seeds are stable and distinct") {
    uint64_t s1 = triple_seed(5, "m1", "H1", "train-01");
    CHECK(s1 == triple_seed(5, "m1", "H1", "train-01"));
    CHECK(s1 != triple_seed(5, "m1", "H1", "train-02"));
    CHECK(s1 != triple_seed(6, "m1", "H1", "train-01"));
    CHECK(triple_key("m1", "H1", "train-01") ==
          triple_key("m1", "H1", "train-01"));
    CHECK(triple_key("m1", "H1", "train-01") !=
          triple_key("m1", "H2", "train-01"));
}

TEST_CASE("corpus build is deterministic and skips incompatible triples") {
    auto maps = generate_maps(17, 2);
    std::vector<Defect> defects = {no_defect(), *find_defect("train-02"),
                                   *find_defect("alt1-1")};
    CorpusOptions opt;
    opt.global_seed = 12;
    opt.horizon = 40;
    opt.variant = RecipeVariant::Original;
    opt.workers = 4;

    Corpus a = build_corpus(maps, all_heuristics(), defects, opt);
    Corpus b = build_corpus(maps, all_heuristics(), defects, opt);
    CHECK(a.manifest_hash == b.manifest_hash);
    // alt1-1 is incompatible with the original recipe on both maps.
    CHECK(a.skipped.size() == maps.size() * all_heuristics().size());
    CHECK(a.entries.size() ==
          maps.size() * all_heuristics().size() * 2);
    for (size_t i = 0; i < a.entries.size(); ++i) {
        CHECK(a.entries[i].content_hash == b.entries[i].content_hash);
        CHECK(a.entries[i].triple_hash == b.entries[i].triple_hash);
    }
}

TEST_CASE("state serialization is valid JSON with the core fields") {
    GridMap map = load_fixture_map("ref_original");
    WorldState s = make_world(map, RecipeVariant::Original, 1);
    std::string j = state_to_json(s);
    CHECK(j.find("\"tick\"") != std::string::npos);
    CHECK(j.find("\"player\"") != std::string::npos);
    CHECK(j.find("\"deliveries\"") != std::string::npos);
}
