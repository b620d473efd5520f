// Acceptance harness: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "sous/datasets.hpp"
#include "sous/eval.hpp"
#include "sous/mapgen.hpp"
#include "sous/prompts.hpp"
#include "sous/qa.hpp"
#include "sous/render.hpp"
#include "sous/rng.hpp"
#include "sous/rollout.hpp"
#include "sous/textgen.hpp"
#include "sous/world.hpp"

using namespace sous;
namespace fs = std::filesystem;

namespace {

struct Criterion {
    std::string name;
    std::function<bool(std::string&)> run;
};

bool expect(bool ok, const std::string& what, std::string& detail) {
    if (!ok && detail.empty()) detail = what;
    return ok;
}

// ---------------------------------------------------------------- pipeline

struct PipelineArtifacts {
    std::vector<DatasetRecord> records;
    SplitManifest manifest;
    uint64_t manifest_hash = 0;
};

std::vector<Trajectory> pipeline_corpus() {
    std::vector<Trajectory> corpus;
    uint64_t seed = 500;
    for (const char* h : {"H1", "H3"}) {
        for (const char* d :
             {"train-01", "train-05", "no-defect", "heldout-01"}) {
            GridMap map = load_fixture_map("ref_original");
            NoisyPolicy p;
            p.base = *heuristic_by_id(h);
            p.epsilon = 0.1;
            p.mods = find_defect(d)->mods;
            TrajectoryMeta meta;
            meta.map_id = "ref_original";
            meta.heuristic_id = h;
            meta.defect_id = d;
            corpus.push_back(run_episode(map, p, 60, seed++,
                                         RecipeVariant::Original, meta));
        }
        GridMap alt = load_fixture_map("ref_alt1");
        NoisyPolicy p;
        p.base = *heuristic_by_id(h);
        p.epsilon = 0.1;
        p.mods = find_defect("alt1-1")->mods;
        TrajectoryMeta meta;
        meta.map_id = "ref_alt1";
        meta.heuristic_id = h;
        meta.defect_id = "alt1-1";
        corpus.push_back(
            run_episode(alt, p, 60, seed++, RecipeVariant::Alt1, meta));
    }
    return corpus;
}

PipelineArtifacts run_mini_pipeline(const std::string& out_name) {
    auto corpus = pipeline_corpus();

    MockGateway gateway(3);
    std::vector<CoachingSnippet> pool;
    for (const char* d :
         {"train-01", "train-05", "no-defect", "heldout-01", "alt1-1"}) {
        auto part = generate_coaching(gateway, *find_defect(d));
        pool.insert(pool.end(), part.begin(), part.end());
    }

    std::map<std::string, Trajectory> refs;
    for (const char* h : {"H1", "H3"}) {
        for (RecipeVariant v :
             {RecipeVariant::Original, RecipeVariant::Alt1}) {
            refs.emplace(reference_key(h, v),
                         reference_trajectory(*heuristic_by_id(h), v));
        }
    }

    PipelineArtifacts art;
    art.records = build_coach(corpus, pool, {}, false, 100, 5);
    auto correct = build_correct(corpus, refs, 40, 9);
    auto dd = build_defect_delineation(corpus, 60, 21);
    auto grounding =
        records_from_grounding(corpus,
                               build_grounding_datasets(corpus, {12, 12, 12},
                                                        13));
    art.records.insert(art.records.end(), correct.begin(), correct.end());
    art.records.insert(art.records.end(), dd.begin(), dd.end());
    art.records.insert(art.records.end(), grounding.begin(), grounding.end());
    art.manifest = make_split_manifest(art.records);

    fs::path dir = fs::temp_directory_path() / out_name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    art.manifest_hash =
        export_records(art.records, art.manifest, dir.string()).manifest_hash;
    return art;
}

// --------------------------------------------------------------- QA oracle

int brute_distance(const WorldState& state, TileKind goal,
                   bool respect_holding) {
    const GridMap& map = state.map;
    bool holding = respect_holding && state.player.held.has_value();
    std::set<Coord> goals;
    for (Coord c : map.find_all(goal)) goals.insert(c);
    if (goals.empty()) return -1;
    auto blocked = [&](Coord c) {
        if (!map.walkable(c)) return true;
        if (holding && (map.at(c) == TileKind::VisibleHazard ||
                        map.at(c) == TileKind::InvisibleHazard))
            return true;
        return false;
    };
    auto adjacent_goal = [&](Coord c) {
        for (Direction d : kDirections)
            if (goals.count(neighbor(c, d))) return true;
        return false;
    };
    std::map<Coord, int> dist;
    std::queue<Coord> q;
    dist[state.player.pos] = 0;
    q.push(state.player.pos);
    while (!q.empty()) {
        Coord c = q.front();
        q.pop();
        if (adjacent_goal(c)) return dist[c];
        for (Direction d : kDirections) {
            Coord n = neighbor(c, d);
            if (blocked(n) || dist.count(n)) continue;
            dist[n] = dist[c] + 1;
            q.push(n);
        }
    }
    return -1;
}

// ------------------------------------------------------------ world fuzzer

bool fuzz_invariants(const GridMap& map, uint64_t seed, int steps,
                     std::string& detail) {
    SplitMix64 rng(seed);
    WorldState s = make_world(map, RecipeVariant::Original, seed);
    int last_deliveries = 0;
    for (int i = 0; i < steps; ++i) {
        Action a = kAllActions[rng.below(kAllActions.size())];
        Action b = kAllActions[rng.below(kAllActions.size())];
        auto [next, events] = step(s, a, b);
        bool ok = next.tick == s.tick + 1 &&
                  next.map.walkable(next.player.pos) &&
                  (!next.teammate ||
                   next.map.walkable(next.teammate->pos)) &&
                  next.deliveries >= last_deliveries;
        for (const auto& [pos, station] : next.stations) {
            TileKind kind = next.map.at(pos);
            if (!station.contents.empty()) {
                ok = ok && (kind == TileKind::CookingPot ||
                            kind == TileKind::Grill) &&
                     station.contents.size() <= 3;
            }
            if (station.status == CookStatus::Cooking) {
                ok = ok && station.timer > 0 &&
                     station.timer <= kSoupCookTicks &&
                     (kind == TileKind::CookingPot
                          ? !station.contents.empty()
                          : station.item.has_value());
            }
            if (station.status == CookStatus::Idle) {
                ok = ok && station.timer == 0;
            }
            if (station.item && next.map.walkable(pos)) {
                ok = ok && (kind == TileKind::VisibleHazard ||
                            kind == TileKind::InvisibleHazard);
            }
        }
        if (!ok) {
            detail = "invariant broken at tick " + std::to_string(s.tick);
            return false;
        }
        last_deliveries = next.deliveries;
        s = std::move(next);
    }
    return true;
}

// ------------------------------------------------------- defect divergence

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

int main() {
    std::vector<Criterion> criteria;

    criteria.push_back({"end-to-end pipeline is deterministic", [](std::string& d) {
        PipelineArtifacts a = run_mini_pipeline("sous-acceptance-a");
        PipelineArtifacts b = run_mini_pipeline("sous-acceptance-b");
        return expect(a.manifest_hash == b.manifest_hash &&
                          a.manifest_hash != 0,
                      "manifest hashes differ across identical runs", d);
    }});

    criteria.push_back({"450 valid maps generate in under a minute", [](std::string& d) {
        auto start = std::chrono::steady_clock::now();
        auto maps = generate_maps(2024, 450);
        for (const auto& m : maps) {
            ParseResult parsed = parse_map(map_text_from_string(
                serialize(m), MapProvenance::Procedural, m.map_id));
            if (!std::holds_alternative<GridMap>(parsed))
                return expect(false, "map failed re-validation", d);
        }
        double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
        return expect(maps.size() == 450 && secs < 60.0,
                      "generation took " + std::to_string(secs) + "s", d);
    }});

    criteria.push_back({"noise rate sits in [0.18, 0.22]", [](std::string& d) {
        GridMap map = load_fixture_map("ref_original");
        int random = 0, total = 0;
        for (int run = 0; run < 30; ++run) {
            NoisyPolicy p;
            p.base = *heuristic_by_id("H1");
            p.epsilon = 0.2;
            Trajectory t = run_episode(map, p, 400, 7000 + run,
                                       RecipeVariant::Original);
            for (const auto& f : t.frames) {
                if (!f.action) continue;
                ++total;
                if (f.was_random) ++random;
            }
        }
        double rate = static_cast<double>(random) / total;
        return expect(total >= 10000 && rate > 0.18 && rate < 0.22,
                      "rate " + std::to_string(rate) + " over " +
                          std::to_string(total) + " steps", d);
    }});

    criteria.push_back({"window length K follows round(N(15,2)) in [5,30]", [](std::string& d) {
        SplitMix64 rng(515);
        double sum = 0, sq = 0;
        const int n = 10000;
        for (int i = 0; i < n; ++i) {
            int k = sample_k(rng);
            if (k < 5 || k > 30) return expect(false, "K out of range", d);
            sum += k;
            sq += static_cast<double>(k) * k;
        }
        double mean = sum / n;
        double sd = std::sqrt(sq / n - mean * mean);
        return expect(mean > 14.5 && mean < 15.5 && sd > 1.5 && sd < 2.5,
                      "mean " + std::to_string(mean) + " sd " +
                          std::to_string(sd), d);
    }});

    criteria.push_back({"correction oracle matches 500 continued rollouts", [](std::string& d) {
        auto maps = generate_maps(88, 5);
        int checked = 0;
        for (int run = 0; run < 100; ++run) {
            const GridMap& map = maps[run % maps.size()];
            for (const auto& h : all_heuristics()) {
                if (checked >= 500) break;
                NoisyPolicy p;
                p.base = h;
                p.epsilon = 0.0;
                TrajectoryMeta meta;
                meta.heuristic_id = h.id;
                uint64_t seed = 3000 + run;
                int horizon = 30 + run % 20;
                Trajectory shorter = run_episode(map, p, horizon, seed,
                                                 RecipeVariant::Original,
                                                 meta);
                Trajectory longer = run_episode(map, p, horizon + 1, seed,
                                                RecipeVariant::Original,
                                                meta);
                Action oracle = ground_truth_correction(shorter);
                if (oracle != *longer.frames[horizon].action) {
                    return expect(false,
                                  "oracle mismatch on " + h.id + " run " +
                                      std::to_string(run), d);
                }
                ++checked;
            }
        }
        return expect(checked == 500, "only checked " +
                                          std::to_string(checked), d);
    }});

    criteria.push_back({"all 27 defects manifest; no-defect never does", [](std::string& d) {
        for (const auto& defect : defect_registry()) {
            if (defect.id == "no-defect") continue;
            if (!manifests(defect, 100)) {
                return expect(false, "defect " + defect.id +
                                         " never diverged", d);
            }
        }
        for (const auto& h : all_heuristics()) {
            for (const char* name : {"defect_lab_open", "defect_lab_hazards"}) {
                if (diverges_on(load_fixture_map(name), h, no_defect(),
                                RecipeVariant::Original, 100)) {
                    return expect(false, "no-defect diverged on " +
                                             std::string(name), d);
                }
            }
        }
        return true;
    }});

    criteria.push_back({"QA answers agree with brute-force oracles", [](std::string& d) {
        // Exhaustive distance comparison on the small fixture maps.
        for (const char* name :
             {"ref_original", "defect_lab_open", "defect_lab_hazards"}) {
            GridMap map = load_fixture_map(name);
            NoisyPolicy p;
            p.base = *heuristic_by_id("H2");
            p.epsilon = 0.2;
            Trajectory t = run_episode(map, p, 50, 21,
                                       RecipeVariant::Original);
            for (int i : {0, 10, 25, 50}) {
                const WorldState& s = t.frames[i].state;
                for (TileKind goal :
                     {TileKind::Delivery, TileKind::CookingPot,
                      TileKind::Grill, TileKind::Sink}) {
                    for (bool respect : {false, true}) {
                        if (distance_to_station(s, goal, respect) !=
                            brute_distance(s, goal, respect)) {
                            return expect(false, "distance mismatch", d);
                        }
                    }
                }
            }
        }
        // 1000+ sampled QA answers re-derived from the stored states.
        auto corpus = pipeline_corpus();
        auto grounding = build_grounding_datasets(corpus, {60, 60, 60}, 99);
        int verified = 0;
        for (const auto& g : grounding) {
            const Trajectory& t = corpus[g.traj_index];
            for (const auto& qa : g.qa) {
                QaPair redo;
                if (g.kind == "image_qa") {
                    redo = answer_image_question(
                        t.frames[g.frame_index].state, qa.question_id,
                        qa.arg);
                } else {
                    SubTrajectory sub{&t, g.start, g.k};
                    redo = answer_trajectory_question(sub, qa.question_id);
                }
                if (redo.answer_text != qa.answer_text) {
                    return expect(false, "answer drift on " + qa.question_id,
                                  d);
                }
                ++verified;
            }
        }
        return expect(verified >= 1000,
                      "only re-verified " + std::to_string(verified), d);
    }});

    criteria.push_back({"dataset counts and the 5:1 pairing ratio are exact", [](std::string& d) {
        ScalePlan paper = scale_plan("paper");
        bool plan_ok = paper.image_qa == 55000 &&
                       paper.trajectory_qa == 54000 &&
                       paper.video_qa == 55000 && paper.coach == 26000 &&
                       paper.correct == 27000 &&
                       paper.defect_delineation == 20000;
        ScalePlan desk = scale_plan("desk");
        bool desk_ok = desk.image_qa == 550 && desk.trajectory_qa == 540 &&
                       desk.video_qa == 550 && desk.coach == 260 &&
                       desk.correct == 270 &&
                       desk.defect_delineation == 198 &&
                       desk.defect_delineation % 6 == 0;
        auto corpus = pipeline_corpus();
        auto dd = build_defect_delineation(corpus, 60, 77);
        int positives = 0;
        for (const auto& rec : dd) {
            if (rec.defect_ids.size() == 1) ++positives;
        }
        bool ratio_ok = dd.size() == 60 && positives == 10;
        bool throws_ok = false;
        try {
            (void)build_defect_delineation(corpus, 61, 77);
        } catch (const CountUnreachable&) {
            throws_ok = true;
        }
        return expect(plan_ok && desk_ok && ratio_ok && throws_ok,
                      "count bookkeeping failed", d);
    }});

    criteria.push_back({"splits stay defect-disjoint with 10 few-shot each", [](std::string& d) {
        PipelineArtifacts art = run_mini_pipeline("sous-acceptance-splits");
        for (const auto& rec : art.records) {
            bool train_only = true;
            for (const auto& id : rec.defect_ids) {
                if (find_defect(id)->split != DefectSplit::Train)
                    train_only = false;
            }
            if (train_only != (rec.split == "train")) {
                return expect(false, "split leak on record " + rec.id, d);
            }
        }
        auto fs_heldout = art.manifest.splits.find("fewshot_heldout");
        auto fs_alt1 = art.manifest.splits.find("fewshot_taskgen_alt1");
        return expect(fs_heldout != art.manifest.splits.end() &&
                          fs_heldout->second.size() == 10 &&
                          fs_alt1 != art.manifest.splits.end() &&
                          fs_alt1->second.size() == 10,
                      "few-shot splits not exactly 10 per new defect", d);
    }});

    criteria.push_back({"ensemble validation keeps 4/5 and drops 3/5 votes", [](std::string& d) {
        auto scripted = [](int yes) {
            std::vector<std::string> replies = {
                "Correction1: Fill the pot with all three tomatoes first.",
                "Augmented Correction1: Hurry and fill the pot first!",
            };
            for (int v = 0; v < 5; ++v)
                replies.push_back(v < yes ? "Yes" : "No");
            return replies;
        };
        PersonaSet one{{"make it urgent"}};
        const Defect& defect = *find_defect("train-02");
        ScriptedGateway keep(scripted(4));
        auto kept = generate_coaching(keep, defect, 1, one);
        bool kept_ok = kept.size() == 1 && kept[0].votes_passed == 4;
        bool dropped_ok = false;
        try {
            ScriptedGateway drop(scripted(3));
            (void)generate_coaching(drop, defect, 1, one);
        } catch (const InsufficientSurvivors&) {
            dropped_ok = true;
        }
        return expect(kept_ok && dropped_ok, "vote gate misbehaved", d);
    }});

    criteria.push_back({"renderer matches goldens; invisible hazard hides", [](std::string& d) {
        GridMap map = load_fixture_map("ref_original");
        WorldState s = make_world(map, RecipeVariant::Original, 1);
        Image img = render_frame(s, default_palette());
        if (hex64(image_hash(img)) != "5e4174d21945ec30")
            return expect(false, "initial-state golden drifted", d);
        Trajectory t = reference_trajectory(*heuristic_by_id("H1"),
                                            RecipeVariant::Original);
        Image mid = render_frame(t.frames[120].state, default_palette());
        if (hex64(image_hash(mid)) != "391a977f051fa7ce")
            return expect(false, "mid-trajectory golden drifted", d);

        auto tile = [&](Coord c) {
            std::vector<uint8_t> out;
            for (int y = 0; y < kTilePixels; ++y)
                for (int x = 0; x < kTilePixels; ++x) {
                    size_t base =
                        (static_cast<size_t>(c.row * kTilePixels + y) *
                             img.width +
                         c.col * kTilePixels + x) *
                        3;
                    out.insert(out.end(), {img.rgb[base], img.rgb[base + 1],
                                           img.rgb[base + 2]});
                }
            return out;
        };
        return expect(tile({3, 3}) == tile({2, 4}) &&
                          tile({4, 4}) != tile({2, 4}),
                      "hazard visibility rendering wrong", d);
    }});

    criteria.push_back({"eval closes the loop; chance scores one in eight", [](std::string& d) {
        auto corpus = pipeline_corpus();
        std::map<std::string, Trajectory> refs;
        for (const char* h : {"H1", "H3"}) {
            for (RecipeVariant v :
                 {RecipeVariant::Original, RecipeVariant::Alt1}) {
                refs.emplace(reference_key(h, v),
                             reference_trajectory(*heuristic_by_id(h), v));
            }
        }
        auto records = build_correct(corpus, refs, 40, 9);
        std::vector<std::pair<std::string, std::string>> echo;
        for (const auto& rec : records) echo.push_back({rec.id, rec.target});
        if (score_corrections(echo, records).accuracy != 1.0)
            return expect(false, "closed loop below 1.0", d);

        SplitMix64 rng(640);
        std::vector<std::pair<std::string, std::string>> random;
        const int n = 8000;
        for (int i = 0; i < n; ++i) {
            Action a = kAllActions[rng.below(kAllActions.size())];
            random.push_back({records[i % records.size()].id,
                              std::string(to_string(a))});
        }
        double acc = score_corrections(random, records).accuracy;
        if (acc < 0.105 || acc > 0.145)
            return expect(false, "chance accuracy " + std::to_string(acc), d);

        // Judge prompt snapshot: rendered messages match the raw templates.
        auto messages = judge_messages("gen", "desc", "ref");
        std::string user = load_prompt("judge_user.txt");
        auto sub = [&](const std::string& k, const std::string& v) {
            size_t pos = 0;
            while ((pos = user.find(k, pos)) != std::string::npos) {
                user.replace(pos, k.size(), v);
                pos += v.size();
            }
        };
        sub("<|generated_answer|>", "gen");
        sub("<|answer|>", "desc");
        sub("<|reference_answer|>", "ref");
        return expect(messages.size() == 2 &&
                          messages[0].content ==
                              load_prompt("judge_system.txt") &&
                          messages[1].content == user,
                      "judge prompt drifted from its templates", d);
    }});

    criteria.push_back({"100,000 random steps break no world invariant", [](std::string& d) {
        auto maps = generate_maps(31337, 20);
        for (size_t m = 0; m < maps.size(); ++m) {
            if (!fuzz_invariants(maps[m], 60000 + m, 5000, d)) return false;
        }
        return true;
    }});

    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        std::string detail;
        bool ok = false;
        try {
            ok = criteria[i].run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("criterion-%02zu %s: %s%s%s\n", i + 1,
                    ok ? "PASS" : "FAIL", criteria[i].name.c_str(),
                    detail.empty() ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
