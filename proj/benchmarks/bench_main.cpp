#include <benchmark/benchmark.h>

#include "sous/mapgen.hpp"
#include "sous/path.hpp"
#include "sous/qa.hpp"
#include "sous/render.hpp"
#include "sous/rollout.hpp"
#include "sous/world.hpp"

using namespace sous;

namespace {

const GridMap& fixture() {
    static const GridMap map = load_fixture_map("ref_original");
    return map;
}

void BM_WorldStep(benchmark::State& state) {
    WorldState s = make_world(fixture(), RecipeVariant::Original, 1);
    SplitMix64 rng(7);
    for (auto _ : state) {
        Action a = kAllActions[rng.below(kAllActions.size())];
        s = step(s, a, teammate_patrol_action(s)).first;
        benchmark::DoNotOptimize(s.tick);
    }
}
BENCHMARK(BM_WorldStep);

void BM_HeuristicAction(benchmark::State& state) {
    WorldState s = make_world(fixture(), RecipeVariant::Original, 1);
    const Heuristic& h = all_heuristics()[0];
    for (auto _ : state) {
        Action a = next_action(h, s, {});
        benchmark::DoNotOptimize(a);
        s = step(s, a, teammate_patrol_action(s)).first;
    }
}
BENCHMARK(BM_HeuristicAction);

void BM_PlanPath(benchmark::State& state) {
    static const auto maps = generate_maps(77, 16);
    size_t i = 0;
    for (auto _ : state) {
        const GridMap& map = maps[i++ % maps.size()];
        PathQuery q;
        q.from = map.player_spawn;
        q.holding = true;
        for (Coord station : map.find_all(TileKind::Delivery)) {
            auto plan = plan_path(map, q, station);
            benchmark::DoNotOptimize(plan);
        }
    }
}
BENCHMARK(BM_PlanPath);

void BM_GenerateMap(benchmark::State& state) {
    uint64_t seed = 1;
    for (auto _ : state) {
        auto maps = generate_maps(seed++, 1);
        benchmark::DoNotOptimize(maps[0].width);
    }
}
BENCHMARK(BM_GenerateMap);

void BM_RenderFrame(benchmark::State& state) {
    WorldState s = make_world(fixture(), RecipeVariant::Original, 1);
    for (auto _ : state) {
        Image img = render_frame(s, default_palette());
        benchmark::DoNotOptimize(img.rgb.data());
    }
}
BENCHMARK(BM_RenderFrame);

void BM_EncodePng(benchmark::State& state) {
    WorldState s = make_world(fixture(), RecipeVariant::Original, 1);
    Image img = render_frame(s, default_palette());
    for (auto _ : state) {
        std::string png = encode_png(img);
        benchmark::DoNotOptimize(png.size());
    }
}
BENCHMARK(BM_EncodePng);

void BM_RunEpisode(benchmark::State& state) {
    uint64_t seed = 0;
    for (auto _ : state) {
        NoisyPolicy p;
        p.base = all_heuristics()[0];
        p.epsilon = 0.2;
        Trajectory t = run_episode(fixture(), p, 120, seed++,
                                   RecipeVariant::Original);
        benchmark::DoNotOptimize(t.frames.size());
    }
}
BENCHMARK(BM_RunEpisode);

void BM_ImageQuestion(benchmark::State& state) {
    WorldState s = make_world(fixture(), RecipeVariant::Original, 1);
    for (auto _ : state) {
        QaPair qa = answer_image_question(s, "iq04");
        benchmark::DoNotOptimize(qa.answer_text.size());
    }
}
BENCHMARK(BM_ImageQuestion);

}  // namespace

BENCHMARK_MAIN();
