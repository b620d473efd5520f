#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sous/defect.hpp"
#include "sous/heuristic.hpp"
#include "sous/world.hpp"

namespace sous {

struct TrajectoryMeta {
    std::string map_id;
    std::string heuristic_id;
    std::string defect_id;
    RecipeVariant variant = RecipeVariant::Original;
    uint64_t seed = 0;
    int horizon = kDefaultHorizon;
    std::string split;
};

// Full state snapshot per frame so oracles can recompute answers exactly.
// The terminal frame carries no action.
struct Frame {
    WorldState state;
    std::optional<Action> action;
    bool was_random = false;
};

struct Trajectory {
    std::vector<Frame> frames;
    EventList events;
    TrajectoryMeta meta;

    const WorldState& final_state() const { return frames.back().state; }
};

Trajectory run_episode(const GridMap& map, NoisyPolicy policy, int horizon,
                       uint64_t seed, RecipeVariant variant,
                       TrajectoryMeta meta = {});

// The un-wrapped base heuristic's action at the trajectory's final state.
// Throws std::invalid_argument for an unregistered heuristic id.
Action ground_truth_correction(const Trajectory& traj);

// Noise-free, defect-free rollout on the variant's fixture reference map.
Trajectory reference_trajectory(const Heuristic& h, RecipeVariant variant);

inline constexpr int kReferenceHorizon = 250;

// Loads data/maps/<name>.txt. Throws on parse failure.
GridMap load_fixture_map(const std::string& name);
std::string reference_map_name(RecipeVariant variant);

std::string state_to_json(const WorldState& state);
std::string trajectory_to_jsonl(const Trajectory& traj);
std::string events_to_jsonl(const EventList& events);
uint64_t trajectory_hash(const Trajectory& traj);

uint64_t triple_seed(uint64_t global_seed, const std::string& map_id,
                     const std::string& heuristic_id,
                     const std::string& defect_id);
std::string triple_key(const std::string& map_id,
                       const std::string& heuristic_id,
                       const std::string& defect_id);

struct CorpusOptions {
    uint64_t global_seed = 0;
    int horizon = kDefaultHorizon;
    double epsilon = 0.2;
    RecipeVariant variant = RecipeVariant::Original;
    std::string split;
    std::string out_dir;      // empty: no disk artifacts
    bool render_frames = false;
    int frame_stride = 40;
    int workers = 0;          // 0: hardware concurrency
};

struct CorpusEntry {
    std::string triple_hash;  // directory key
    TrajectoryMeta meta;
    uint64_t content_hash = 0;
    int deliveries = 0;
    int events = 0;
};

struct Corpus {
    std::vector<CorpusEntry> entries;
    std::vector<std::string> skipped;  // variant-incompatible triples
    uint64_t manifest_hash = 0;
};

Trajectory run_triple(const GridMap& map, const Heuristic& h,
                      const Defect& defect, const CorpusOptions& opt);

// One rollout per compatible (map x heuristic x defect). Deterministic in
// (inputs, global_seed); parallel across triples.
Corpus build_corpus(const std::vector<GridMap>& maps,
                    const std::vector<Heuristic>& heuristics,
                    const std::vector<Defect>& defects,
                    const CorpusOptions& opt);

std::string corpus_manifest_json(const Corpus& corpus);

}  // namespace sous
