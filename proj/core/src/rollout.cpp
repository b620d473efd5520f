#include "sous/rollout.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "sous/mapgen.hpp"
#include "sous/prompts.hpp"
#include "sous/render.hpp"
#include "sous/rng.hpp"

namespace sous {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

Trajectory run_episode(const GridMap& map, NoisyPolicy policy, int horizon,
                       uint64_t seed, RecipeVariant variant,
                       TrajectoryMeta meta) {
    policy.rng = SplitMix64(derive_seed(seed, "policy"));
    WorldState state = make_world(map, variant, derive_seed(seed, "world"));

    Trajectory traj;
    traj.meta = std::move(meta);
    traj.meta.map_id = map.map_id;
    traj.meta.variant = variant;
    traj.meta.seed = seed;
    traj.meta.horizon = horizon;
    traj.frames.reserve(static_cast<size_t>(horizon) + 1);

    for (int t = 0; t < horizon; ++t) {
        NoisyDecision decision = noisy_next_action(policy, state);
        Action teammate = teammate_patrol_action(state);
        traj.frames.push_back({state, decision.action, decision.was_random});
        auto [next, events] = step(state, decision.action, teammate);
        traj.events.insert(traj.events.end(), events.begin(), events.end());
        state = std::move(next);
    }
    traj.frames.push_back({std::move(state), std::nullopt, false});
    return traj;
}

Action ground_truth_correction(const Trajectory& traj) {
    auto base = heuristic_by_id(traj.meta.heuristic_id);
    if (!base) {
        throw std::invalid_argument("unknown heuristic: " +
                                    traj.meta.heuristic_id);
    }
    return next_action(*base, traj.final_state());
}

std::string reference_map_name(RecipeVariant variant) {
    switch (variant) {
        case RecipeVariant::Original: return "ref_original";
        case RecipeVariant::Alt1: return "ref_alt1";
        case RecipeVariant::Alt2: return "ref_alt2";
        case RecipeVariant::Alt3: return "ref_alt3";
    }
    return "ref_original";
}

GridMap load_fixture_map(const std::string& name) {
    std::string path = data_dir() + "/maps/" + name + ".txt";
    MapText text = map_text_from_string(read_text_file(path),
                                        MapProvenance::Handwritten, name);
    ParseResult result = parse_map(text);
    if (auto* err = std::get_if<ValidationError>(&result)) {
        throw std::runtime_error("fixture map " + name + " invalid: " +
                                 to_string(err->code) + " " + err->detail);
    }
    GridMap map = std::get<GridMap>(std::move(result));
    map.map_id = name;
    return map;
}

Trajectory reference_trajectory(const Heuristic& h, RecipeVariant variant) {
    GridMap map = load_fixture_map(reference_map_name(variant));
    NoisyPolicy policy{h, {}, 0.0, SplitMix64(0)};
    TrajectoryMeta meta;
    meta.heuristic_id = h.id;
    meta.defect_id = "no-defect";
    meta.split = "reference";
    uint64_t seed = derive_seed(0, "reference", h.id, map.map_id);
    return run_episode(map, policy, kReferenceHorizon, seed, variant, meta);
}

namespace {

ordered_json item_json(const Item& item) {
    ordered_json j;
    j["kind"] = to_string(item.kind);
    j["plated"] = item.plated;
    if (!item.parts.empty()) {
        auto parts = ordered_json::array();
        for (ItemKind p : item.parts) parts.push_back(to_string(p));
        j["parts"] = parts;
    }
    return j;
}

ordered_json player_json(const PlayerState& p) {
    ordered_json j;
    j["pos"] = {p.pos.row, p.pos.col};
    j["facing"] = to_string(p.facing);
    if (p.held) j["held"] = item_json(*p.held);
    return j;
}

}  // namespace

std::string state_to_json(const WorldState& state) {
    ordered_json j;
    j["tick"] = state.tick;
    j["map_id"] = state.map.map_id;
    j["variant"] = to_string(state.variant);
    j["player"] = player_json(state.player);
    if (state.teammate) j["teammate"] = player_json(*state.teammate);
    auto stations = ordered_json::array();
    for (const auto& [pos, st] : state.stations) {
        if (st.empty()) continue;
        ordered_json s;
        s["pos"] = {pos.row, pos.col};
        s["tile"] = to_string(state.map.at(pos));
        if (!st.contents.empty()) {
            auto contents = ordered_json::array();
            for (ItemKind k : st.contents) contents.push_back(to_string(k));
            s["contents"] = contents;
        }
        if (st.item) s["item"] = item_json(*st.item);
        if (st.status != CookStatus::Idle) {
            s["status"] = st.status == CookStatus::Cooking ? "cooking" : "cooked";
            s["timer"] = st.timer;
        }
        stations.push_back(s);
    }
    j["stations"] = stations;
    j["deliveries"] = state.deliveries;
    j["rng_state"] = state.rng_state;
    return j.dump();
}

std::string trajectory_to_jsonl(const Trajectory& traj) {
    std::string out;
    ordered_json header;
    header["map_id"] = traj.meta.map_id;
    header["heuristic_id"] = traj.meta.heuristic_id;
    header["defect_id"] = traj.meta.defect_id;
    header["variant"] = to_string(traj.meta.variant);
    header["seed"] = traj.meta.seed;
    header["horizon"] = traj.meta.horizon;
    header["split"] = traj.meta.split;
    out += header.dump();
    out += '\n';
    for (size_t i = 0; i < traj.frames.size(); ++i) {
        const Frame& f = traj.frames[i];
        ordered_json j;
        j["tick"] = static_cast<int64_t>(i);
        if (f.action) {
            j["action"] = to_string(*f.action);
            j["was_random"] = f.was_random;
        } else {
            j["action"] = nullptr;
        }
        j["state"] = ordered_json::parse(state_to_json(f.state));
        out += j.dump();
        out += '\n';
    }
    return out;
}

std::string events_to_jsonl(const EventList& events) {
    std::string out;
    for (const Event& e : events) {
        out += to_jsonl(e);
        out += '\n';
    }
    return out;
}

uint64_t trajectory_hash(const Trajectory& traj) {
    uint64_t h = fnv1a(trajectory_to_jsonl(traj));
    return fnv1a(events_to_jsonl(traj.events), h);
}

uint64_t triple_seed(uint64_t global_seed, const std::string& map_id,
                     const std::string& heuristic_id,
                     const std::string& defect_id) {
    return derive_seed(global_seed, map_id, heuristic_id, defect_id);
}

std::string triple_key(const std::string& map_id,
                       const std::string& heuristic_id,
                       const std::string& defect_id) {
    return hex64(fnv1a(map_id + "|" + heuristic_id + "|" + defect_id));
}

Trajectory run_triple(const GridMap& map, const Heuristic& h,
                      const Defect& defect, const CorpusOptions& opt) {
    NoisyPolicy policy{h, defect.mods, opt.epsilon, SplitMix64(0)};
    TrajectoryMeta meta;
    meta.heuristic_id = h.id;
    meta.defect_id = defect.id;
    meta.split = opt.split;
    uint64_t seed = triple_seed(opt.global_seed, map.map_id, h.id, defect.id);
    return run_episode(map, policy, opt.horizon, seed, opt.variant, meta);
}

namespace {

void write_file(const fs::path& path, const std::string& contents) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string());
    f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
}

void write_triple_artifacts(const Trajectory& traj, const std::string& key,
                            const CorpusOptions& opt) {
    fs::path dir = fs::path(opt.out_dir) / key;
    fs::create_directories(dir);
    write_file(dir / "trajectory.jsonl", trajectory_to_jsonl(traj));
    write_file(dir / "events.jsonl", events_to_jsonl(traj.events));
    if (opt.render_frames) {
        fs::path frames = dir / "frames";
        fs::create_directories(frames);
        const Palette& theme = default_palette();
        char name[32];
        for (int idx : stride_indices(static_cast<int>(traj.frames.size()),
                                      opt.frame_stride)) {
            std::snprintf(name, sizeof(name), "%06d.png", idx);
            write_png(render_frame(traj.frames[idx].state, theme),
                      (frames / name).string());
        }
    }
    ordered_json manifest;
    manifest["triple"] = key;
    manifest["map_id"] = traj.meta.map_id;
    manifest["heuristic_id"] = traj.meta.heuristic_id;
    manifest["defect_id"] = traj.meta.defect_id;
    manifest["seed"] = traj.meta.seed;
    manifest["hash"] = hex64(trajectory_hash(traj));
    write_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

}  // namespace

Corpus build_corpus(const std::vector<GridMap>& maps,
                    const std::vector<Heuristic>& heuristics,
                    const std::vector<Defect>& defects,
                    const CorpusOptions& opt) {
    struct Job {
        const GridMap* map;
        const Heuristic* heuristic;
        const Defect* defect;
    };
    Corpus corpus;
    std::vector<Job> jobs;
    for (const GridMap& m : maps) {
        for (const Heuristic& h : heuristics) {
            for (const Defect& d : defects) {
                if (!compatible(d, opt.variant)) {
                    corpus.skipped.push_back(triple_key(m.map_id, h.id, d.id) +
                                             " (" + d.id + " vs variant)");
                    continue;
                }
                jobs.push_back({&m, &h, &d});
            }
        }
    }

    if (!opt.out_dir.empty()) fs::create_directories(opt.out_dir);

    corpus.entries.resize(jobs.size());
    std::atomic<size_t> next{0};
    unsigned workers = opt.workers > 0
                           ? static_cast<unsigned>(opt.workers)
                           : std::max(1u, std::thread::hardware_concurrency());
    auto worker = [&]() {
        for (size_t i = next.fetch_add(1); i < jobs.size();
             i = next.fetch_add(1)) {
            const Job& job = jobs[i];
            Trajectory traj = run_triple(*job.map, *job.heuristic, *job.defect,
                                         opt);
            std::string key = triple_key(job.map->map_id, job.heuristic->id,
                                         job.defect->id);
            if (!opt.out_dir.empty()) write_triple_artifacts(traj, key, opt);
            CorpusEntry& entry = corpus.entries[i];
            entry.triple_hash = key;
            entry.meta = traj.meta;
            entry.content_hash = trajectory_hash(traj);
            int deliveries = 0;
            for (const Event& e : traj.events) {
                if (e.kind == EventKind::Delivered) ++deliveries;
            }
            entry.deliveries = deliveries;
            entry.events = static_cast<int>(traj.events.size());
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    uint64_t h = fnv1a("corpus");
    for (const CorpusEntry& e : corpus.entries) {
        h = fnv1a(e.triple_hash + ":" + hex64(e.content_hash), h);
    }
    corpus.manifest_hash = h;
    if (!opt.out_dir.empty()) {
        write_file(fs::path(opt.out_dir) / "manifest.json",
                   corpus_manifest_json(corpus));
    }
    return corpus;
}

std::string corpus_manifest_json(const Corpus& corpus) {
    ordered_json j;
    j["manifest_hash"] = hex64(corpus.manifest_hash);
    auto entries = ordered_json::array();
    for (const CorpusEntry& e : corpus.entries) {
        ordered_json entry;
        entry["triple"] = e.triple_hash;
        entry["map_id"] = e.meta.map_id;
        entry["heuristic_id"] = e.meta.heuristic_id;
        entry["defect_id"] = e.meta.defect_id;
        entry["variant"] = to_string(e.meta.variant);
        entry["seed"] = e.meta.seed;
        entry["hash"] = hex64(e.content_hash);
        entry["deliveries"] = e.deliveries;
        entry["events"] = e.events;
        entries.push_back(entry);
    }
    j["entries"] = entries;
    j["skipped"] = corpus.skipped;
    return j.dump(2) + "\n";
}

}  // namespace sous
