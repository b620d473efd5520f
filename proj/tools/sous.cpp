// Command-line entry point orchestrating map generation, rollouts, dataset
// assembly, evaluation, replay rendering, and self-verification.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sous/datasets.hpp"
#include "sous/eval.hpp"
#include "sous/mapgen.hpp"
#include "sous/prompts.hpp"
#include "sous/qa.hpp"
#include "sous/render.hpp"
#include "sous/rng.hpp"
#include "sous/rollout.hpp"
#include "sous/textgen.hpp"

namespace fs = std::filesystem;
using namespace sous;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;
constexpr int kExitGateway = 3;

class StageTimer {
public:
    explicit StageTimer(std::string name)
        : name_(std::move(name)), start_(std::chrono::steady_clock::now()) {}
    ~StageTimer() {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start_)
                      .count();
        std::fprintf(stderr, "[stage] %s: %lld ms\n", name_.c_str(),
                     static_cast<long long>(ms));
    }

private:
    std::string name_;
    std::chrono::steady_clock::time_point start_;
};

struct GatewayFlags {
    std::string backend = "mock";
    uint64_t seed = 0;
    std::string audit_log;
};

std::unique_ptr<LlmGateway> open_gateway(const GatewayFlags& flags) {
    auto gw = make_gateway(flags.backend, flags.seed);
    if (!flags.audit_log.empty()) gw->set_audit_log(flags.audit_log);
    return gw;
}

int run_gen_maps(uint64_t seed, int count, const std::string& out) {
    StageTimer timer("gen-maps");
    auto maps = generate_maps(seed, count);
    if (static_cast<int>(maps.size()) != count) {
        std::cerr << "map generation produced " << maps.size() << "/" << count
                  << "\n";
        return kExitValidation;
    }
    if (!out.empty()) {
        fs::create_directories(out);
        nlohmann::ordered_json manifest;
        manifest["seed"] = seed;
        manifest["count"] = count;
        manifest["maps"] = nlohmann::ordered_json::array();
        for (const auto& map : maps) {
            std::string name = map.map_id + ".txt";
            std::ofstream f(fs::path(out) / name, std::ios::binary);
            if (!f) {
                std::cerr << "cannot write " << name << "\n";
                return kExitIo;
            }
            std::string body = serialize(map);
            f << body;
            manifest["maps"].push_back(
                {{"id", map.map_id},
                 {"rows", map.height},
                 {"cols", map.width},
                 {"hash", hex64(fnv1a(body))}});
        }
        std::ofstream mf(fs::path(out) / "maps.json", std::ios::binary);
        mf << manifest.dump(2) << "\n";
    }
    std::cout << "generated " << maps.size() << " maps (all validated)\n";
    return 0;
}

std::vector<GridMap> load_maps_dir(const std::string& dir) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() == ".txt") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<GridMap> maps;
    for (const auto& file : files) {
        MapText text = map_text_from_string(read_text_file(file.string()),
                                            MapProvenance::Handwritten,
                                            file.stem().string());
        ParseResult result = parse_map(text);
        if (auto* err = std::get_if<ValidationError>(&result)) {
            throw std::invalid_argument("invalid map " + file.string() + ": " +
                                        to_string(err->code) + " " +
                                        err->detail);
        }
        maps.push_back(std::get<GridMap>(result));
    }
    if (maps.empty())
        throw std::invalid_argument("no .txt maps under " + dir);
    return maps;
}

int run_rollout(const std::string& maps_dir, int gen_count, uint64_t seed,
                int horizon, double epsilon, const std::string& variant_name,
                const std::string& split, const std::string& out, bool render,
                int stride, int workers) {
    StageTimer timer("rollout");
    auto variant = parse_variant(variant_name);
    if (!variant)
        throw std::invalid_argument("unknown variant: " + variant_name);
    std::vector<GridMap> maps = maps_dir.empty()
                                    ? generate_maps(seed, gen_count)
                                    : load_maps_dir(maps_dir);
    std::vector<Defect> defects;
    for (const auto& d : defect_registry()) {
        if (compatible(d, *variant)) defects.push_back(d);
    }
    CorpusOptions opt;
    opt.global_seed = seed;
    opt.horizon = horizon;
    opt.epsilon = epsilon;
    opt.variant = *variant;
    opt.split = split;
    opt.out_dir = out;
    opt.render_frames = render;
    opt.frame_stride = stride;
    opt.workers = workers;
    Corpus corpus = build_corpus(maps, all_heuristics(), defects, opt);
    std::cout << "rollouts: " << corpus.entries.size()
              << " skipped: " << corpus.skipped.size()
              << " manifest_hash: " << hex64(corpus.manifest_hash) << "\n";
    return 0;
}

struct Pipeline {
    std::vector<Trajectory> corpus;
    std::vector<CoachingSnippet> snippets;
    std::map<std::string, Trajectory> references;
};

// Rolls out every compatible triple for the given defects over `maps`.
void roll_into(std::vector<Trajectory>& sink, const std::vector<GridMap>& maps,
               const std::vector<Defect>& defects, RecipeVariant variant,
               uint64_t seed, int horizon) {
    CorpusOptions opt;
    opt.global_seed = seed;
    opt.horizon = horizon;
    opt.variant = variant;
    for (const auto& map : maps) {
        for (const auto& h : all_heuristics()) {
            for (const auto& d : defects) {
                if (!compatible(d, variant)) continue;
                sink.push_back(run_triple(map, h, d, opt));
            }
        }
    }
}

// Renders exactly the frames referenced by `records` under root/<ref>.
void render_referenced_frames(const std::vector<DatasetRecord>& records,
                              const std::vector<const Trajectory*>& sources,
                              const std::string& root) {
    StageTimer timer("render-frames");
    std::map<std::string, const Trajectory*> by_triple;
    for (const Trajectory* traj : sources) {
        by_triple[triple_key(traj->meta.map_id, traj->meta.heuristic_id,
                             traj->meta.defect_id)] = traj;
    }
    std::map<std::string, bool> done;
    for (const auto& rec : records) {
        for (const auto& ref : rec.image_refs) {
            if (done.count(ref)) continue;
            done[ref] = true;
            auto slash = ref.find('/');
            std::string triple = ref.substr(0, slash);
            std::string file = fs::path(ref).filename().stem().string();
            int index = std::stoi(file);
            auto it = by_triple.find(triple);
            if (it == by_triple.end())
                throw DanglingImageRef("no trajectory for " + ref);
            fs::path path = fs::path(root) / ref;
            fs::create_directories(path.parent_path());
            Image img = render_frame(it->second->frames[index].state,
                                     default_palette());
            write_png(img, path.string());
        }
    }
}

int run_build_dataset(const std::string& kinds_csv, const std::string& scale,
                      uint64_t seed, const std::string& out, bool plan_only,
                      bool include_reasoning, const GatewayFlags& gwf,
                      int horizon, int train_maps, int extra_maps) {
    ScalePlan plan = scale_plan(scale);
    std::cout << "plan: image_qa=" << plan.image_qa
              << " trajectory_qa=" << plan.trajectory_qa
              << " video_qa=" << plan.video_qa << " coach=" << plan.coach
              << " correct=" << plan.correct
              << " defect_delineation=" << plan.defect_delineation << "\n";
    if (plan_only) return 0;

    std::set<std::string> kinds;
    for (auto&& part : CLI::detail::split(kinds_csv, ','))
        kinds.insert(part);

    Pipeline p;
    {
        StageTimer timer("rollout-train");
        auto maps = generate_maps(seed, train_maps);
        roll_into(p.corpus, maps, defects_in_split(DefectSplit::Train),
                  RecipeVariant::Original, seed, horizon);
    }
    {
        // Held-out and task-gen trajectories use fresh maps, disjoint from
        // the training pool.
        StageTimer timer("rollout-heldout");
        auto maps = generate_maps(derive_seed(seed, "heldout-maps"),
                                  extra_maps);
        roll_into(p.corpus, maps, defects_in_split(DefectSplit::HeldOut),
                  RecipeVariant::Original, derive_seed(seed, "heldout"),
                  horizon);
        for (RecipeVariant v : {RecipeVariant::Alt1, RecipeVariant::Alt2,
                                RecipeVariant::Alt3}) {
            roll_into(p.corpus, maps, defects_in_split(DefectSplit::TaskGen),
                      v, derive_seed(seed, "taskgen", to_string(v)), horizon);
        }
    }

    auto gateway = open_gateway(gwf);
    {
        StageTimer timer("coaching-snippets");
        for (const auto& d : defect_registry()) {
            auto batch = generate_coaching(*gateway, d);
            p.snippets.insert(p.snippets.end(), batch.begin(), batch.end());
        }
    }

    std::map<std::string, ReasoningTrace> traces;
    if (include_reasoning) {
        StageTimer timer("reasoning-traces");
        for (const auto& traj : p.corpus) {
            if (traj.events.empty()) continue;
            traces[triple_key(traj.meta.map_id, traj.meta.heuristic_id,
                              traj.meta.defect_id)] =
                generate_reasoning(*gateway, traj.events, traj.meta.variant);
        }
    }

    std::vector<DatasetRecord> records;
    if (kinds.count("coach")) {
        StageTimer timer("build-coach");
        // Reserve 20 records per non-train defect so few-shot carving (10
        // each) leaves evaluation records behind.
        std::vector<DatasetRecord> coach;
        int reserved = 0;
        for (const auto& d : defect_registry()) {
            if (d.split == DefectSplit::Train) continue;
            std::vector<Trajectory> subset;
            for (const auto& traj : p.corpus) {
                if (traj.meta.defect_id == d.id) subset.push_back(traj);
            }
            auto batch = build_coach(subset, p.snippets, traces,
                                     include_reasoning && !traces.empty(), 20,
                                     derive_seed(seed, "coach", d.id));
            coach.insert(coach.end(), batch.begin(), batch.end());
            reserved += 20;
        }
        std::vector<Trajectory> train_subset;
        for (const auto& traj : p.corpus) {
            const Defect* d = find_defect(traj.meta.defect_id);
            if (d->split == DefectSplit::Train) train_subset.push_back(traj);
        }
        auto batch = build_coach(train_subset, p.snippets, traces,
                                 include_reasoning && !traces.empty(),
                                 plan.coach - reserved,
                                 derive_seed(seed, "coach", "train"));
        coach.insert(coach.end(), batch.begin(), batch.end());
        for (size_t i = 0; i < coach.size(); ++i) {
            char buf[16];
            std::snprintf(buf, sizeof buf, "coach-%06zu", i);
            coach[i].id = buf;
        }
        records.insert(records.end(), coach.begin(), coach.end());
    }
    if (kinds.count("correct")) {
        StageTimer timer("build-correct");
        std::set<std::string> wanted;
        for (const auto& traj : p.corpus)
            wanted.insert(reference_key(traj.meta.heuristic_id,
                                        traj.meta.variant));
        for (const auto& h : all_heuristics()) {
            for (RecipeVariant v : kAllVariants) {
                if (wanted.count(reference_key(h.id, v)))
                    p.references[reference_key(h.id, v)] =
                        reference_trajectory(h, v);
            }
        }
        std::vector<std::string> skipped;
        auto batch = build_correct(p.corpus, p.references, plan.correct,
                                   derive_seed(seed, "correct"), &skipped);
        for (const auto& key : skipped)
            std::fprintf(stderr, "[skip] correct: %s too short\n",
                         key.c_str());
        records.insert(records.end(), batch.begin(), batch.end());
    }
    if (kinds.count("dd")) {
        StageTimer timer("build-dd");
        auto batch = build_defect_delineation(
            p.corpus, plan.defect_delineation, derive_seed(seed, "dd"));
        records.insert(records.end(), batch.begin(), batch.end());
    }
    if (kinds.count("iqa") || kinds.count("tqa") || kinds.count("vqa")) {
        StageTimer timer("build-grounding");
        GroundingCounts counts;
        if (kinds.count("iqa")) counts.image = plan.image_qa;
        if (kinds.count("tqa")) counts.trajectory = plan.trajectory_qa;
        if (kinds.count("vqa")) counts.video = plan.video_qa;
        auto grounding = build_grounding_datasets(
            p.corpus, counts, derive_seed(seed, "grounding"));
        auto batch = records_from_grounding(p.corpus, grounding);
        records.insert(records.end(), batch.begin(), batch.end());
    }

    SplitManifest manifest = make_split_manifest(records);
    fs::create_directories(out);
    std::string image_root = (fs::path(out) / "corpus").string();
    std::vector<const Trajectory*> sources;
    for (const auto& traj : p.corpus) sources.push_back(&traj);
    for (const auto& [key, traj] : p.references) sources.push_back(&traj);
    render_referenced_frames(records, sources, image_root);
    ExportResult result;
    {
        StageTimer timer("export");
        result = export_records(records, manifest, out, image_root);
    }
    std::cout << "records: " << records.size()
              << " manifest_hash: " << hex64(result.manifest_hash) << "\n";
    return 0;
}

struct LoadedRecord {
    DatasetRecord record;
};

std::vector<DatasetRecord> load_records(const std::string& dir,
                                        const std::string& kind) {
    std::vector<DatasetRecord> out;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        std::string name = entry.path().filename().string();
        if (name.rfind(kind + "_", 0) == 0 &&
            entry.path().extension() == ".jsonl")
            files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
        std::ifstream in(file);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            auto j = nlohmann::json::parse(line);
            DatasetRecord rec;
            rec.id = j.at("id").get<std::string>();
            rec.kind = j.at("kind").get<std::string>();
            rec.target = j.at("target").get<std::string>();
            rec.defect_ids =
                j.at("meta").at("defect_ids").get<std::vector<std::string>>();
            rec.split = j.at("meta").at("split").get<std::string>();
            out.push_back(std::move(rec));
        }
    }
    if (out.empty())
        throw std::invalid_argument("no " + kind + " records under " + dir);
    return out;
}

int run_eval(const std::string& task, const std::string& predictions_file,
             const std::string& dataset_dir, const GatewayFlags& gwf) {
    StageTimer timer("eval");
    std::vector<std::pair<std::string, std::string>> predictions;
    {
        std::ifstream in(predictions_file);
        if (!in)
            throw IoError("cannot read predictions: " + predictions_file);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            auto j = nlohmann::json::parse(line);
            predictions.emplace_back(j.at("id").get<std::string>(),
                                     j.at("prediction").get<std::string>());
        }
    }

    nlohmann::ordered_json report;
    if (task == "correct") {
        auto truth = load_records(dataset_dir, "correct");
        CorrectionScore score = score_corrections(predictions, truth);
        report["task"] = "correct";
        report["accuracy"] = score.accuracy;
        report["total"] = score.total;
        report["per_defect"] = nlohmann::ordered_json::object();
        for (const auto& [defect, ct] : score.per_defect) {
            report["per_defect"][defect] = {
                {"correct", ct.first},
                {"total", ct.second},
                {"accuracy", ct.second ? static_cast<double>(ct.first) /
                                             ct.second
                                       : 0.0}};
        }
    } else if (task == "coach") {
        auto truth = load_records(dataset_dir, "coach");
        std::map<std::string, const DatasetRecord*> by_id;
        for (const auto& rec : truth) by_id[rec.id] = &rec;
        auto gateway = open_gateway(gwf);
        int yes = 0, total = 0;
        std::map<std::string, std::pair<int, int>> per_defect;
        for (const auto& [id, prediction] : predictions) {
            auto it = by_id.find(id);
            if (it == by_id.end())
                throw UnknownRecordId("unknown record id: " + id);
            const DatasetRecord& rec = *it->second;
            const Defect* defect = find_defect(rec.defect_ids.at(0));
            CoachingSnippet reference{rec.target, defect->id, "",
                                      SnippetStage::Augmented, 5};
            JudgeVerdict verdict =
                judge_coaching(*gateway, prediction, *defect, reference);
            ++total;
            auto& [y, t] = per_defect[defect->id];
            ++t;
            if (verdict == JudgeVerdict::Yes) {
                ++yes;
                ++y;
            }
        }
        report["task"] = "coach";
        report["judge_yes_rate"] =
            total ? static_cast<double>(yes) / total : 0.0;
        report["total"] = total;
        report["per_defect"] = nlohmann::ordered_json::object();
        for (const auto& [defect, yt] : per_defect) {
            report["per_defect"][defect] = {{"yes", yt.first},
                                            {"total", yt.second}};
        }
    } else {
        throw std::invalid_argument("unknown eval task: " + task);
    }
    std::cout << report.dump(2) << "\n";
    return 0;
}

int run_render_replay(const std::string& map_file, const std::string& h_id,
                      const std::string& d_id, uint64_t seed, int horizon,
                      double epsilon, const std::string& variant_name,
                      const std::string& out) {
    StageTimer timer("render-replay");
    auto variant = parse_variant(variant_name);
    if (!variant)
        throw std::invalid_argument("unknown variant: " + variant_name);
    MapText text =
        map_text_from_string(read_text_file(map_file),
                             MapProvenance::Handwritten,
                             fs::path(map_file).stem().string());
    ParseResult parsed = parse_map(text);
    if (auto* err = std::get_if<ValidationError>(&parsed))
        throw std::invalid_argument("invalid map: " + to_string(err->code) +
                                    " " + err->detail);
    const GridMap& map = std::get<GridMap>(parsed);

    auto h = heuristic_by_id(h_id);
    if (!h) throw std::invalid_argument("unknown heuristic: " + h_id);
    const Defect* defect = find_defect(d_id);
    if (!defect) throw UnknownDefect("unknown defect: " + d_id);

    NoisyPolicy policy;
    policy.base = *h;
    policy.mods = defect->mods;
    policy.epsilon = epsilon;
    TrajectoryMeta meta;
    meta.map_id = map.map_id;
    meta.heuristic_id = h_id;
    meta.defect_id = d_id;
    Trajectory traj = run_episode(map, policy, horizon, seed, *variant, meta);

    fs::create_directories(fs::path(out) / "frames");
    for (size_t i = 0; i < traj.frames.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "%06zu.png", i);
        write_png(render_frame(traj.frames[i].state, default_palette()),
                  (fs::path(out) / "frames" / name).string());
    }
    std::ofstream(fs::path(out) / "trajectory.jsonl")
        << trajectory_to_jsonl(traj);
    std::ofstream(fs::path(out) / "events.jsonl") << events_to_jsonl(traj.events);
    std::cout << "frames: " << traj.frames.size()
              << " deliveries: " << traj.final_state().deliveries
              << " hash: " << hex64(trajectory_hash(traj)) << "\n";
    return 0;
}

int run_verify(uint64_t seed) {
    int failures = 0;
    auto check = [&](const char* name, bool ok, const std::string& detail) {
        std::cout << (ok ? "ok   - " : "FAIL - ") << name;
        if (!detail.empty()) std::cout << " (" << detail << ")";
        std::cout << "\n";
        if (!ok) ++failures;
    };

    {
        StageTimer timer("verify-maps");
        auto maps = generate_maps(seed, 50);
        bool ok = maps.size() == 50;
        for (const auto& map : maps) {
            MapText text = map_text_from_string(serialize(map));
            ok = ok && std::holds_alternative<GridMap>(parse_map(text));
        }
        check("map generation round-trips and validates", ok,
              std::to_string(maps.size()) + "/50");
    }

    {
        StageTimer timer("verify-noise");
        auto maps = generate_maps(derive_seed(seed, "noise"), 2);
        int random_steps = 0, total = 0;
        for (const auto& map : maps) {
            NoisyPolicy policy;
            policy.base = all_heuristics()[0];
            policy.epsilon = 0.2;
            policy.rng = SplitMix64(derive_seed(seed, "noise", map.map_id));
            WorldState state = make_world(map, RecipeVariant::Original,
                                          derive_seed(seed, "world"));
            for (int i = 0; i < 5000; ++i) {
                NoisyDecision d = noisy_next_action(policy, state);
                ++total;
                if (d.was_random) ++random_steps;
                state = step(state, d.action,
                             teammate_patrol_action(state))
                            .first;
            }
        }
        double rate = static_cast<double>(random_steps) / total;
        check("noise rate within [0.18, 0.22]", rate > 0.18 && rate < 0.22,
              std::to_string(rate));
    }

    {
        StageTimer timer("verify-k");
        SplitMix64 rng(derive_seed(seed, "k"));
        double sum = 0, sq = 0;
        const int n = 10000;
        for (int i = 0; i < n; ++i) {
            int k = sample_k(rng);
            sum += k;
            sq += static_cast<double>(k) * k;
        }
        double mean = sum / n;
        double sd = std::sqrt(sq / n - mean * mean);
        check("K ~ N(15,2): mean in [14.5,15.5], sd in [1.5,2.5]",
              mean > 14.5 && mean < 15.5 && sd > 1.5 && sd < 2.5,
              "mean=" + std::to_string(mean) + " sd=" + std::to_string(sd));
    }

    {
        StageTimer timer("verify-oracle");
        auto maps = generate_maps(derive_seed(seed, "oracle"), 4);
        bool ok = true;
        int cases = 0;
        for (const auto& map : maps) {
            for (const auto& h : all_heuristics()) {
                CorpusOptions opt;
                opt.global_seed = derive_seed(seed, "oracle", map.map_id);
                opt.horizon = 50;
                opt.epsilon = 0.0;
                Trajectory shorter = run_triple(map, h, no_defect(), opt);
                opt.horizon = 51;
                Trajectory longer = run_triple(map, h, no_defect(), opt);
                Action oracle = ground_truth_correction(shorter);
                ok = ok && longer.frames[50].action &&
                     *longer.frames[50].action == oracle;
                ++cases;
            }
        }
        check("correction oracle equals the actual next action", ok,
              std::to_string(cases) + " rollouts");
    }

    {
        StageTimer timer("verify-qa");
        auto maps = generate_maps(derive_seed(seed, "qa"), 2);
        std::vector<Trajectory> corpus;
        roll_into(corpus, maps, {no_defect(), *find_defect("train-05")},
                  RecipeVariant::Original, derive_seed(seed, "qa"), 60);
        GroundingCounts counts{40, 40, 40};
        auto grounding =
            build_grounding_datasets(corpus, counts, derive_seed(seed, "g"));
        bool ok = true;
        int checked = 0;
        for (const auto& g : grounding) {
            const Trajectory& traj = corpus[g.traj_index];
            for (const auto& qa : g.qa) {
                QaPair redo;
                if (g.kind == "image_qa") {
                    redo = answer_image_question(
                        traj.frames[g.frame_index].state, qa.question_id,
                        qa.arg);
                } else {
                    SubTrajectory sub{&traj, g.start, g.k};
                    redo = answer_trajectory_question(sub, qa.question_id);
                }
                ok = ok && redo.answer_text == qa.answer_text;
                ++checked;
            }
        }
        check("sampled QA answers re-verify against the oracles", ok,
              std::to_string(checked) + " answers");
    }

    {
        StageTimer timer("verify-fuzz");
        auto maps = generate_maps(derive_seed(seed, "fuzz"), 5);
        SplitMix64 rng(derive_seed(seed, "fuzz-actions"));
        bool ok = true;
        for (const auto& map : maps) {
            WorldState state = make_world(map, RecipeVariant::Original,
                                          derive_seed(seed, "fw"));
            for (int i = 0; i < 4000 && ok; ++i) {
                Action a = kAllActions[rng.below(kAllActions.size())];
                state = step(state, a, teammate_patrol_action(state)).first;
                ok = ok && state.map.walkable(state.player.pos);
                if (state.teammate)
                    ok = ok && state.map.walkable(state.teammate->pos);
            }
        }
        check("world invariants hold under random actions", ok, "20000 steps");
    }

    return failures == 0 ? 0 : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Overcooked-style corrective-assistance data pipeline"};
    app.set_config("--config", "", "TOML-style key/value config file");
    app.require_subcommand(1);

    GatewayFlags gwf;
    app.add_option("--gateway", gwf.backend, "LLM backend: mock|remote")
        ->capture_default_str();
    app.add_option("--gateway-seed", gwf.seed, "Mock gateway seed");
    app.add_option("--audit-log", gwf.audit_log, "Gateway audit JSONL path");
    std::string data_root;
    app.add_option("--data-dir", data_root,
                   "Override the checked-in data directory");

    uint64_t seed = 0;

    auto* gen = app.add_subcommand("gen-maps", "Procedurally generate maps");
    int gen_count = 450;
    std::string gen_out;
    gen->add_option("--seed", seed)->capture_default_str();
    gen->add_option("--count", gen_count)->capture_default_str();
    gen->add_option("--out", gen_out, "Output directory (optional)");

    auto* roll = app.add_subcommand("rollout", "Roll out the triple corpus");
    std::string roll_maps, roll_variant = "original", roll_split = "train",
                roll_out;
    int roll_gen = 6, roll_horizon = kDefaultHorizon, roll_stride = 40,
        roll_workers = 0;
    double roll_eps = 0.2;
    bool roll_render = false;
    roll->add_option("--seed", seed);
    roll->add_option("--maps", roll_maps, "Directory of .txt maps");
    roll->add_option("--gen-count", roll_gen, "Generate maps when --maps unset");
    roll->add_option("--horizon", roll_horizon)->capture_default_str();
    roll->add_option("--epsilon", roll_eps)->capture_default_str();
    roll->add_option("--variant", roll_variant)->capture_default_str();
    roll->add_option("--split", roll_split)->capture_default_str();
    roll->add_option("--out", roll_out, "Corpus output directory");
    roll->add_flag("--render", roll_render, "Write strided PNG frames");
    roll->add_option("--stride", roll_stride)->capture_default_str();
    roll->add_option("--workers", roll_workers)->capture_default_str();

    auto* build = app.add_subcommand("build-dataset", "Assemble datasets");
    std::string kinds = "coach,correct,dd,iqa,tqa,vqa", scale = "desk",
                build_out = "datasets";
    bool plan_only = false, with_reasoning = false;
    int build_horizon = 150, build_train_maps = 6, build_extra_maps = 3;
    build->add_option("--kinds", kinds)->capture_default_str();
    build->add_option("--scale", scale, "desk|paper")->capture_default_str();
    build->add_option("--seed", seed);
    build->add_option("--out", build_out)->capture_default_str();
    build->add_flag("--plan-only", plan_only, "Print the plan and exit");
    build->add_flag("--reasoning", with_reasoning,
                    "Embed generated reasoning traces");
    build->add_option("--horizon", build_horizon)->capture_default_str();
    build->add_option("--train-maps", build_train_maps)->capture_default_str();
    build->add_option("--extra-maps", build_extra_maps)->capture_default_str();

    auto* ev = app.add_subcommand("eval", "Score predictions");
    std::string eval_task, eval_predictions, eval_dataset;
    ev->add_option("--task", eval_task, "coach|correct")->required();
    ev->add_option("--predictions", eval_predictions)->required();
    ev->add_option("--dataset", eval_dataset)->required();

    auto* replay = app.add_subcommand("render-replay", "Render one episode");
    std::string rp_map, rp_h = "H1", rp_d = "no-defect",
                rp_variant = "original", rp_out = "replay";
    int rp_horizon = kDefaultHorizon;
    double rp_eps = 0.0;
    replay->add_option("--map", rp_map)->required();
    replay->add_option("--heuristic", rp_h)->capture_default_str();
    replay->add_option("--defect", rp_d)->capture_default_str();
    replay->add_option("--seed", seed);
    replay->add_option("--horizon", rp_horizon)->capture_default_str();
    replay->add_option("--epsilon", rp_eps)->capture_default_str();
    replay->add_option("--variant", rp_variant)->capture_default_str();
    replay->add_option("--out", rp_out)->capture_default_str();

    auto* verify = app.add_subcommand("verify", "Run the invariant suite");
    verify->add_option("--seed", seed);

    CLI11_PARSE(app, argc, argv);

    try {
        if (!data_root.empty()) set_data_dir(data_root);
        if (gen->parsed()) return run_gen_maps(seed, gen_count, gen_out);
        if (roll->parsed())
            return run_rollout(roll_maps, roll_gen, seed, roll_horizon,
                               roll_eps, roll_variant, roll_split, roll_out,
                               roll_render, roll_stride, roll_workers);
        if (build->parsed())
            return run_build_dataset(kinds, scale, seed, build_out, plan_only,
                                     with_reasoning, gwf, build_horizon,
                                     build_train_maps, build_extra_maps);
        if (ev->parsed())
            return run_eval(eval_task, eval_predictions, eval_dataset, gwf);
        if (replay->parsed())
            return run_render_replay(rp_map, rp_h, rp_d, seed, rp_horizon,
                                     rp_eps, rp_variant, rp_out);
        if (verify->parsed()) return run_verify(seed);
    } catch (const LlmUnavailable& e) {
        std::cerr << "gateway failure: " << e.what() << "\n";
        return kExitGateway;
    } catch (const IoError& e) {
        std::cerr << "I/O failure: " << e.what() << "\n";
        return kExitIo;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "I/O failure: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "validation failure: " << e.what() << "\n";
        return kExitValidation;
    }
    return 0;
}
